#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "pdmqi/cli.hpp"
#include "pdmqi/error.hpp"

namespace pdmqi::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    std::ostringstream msg;
    msg << "invalid value '" << value << "' for '" << key << "'";
    throw Error(ErrorKind::InvalidConfig, msg.str());
}

double parse_real(std::string_view key, std::string_view text)
{
    const auto t = std::string(trim(text));
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        bad_value(key, text);
    }
    return v;
}

long parse_integer(std::string_view key, std::string_view text)
{
    const auto t = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        bad_value(key, text);
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no" || t == "off") {
        return false;
    }
    bad_value(key, text);
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse)
{
    std::vector<T> out;
    const auto t = trim(text);
    if (t.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (start <= t.size()) {
        const auto comma = t.find(',', start);
        const auto item = t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse(item));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

std::vector<double> parse_real_list(std::string_view text)
{
    return parse_list<double>(text, [](std::string_view item) { return parse_real("list", item); });
}

std::vector<int> parse_int_list(std::string_view text)
{
    return parse_list<int>(text, [](std::string_view item) {
        return static_cast<int>(parse_integer("list", item));
    });
}

model::ModelParams RunConfig::params_for(double a) const
{
    const double mass = m0 ? *m0 : 0.5 * a * a * hbar * hbar;
    return model::ModelParams(mass, a, v1, v2, hbar);
}

info::Tolerances RunConfig::tolerances() const
{
    info::Tolerances t;
    t.quad = quad_tol;
    t.fourier = fourier_tol;
    return t;
}

void RunConfig::validate() const
{
    std::ostringstream msg;
    if (widths.empty()) {
        msg << "widths list is empty";
    } else if (std::any_of(widths.begin(), widths.end(), [](double a) { return !(a > 0.0); })) {
        msg << "all widths must be > 0";
    } else if (levels.empty()) {
        msg << "levels list is empty";
    } else if (std::any_of(levels.begin(), levels.end(), [](int n) { return n < 0; })) {
        msg << "levels must be non-negative";
    } else if (!general && std::any_of(levels.begin(), levels.end(), [](int n) { return n > 2; })) {
        msg << "levels above 2 need general-solution mode (--general)";
    } else if (!general && (v1 != 1.0 || v2 != 1.0 || m0.has_value())) {
        msg << "closed-form states exist only for V1 = V2 = kappa = 1; use --general for other potentials";
    } else if (!(hbar > 0.0)) {
        msg << "hbar must be > 0";
    } else if (m0 && !(*m0 > 0.0)) {
        msg << "m0 must be > 0";
    } else if (!(quad_tol > 0.0) || !(fourier_tol > 0.0) || !(eig_tol > 0.0)) {
        msg << "tolerances must be > 0";
    } else if (grid_points < 64) {
        msg << "grid_points must be at least 64";
    } else if (plot_points < 2) {
        msg << "plot_points must be at least 2";
    } else {
        return;
    }
    throw Error(ErrorKind::InvalidConfig, msg.str());
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view value)
{
    std::string key(trim(raw_key));
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "levels") {
        config.levels = parse_int_list(value);
    } else if (key == "widths") {
        config.widths = parse_real_list(value);
    } else if (key == "v1") {
        config.v1 = parse_real(key, value);
    } else if (key == "v2") {
        config.v2 = parse_real(key, value);
    } else if (key == "hbar") {
        config.hbar = parse_real(key, value);
    } else if (key == "m0") {
        if (trim(value) == "auto") {
            config.m0.reset();
        } else {
            config.m0 = parse_real(key, value);
        }
    } else if (key == "tol" || key == "quad_tol") {
        config.quad_tol = parse_real(key, value);
    } else if (key == "fourier_tol") {
        config.fourier_tol = parse_real(key, value);
    } else if (key == "eig_tol") {
        config.eig_tol = parse_real(key, value);
    } else if (key == "grid_points") {
        const long v = parse_integer(key, value);
        if (v < 0) {
            bad_value(key, value);
        }
        config.grid_points = static_cast<std::size_t>(v);
    } else if (key == "plot_points") {
        const long v = parse_integer(key, value);
        if (v < 0) {
            bad_value(key, value);
        }
        config.plot_points = static_cast<std::size_t>(v);
    } else if (key == "format") {
        const auto t = trim(value);
        if (t == "csv") {
            config.format = OutputFormat::Csv;
        } else if (t == "json") {
            config.format = OutputFormat::Json;
        } else {
            bad_value(key, value);
        }
    } else if (key == "out" || key == "output_path") {
        config.output_path = std::string(trim(value));
    } else if (key == "general") {
        config.general = parse_bool(key, value);
    } else {
        std::ostringstream msg;
        msg << "unknown configuration key '" << key << "'";
        throw Error(ErrorKind::InvalidConfig, msg.str());
    }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config file " + path.string());
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": expected 'key = value'";
            throw Error(ErrorKind::InvalidConfig, msg.str());
        }
        apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    }
    return base;
}

std::size_t thread_count()
{
    std::size_t n = 0;
    if (const char* env = std::getenv("PDMQI_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            n = static_cast<std::size_t>(v);
        }
    }
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    return n;
}

} // namespace pdmqi::cli
