#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmqi/analytic.hpp"
#include "pdmqi/cli.hpp"
#include "pdmqi/error.hpp"
#include "pdmqi/numerics.hpp"

namespace pdmqi::cli {

namespace {

using nlohmann::json;

/// Runs body(i) for i in [0, count) on up to thread_count() workers. If any
/// call throws, the exception from the lowest index is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body)
{
    const std::size_t workers = std::min(thread_count(), count);
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::size_t failed_index = count;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t k = 1; k < workers; ++k) {
            pool.emplace_back(work);
        }
        work();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double finite(double v, std::string_view what)
{
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::DomainError, "refusing to serialize non-finite value for " + std::string(what));
    }
    return v;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path(), ec);
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    return out;
}

void write_json(const std::filesystem::path& path, const json& doc)
{
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

/// Writes a CSV whose every field is numeric.
void write_numeric_csv(const std::filesystem::path& path, std::string_view header,
                       const std::vector<std::vector<double>>& rows)
{
    auto out = open_output(path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_csv_number(finite(row[i], header));
        }
        out << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

std::string width_tag(double a)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", a);
    return buf;
}

json report_json(const TableCell& cell)
{
    const auto& r = cell.report;
    json j = {
        {"n", r.n}, {"a", r.a}, {"hbar", r.hbar},
        {"S_x", r.S_x}, {"S_p", r.S_p}, {"S_sum", r.S_sum}, {"bbm_bound", r.bbm_bound},
        {"F_x", r.F_x}, {"F_p", r.F_p},
        {"x_mean", r.x_mean}, {"x2_mean", r.x2_mean}, {"p_mean", r.p_mean}, {"p2_mean", r.p2_mean},
        {"p2_mean_momentum", r.p2_mean_momentum},
        {"sigma_x", r.sigma_x}, {"sigma_p", r.sigma_p}, {"uncertainty_product", r.uncertainty_product},
        {"margins", {{"bbm", cell.margins.bbm},
                     {"cramer_rao_x", cell.margins.cramer_rao_x},
                     {"cramer_rao_p", cell.margins.cramer_rao_p},
                     {"heisenberg", cell.margins.heisenberg},
                     {"fisher_product", cell.margins.fisher_product}}},
    };
    j["S_p_closed_form"] = r.S_p_closed_form ? json(*r.S_p_closed_form) : json(nullptr);
    j["F_p_closed_form"] = r.F_p_closed_form ? json(*r.F_p_closed_form) : json(nullptr);
    if (cell.momentum_fit) {
        j["phi_const_closed_form"] = cell.momentum_fit->closed_form;
        j["phi_const_fitted"] = cell.momentum_fit->fitted;
    }
    return j;
}

} // namespace

std::string format_csv_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value == 0.0 ? 0.0 : value);
    return buf;
}

std::vector<TableCell> compute_tables(const RunConfig& config)
{
    config.validate();
    const std::size_t nw = config.widths.size();
    const std::size_t count = config.levels.size() * nw;
    std::vector<std::optional<TableCell>> cells(count);
    const auto tol = config.tolerances();

    parallel_for(count, [&](std::size_t i) {
        const int n = config.levels[i / nw];
        const double a = config.widths[i % nw];
        const analytic::BoundState state(config.params_for(a), n);
        TableCell cell{info::compute_report(state, tol), {}, std::nullopt};
        cell.margins = info::inequality_report(cell.report);
        if (state.form() == analytic::StateForm::ClosedForm) {
            cell.momentum_fit = analytic::fit_momentum_constant(state);
        }
        cells[i] = std::move(cell);
    });

    std::vector<TableCell> out;
    out.reserve(count);
    for (auto& c : cells) {
        out.push_back(std::move(*c));
    }
    return out;
}

int cmd_tables(const RunConfig& config)
{
    const auto cells = compute_tables(config);
    bool violated = false;
    for (const auto& c : cells) {
        violated = violated || !c.margins.all_satisfied();
    }

    const auto& dir = config.output_path;
    if (config.format == OutputFormat::Csv) {
        std::vector<std::vector<double>> shannon, fisher, routes;
        for (const auto& c : cells) {
            const auto& r = c.report;
            shannon.push_back({double(r.n), r.a, r.S_x, r.S_p, r.S_sum, r.bbm_bound});
            fisher.push_back({double(r.n), r.a, r.x2_mean, r.p2_mean, r.sigma_x, r.sigma_p,
                              r.uncertainty_product, r.F_x, r.F_p});
            if (c.momentum_fit && r.S_p_closed_form && r.F_p_closed_form) {
                routes.push_back({double(r.n), r.a, r.S_p, *r.S_p_closed_form, r.F_p, *r.F_p_closed_form,
                                  c.momentum_fit->closed_form, c.momentum_fit->fitted});
            }
        }
        write_numeric_csv(dir / "shannon.csv", kShannonHeader, shannon);
        write_numeric_csv(dir / "fisher.csv", kFisherHeader, fisher);
        write_numeric_csv(dir / "momentum_routes.csv", kMomentumRoutesHeader, routes);
    } else {
        json shannon = json::array(), fisher = json::array(), reports = json::array();
        for (const auto& c : cells) {
            const auto& r = c.report;
            shannon.push_back({{"n", r.n}, {"a", r.a}, {"S_x", finite(r.S_x, "S_x")}, {"S_p", finite(r.S_p, "S_p")},
                               {"S_sum", r.S_sum}, {"bbm_bound", r.bbm_bound}});
            fisher.push_back({{"n", r.n}, {"a", r.a}, {"x2_mean", r.x2_mean}, {"p2_mean", r.p2_mean},
                              {"dx", r.sigma_x}, {"dp", r.sigma_p}, {"dxdp", r.uncertainty_product},
                              {"F_x", finite(r.F_x, "F_x")}, {"F_p", finite(r.F_p, "F_p")}});
            reports.push_back(report_json(c));
        }
        write_json(dir / "shannon.json", shannon);
        write_json(dir / "fisher.json", fisher);
        write_json(dir / "reports.json", reports);
    }
    return violated ? kExitInequalityViolated : kExitOk;
}

SpectrumOutput compute_spectrum(const RunConfig& config)
{
    config.validate();
    SpectrumOutput out;
    const auto params = config.params_for(config.widths.front());
    const int top = *std::max_element(config.levels.begin(), config.levels.end());
    const auto levels = static_cast<std::size_t>(std::max(top, 2) + 1);

    const auto spectrum = numerics::fd_eigensolve(params, levels, config.grid_points);
    for (std::size_t k = 0; k < levels; ++k) {
        const int n = static_cast<int>(k);
        SpectrumRow row{};
        row.n = n;
        row.e_closed_form = analytic::energy_level(params, n);
        row.eps_fd = spectrum.richardson[k];
        row.e_fd = row.eps_fd / params.kappa_sq();
        row.abs_diff = std::fabs(row.e_closed_form - row.e_fd);
        out.rows.push_back(row);
    }

    constexpr std::size_t kCalibrationLevels = 5;
    const auto grid = numerics::GridSpec::full(config.grid_points);
    const auto box = numerics::fd_eigensolve([](double) { return 0.0; }, grid, kCalibrationLevels);
    const model::ModelParams free_params(params.m0(), params.a(), 0.0, 0.0, params.hbar());
    const auto free = numerics::fd_eigensolve(free_params, kCalibrationLevels, config.grid_points);
    for (std::size_t k = 0; k < kCalibrationLevels; ++k) {
        const double m = static_cast<double>(k + 1);
        out.calibration.push_back({"box", static_cast<int>(k), m * m, box.eigenvalues[k], box.richardson[k],
                                   std::fabs(box.richardson[k] - m * m), box.convergence_order});
    }
    for (std::size_t k = 0; k < kCalibrationLevels; ++k) {
        const double exact = static_cast<double>((k + 1) * (k + 2));
        out.calibration.push_back({"free_pdm", static_cast<int>(k), exact, free.eigenvalues[k],
                                   free.richardson[k], std::fabs(free.richardson[k] - exact),
                                   free.convergence_order});
    }
    return out;
}

int cmd_spectrum(const RunConfig& config)
{
    const auto result = compute_spectrum(config);
    const auto& dir = config.output_path;
    if (config.format == OutputFormat::Csv) {
        std::vector<std::vector<double>> rows;
        for (const auto& r : result.rows) {
            rows.push_back({double(r.n), r.e_closed_form, r.eps_fd, r.e_fd, r.abs_diff});
        }
        write_numeric_csv(dir / "spectrum.csv", kSpectrumHeader, rows);

        auto out = open_output(dir / "spectrum_calibration.csv");
        out << kCalibrationHeader << '\n';
        for (const auto& c : result.calibration) {
            out << c.name << ',' << c.n;
            for (double v : {c.eps_exact, c.eps_fd_raw, c.eps_fd, c.abs_diff, c.convergence_order}) {
                out << ',' << format_csv_number(finite(v, "calibration"));
            }
            out << '\n';
        }
        if (!out) {
            throw Error(ErrorKind::Io, "failed writing spectrum_calibration.csv");
        }
    } else {
        json rows = json::array(), calibration = json::array();
        for (const auto& r : result.rows) {
            rows.push_back({{"n", r.n}, {"E_closed_form", finite(r.e_closed_form, "E_closed_form")},
                            {"eps_fd", finite(r.eps_fd, "eps_fd")}, {"E_fd", r.e_fd}, {"abs_diff", r.abs_diff}});
        }
        for (const auto& c : result.calibration) {
            calibration.push_back({{"case", c.name}, {"n", c.n}, {"eps_exact", c.eps_exact},
                                   {"eps_fd_raw", c.eps_fd_raw}, {"eps_fd", c.eps_fd},
                                   {"abs_diff", c.abs_diff}, {"convergence_order", c.convergence_order}});
        }
        write_json(dir / "spectrum.json", rows);
        write_json(dir / "spectrum_calibration.json", calibration);
    }

    for (const auto& c : result.calibration) {
        if (c.abs_diff > config.eig_tol) {
            std::ostringstream msg;
            msg << "eigensolver calibration '" << c.name << "' n=" << c.n << " misses the exact value by "
                << c.abs_diff << " (tolerance " << config.eig_tol << ")";
            throw Error(ErrorKind::ConvergenceFailure, msg.str());
        }
    }
    return kExitOk;
}

int cmd_plotdata(const RunConfig& config)
{
    config.validate();
    const std::size_t nw = config.widths.size();
    const std::size_t count = config.levels.size() * nw;
    const std::size_t points = config.plot_points;
    const double fourier_tol = config.fourier_tol;
    const auto& dir = config.output_path;

    auto grid = [points](double lo, double hi, std::size_t i) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    };

    std::vector<std::vector<std::vector<double>>> position(count), momentum(count);
    parallel_for(count, [&](std::size_t i) {
        const int n = config.levels[i / nw];
        const double a = config.widths[i % nw];
        const analytic::BoundState state(config.params_for(a), n);
        const double hbar = state.params().hbar();
        for (std::size_t k = 0; k < points; ++k) {
            const double x = grid(-6.0 / a, 6.0 / a, k);
            const double psi = state.psi(x);
            const double rho = psi * psi;
            const double d = state.dpsi(x);
            position[i].push_back({x, psi, rho, rho > 0.0 ? rho * std::log(rho) : 0.0, 4.0 * d * d});
        }
        for (std::size_t k = 0; k < points; ++k) {
            const double p = grid(-8.0 * a * hbar, 8.0 * a * hbar, k);
            const double phi = state.phi(p, fourier_tol);
            const double rho = phi * phi;
            const double d = state.dphi(p, fourier_tol);
            momentum[i].push_back({p, phi, rho, rho > 0.0 ? rho * std::log(rho) : 0.0, 4.0 * d * d});
        }
    });

    for (std::size_t i = 0; i < count; ++i) {
        const int n = config.levels[i / nw];
        const std::string tag = "n" + std::to_string(n) + "_a" + width_tag(config.widths[i % nw]);
        write_numeric_csv(dir / ("psi_" + tag + ".csv"), kPositionPlotHeader, position[i]);
        write_numeric_csv(dir / ("phi_" + tag + ".csv"), kMomentumPlotHeader, momentum[i]);
    }

    const auto params = config.params_for(config.widths.front());
    const double a = params.a();
    std::vector<std::vector<double>> mass;
    for (std::size_t k = 0; k < points; ++k) {
        const double x = grid(-6.0 / a, 6.0 / a, k);
        const double q = grid(-8.0 * a, 8.0 * a, k);
        mass.push_back({x, model::mass_position(x, params), q, model::mass_momentum(q, params)});
    }
    write_numeric_csv(dir / "mass.csv", kMassHeader, mass);
    return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Information measures for a solitonic position-dependent-mass particle", "pdmqi"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file, levels, widths, v1, v2, hbar, m0, tol, fourier_tol, grid_points, plot_points,
        format, output;
    bool general = false;
    app.add_option("--config", config_file, "Flat key = value configuration file");
    app.add_option("--levels", levels, "Comma-separated level indices (default 0,1,2)");
    app.add_option("--widths", widths, "Comma-separated mass widths a (default 2,4,6)");
    app.add_option("--v1", v1, "Barrier coefficient V1 (default 1)");
    app.add_option("--v2", v2, "Barrier coefficient V2 (default 1)");
    app.add_option("--hbar", hbar, "Reduced Planck constant (default 1)");
    app.add_option("--m0", m0, "Mass scale m0, or 'auto' for kappa = 1 at every width");
    app.add_option("--tol", tol, "Quadrature tolerance (default 1e-10)");
    app.add_option("--fourier-tol", fourier_tol, "Fourier-transform tolerance (default 1e-8)");
    app.add_option("--grid-points", grid_points, "Eigensolver grid points (default 4001)");
    app.add_option("--plot-points", plot_points, "Points per plot-data grid (default 2001)");
    app.add_option("--format", format, "csv or json (default csv)");
    app.add_option("--out", output, "Output directory (default .)");
    app.add_flag("--general", general, "Enable general-solution mode");

    auto* tables = app.add_subcommand("tables", "Shannon and Fisher tables for every (level, width)");
    auto* spectrum = app.add_subcommand("spectrum", "Closed-form energies against the finite-difference spectrum");
    auto* plotdata = app.add_subcommand("plotdata", "Densities on uniform grids for plotting");

    std::vector<std::string> argv_copy(args.rbegin(), args.rend());
    try {
        app.parse(argv_copy);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFailure;
    }

    try {
        RunConfig config;
        if (!config_file.empty()) {
            config = load_config_file(config_file);
        }
        struct Override {
            std::string_view key;
            const char* flag;
            const std::string* value;
        };
        const Override overrides[] = {
            {"levels", "--levels", &levels}, {"widths", "--widths", &widths}, {"v1", "--v1", &v1},
            {"v2", "--v2", &v2}, {"hbar", "--hbar", &hbar}, {"m0", "--m0", &m0}, {"tol", "--tol", &tol},
            {"fourier_tol", "--fourier-tol", &fourier_tol}, {"grid_points", "--grid-points", &grid_points},
            {"plot_points", "--plot-points", &plot_points}, {"format", "--format", &format},
            {"out", "--out", &output},
        };
        for (const auto& o : overrides) {
            if (app.get_option(o.flag)->count() > 0) {
                apply_setting(config, o.key, *o.value);
            }
        }
        if (general) {
            config.general = true;
        }

        int code = kExitOk;
        if (tables->parsed()) {
            code = cmd_tables(config);
        } else if (spectrum->parsed()) {
            code = cmd_spectrum(config);
        } else if (plotdata->parsed()) {
            code = cmd_plotdata(config);
        }
        if (code == kExitInequalityViolated) {
            err << json{{"warning", "inequality margin below zero"}}.dump() << '\n';
        }
        return code;
    } catch (const Error& e) {
        err << json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << json{{"error", {{"kind", "Internal"}, {"message", e.what()}}}}.dump() << '\n';
        return kExitFailure;
    }
}

} // namespace pdmqi::cli
