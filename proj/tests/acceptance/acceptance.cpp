// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance               run all criteria, exit 1 if any fails
//   acceptance --criterion N run criterion N only

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "pdmqi/analytic.hpp"
#include "pdmqi/cli.hpp"
#include "pdmqi/error.hpp"
#include "pdmqi/info.hpp"
#include "pdmqi/model.hpp"
#include "pdmqi/numerics.hpp"

namespace {

using namespace pdmqi;

constexpr std::array<int, 3> kLevels = {0, 1, 2};
constexpr std::array<double, 3> kWidths = {2.0, 4.0, 6.0};

struct Row1 {
    double s_x, s_p, s_sum;
};
struct Row2 {
    double x2, p2, dx, dp, dxdp, f_x, f_p;
};

// Reference tables, level-major, widths 2, 4, 6.
const Row1 kShannonReference[9] = {
    {0.441401, 2.14029, 2.58169},   {-0.251746, 2.83343, 2.58169},  {-0.657211, 3.2389, 2.58169},
    {0.582545, 2.7803, 3.36285},    {-0.110602, 3.47345, 3.36285},  {-0.516067, 3.87891, 3.36285},
    {0.647182, 3.14459, 3.79177},   {-0.0459656, 3.83773, 3.79177}, {-0.451431, 4.24322, 3.79177},
};
const Row2 kFisherReference[9] = {
    {0.302839, 8.88889, 0.550308, 2.98142, 1.6407, 35.5556, 1.21136},
    {0.0757097, 35.55568, 0.275154, 5.96285, 1.6407, 142.222, 0.302839},
    {0.0336488, 80.0, 0.183436, 8.94427, 1.6407, 320.0, 0.134595},
    {0.3752, 34.188, 0.612536, 5.84705, 3.58153, 136.752, 1.5008},
    {0.0938, 136.752, 0.306268, 11.6941, 3.58153, 547.009, 0.3752},
    {0.0416889, 307.692, 0.204179, 17.5412, 3.58153, 1230.77, 0.166756},
    {0.418019, 75.5113, 0.646544, 8.68972, 5.61829, 302.045, 1.67208},
    {0.104505, 302.045, 0.323272, 17.3794, 5.61829, 1208.18, 0.418019},
    {0.0464466, 679.602, 0.215515, 26.0692, 5.61829, 2718.41, 0.185786},
};

const std::vector<cli::TableCell>& cells()
{
    static const std::vector<cli::TableCell> c = [] {
        cli::RunConfig config;
        return cli::compute_tables(config);
    }();
    return c;
}

model::ModelParams preset(double a) { return model::ModelParams::preset(a); }

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Outcome criterion1()
{
    double dsx = 0.0, dsp = 0.0, dsum = 0.0, spread = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        const auto& r = cells()[i].report;
        dsx = std::max(dsx, std::fabs(r.S_x - kShannonReference[i].s_x));
        dsp = std::max(dsp, std::fabs(r.S_p - kShannonReference[i].s_p));
        dsum = std::max(dsum, std::fabs(r.S_sum - kShannonReference[i].s_sum));
        spread = std::max(spread, std::fabs(r.S_sum - cells()[3 * (i / 3)].report.S_sum));
    }
    const double closed = 638.0 / 105.0 - std::log(280.0);
    const double dclosed = std::fabs(cells()[0].report.S_x - closed);
    const bool pass = dsx <= 1e-4 && dclosed <= 1e-4 && dsp <= 1e-3 && dsum <= 1e-3 && spread <= 1e-6;
    return {pass, fmt("max|dS_x|=%.2e closed-form n=0 a=2 |d|=%.2e max|dS_p|=%.2e max|dS_sum|=%.2e", dsx,
                      dclosed, dsp, dsum)
                      + fmt(" sum spread over a=%.2e", spread)};
}

Outcome criterion2()
{
    double worst = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        const auto& r = cells()[i].report;
        const auto& t = kFisherReference[i];
        for (auto [got, want] : {std::pair{r.x2_mean, t.x2}, {r.p2_mean, t.p2}, {r.sigma_x, t.dx},
                                 {r.sigma_p, t.dp}, {r.uncertainty_product, t.dxdp}, {r.F_x, t.f_x},
                                 {r.F_p, t.f_p}}) {
            worst = std::max(worst, rel(got, want));
        }
    }
    return {worst <= 1e-3, fmt("max relative deviation=%.2e over 63 entries", worst)};
}

Outcome criterion3()
{
    double fx = 0.0, fp = 0.0, routes = 0.0;
    for (const auto& c : cells()) {
        const auto& r = c.report;
        fx = std::max(fx, rel(r.F_x, 4.0 * r.p2_mean));
        fp = std::max(fp, rel(r.F_p, 4.0 * r.x2_mean));
        routes = std::max(routes, rel(r.p2_mean_momentum, r.p2_mean));
    }
    return {fx <= 1e-6 && fp <= 1e-6 && routes <= 1e-5,
            fmt("F_x vs 4<p^2> %.2e, F_p vs 4<x^2> %.2e, <p^2> routes %.2e", fx, fp, routes)};
}

Outcome criterion4()
{
    info::Margins low{1e300, 1e300, 1e300, 1e300, 1e300};
    for (const auto& c : cells()) {
        const auto& m = c.margins;
        low.bbm = std::min(low.bbm, m.bbm);
        low.heisenberg = std::min(low.heisenberg, m.heisenberg);
        low.cramer_rao_x = std::min(low.cramer_rao_x, m.cramer_rao_x);
        low.cramer_rao_p = std::min(low.cramer_rao_p, m.cramer_rao_p);
        low.fisher_product = std::min(low.fisher_product, m.fisher_product);
    }
    return {low.all_satisfied(1e-9),
            fmt("min margins: entropic %.4g, sigma product %.4g, F_x %.4g, F_p %.4g", low.bbm, low.heisenberg,
                low.cramer_rao_x, low.cramer_rao_p)
                + fmt(", F_x F_p %.4g", low.fisher_product)};
}

Outcome criterion5()
{
    constexpr double base = 2.0;
    double worst = 0.0;
    for (int n : kLevels) {
        const analytic::BoundState s0(preset(base), n);
        const double sx0 = info::shannon_x(s0), sp0 = info::shannon_p(s0);
        const double fx0 = info::fisher_x(s0), fp0 = info::fisher_p(s0);
        for (double lambda : {2.0, 3.0}) {
            const analytic::BoundState s(preset(lambda * base), n);
            const double l = std::log(lambda);
            worst = std::max({worst, std::fabs(info::shannon_x(s) - sx0 + l),
                              std::fabs(info::shannon_p(s) - sp0 - l),
                              std::fabs(info::fisher_x(s) / fx0 - lambda * lambda) / (lambda * lambda),
                              std::fabs(fp0 / info::fisher_p(s) - lambda * lambda) / (lambda * lambda)});
        }
    }
    return {worst <= 1e-8, fmt("max deviation from exact scaling=%.2e (lambda in {2,3}, n in {0,1,2})", worst)};
}

Outcome criterion6()
{
    double norm = 0.0, ortho = 0.0;
    bool parity = true;
    for (double a : kWidths) {
        const auto params = preset(a);
        for (int n : kLevels) {
            const auto nn = numerics::integrate_real_line(
                [&](double x) { const double v = analytic::normalized_psi(n, x, params); return v * v; }, 1e-12,
                1.0 / a);
            norm = std::max(norm, std::fabs(nn.value - 1.0));
            for (int m = 0; m < n; ++m) {
                const auto o = numerics::integrate_real_line(
                    [&](double x) {
                        return analytic::normalized_psi(n, x, params) * analytic::normalized_psi(m, x, params);
                    },
                    1e-12, 1.0 / a);
                ortho = std::max(ortho, std::fabs(o.value));
            }
            for (int i = 1; i <= 1000; ++i) {
                const double x = 8.0 * i / (1000.0 * a);
                parity = parity
                    && analytic::normalized_psi(n, x, params) == analytic::normalized_psi(n, -x, params);
            }
        }
    }

    constexpr double a = 2.0;
    const analytic::BoundState ground(preset(a), 0);
    double phi_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double p = -8.0 * a + 16.0 * a * i / 199.0;
        phi_dev = std::max(phi_dev, std::fabs(std::fabs(*ground.phi_closed_form(p)) - std::fabs(ground.phi(p, 1e-12))));
    }

    std::string fits;
    for (int n : {1, 2}) {
        const analytic::BoundState s(preset(a), n);
        const auto fit = analytic::fit_momentum_constant(s);
        fits += fmt("; n=%g closed-form constant %.6g fitted %.6g (ratio %.4f)", n, fit.closed_form, fit.fitted,
                    fit.fitted / fit.closed_form);
    }
    const bool pass = norm <= 1e-8 && ortho <= 1e-8 && parity && phi_dev <= 1e-6;
    return {pass, fmt("max|norm-1|=%.2e max|overlap|=%.2e", norm, ortho) + (parity ? " parity exact" : " parity broken")
                      + fmt(" max||phi_0|-|FT||=%.2e", phi_dev)
                      + fits};
}

Outcome criterion7()
{
    cli::RunConfig config;
    const auto out = cli::compute_spectrum(config);
    double worst = 0.0, order_lo = 1e300, order_hi = -1e300;
    for (const auto& c : out.calibration) {
        worst = std::max(worst, c.abs_diff);
        order_lo = std::min(order_lo, c.convergence_order);
        order_hi = std::max(order_hi, c.convergence_order);
    }
    bool record = out.rows.size() >= 3;
    for (const auto& r : out.rows) {
        record = record && std::isfinite(r.e_closed_form) && std::isfinite(r.e_fd) && std::isfinite(r.abs_diff);
    }
    const bool pass = out.calibration.size() == 10 && worst <= 1e-4 && order_lo >= 1.8 && order_hi <= 2.2 && record;
    std::string energies;
    for (const auto& r : out.rows) {
        energies += fmt(" n=%g: %g vs %g;", r.n, r.e_closed_form, r.e_fd);
    }
    return {pass, fmt("calibration max|d|=%.2e order in [%.3f, %.3f]; preset closed form vs FD:", worst, order_lo,
                      order_hi)
                      + energies};
}

Outcome criterion8()
{
    constexpr double a = 2.0;
    const auto params = preset(a);
    double worst = 0.0;
    std::string detail;
    for (int n : kLevels) {
        double lo = 1e300, hi = -1e300, sum = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = 3.0 * i / (100.0 * a);
            const double r = analytic::general_psi1(x, params, n) / analytic::normalized_psi(n, x, params);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            sum += r;
        }
        const double spread = (hi - lo) / std::fabs(sum / 100.0);
        worst = std::max(worst, spread);
        detail += fmt(" n=%g ratio in [%.4g, %.4g];", n, lo, hi);
    }
    return {worst < 1e-8, fmt("max relative ratio spread=%.3g;", worst) + detail};
}

} // namespace

int main(int argc, char** argv)
{
    const std::map<int, std::pair<const char*, std::function<Outcome()>>> suite = {
        {1, {"shannon table", criterion1}},  {2, {"fisher table", criterion2}},
        {3, {"identities", criterion3}},     {4, {"inequalities", criterion4}},
        {5, {"scaling", criterion5}},        {6, {"analytic states", criterion6}},
        {7, {"eigensolver", criterion7}},    {8, {"general solution", criterion8}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        }
    }
    if (selected.empty()) {
        for (const auto& [k, v] : suite) {
            selected.push_back(k);
        }
    }

    int failures = 0;
    for (int k : selected) {
        const auto it = suite.find(k);
        if (it == suite.end()) {
            std::printf("criterion %d: unknown\n", k);
            ++failures;
            continue;
        }
        Outcome o;
        try {
            o = it->second.second();
        } catch (const Error& e) {
            o = {false, "error " + std::string(to_string(e.kind())) + ": " + e.what()};
        }
        std::printf("criterion %d (%s): %s  %s\n", k, it->second.first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
