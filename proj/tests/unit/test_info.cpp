#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "pdmqi/error.hpp"
#include "pdmqi/info.hpp"

using namespace pdmqi;
using analytic::BoundState;
using model::ModelParams;

namespace {

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        (void)f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

} // namespace

TEST_CASE("position entropy of the ground state in closed form")
{
    const BoundState s(ModelParams::preset(2.0), 0);
    CHECK(info::shannon_x(s) == doctest::Approx(638.0 / 105.0 - std::log(280.0)).epsilon(1e-12));
}

TEST_CASE("densities")
{
    const BoundState s(ModelParams::preset(1.0), 1);
    CHECK(info::entropy_density_x(s, 0.0) == 0.0);
    CHECK(info::entropy_density_x(s, 100.0) == 0.0);
    const double v = s.psi(0.4);
    CHECK(info::entropy_density_x(s, 0.4) == doctest::Approx(v * v * std::log(v * v)));
    CHECK(info::fisher_density_x(s, 0.4) == doctest::Approx(4.0 * std::pow(s.dpsi(0.4), 2)));
    const double w = s.phi(0.7);
    CHECK(info::entropy_density_p(s, 0.7) == doctest::Approx(w * w * std::log(w * w)));
    CHECK(info::fisher_density_p(s, 0.7) == doctest::Approx(4.0 * std::pow(s.dphi(0.7), 2)));
}

TEST_CASE("ground-state moments in closed form")
{
    // <p^2> = 20 a^2 / 9 for psi_0 at the preset.
    const BoundState s(ModelParams::preset(2.0), 0);
    const auto m = info::moments(s);
    CHECK(m.x_mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(m.p_mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(m.p2_mean == doctest::Approx(20.0 * 4.0 / 9.0).epsilon(1e-12));
    CHECK(m.p2_mean_momentum == doctest::Approx(m.p2_mean).epsilon(1e-9));
    CHECK(info::fisher_x(s) == doctest::Approx(4.0 * m.p2_mean).epsilon(1e-10));
    CHECK(info::fisher_p(s) == doctest::Approx(4.0 * m.x2_mean).epsilon(1e-10));
}

TEST_CASE("property: entropies and Fisher information under width scaling")
{
    testing::Gen gen;
    for (int i = 0; i < 6; ++i) {
        const int n = gen.integer(0, 2);
        const double a = gen.log_uniform(0.5, 8.0);
        const BoundState s(ModelParams::preset(a), n);
        const BoundState unit(ModelParams::preset(1.0), n);
        CHECK(info::shannon_x(s) == doctest::Approx(info::shannon_x(unit) - std::log(a)).scale(1.0).epsilon(1e-9));
        CHECK(info::shannon_p(s) == doctest::Approx(info::shannon_p(unit) + std::log(a)).scale(1.0).epsilon(1e-8));
        CHECK(info::fisher_x(s) == doctest::Approx(a * a * info::fisher_x(unit)).epsilon(1e-9));
        CHECK(info::fisher_p(s) == doctest::Approx(info::fisher_p(unit) / (a * a)).epsilon(1e-8));
    }
}

TEST_CASE("hbar rescales the momentum measures")
{
    // phi_hbar(p) = hbar^(-1/2) phi_1(p / hbar): S_p shifts by ln hbar, F_p scales by hbar^-2.
    const double hbar = 0.5;
    const BoundState s(ModelParams(0.5 * 4.0 * hbar * hbar, 2.0, 1.0, 1.0, hbar), 0);
    const BoundState ref(ModelParams::preset(2.0), 0);
    CHECK(info::shannon_p(s) == doctest::Approx(info::shannon_p(ref) + std::log(hbar)).epsilon(1e-8));
    CHECK(info::fisher_p(s) == doctest::Approx(info::fisher_p(ref) / (hbar * hbar)).epsilon(1e-8));
    CHECK(info::bbm_bound(hbar) == doctest::Approx(1.0 + std::log(std::numbers::pi * hbar)));
}

TEST_CASE("closed-form momentum route")
{
    const auto p = ModelParams::preset(2.0);
    const BoundState s0(p, 0);
    CHECK(*info::shannon_p_closed_form(s0) == doctest::Approx(info::shannon_p(s0)).epsilon(1e-9));
    CHECK(*info::fisher_p_closed_form(s0) == doctest::Approx(info::fisher_p(s0)).epsilon(1e-6));
    // The closed-form n = 1 amplitude is not unit-normalized, so its entropy differs.
    const BoundState s1(p, 1);
    CHECK(std::fabs(*info::shannon_p_closed_form(s1) - info::shannon_p(s1)) > 1.0);
}

TEST_CASE("report and inequality margins")
{
    const BoundState s(ModelParams::preset(4.0), 2);
    const auto r = info::compute_report(s);
    CHECK(r.S_sum == doctest::Approx(3.79177).epsilon(1e-5));
    CHECK(r.uncertainty_product == doctest::Approx(r.sigma_x * r.sigma_p));
    const auto m = info::inequality_report(r);
    CHECK(m.all_satisfied());
    CHECK(m.bbm == doctest::Approx(r.S_sum - 1.0 - std::log(std::numbers::pi)));

    auto broken = r;
    broken.F_x = 0.1;
    const auto bm = info::inequality_report(broken);
    CHECK(bm.cramer_rao_x < 0.0);
    CHECK(bm.fisher_product < 0.0);
    CHECK_FALSE(bm.all_satisfied());
}

TEST_CASE("failures are typed")
{
    const BoundState s(ModelParams::preset(2.0), 0);
    info::Tolerances strict;
    strict.moment_match = 0.0;
    strict.quad = 1e-10;
    // Exact agreement to the last bit is not expected from two quadratures.
    CHECK(kind_of([&] { return info::moments(s, strict); }) == ErrorKind::MomentMismatch);

    info::Tolerances impossible;
    impossible.quad = 1e-20;
    CHECK(kind_of([&] { return info::fisher_x(s, impossible); }) == ErrorKind::NotConverged);
}
