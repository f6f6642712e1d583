#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "generators.hpp"
#include "pdmqi/error.hpp"
#include "pdmqi/numerics.hpp"

using namespace pdmqi;
using namespace pdmqi::numerics;

namespace {

constexpr double pi = std::numbers::pi;

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

// Exact levels of -u'' + [l(l-1)/cos^2 z + m(m-1)/sin^2 z] u on (0, pi/2).
double poschl_teller(double l, double m, int n) { return std::pow(l + m + 2.0 * n, 2); }

} // namespace

TEST_CASE("quadrature on finite intervals")
{
    const auto r = integrate_interval([](double x) { return std::sin(x); }, 0.0, pi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.abs_error_estimate <= 1e-10);
    CHECK(r.evaluations > 0);

    const auto peak = integrate_interval([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
    CHECK(peak.converged);
    CHECK(peak.value == doctest::Approx(2.0 * std::atan(1.0 / 1e-2) / 1e-2).epsilon(1e-10));
}

TEST_CASE("quadrature on infinite ranges")
{
    const auto g = integrate_real_line([](double x) { return std::exp(-x * x); });
    CHECK(g.converged);
    CHECK(g.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));

    const auto narrow = integrate_real_line([](double x) { return std::exp(-1e4 * x * x); }, 1e-10, 1e-2);
    CHECK(narrow.value == doctest::Approx(std::sqrt(pi) / 100.0).epsilon(1e-10));

    const auto h = integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); });
    CHECK(h.converged);
    CHECK(h.value == doctest::Approx(pi / 2.0).epsilon(1e-10));
}

TEST_CASE("quadrature reports failure instead of a silent value")
{
    QuadratureOptions opts;
    opts.tol = 1e-14;
    opts.initial_panels = 1;
    opts.max_panels = 2;
    const auto r = integrate_interval([](double x) { return std::sin(300.0 * x); }, 0.0, 10.0, opts);
    CHECK_FALSE(r.converged);
}

TEST_CASE("property: quadrature of random polynomials times a Gaussian")
{
    testing::Gen gen;
    for (int i = 0; i < 50; ++i) {
        const double s = gen.log_uniform(0.1, 10.0);
        const double c0 = gen.uniform(-2.0, 2.0), c2 = gen.uniform(-2.0, 2.0), c4 = gen.uniform(-2.0, 2.0);
        // Moments of exp(-x^2/s^2): sqrt(pi) s {1, s^2/2, 3 s^4/4}
        const double want = std::sqrt(pi) * s * (c0 + c2 * s * s / 2.0 + c4 * 3.0 * std::pow(s, 4) / 4.0);
        const auto r = integrate_real_line(
            [&](double x) {
                const double x2 = x * x;
                return (c0 + c2 * x2 + c4 * x2 * x2) * std::exp(-x2 / (s * s));
            },
            1e-12, s);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-9).scale(std::sqrt(pi) * s * 3.0 * std::pow(s, 4)));
    }
}

TEST_CASE("Fourier transform of a Gaussian is a Gaussian")
{
    const auto psi = [](double x) { return std::pow(pi, -0.25) * std::exp(-0.5 * x * x); };
    for (double p : {0.0, 0.5, 1.7, 4.0}) {
        const auto r = numeric_fourier(psi, p);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(psi(p)).scale(1.0).epsilon(1e-8));
        const auto d = numeric_fourier_derivative(psi, p);
        CHECK(d.value == doctest::Approx(-p * psi(p)).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("Fourier transform with hbar != 1")
{
    // phi(p) = hbar^(-1/2) phi_1(p / hbar) for the hbar = 1 transform phi_1.
    const double hbar = 0.3;
    const auto psi = [](double x) { return std::pow(pi, -0.25) * std::exp(-0.5 * x * x); };
    FourierOptions opts;
    opts.hbar = hbar;
    for (double p : {0.0, 0.2, 0.9}) {
        CHECK(numeric_fourier(psi, p, opts).value
              == doctest::Approx(psi(p / hbar) / std::sqrt(hbar)).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("grid invariants")
{
    CHECK(kind_of([] { GridSpec{-2.0, 1.0, 100}.validate(); return 0; }) == ErrorKind::DomainError);
    CHECK(kind_of([] { GridSpec{0.5, 0.1, 100}.validate(); return 0; }) == ErrorKind::DomainError);
    CHECK(kind_of([] { GridSpec{0.0, 1.0, 10}.validate(); return 0; }) == ErrorKind::DomainError);
    const auto g = GridSpec::full(101);
    CHECK(g.refined().points == 201);
    CHECK(g.refined().spacing() == doctest::Approx(g.spacing() / 2.0));
}

TEST_CASE("box spectrum")
{
    const auto r = fd_eigensolve([](double) { return 0.0; }, GridSpec::full(2001), 5);
    for (int n = 0; n < 5; ++n) {
        CHECK(r.richardson[n] == doctest::Approx((n + 1.0) * (n + 1.0)).scale(0.0).epsilon(1e-5));
        CHECK(r.eigenvalues[n] <= r.richardson[n] + 1e-9); // the stencil underestimates
    }
    CHECK(r.convergence_order == doctest::Approx(2.0).epsilon(0.02));
    CHECK(r.eigenvectors.size() == 5);
    CHECK(r.eigenvectors[0].size() == 2001);
}

TEST_CASE("eigenvectors are normalized and sign-fixed")
{
    const auto r = fd_eigensolve([](double) { return 0.0; }, GridSpec::full(801), 3);
    const double h = r.grid.spacing();
    for (const auto& v : r.eigenvectors) {
        double sum = 0.0;
        for (double x : v) {
            sum += x * x * h;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.front() == 0.0);
        CHECK(v.back() == 0.0);
        CHECK(v[1] > 0.0);
    }
    double overlap = 0.0;
    for (std::size_t i = 0; i < r.eigenvectors[0].size(); ++i) {
        overlap += r.eigenvectors[0][i] * r.eigenvectors[1][i] * h;
    }
    CHECK(std::fabs(overlap) < 1e-10);
}

TEST_CASE("free mass profile reduces to a symmetric Poschl-Teller well")
{
    const model::ModelParams free(0.5, 1.0, 0.0, 0.0);
    const auto r = fd_eigensolve(free, 5);
    CHECK_FALSE(r.reflected);
    for (int n = 0; n < 5; ++n) {
        CHECK(r.richardson[n] == doctest::Approx((n + 1.0) * (n + 2.0)).scale(0.0).epsilon(1e-5));
    }
    CHECK(r.convergence_order >= 1.8);
    CHECK(r.convergence_order <= 2.2);
}

TEST_CASE("property: barrier spectrum matches the two-sided Poschl-Teller levels")
{
    testing::Gen gen(3);
    for (int i = 0; i < 12; ++i) {
        const double v1 = gen.uniform(0.0, 3.0), v2 = gen.uniform(0.0, 3.0);
        const double kappa_sq = gen.log_uniform(0.3, 3.0);
        const model::ModelParams p(0.5 * kappa_sq, 1.0, v1, v2);
        const double mu = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * kappa_sq * (v1 + v2)));
        const double shift = -0.25 - kappa_sq * v2;
        const auto r = fd_eigensolve(p, 3, 2001);
        CHECK(r.reflected);
        for (int n = 0; n < 3; ++n) {
            const double want = poschl_teller(1.5, mu, n) + shift;
            CHECK(r.richardson[n] == doctest::Approx(want).scale(0.0).epsilon(2e-5));
        }
    }
}

TEST_CASE("preset barrier levels")
{
    const auto r = fd_eigensolve(model::ModelParams::preset(1.0), 3);
    CHECK(r.richardson[0] == doctest::Approx(11.0).epsilon(1e-6));
    CHECK(r.richardson[1] == doctest::Approx(29.0).epsilon(1e-6));
    CHECK(r.richardson[2] == doctest::Approx(55.0).epsilon(1e-6));
    const auto z = r.nodes();
    CHECK(z.size() == r.eigenvectors[0].size());
    CHECK(z.front() == doctest::Approx(-z.back()));
}

TEST_CASE("singular potential on the grid is refused")
{
    const auto bad = [](double z) { return z > 0.0 ? std::numeric_limits<double>::infinity() : 0.0; };
    CHECK(kind_of([&] { return fd_eigensolve(bad, GridSpec::full(101), 2); }) == ErrorKind::SingularPotentialOnGrid);
    CHECK(kind_of([&] { return fd_eigenvalues([](double) { return 0.0; }, GridSpec::full(101), 200); })
          == ErrorKind::DomainError);
}
