#include "pdmqi/info.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdmqi/error.hpp"

namespace pdmqi::info {

namespace {

using analytic::BoundState;

double rho_log_rho(double amplitude)
{
    const double rho = amplitude * amplitude;
    return rho > 0.0 ? rho * std::log(rho) : 0.0;
}

double require(const numerics::QuadratureResult& r, const char* what)
{
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << " did not converge (error estimate " << r.abs_error_estimate << " after "
            << r.evaluations << " evaluations)";
        throw Error(ErrorKind::NotConverged, msg.str());
    }
    return r.value;
}

double position_integral(const BoundState& state, const numerics::RealFunction& f, double tol,
                         const char* what)
{
    return require(numerics::integrate_real_line(f, tol, 1.0 / state.params().a()), what);
}

/// Integral of an even momentum-space integrand over [-p_max, p_max].
double momentum_integral(const BoundState& state, const numerics::RealFunction& f, double tol,
                         const char* what)
{
    numerics::QuadratureOptions options;
    options.tol = tol;
    options.initial_panels = 16;
    return 2.0 * require(numerics::integrate_interval(f, 0.0, state.p_max(), options), what);
}

} // namespace

double bbm_bound(double hbar) { return 1.0 + std::log(std::numbers::pi * hbar); }

double entropy_density_x(const BoundState& state, double x) { return rho_log_rho(state.psi(x)); }

double entropy_density_p(const BoundState& state, double p, double tol)
{
    return rho_log_rho(state.phi(p, tol));
}

double fisher_density_x(const BoundState& state, double x)
{
    const double d = state.dpsi(x);
    return 4.0 * d * d;
}

double fisher_density_p(const BoundState& state, double p, double tol)
{
    const double d = state.dphi(p, tol);
    return 4.0 * d * d;
}

double shannon_x(const BoundState& state, const Tolerances& tol)
{
    return -position_integral(
        state, [&](double x) { return entropy_density_x(state, x); }, tol.quad, "S_x quadrature");
}

double shannon_p(const BoundState& state, const Tolerances& tol)
{
    return -momentum_integral(
        state, [&](double p) { return entropy_density_p(state, p, tol.fourier); }, tol.quad,
        "S_p quadrature");
}

double fisher_x(const BoundState& state, const Tolerances& tol)
{
    return position_integral(
        state, [&](double x) { return fisher_density_x(state, x); }, tol.quad, "F_x quadrature");
}

double fisher_p(const BoundState& state, const Tolerances& tol)
{
    return momentum_integral(
        state, [&](double p) { return fisher_density_p(state, p, tol.fourier); }, tol.quad,
        "F_p quadrature");
}

std::optional<double> shannon_p_closed_form(const BoundState& state, const Tolerances& tol)
{
    if (!state.phi_closed_form(0.0)) {
        return std::nullopt;
    }
    return -momentum_integral(
        state, [&](double p) { return rho_log_rho(*state.phi_closed_form(p)); }, tol.quad,
        "closed-form S_p quadrature");
}

std::optional<double> fisher_p_closed_form(const BoundState& state, const Tolerances& tol)
{
    if (!state.phi_closed_form(0.0)) {
        return std::nullopt;
    }
    const double h = 1e-6 * state.params().a();
    return momentum_integral(
        state,
        [&](double p) {
            const double d = (*state.phi_closed_form(p + h) - *state.phi_closed_form(p - h)) / (2.0 * h);
            return 4.0 * d * d;
        },
        tol.quad, "closed-form F_p quadrature");
}

Moments moments(const BoundState& state, const Tolerances& tol)
{
    const double hbar = state.params().hbar();
    Moments m{};
    m.x_mean = position_integral(
        state, [&](double x) { const double v = state.psi(x); return x * v * v; }, tol.quad, "<x>");
    m.x2_mean = position_integral(
        state, [&](double x) { const double v = state.psi(x); return x * x * v * v; }, tol.quad, "<x^2>");
    // <p> = -i hbar int psi psi' dx; the integral itself must vanish for a real state.
    m.p_mean = hbar * position_integral(
        state, [&](double x) { return state.psi(x) * state.dpsi(x); }, tol.quad, "<p>");
    m.p2_mean = -hbar * hbar * position_integral(
        state, [&](double x) { return state.psi(x) * state.d2psi(x); }, tol.quad, "<p^2>");
    m.p2_mean_momentum = momentum_integral(
        state, [&](double p) { const double v = state.phi(p, tol.fourier); return p * p * v * v; },
        tol.quad, "<p^2> (momentum space)");

    const double mismatch = std::fabs(m.p2_mean - m.p2_mean_momentum) / std::fabs(m.p2_mean);
    if (mismatch > tol.moment_match) {
        std::ostringstream msg;
        msg << "<p^2> routes disagree: " << m.p2_mean << " (position) vs " << m.p2_mean_momentum
            << " (momentum), relative " << mismatch;
        throw Error(ErrorKind::MomentMismatch, msg.str());
    }
    m.sigma_x = std::sqrt(m.x2_mean - m.x_mean * m.x_mean);
    m.sigma_p = std::sqrt(m.p2_mean - m.p_mean * m.p_mean);
    return m;
}

InfoReport compute_report(const BoundState& state, const Tolerances& tol)
{
    InfoReport r{};
    r.n = state.n();
    r.a = state.params().a();
    r.hbar = state.params().hbar();
    r.S_x = shannon_x(state, tol);
    r.S_p = shannon_p(state, tol);
    r.S_sum = r.S_x + r.S_p;
    r.bbm_bound = bbm_bound(r.hbar);
    r.F_x = fisher_x(state, tol);
    r.F_p = fisher_p(state, tol);
    const auto m = moments(state, tol);
    r.x_mean = m.x_mean;
    r.x2_mean = m.x2_mean;
    r.p_mean = m.p_mean;
    r.p2_mean = m.p2_mean;
    r.p2_mean_momentum = m.p2_mean_momentum;
    r.sigma_x = m.sigma_x;
    r.sigma_p = m.sigma_p;
    r.uncertainty_product = m.sigma_x * m.sigma_p;
    r.S_p_closed_form = shannon_p_closed_form(state, tol);
    r.F_p_closed_form = fisher_p_closed_form(state, tol);
    return r;
}

Margins inequality_report(const InfoReport& r)
{
    const double hbar = r.hbar;
    return {
        r.S_sum - r.bbm_bound,
        r.F_x - 1.0 / (r.sigma_x * r.sigma_x),
        r.F_p - 1.0 / (r.sigma_p * r.sigma_p),
        r.uncertainty_product - 0.5 * hbar,
        r.F_x * r.F_p - 4.0 / (hbar * hbar),
    };
}

} // namespace pdmqi::info
