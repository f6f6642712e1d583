#include "pdmqi/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdmqi/error.hpp"
#include "pdmqi/special.hpp"

namespace pdmqi::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_level(int n)
{
    if (n < 0) {
        throw Error(ErrorKind::UnsupportedLevel, "level index must be non-negative");
    }
}

void require_closed_form_level(int n)
{
    if (n < 0 || n > kMaxClosedFormLevel) {
        std::ostringstream msg;
        msg << "closed-form states exist for n = 0, 1, 2 only (got n=" << n << ")";
        throw Error(ErrorKind::UnsupportedLevel, msg.str());
    }
}

double checked_sqrt(double radicand, const char* what)
{
    if (radicand < 0.0) {
        std::ostringstream msg;
        msg << "negative radicand " << radicand << " in " << what;
        throw Error(ErrorKind::InvalidRadicand, msg.str());
    }
    return std::sqrt(radicand);
}

// psi_n / C_n as a polynomial g_n(u) in u = tanh(a x); only even powers
// appear. Coefficients are listed for u^0 .. u^8.
constexpr std::array<std::array<double, 9>, 3> kStatePolynomials = {{
    {0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0},
    {0.0, 0.0, -5.0 / 9.0, 0.0, 14.0 / 9.0, 0.0, -1.0, 0.0, 0.0},
    {0.0, 0.0, 35.0 / 143.0, 0.0, -189.0 / 143.0, 0.0, 297.0 / 143.0, 0.0, -1.0},
}};

struct PolyValue {
    double g;
    double dg;
    double d2g;
};

PolyValue eval_state_polynomial(int n, double u)
{
    const auto& c = kStatePolynomials[static_cast<std::size_t>(n)];
    PolyValue out{0.0, 0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) {
        out.d2g = out.d2g * u + 2.0 * out.dg;
        out.dg = out.dg * u + out.g;
        out.g = out.g * u + c[k];
    }
    return out;
}

/// u / sinh(u) with its series near zero.
double u_over_sinh(double u)
{
    if (std::fabs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    }
    if (std::fabs(u) > 700.0) {
        return 0.0;
    }
    return u / std::sinh(u);
}

constexpr double kNormTolerance = 1e-8;

} // namespace

QuantizationParams quantization_params(const model::ModelParams& params, int n)
{
    require_level(n);
    const double vsum = params.v1() + params.v2();
    const double kappa_sq = params.kappa_sq();
    const double nn = static_cast<double>(n);

    const double theta = checked_sqrt(4.0 * vsum + 1.0, "theta");
    const double rho = checked_sqrt(4.0 * kappa_sq * vsum + 1.0, "rho");
    const double inner = (2.0 * nn * rho - 4.0 * nn * nn + 2.0 * rho - 8.0 * nn - 4.0) / kappa_sq;
    const double sigma = checked_sqrt(1.0 + 4.0 * (vsum - inner), "sigma");
    return {theta, sigma, rho, kappa_sq, n};
}

double energy_level(const model::ModelParams& params, int n)
{
    const auto q = quantization_params(params, n);
    const double nn = static_cast<double>(n);
    return (2.0 * q.rho * (nn - 1.0) - 4.0 * (nn * nn + 2.0 * nn + 1.0)) / q.kappa_sq - params.v1();
}

double general_psi1(double x, const model::ModelParams& params, int n)
{
    if (x == 0.0) {
        throw Error(ErrorKind::SingularAtOrigin, "general solution is evaluated away from x = 0");
    }
    const auto q = quantization_params(params, n);
    const double u = params.a() * std::fabs(x);
    const double coth = 1.0 / std::tanh(u);
    const double hyp = special::hyp2f1_terminating(
        {1.0 + 0.25 * (q.theta - q.sigma), 1.0 - 0.25 * (q.theta + q.sigma), 1.0 - 0.5 * q.sigma, coth * coth});
    const double sh = std::sinh(u);
    return std::pow(coth, -0.5 * (1.0 + q.sigma)) / (sh * sh) * hyp;
}

double general_psi2(double x, const model::ModelParams& params, int n)
{
    if (x == 0.0) {
        throw Error(ErrorKind::SingularAtOrigin, "general solution is evaluated away from x = 0");
    }
    const auto q = quantization_params(params, n);
    const double u = params.a() * std::fabs(x);
    const double coth = 1.0 / std::tanh(u);
    const double hyp = special::hyp2f1_terminating(
        {1.0 + 0.25 * (q.theta + q.sigma), 1.0 - 0.25 * (q.theta - q.sigma), 1.0 + 0.5 * q.sigma, coth * coth});
    const double sh = std::sinh(u);
    return std::pow(coth, -0.5 * (1.0 - q.sigma)) / (sh * sh) * hyp;
}

double normalized_psi(int n, double x, const model::ModelParams& params)
{
    require_closed_form_level(n);
    const double a = params.a();
    const double u = std::tanh(a * x);
    const double s2 = 1.0 - u * u; // sech^2
    const double c = std::sqrt(kPsiNormSquared[static_cast<std::size_t>(n)] * a);
    const double base = u * u * s2; // tanh^2 sech^2
    switch (n) {
    case 0: return c * base;
    case 1: return c * (4.0 / 9.0 - s2) * base;
    default: return c * ((24.0 - 132.0 * s2) / 143.0 + s2 * s2) * base;
    }
}

double closed_form_phi_constant(int n, double a)
{
    require_closed_form_level(n);
    switch (n) {
    case 0: return std::sqrt(35.0 * a * kPi / 8.0);
    case 1: return std::sqrt(156237.0 * a * kPi / 64.0);
    default: return std::sqrt(920205.0 * a * kPi / 412.0);
    }
}

double normalized_phi(int n, double p, const model::ModelParams& params)
{
    require_closed_form_level(n);
    const double a = params.a();
    // p csch(p pi / 2a) = (2a / pi) * u / sinh(u)
    const double p_csch = (2.0 * a / kPi) * u_over_sinh(p * kPi / (2.0 * a));
    const double p2 = p * p;
    const double a2 = a * a;
    double poly;
    switch (n) {
    case 0:
        poly = (-2.0 * a2 + p2) / (6.0 * a2 * a2);
        break;
    case 1:
        poly = (16.0 * a2 * a2 - 80.0 * a2 * p2 + 9.0 * p2 * p2) / (1080.0 * std::pow(a, 6));
        break;
    default:
        poly = (6528.0 * std::pow(a, 6) - 12152.0 * a2 * a2 * p2 + 3542.0 * a2 * p2 * p2
                - 143.0 * p2 * p2 * p2)
            / (720720.0 * std::pow(a, 8));
        break;
    }
    return closed_form_phi_constant(n, a) * poly * p_csch;
}

BoundState::BoundState(const model::ModelParams& params, int n)
    : params_(params),
      n_(n),
      form_(n <= kMaxClosedFormLevel && params.is_preset() ? StateForm::ClosedForm
                                                           : StateForm::GeneralSolution),
      energy_(energy_level(params, n)),
      norm_const_(1.0)
{
    require_level(n);
    const double a = params_.a();
    if (form_ == StateForm::ClosedForm) {
        norm_const_ = std::sqrt(kPsiNormSquared[static_cast<std::size_t>(n)] * a);
    } else {
        // The local power of the general solution at the origin decides
        // whether it is an admissible, square-integrable state.
        const double x1 = 1e-7 / a;
        const double x2 = 1e-5 / a;
        const double f1 = std::fabs(general_psi1(x1, params_, n));
        const double f2 = std::fabs(general_psi1(x2, params_, n));
        const double power = std::log(f2 / f1) / std::log(x2 / x1);
        if (!(power > 0.0)) {
            std::ostringstream msg;
            msg << "general solution for n=" << n << " behaves like |x|^" << power
                << " at the origin; it does not vanish there and cannot form a bound state";
            throw Error(ErrorKind::NormalizationFailure, msg.str());
        }
        const auto norm = numerics::integrate_real_line(
            [this](double x) {
                const double v = general_value(x);
                return v * v;
            },
            1e-12, 1.0 / a);
        if (!norm.converged || !(norm.value > 0.0)) {
            throw Error(ErrorKind::NormalizationFailure, "general solution norm integral did not converge");
        }
        norm_const_ = 1.0 / std::sqrt(norm.value);
    }

    const auto check = numerics::integrate_real_line(
        [this](double x) {
            const double v = psi(x);
            return v * v;
        },
        1e-12, 1.0 / a);
    if (std::fabs(check.value - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "state n=" << n << " has norm " << check.value << " after normalization";
        throw Error(ErrorKind::NormalizationFailure, msg.str());
    }
}

double BoundState::general_value(double x) const
{
    if (x == 0.0) {
        return 0.0;
    }
    const double u = params_.a() * std::fabs(x);
    if (u > 700.0) {
        return 0.0;
    }
    return general_psi1(x, params_, n_);
}

double BoundState::psi(double x) const
{
    if (form_ == StateForm::ClosedForm) {
        return normalized_psi(n_, x, params_);
    }
    return norm_const_ * general_value(x);
}

double BoundState::dpsi(double x) const
{
    const double a = params_.a();
    if (form_ == StateForm::ClosedForm) {
        const double u = std::tanh(a * x);
        const auto g = eval_state_polynomial(n_, u);
        return norm_const_ * a * (1.0 - u * u) * g.dg;
    }
    const double h = 1e-6 / a;
    return (psi(x + h) - psi(x - h)) / (2.0 * h);
}

double BoundState::d2psi(double x) const
{
    const double a = params_.a();
    if (form_ == StateForm::ClosedForm) {
        const double u = std::tanh(a * x);
        const double s2 = 1.0 - u * u;
        const auto g = eval_state_polynomial(n_, u);
        return norm_const_ * a * a * (s2 * s2 * g.d2g - 2.0 * u * s2 * g.dg);
    }
    const double h = 1e-4 / a;
    return (psi(x + h) - 2.0 * psi(x) + psi(x - h)) / (h * h);
}

double BoundState::support() const noexcept { return 30.0 / params_.a(); }

double BoundState::p_max() const noexcept
{
    return std::ceil(2.0 * params_.a() * 32.0 / kPi) * params_.hbar();
}

namespace {

double require_transform(const numerics::QuadratureResult& r, double p)
{
    if (!r.converged) {
        std::ostringstream msg;
        msg << "Fourier transform at p=" << p << " did not converge (error estimate " << r.abs_error_estimate
            << ")";
        throw Error(ErrorKind::NotConverged, msg.str());
    }
    return r.value;
}

} // namespace

double BoundState::phi(double p, double tol) const
{
    const numerics::FourierOptions options{tol, params_.hbar(), support()};
    return require_transform(numerics::numeric_fourier([this](double x) { return psi(x); }, p, options), p);
}

double BoundState::dphi(double p, double tol) const
{
    const numerics::FourierOptions options{tol, params_.hbar(), support()};
    return require_transform(
        numerics::numeric_fourier_derivative([this](double x) { return psi(x); }, p, options), p);
}

std::optional<double> BoundState::phi_closed_form(double p) const
{
    if (form_ != StateForm::ClosedForm) {
        return std::nullopt;
    }
    return normalized_phi(n_, p, params_);
}

MomentumConstantFit fit_momentum_constant(const BoundState& state, std::size_t samples)
{
    if (state.form() != StateForm::ClosedForm) {
        throw Error(ErrorKind::UnsupportedLevel, "momentum constant fit needs a closed-form state");
    }
    const int n = state.n();
    const double a = state.params().a();
    const double closed_form = closed_form_phi_constant(n, a);
    double num = 0.0;
    double den = 0.0;
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double p = -8.0 * a + 16.0 * a * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
        const double shape = std::fabs(normalized_phi(n, p, state.params()) / closed_form);
        const double numeric = std::fabs(state.phi(p, 1e-12));
        num += numeric * shape;
        den += shape * shape;
        pairs.emplace_back(numeric, shape);
    }
    const double fitted = num / den;
    double residual = 0.0;
    for (const auto& [numeric, shape] : pairs) {
        residual = std::max(residual, std::fabs(numeric - fitted * shape));
    }
    return {n, closed_form, fitted, residual};
}

} // namespace pdmqi::analytic
