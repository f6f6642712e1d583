#include "pdmqi/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdmqi/error.hpp"

namespace pdmqi::model {

namespace {

constexpr double kPi = std::numbers::pi;

double sech(double x) noexcept { return 1.0 / std::cosh(x); }

} // namespace

ModelParams::ModelParams(double m0, double a, double v1, double v2, double hbar)
    : m0_(m0), a_(a), v1_(v1), v2_(v2), hbar_(hbar)
{
    if (!(m0 > 0.0) || !(a > 0.0) || !(hbar > 0.0)) {
        std::ostringstream msg;
        msg << "ModelParams requires m0, a, hbar > 0 (got m0=" << m0 << ", a=" << a
            << ", hbar=" << hbar << ")";
        throw Error(ErrorKind::InvalidConfig, msg.str());
    }
    if (!std::isfinite(v1) || !std::isfinite(v2)) {
        throw Error(ErrorKind::InvalidConfig, "ModelParams requires finite V1, V2");
    }
}

ModelParams ModelParams::preset(double a, double hbar)
{
    return ModelParams(0.5 * a * a * hbar * hbar, a, 1.0, 1.0, hbar);
}

ModelParams ModelParams::with_width(double a) const
{
    const double scale = (a / a_) * (a / a_);
    return ModelParams(m0_ * scale, a, v1_, v2_, hbar_);
}

bool ModelParams::is_preset() const noexcept
{
    return std::fabs(v1_ - 1.0) < 1e-12 && std::fabs(v2_ - 1.0) < 1e-12
        && std::fabs(kappa_sq() - 1.0) < 1e-12;
}

double mass_position(double x, const ModelParams& params) noexcept
{
    const double s = sech(params.a() * x);
    return params.m0() * s * s;
}

double mass_momentum(double k, const ModelParams& params) noexcept
{
    const double a = params.a();
    const double u = k * kPi / (2.0 * a);
    // k csch(u) = (2a/pi) * u / sinh(u)
    double u_over_sinh;
    if (std::fabs(u) < kMassMomentumSeriesThreshold) {
        const double u2 = u * u;
        u_over_sinh = 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    } else {
        u_over_sinh = u / std::sinh(u);
    }
    return std::sqrt(kPi / 2.0) * params.m0() / (a * a) * (2.0 * a / kPi) * u_over_sinh;
}

double dispersion_energy(double k, const ModelParams& params)
{
    if (!(std::fabs(k) < 2.0)) {
        std::ostringstream msg;
        msg << "dispersion_energy defined for |k| < 2 only (got k=" << k << ")";
        throw Error(ErrorKind::DomainError, msg.str());
    }
    const double a = params.a();
    const double hbar = params.hbar();
    const double hyp = 1.0 / std::sqrt(1.0 - 0.25 * k * k);
    return std::sqrt(2.0 / kPi) * (a * a * hbar * hbar / params.m0())
        * (k * k * hyp - std::cosh(k));
}

double potential_x(double x, const ModelParams& params)
{
    if (x == 0.0) {
        throw Error(ErrorKind::SingularAtOrigin, "potential_x diverges at x = 0");
    }
    const double ax = params.a() * x;
    const double sh = std::sinh(ax);
    const double csch2 = 1.0 / (sh * sh);
    // coth^2 = 1 + csch^2
    return params.v1() * (1.0 + csch2) + params.v2() * csch2;
}

double x_to_z(double x) noexcept
{
    // arccos(sech x) = arctan(|sinh x|) = gd(|x|), accurate near both ends.
    return std::atan(std::sinh(x));
}

double z_to_x(double z)
{
    if (!(std::fabs(z) < kPi / 2.0)) {
        std::ostringstream msg;
        msg << "z_to_x requires |z| < pi/2 (got z=" << z << ")";
        throw Error(ErrorKind::DomainError, msg.str());
    }
    return std::asinh(std::tan(z));
}

double effective_potential_z(double z, const ModelParams& params)
{
    if (!(std::fabs(z) < kPi / 2.0)) {
        std::ostringstream msg;
        msg << "effective_potential_z requires |z| < pi/2 (got z=" << z << ")";
        throw Error(ErrorKind::DomainError, msg.str());
    }
    const double vsum = params.v1() + params.v2();
    const double t = std::tan(z);
    double value = 0.5 + 0.75 * t * t - params.kappa_sq() * params.v2();
    if (vsum != 0.0) {
        if (z == 0.0) {
            throw Error(ErrorKind::SingularAtOrigin,
                        "effective potential has a csc^2 pole at z = 0 when V1 + V2 != 0");
        }
        const double s = std::sin(z);
        value += params.kappa_sq() * vsum / (s * s);
    }
    return value;
}

} // namespace pdmqi::model
