#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdmqi/error.hpp"
#include "pdmqi/numerics.hpp"

namespace pdmqi::numerics {

namespace {

QuadratureOptions oscillatory_options(double p, const FourierOptions& options)
{
    QuadratureOptions q;
    q.tol = options.tol;
    // Roughly one panel per period of the kernel.
    const double periods = std::fabs(p) * options.support / (2.0 * std::numbers::pi * options.hbar);
    q.initial_panels = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(periods)));
    q.max_panels = q.initial_panels * 64;
    return q;
}

void check(const FourierOptions& options)
{
    if (!(options.hbar > 0.0) || !(options.support > 0.0)) {
        throw Error(ErrorKind::DomainError, "Fourier transform needs hbar > 0 and support > 0");
    }
}

} // namespace

QuadratureResult numeric_fourier(const RealFunction& psi, double p, const FourierOptions& options)
{
    check(options);
    const double k = p / options.hbar;
    auto result = integrate_interval([&](double x) { return psi(x) * std::cos(k * x); }, 0.0,
                                     options.support, oscillatory_options(p, options));
    const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi * options.hbar);
    result.value *= norm;
    result.abs_error_estimate *= norm;
    return result;
}

QuadratureResult numeric_fourier_derivative(const RealFunction& psi, double p,
                                            const FourierOptions& options)
{
    check(options);
    const double k = p / options.hbar;
    auto result = integrate_interval([&](double x) { return x * psi(x) * std::sin(k * x); }, 0.0,
                                     options.support, oscillatory_options(p, options));
    const double norm = -2.0 / (std::sqrt(2.0 * std::numbers::pi * options.hbar) * options.hbar);
    result.value *= norm;
    result.abs_error_estimate *= std::fabs(norm);
    return result;
}

} // namespace pdmqi::numerics
