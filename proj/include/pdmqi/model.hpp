// pdmqi/model.hpp
//
// Solitonic position-dependent mass m(x) = m0 sech^2(a x) under BenDaniel-Duke
// ordering, with the hyperbolic barrier V(x) = V1 coth^2(a x) + V2 csch^2(a x).
// All public functions take physical x (explicit a); the rescaled coordinate
// a x only appears inside the z-space eigenproblem.
#pragma once

namespace pdmqi::model {

/**
 * @brief Physical configuration shared by every module.
 *
 * kappa^2 = 2 m0 / (a^2 hbar^2) is always derived from (m0, a, hbar) and
 * never stored.
 */
class ModelParams {
public:
    /// Throws Error{InvalidConfig} unless m0, a and hbar are all positive.
    ModelParams(double m0, double a, double v1, double v2, double hbar = 1.0);

    /// V1 = V2 = kappa = 1 at width a, realized with m0 = a^2 hbar^2 / 2.
    [[nodiscard]] static ModelParams preset(double a, double hbar = 1.0);

    [[nodiscard]] double m0() const noexcept { return m0_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double v1() const noexcept { return v1_; }
    [[nodiscard]] double v2() const noexcept { return v2_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }

    [[nodiscard]] double kappa_sq() const noexcept { return 2.0 * m0_ / (a_ * a_ * hbar_ * hbar_); }

    /// Same physics at a different mass-distribution width. m0 is rescaled
    /// so kappa^2 is preserved.
    [[nodiscard]] ModelParams with_width(double a) const;

    /// True when V1 = V2 = kappa^2 = 1 to within 1e-12.
    [[nodiscard]] bool is_preset() const noexcept;

private:
    double m0_;
    double a_;
    double v1_;
    double v2_;
    double hbar_;
};

/// m0 sech^2(a x).
[[nodiscard]] double mass_position(double x, const ModelParams& params) noexcept;

/// Below this |k pi / 2a| mass_momentum uses its Taylor expansion.
inline constexpr double kMassMomentumSeriesThreshold = 1e-4;

/**
 * @brief k-space mass sqrt(pi/2) m0 k csch(k pi / 2a) / a^2.
 *
 * The removable singularity at k = 0 is handled by a three-term expansion
 * of u / sinh(u); the limit is sqrt(2/pi) m0 / a.
 */
[[nodiscard]] double mass_momentum(double k, const ModelParams& params) noexcept;

/**
 * @brief Dispersion sqrt(2/pi) (a^2 hbar^2 / m0) [k^2 2F1(1/2,3/2;3/2;k^2/4) - cosh k].
 *
 * 2F1(1/2, 3/2; 3/2; w) = (1 - w)^(-1/2) is only real for |k| < 2; outside
 * that range Error{DomainError} is thrown.
 */
[[nodiscard]] double dispersion_energy(double k, const ModelParams& params);

/// V1 coth^2(a x) + V2 csch^2(a x); Error{SingularAtOrigin} at x = 0.
[[nodiscard]] double potential_x(double x, const ModelParams& params);

/// z = sign(x) arccos(sech x), mapping R onto (-pi/2, pi/2).
[[nodiscard]] double x_to_z(double x) noexcept;

/// Inverse of x_to_z; Error{DomainError} for |z| >= pi/2.
[[nodiscard]] double z_to_x(double z);

/**
 * @brief Constant-mass effective potential on the z-interval,
 *
 *     1/2 + (3/4) tan^2 z + kappa^2 [(V1 + V2) csc^2 z - V2].
 *
 * Throws Error{DomainError} for |z| >= pi/2 and Error{SingularAtOrigin} at
 * z = 0 when V1 + V2 != 0.
 */
[[nodiscard]] double effective_potential_z(double z, const ModelParams& params);

} // namespace pdmqi::model
