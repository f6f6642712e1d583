// pdmqi/analytic.hpp
//
// Closed-form bound states of the solitonic-mass / hyperbolic-barrier
// problem. Levels 0..2 have closed normalized forms; higher levels are built
// from the general hypergeometric solution with numeric normalization.
#pragma once

#include <array>
#include <optional>

#include "pdmqi/model.hpp"
#include "pdmqi/numerics.hpp"

namespace pdmqi::analytic {

struct QuantizationParams {
    double theta;    // sqrt(4 (V1 + V2) + 1)
    double sigma;    // level-dependent exponent parameter
    double rho;      // sqrt(4 kappa^2 (V1 + V2) + 1)
    double kappa_sq;
    int n;
};

/// Throws Error{InvalidRadicand} when any square-root argument is negative.
[[nodiscard]] QuantizationParams quantization_params(const model::ModelParams& params, int n);

/// E_n = [2 rho (n - 1) - 4 (n^2 + 2n + 1)] / kappa^2 - V1.
[[nodiscard]] double energy_level(const model::ModelParams& params, int n);

/**
 * @brief Unnormalized general solution
 *
 *     coth(a x)^(-(1 + sigma)/2) sinh(a x)^(-2)
 *       2F1(1 + (theta - sigma)/4, 1 - (theta + sigma)/4; 1 - sigma/2; coth^2(a x)).
 *
 * Evaluated at |x|: the csc^2 barrier decouples the two half-lines and the
 * even continuation is the one that matches the closed-form states.
 * Throws Error{SingularAtOrigin} at x = 0 and Error{NonTerminating} when the
 * hypergeometric factor is not a polynomial.
 */
[[nodiscard]] double general_psi1(double x, const model::ModelParams& params, int n);

/**
 * The rejected second branch, with sigma -> -sigma in the prefactor and
 * parameters. Only used to demonstrate its divergence at the origin.
 */
[[nodiscard]] double general_psi2(double x, const model::ModelParams& params, int n);

inline constexpr int kMaxClosedFormLevel = 2;

/// Normalization constants of the closed-form position states at a = 1.
inline constexpr std::array<double, 3> kPsiNormSquared = {35.0 / 4.0, 6237.0 / 32.0, 920205.0 / 256.0};

/**
 * Closed-form normalized states
 *
 *     psi_0 = sqrt(35a/4) tanh^2 sech^2
 *     psi_1 = sqrt(6237a/32) [4 cosh^2/9 - 1] tanh^2 sech^4
 *     psi_2 = sqrt(920205a/256) [(24 cosh^4 - 132 cosh^2)/143 + 1] tanh^2 sech^6
 *
 * (all at argument a x). The cosh powers are folded into the sech factor so
 * the expressions stay finite for large |a x|. Error{UnsupportedLevel} for n > 2.
 */
[[nodiscard]] double normalized_psi(int n, double x, const model::ModelParams& params);

/// Closed-form momentum-space amplitudes for n <= 2 with their stated
/// constants. Only n = 0 is unit-normalized; see fit_momentum_constant.
[[nodiscard]] double normalized_phi(int n, double p, const model::ModelParams& params);

/// The constant in front of normalized_phi (e.g. sqrt(35 a pi / 8) for n = 0).
[[nodiscard]] double closed_form_phi_constant(int n, double a);

enum class StateForm { ClosedForm, GeneralSolution };

/**
 * @brief Immutable bound state: energy, position amplitude and derivatives,
 *        momentum amplitude by numeric Fourier transform.
 *
 * Closed forms are used for n <= 2 at the V1 = V2 = kappa = 1 preset. All
 * other (params, n) use general_psi1 normalized by quadrature. Construction
 * checks the norm by quadrature and throws Error{NormalizationFailure} if it
 * misses 1 by more than 1e-8.
 */
class BoundState {
public:
    BoundState(const model::ModelParams& params, int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const model::ModelParams& params() const noexcept { return params_; }
    [[nodiscard]] double energy() const noexcept { return energy_; }
    [[nodiscard]] double norm_const() const noexcept { return norm_const_; }
    [[nodiscard]] StateForm form() const noexcept { return form_; }

    [[nodiscard]] double psi(double x) const;
    [[nodiscard]] double dpsi(double x) const;
    [[nodiscard]] double d2psi(double x) const;

    /// Momentum amplitude, numeric Fourier transform of psi. Throws
    /// Error{NotConverged} when the transform misses `tol`.
    [[nodiscard]] double phi(double p, double tol = numerics::kDefaultFourierTol) const;
    [[nodiscard]] double dphi(double p, double tol = numerics::kDefaultFourierTol) const;

    /// Closed-form momentum amplitude, when one exists (n <= 2).
    [[nodiscard]] std::optional<double> phi_closed_form(double p) const;

    /// Half-width beyond which psi is negligible (below 1e-20).
    [[nodiscard]] double support() const noexcept;

    /// Largest momentum needed for momentum-space integrals: csch tail below 1e-14.
    [[nodiscard]] double p_max() const noexcept;

private:
    [[nodiscard]] double general_value(double x) const;

    model::ModelParams params_;
    int n_;
    StateForm form_;
    double energy_;
    double norm_const_;
};

/// Constant C such that C * shape(p) best matches |numeric phi| in least squares,
/// where shape = normalized_phi / closed_form_phi_constant.
struct MomentumConstantFit {
    int n;
    double closed_form;
    double fitted;
    double max_abs_residual;
};

[[nodiscard]] MomentumConstantFit fit_momentum_constant(const BoundState& state, std::size_t samples = 200);

} // namespace pdmqi::analytic
