// pdmqi/info.hpp
//
// Shannon entropies, Fisher information, moments and the associated
// uncertainty relations for a BoundState. Entropies are in nats.
#pragma once

#include <optional>

#include "pdmqi/analytic.hpp"

namespace pdmqi::info {

struct Tolerances {
    double quad = 1e-10;
    double fourier = 1e-8;
    /// Relative agreement required between the two <p^2> routes.
    double moment_match = 1e-5;
};

/// |psi|^2 ln |psi|^2 with 0 ln 0 = 0.
[[nodiscard]] double entropy_density_x(const analytic::BoundState& state, double x);
[[nodiscard]] double entropy_density_p(const analytic::BoundState& state, double p,
                                       double tol = Tolerances{}.fourier);

/// |psi|^2 (d ln|psi|^2 / dx)^2, evaluated as 4 psi'^2 (finite at nodes of psi).
[[nodiscard]] double fisher_density_x(const analytic::BoundState& state, double x);
[[nodiscard]] double fisher_density_p(const analytic::BoundState& state, double p,
                                      double tol = Tolerances{}.fourier);

// Each of these throws Error{NotConverged} when its quadrature misses the tolerance.
[[nodiscard]] double shannon_x(const analytic::BoundState& state, const Tolerances& tol = {});
[[nodiscard]] double shannon_p(const analytic::BoundState& state, const Tolerances& tol = {});
[[nodiscard]] double fisher_x(const analytic::BoundState& state, const Tolerances& tol = {});
[[nodiscard]] double fisher_p(const analytic::BoundState& state, const Tolerances& tol = {});

/// Same measures from the closed-form momentum amplitude (n <= 2).
[[nodiscard]] std::optional<double> shannon_p_closed_form(const analytic::BoundState& state,
                                                          const Tolerances& tol = {});
[[nodiscard]] std::optional<double> fisher_p_closed_form(const analytic::BoundState& state,
                                                         const Tolerances& tol = {});

struct Moments {
    double x_mean;
    double x2_mean;
    double p_mean;
    /// -hbar^2 int psi psi'' dx
    double p2_mean;
    /// int p^2 |phi|^2 dp, the independent momentum-space route
    double p2_mean_momentum;
    double sigma_x;
    double sigma_p;
};

/// Throws Error{MomentMismatch} if the two <p^2> routes disagree beyond tol.moment_match.
[[nodiscard]] Moments moments(const analytic::BoundState& state, const Tolerances& tol = {});

struct InfoReport {
    int n;
    double a;
    double hbar;
    double S_x;
    double S_p;
    double S_sum;
    double bbm_bound;
    double F_x;
    double F_p;
    double x_mean;
    double x2_mean;
    double p_mean;
    double p2_mean;
    double sigma_x;
    double sigma_p;
    double uncertainty_product;
    // Dual-route values; the numeric transform above is authoritative.
    double p2_mean_momentum;
    std::optional<double> S_p_closed_form;
    std::optional<double> F_p_closed_form;
};

[[nodiscard]] InfoReport compute_report(const analytic::BoundState& state, const Tolerances& tol = {});

/// 1 + ln(pi hbar): the entropic uncertainty bound in one dimension.
[[nodiscard]] double bbm_bound(double hbar = 1.0);

/// lhs - rhs of each inequality; a negative value is a violation.
struct Margins {
    double bbm;            // S_x + S_p - (1 + ln pi)
    double cramer_rao_x;   // F_x - 1/sigma_x^2
    double cramer_rao_p;   // F_p - 1/sigma_p^2
    double heisenberg;     // sigma_x sigma_p - hbar/2
    double fisher_product; // F_x F_p - 4/hbar^2

    [[nodiscard]] bool all_satisfied(double slack = 1e-9) const noexcept
    {
        return bbm >= -slack && cramer_rao_x >= -slack && cramer_rao_p >= -slack
            && heisenberg >= -slack && fisher_product >= -slack;
    }
};

[[nodiscard]] Margins inequality_report(const InfoReport& report);

} // namespace pdmqi::info
