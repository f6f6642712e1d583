// pdmqi/numerics.hpp
#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "pdmqi/model.hpp"

namespace pdmqi::numerics {

using RealFunction = std::function<double(double)>;

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kDefaultFourierTol = 1e-8;

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    /// Target error. Applied as tol * max(1, integral of |f|), so it is an
    /// absolute tolerance for unit-scale integrands.
    double tol = kDefaultQuadTol;
    /// Uniform panels laid down before adaptive bisection starts.
    std::size_t initial_panels = 8;
    std::size_t max_panels = 4000;
};

/**
 * Globally adaptive 21-point Gauss-Kronrod on [lo, hi]: the panel with the
 * largest error estimate is bisected until the summed estimate meets the
 * tolerance or the panel budget runs out (converged = false).
 */
[[nodiscard]] QuadratureResult integrate_interval(const RealFunction& f, double lo, double hi,
                                                  const QuadratureOptions& options = {});

/**
 * Integral over the whole real line through x = scale * t / (1 - t^2),
 * t in (-1, 1). `scale` should be the natural length of the integrand.
 */
[[nodiscard]] QuadratureResult integrate_real_line(const RealFunction& f, double tol = kDefaultQuadTol,
                                                   double scale = 1.0);

/// Same map restricted to [0, inf): x = scale * t / (1 - t^2), t in [0, 1).
[[nodiscard]] QuadratureResult integrate_half_line(const RealFunction& f, double tol = kDefaultQuadTol,
                                                   double scale = 1.0);

struct FourierOptions {
    double tol = kDefaultFourierTol;
    double hbar = 1.0;
    /// psi is treated as zero for |x| > support.
    double support = 40.0;
};

/**
 * Momentum amplitude of an even, real position amplitude:
 *
 *     phi(p) = (2 pi hbar)^(-1/2) int psi(x) exp(-i p x / hbar) dx
 *            = 2 (2 pi hbar)^(-1/2) int_0^inf psi(x) cos(p x / hbar) dx.
 */
[[nodiscard]] QuadratureResult numeric_fourier(const RealFunction& psi, double p,
                                               const FourierOptions& options = {});

/// d phi / dp for the same transform: -2 (2 pi hbar)^(-1/2) / hbar int_0^inf x psi(x) sin(p x / hbar) dx.
[[nodiscard]] QuadratureResult numeric_fourier_derivative(const RealFunction& psi, double p,
                                                          const FourierOptions& options = {});

// ---------------------------------------------------------------------------
// Finite-difference eigensolver on the z-interval
// ---------------------------------------------------------------------------

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr std::size_t kDefaultGridPoints = 4001;
/// Base grid of the convergence-order measurement.
inline constexpr std::size_t kOrderGridPoints = 201;
inline constexpr double kOriginOffset = 1e-4;
inline constexpr double kMinEndpointOffset = 1e-6;

struct GridSpec {
    double z_min;
    double z_max;
    std::size_t points = kDefaultGridPoints;

    [[nodiscard]] double spacing() const noexcept
    {
        return (z_max - z_min) / static_cast<double>(points - 1);
    }
    /// Same endpoints with the spacing halved (2 * points - 1 nodes).
    [[nodiscard]] GridSpec refined() const noexcept { return {z_min, z_max, 2 * points - 1}; }

    /// Throws Error{DomainError} when the grid violates its invariants.
    void validate() const;

    /// (-pi/2 + offset, pi/2 - offset).
    [[nodiscard]] static GridSpec full(std::size_t points = kDefaultGridPoints,
                                       double offset = kMinEndpointOffset);
    /// (origin_offset, pi/2 - origin_offset): the half-interval used when the
    /// csc^2 barrier splits the domain.
    [[nodiscard]] static GridSpec half(std::size_t points = kDefaultGridPoints,
                                       double origin_offset = kOriginOffset);
};

struct SpectrumResult {
    /// Eigenvalues on `grid`, ascending.
    std::vector<double> eigenvalues;
    /// One Richardson step from `grid` and `grid.refined()`.
    std::vector<double> richardson;
    /// Interior-node values plus the two Dirichlet endpoints, normalized
    /// with trapezoid weights on `grid`.
    std::vector<std::vector<double>> eigenvectors;
    GridSpec grid;
    /// Observed order from three nested coarse grids (ground state).
    double convergence_order = 0.0;
    /// True when the half-interval was solved and reflected evenly.
    bool reflected = false;

    [[nodiscard]] std::vector<double> nodes() const;
};

/**
 * Lowest `levels` eigenvalues of -phi'' + V(z) phi = eps phi with Dirichlet
 * ends, second-order central differences, symmetric tridiagonal solve.
 */
[[nodiscard]] SpectrumResult fd_eigensolve(const RealFunction& potential, const GridSpec& grid,
                                           std::size_t levels);

/**
 * Spectrum of the effective potential for `params`. When V1 + V2 != 0 the
 * csc^2 pole at z = 0 separates the interval; the problem is solved on
 * GridSpec::half and the eigenvectors are reflected evenly. Physical
 * energies follow from E = eps a^2 hbar^2 / (2 m0) = eps / kappa^2.
 */
[[nodiscard]] SpectrumResult fd_eigensolve(const model::ModelParams& params, std::size_t levels,
                                           std::size_t points = kDefaultGridPoints);

/// Raw grid eigenvalue solve, no refinement. Exposed for convergence studies.
[[nodiscard]] std::vector<double> fd_eigenvalues(const RealFunction& potential, const GridSpec& grid,
                                                 std::size_t levels);

/// Observed order of the ground-state eigenvalue from grids of
/// min(points, kOrderGridPoints) nodes and two halvings of the spacing.
[[nodiscard]] double convergence_order(const RealFunction& potential, const GridSpec& grid);

} // namespace pdmqi::numerics
