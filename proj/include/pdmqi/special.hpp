// pdmqi/special.hpp
#pragma once

namespace pdmqi::special {

/// Tolerance used to decide that an upper parameter is a non-positive integer.
inline constexpr double kIntegerTolerance = 1e-9;

struct HypergeometricArgs {
    double a_param;
    double b_param;
    double c_param;
    double z;
};

/**
 * @brief Gauss hypergeometric 2F1(a, b; c; z) for the terminating case.
 *
 * When a or b equals -N (N a non-negative integer) the series
 *
 *     sum_{k=0}^{N} (a)_k (b)_k / (c)_k * z^k / k!
 *
 * is a polynomial in z and is valid for every real z, including the
 * region |z| > 1 where the infinite series diverges. Near-integer upper
 * parameters (within kIntegerTolerance) are snapped to the integer.
 *
 * Throws Error{NonTerminating} when neither upper parameter is a
 * non-positive integer and Error{PoleInC} when (c)_k vanishes before the
 * series terminates.
 */
[[nodiscard]] double hyp2f1_terminating(const HypergeometricArgs& args);

/// Returns N if x is within kIntegerTolerance of -N for some integer N >= 0, else -1.
[[nodiscard]] long nonpositive_integer_index(double x) noexcept;

} // namespace pdmqi::special
