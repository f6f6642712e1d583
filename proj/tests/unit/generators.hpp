// Seeded generators for the property tests.
#pragma once

#include <cstdint>
#include <random>

namespace pdmqi::testing {

inline constexpr int kPropertyCases = 200;

class Gen {
public:
    explicit Gen(std::uint64_t seed = 20241015) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    /// Log-uniform on [lo, hi], for widths and scales.
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

private:
    std::mt19937_64 engine_;
};

} // namespace pdmqi::testing
