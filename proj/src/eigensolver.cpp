#include <algorithm>
#include <cmath>
#include <sstream>

#include <lapacke.h>

#include "pdmqi/error.hpp"
#include "pdmqi/numerics.hpp"

namespace pdmqi::numerics {

namespace {

struct TridiagonalSolution {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // interior nodes only
};

TridiagonalSolution solve_tridiagonal(const RealFunction& potential, const GridSpec& grid,
                                      std::size_t levels, bool want_vectors)
{
    grid.validate();
    const std::size_t interior = grid.points - 2;
    if (levels == 0 || levels > interior) {
        throw Error(ErrorKind::DomainError, "requested eigenvalue count is out of range for the grid");
    }
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> diag(interior);
    std::vector<double> off(interior, -inv_h2);
    for (std::size_t i = 0; i < interior; ++i) {
        const double z = grid.z_min + h * static_cast<double>(i + 1);
        const double v = potential(z);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "effective potential is not finite at grid node z=" << z;
            throw Error(ErrorKind::SingularPotentialOnGrid, msg.str());
        }
        diag[i] = 2.0 * inv_h2 + v;
    }

    const auto n = static_cast<lapack_int>(interior);
    const auto iu = static_cast<lapack_int>(levels);
    lapack_int found = 0;
    std::vector<double> values(interior);
    std::vector<double> vectors(want_vectors ? interior * levels : 1);
    std::vector<lapack_int> support(2 * levels);
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n,
                                           diag.data(), off.data(), 0.0, 0.0, 1, iu, 0.0, &found,
                                           values.data(), vectors.data(), n, support.data());
    if (info != 0 || found != iu) {
        std::ostringstream msg;
        msg << "tridiagonal eigensolver failed (info=" << info << ", found " << found << " of "
            << iu << ")";
        throw Error(ErrorKind::ConvergenceFailure, msg.str());
    }

    TridiagonalSolution out;
    out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(levels));
    if (want_vectors) {
        out.vectors.resize(levels);
        for (std::size_t k = 0; k < levels; ++k) {
            auto first = vectors.begin() + static_cast<std::ptrdiff_t>(k * interior);
            out.vectors[k].assign(first, first + static_cast<std::ptrdiff_t>(interior));
        }
    }
    return out;
}

/// Pads with the Dirichlet zeros, fixes the sign so the first lobe is
/// positive and normalizes with trapezoid weights (endpoint values vanish,
/// so the weights reduce to h).
std::vector<double> finish_vector(const std::vector<double>& interior, double h)
{
    std::vector<double> v(interior.size() + 2, 0.0);
    std::copy(interior.begin(), interior.end(), v.begin() + 1);
    double peak = 0.0;
    for (double x : v) {
        peak = std::max(peak, std::fabs(x));
    }
    for (double x : v) {
        if (std::fabs(x) > 1e-6 * peak) {
            if (x < 0.0) {
                for (double& y : v) {
                    y = -y;
                }
            }
            break;
        }
    }
    double norm = 0.0;
    for (double x : v) {
        norm += x * x;
    }
    norm = std::sqrt(norm * h);
    for (double& x : v) {
        x /= norm;
    }
    return v;
}

} // namespace

double convergence_order(const RealFunction& potential, const GridSpec& grid)
{
    // On fine grids the eigenvalue differences sink below the roundoff of
    // the solver (about eps / h^2), so the order is measured on coarse grids.
    const GridSpec g1{grid.z_min, grid.z_max, std::min<std::size_t>(grid.points, kOrderGridPoints)};
    const GridSpec g2 = g1.refined();
    const double e1 = fd_eigenvalues(potential, g1, 1)[0];
    const double e2 = fd_eigenvalues(potential, g2, 1)[0];
    const double e3 = fd_eigenvalues(potential, g2.refined(), 1)[0];
    const double d1 = e1 - e2;
    const double d2 = e2 - e3;
    return (d1 != 0.0 && d2 != 0.0) ? std::log2(std::fabs(d1 / d2)) : 0.0;
}

void GridSpec::validate() const
{
    constexpr double slack = 1e-15;
    const double limit = kHalfPi - kMinEndpointOffset + slack;
    std::ostringstream msg;
    if (points < 64) {
        msg << "grid needs at least 64 points (got " << points << ")";
    } else if (!(z_min < z_max)) {
        msg << "grid needs z_min < z_max (got " << z_min << ", " << z_max << ")";
    } else if (z_min < -limit || z_max > limit) {
        msg << "grid endpoints must stay at least " << kMinEndpointOffset << " inside +-pi/2";
    } else {
        return;
    }
    throw Error(ErrorKind::DomainError, msg.str());
}

GridSpec GridSpec::full(std::size_t points, double offset)
{
    return {-kHalfPi + offset, kHalfPi - offset, points};
}

GridSpec GridSpec::half(std::size_t points, double origin_offset)
{
    return {origin_offset, kHalfPi - origin_offset, points};
}

std::vector<double> SpectrumResult::nodes() const
{
    const double h = grid.spacing();
    std::vector<double> z;
    if (reflected) {
        z.reserve(2 * grid.points);
        for (std::size_t i = grid.points; i-- > 0;) {
            z.push_back(-(grid.z_min + h * static_cast<double>(i)));
        }
    }
    for (std::size_t i = 0; i < grid.points; ++i) {
        z.push_back(grid.z_min + h * static_cast<double>(i));
    }
    return z;
}

std::vector<double> fd_eigenvalues(const RealFunction& potential, const GridSpec& grid, std::size_t levels)
{
    return solve_tridiagonal(potential, grid, levels, false).values;
}

SpectrumResult fd_eigensolve(const RealFunction& potential, const GridSpec& grid, std::size_t levels)
{
    auto coarse = solve_tridiagonal(potential, grid, levels, true);
    const GridSpec fine_grid = grid.refined();
    const auto fine = fd_eigenvalues(potential, fine_grid, levels);

    SpectrumResult result;
    result.grid = grid;
    result.eigenvalues = coarse.values;
    result.richardson.resize(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        result.richardson[k] = (4.0 * fine[k] - coarse.values[k]) / 3.0;
    }
    result.convergence_order = convergence_order(potential, grid);

    const double h = grid.spacing();
    for (const auto& v : coarse.vectors) {
        result.eigenvectors.push_back(finish_vector(v, h));
    }
    return result;
}

SpectrumResult fd_eigensolve(const model::ModelParams& params, std::size_t levels, std::size_t points)
{
    const RealFunction potential = [&params](double z) { return model::effective_potential_z(z, params); };
    const bool split = params.v1() + params.v2() != 0.0;
    if (!split) {
        return fd_eigensolve(potential, GridSpec::full(points), levels);
    }

    auto result = fd_eigensolve(potential, GridSpec::half(points), levels);
    result.reflected = true;
    // Even reflection: mirror each half-interval vector and renormalize so
    // the full-domain trapezoid norm is one.
    for (auto& v : result.eigenvectors) {
        std::vector<double> full;
        full.reserve(2 * v.size());
        full.insert(full.end(), v.rbegin(), v.rend());
        full.insert(full.end(), v.begin(), v.end());
        const double scale = 1.0 / std::sqrt(2.0);
        for (double& x : full) {
            x *= scale;
        }
        v = std::move(full);
    }
    return result;
}

} // namespace pdmqi::numerics
