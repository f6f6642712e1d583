#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pdmqi/error.hpp"
#include "pdmqi/numerics.hpp"

namespace pdmqi::numerics {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value; // integral of |f| over the panel

    // Largest error first; ties broken by position so ordering is deterministic.
    bool operator<(const Panel& other) const noexcept
    {
        if (error != other.error) {
            return error < other.error;
        }
        return lo > other.lo;
    }
};

/// One 21-point Kronrod panel with the embedded 10-point Gauss rule. The
/// error heuristic is the QUADPACK one: |K - G| rescaled against the mean
/// deviation of f over the panel, floored at the rounding level.
Panel evaluate_panel(const RealFunction& f, double lo, double hi, std::size_t& evaluations)
{
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 21> values{};
    values[0] = f(center);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        values[2 * i - 1] = f(center - half * xk[i]);
        values[2 * i] = f(center + half * xk[i]);
    }
    evaluations += values.size();

    double kronrod = values[0] * wk[0];
    double gauss = 0.0;
    double abs_sum = std::fabs(values[0]) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = values[2 * i - 1] + values[2 * i];
        kronrod += wk[i] * pair;
        abs_sum += wk[i] * (std::fabs(values[2 * i - 1]) + std::fabs(values[2 * i]));
        if (i % 2 == 1) {
            gauss += wg[i / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = wk[0] * std::fabs(values[0] - mean);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        asc += wk[i] * (std::fabs(values[2 * i - 1] - mean) + std::fabs(values[2 * i] - mean));
    }

    Panel panel{lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half), abs_sum * std::fabs(half)};
    const double resasc = asc * std::fabs(half);
    if (resasc != 0.0 && panel.error != 0.0) {
        panel.error = resasc * std::min(1.0, std::pow(200.0 * panel.error / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (panel.abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) {
        panel.error = std::max(50.0 * eps * panel.abs_value, panel.error);
    }
    if (!std::isfinite(panel.value)) {
        panel.error = std::numeric_limits<double>::infinity();
    }
    return panel;
}

} // namespace

QuadratureResult integrate_interval(const RealFunction& f, double lo, double hi,
                                    const QuadratureOptions& options)
{
    QuadratureResult result;
    if (lo == hi) {
        result.converged = true;
        return result;
    }
    if (!(options.tol > 0.0)) {
        throw Error(ErrorKind::DomainError, "quadrature tolerance must be positive");
    }

    std::priority_queue<Panel> heap;
    const std::size_t initial = std::max<std::size_t>(1, options.initial_panels);
    const double width = (hi - lo) / static_cast<double>(initial);
    for (std::size_t i = 0; i < initial; ++i) {
        const double a = lo + width * static_cast<double>(i);
        const double b = (i + 1 == initial) ? hi : a + width;
        heap.push(evaluate_panel(f, a, b, result.evaluations));
    }

    auto totals = [&heap]() {
        // The heap is rebuilt from a copy only to read totals; sums are taken
        // in a fixed (sorted) order so results are bit-reproducible.
        std::vector<Panel> panels;
        panels.reserve(heap.size());
        auto copy = heap;
        while (!copy.empty()) {
            panels.push_back(copy.top());
            copy.pop();
        }
        std::sort(panels.begin(), panels.end(),
                  [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
        double value = 0.0, error = 0.0, l1 = 0.0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
            l1 += p.abs_value;
        }
        return std::array<double, 3>{value, error, l1};
    };

    const auto initial_sums = totals();
    double running_error = initial_sums[1];
    double l1 = initial_sums[2];
    std::size_t since_total = 0;

    while (heap.size() < options.max_panels) {
        const double target = options.tol * std::max(1.0, l1);
        if (running_error <= target) {
            break;
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            break; // cannot bisect further in double precision
        }
        heap.pop();
        const Panel left = evaluate_panel(f, worst.lo, mid, result.evaluations);
        const Panel right = evaluate_panel(f, mid, worst.hi, result.evaluations);
        running_error += left.error + right.error - worst.error;
        l1 += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        // Refresh the running sums periodically to shed accumulated rounding.
        if (++since_total == 64) {
            since_total = 0;
            const auto refreshed = totals();
            running_error = refreshed[1];
            l1 = refreshed[2];
        }
    }

    const auto [final_value, final_error, final_l1] = totals();
    result.value = final_value;
    result.abs_error_estimate = final_error;
    result.converged = std::isfinite(final_value) && final_error <= options.tol * std::max(1.0, final_l1);
    return result;
}

QuadratureResult integrate_real_line(const RealFunction& f, double tol, double scale)
{
    const RealFunction mapped = [&f, scale](double t) {
        const double inv = 1.0 / (1.0 - t * t);
        const double x = scale * t * inv;
        const double jac = scale * (1.0 + t * t) * inv * inv;
        if (!std::isfinite(x) || !std::isfinite(jac)) {
            return 0.0;
        }
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * jac;
    };
    QuadratureOptions options;
    options.tol = tol;
    options.initial_panels = 16;
    return integrate_interval(mapped, -1.0, 1.0, options);
}

QuadratureResult integrate_half_line(const RealFunction& f, double tol, double scale)
{
    const RealFunction mapped = [&f, scale](double t) {
        const double inv = 1.0 / (1.0 - t * t);
        const double x = scale * t * inv;
        const double jac = scale * (1.0 + t * t) * inv * inv;
        if (!std::isfinite(x) || !std::isfinite(jac)) {
            return 0.0;
        }
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * jac;
    };
    QuadratureOptions options;
    options.tol = tol;
    options.initial_panels = 8;
    return integrate_interval(mapped, 0.0, 1.0, options);
}

} // namespace pdmqi::numerics
