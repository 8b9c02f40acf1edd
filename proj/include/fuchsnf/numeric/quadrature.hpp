#ifndef FUCHSNF_NUMERIC_QUADRATURE_HPP
#define FUCHSNF_NUMERIC_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "../hom_vec_poly.hpp"

namespace fuchsnf::numeric
{

struct QuadratureResult {
    Vector value;
    double error_estimate = 0.0;
    unsigned levels = 0;
    std::size_t evaluations = 0;
};

// Double-exponential (tanh-sinh) quadrature of a vector-valued integrand on
// (-1, 1). The integrand is called as f(t, 1 - t, 1 + t) with both
// complements computed without cancellation, so algebraic endpoint
// singularities (1 -/+ t)^(alpha - 1), Re alpha > 0, can be evaluated
// accurately. Nodes never touch the endpoints.
template <typename F>
QuadratureResult tanh_sinh(F &&f, Eigen::Index dim, double tol, unsigned max_levels = 12, double s_max = 6.0)
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    QuadratureResult out;
    out.value = Vector::Zero(dim);

    // Sum of weighted samples at s = k h for the given k (both signs).
    auto node_pair = [&](double s, Vector &acc) {
        const double u = half_pi * std::sinh(s);
        const double e = std::exp(-2.0 * u); // in (0, 1] for s >= 0
        const double comp_small = 2.0 * e / (1.0 + e); // 1 - tanh(u)
        const double comp_large = 2.0 / (1.0 + e);     // 1 + tanh(u)
        const double t = std::tanh(u);
        // dt/ds = (pi/2) cosh(s) / cosh(u)^2 = (pi/2) cosh(s) 4 e / (1 + e)^2
        const double w = half_pi * std::cosh(s) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (w == 0.0 || comp_small == 0.0) {
            return;
        }
        acc += w * f(t, comp_small, comp_large);
        out.evaluations += 1;
        if (s != 0.0) {
            acc += w * f(-t, comp_large, comp_small);
            out.evaluations += 1;
        }
    };

    double h = 1.0;
    Vector sum = Vector::Zero(dim);
    for (long k = 0; static_cast<double>(k) * h <= s_max; ++k) {
        node_pair(static_cast<double>(k) * h, sum);
    }
    Vector estimate = h * sum;
    out.error_estimate = std::numeric_limits<double>::infinity();
    for (unsigned level = 1; level <= max_levels; ++level) {
        h /= 2.0;
        for (long k = 1; static_cast<double>(k) * h <= s_max; k += 2) {
            node_pair(static_cast<double>(k) * h, sum);
        }
        Vector next = h * sum;
        out.error_estimate = max_abs(next - estimate);
        estimate = std::move(next);
        out.levels = level;
        if (level >= 3 && out.error_estimate <= tol) {
            break;
        }
    }
    out.value = estimate;
    return out;
}

} // namespace fuchsnf::numeric

#endif
