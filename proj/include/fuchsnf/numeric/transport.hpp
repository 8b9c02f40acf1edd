#ifndef FUCHSNF_NUMERIC_TRANSPORT_HPP
#define FUCHSNF_NUMERIC_TRANSPORT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "path.hpp"

namespace fuchsnf::numeric
{

using State = std::vector<Complex>;

struct IntegratorStats {
    std::size_t steps = 0;
    double tolerance = 0.0;
};

namespace detail
{

inline constexpr std::size_t max_steps_per_segment = 2'000'000;

} // namespace detail

// Integrates dy/dz = field(z, y) along the path with an adaptive
// Dormand-Prince 5(4) pair in the real path parameter of each segment.
// `check(y)` runs after every accepted step and may throw.
template <typename Field, typename Check>
IntegratorStats transport(const PathSpec &path, Field &&field, State &y, double tol, Check &&check)
{
    namespace odeint = boost::numeric::odeint;
    IntegratorStats stats{0, tol};
    State dy(y.size());
    for (const auto &seg : path.segments()) {
        if (std::abs(tangent_at(seg, 0.0)) == 0.0 && std::abs(tangent_at(seg, 1.0)) == 0.0) {
            continue;
        }
        auto rhs = [&](const State &state, State &deriv, double s) {
            const Complex z = point_at(seg, s);
            const Complex dz = tangent_at(seg, s);
            field(z, state, deriv);
            for (auto &v : deriv) {
                v *= dz;
            }
        };
        std::size_t seg_steps = 0;
        auto observer = [&](const State &state, double) {
            ++seg_steps;
            if (seg_steps > detail::max_steps_per_segment) {
                throw NumericalFailure("transport: step budget exhausted (step-size collapse)");
            }
            check(state);
        };
        try {
            auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
            odeint::integrate_adaptive(stepper, rhs, y, 0.0, 1.0, 1e-3, observer);
        } catch (const odeint::step_adjustment_error &e) {
            throw NumericalFailure(std::string("transport: step-size collapse: ") + e.what());
        }
        stats.steps += seg_steps;
        for (const auto &v : y) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw NumericalFailure("transport: solution became non-finite");
            }
        }
    }
    return stats;
}

template <typename Field>
IntegratorStats transport(const PathSpec &path, Field &&field, State &y, double tol)
{
    return transport(path, std::forward<Field>(field), y, tol, [](const State &) {});
}

inline Matrix coefficient_matrix(const Matrix &a, const Matrix &b, Complex z)
{
    return a / (z - 1.0) + b / (z + 1.0);
}

struct TransportResult {
    // Y at the path end, starting from the identity.
    Matrix y;
    // For closed paths: Y continued around the loop, so AC Y = Y G with G = y.
    std::optional<Matrix> monodromy;
    IntegratorStats stats;
};

// Fundamental matrix of Y' = M(x) Y, Y(start) = I, continued along the path.
inline TransportResult integrate_linear(const Matrix &a, const Matrix &b, const PathSpec &path, double tol = 1e-12)
{
    const auto d = a.rows();
    if (a.cols() != d || b.rows() != d || b.cols() != d) {
        throw InvalidSystem("integrate_linear: A and B must be square of equal size");
    }
    State y(static_cast<std::size_t>(d * d), Complex(0.0));
    for (Eigen::Index i = 0; i < d; ++i) {
        y[static_cast<std::size_t>(i * d + i)] = 1.0;
    }
    auto field = [&](Complex z, const State &state, State &deriv) {
        const Matrix m = coefficient_matrix(a, b, z);
        Eigen::Map<const Matrix> ym(state.data(), d, d);
        Eigen::Map<Matrix> dm(deriv.data(), d, d);
        dm.noalias() = m * ym;
    };
    TransportResult out;
    out.stats = transport(path, field, y, tol);
    out.y = Eigen::Map<const Matrix>(y.data(), d, d);
    if (out.y.determinant() == Complex(0.0)) {
        throw NumericalFailure("integrate_linear: fundamental matrix became singular");
    }
    if (path.closed()) {
        out.monodromy = out.y;
    }
    return out;
}

// Monodromy of Y' = M Y based at 0 along a standard counterclockwise loop.
inline Matrix monodromy(const Matrix &a, const Matrix &b, LoopAround which, double tol = 1e-12, double radius = 0.5)
{
    return *integrate_linear(a, b, PathSpec::loop(which, radius), tol).monodromy;
}

} // namespace fuchsnf::numeric

#endif
