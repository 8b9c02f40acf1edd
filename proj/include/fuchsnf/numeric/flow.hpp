#ifndef FUCHSNF_NUMERIC_FLOW_HPP
#define FUCHSNF_NUMERIC_FLOW_HPP

#include <optional>

#include "../engine.hpp"
#include "transport.hpp"

namespace fuchsnf::numeric
{

struct FlowOptions {
    double tol = 1e-13;
    // integration aborts once |u| exceeds this
    double ball_radius = 0.5;
};

// Flow of u' = M(x) u + (f(x,u) - g(u)) / Q(x) along the path, with f and g
// truncated at the system order. g defaults to zero.
inline Vector integrate_nonlinear(const FuchsianSystem &sys, const PathSpec &path, const Vector &u0,
                                  const FlowOptions &opt = {}, const VectorSeries *g = nullptr)
{
    sys.validate();
    const auto d = static_cast<Eigen::Index>(sys.dim);
    if (u0.size() != d) {
        throw InvalidSystem("integrate_nonlinear: initial state has wrong dimension");
    }
    VectorSeries field_terms(sys.dim, std::max(sys.order, sys.f.truncation()));
    field_terms += sys.f.restricted(2, sys.order);
    if (g != nullptr) {
        field_terms -= g->restricted(2, sys.order);
    }
    State y(u0.data(), u0.data() + d);
    auto field = [&](Complex z, const State &state, State &deriv) {
        Eigen::Map<const Vector> u(state.data(), d);
        Eigen::Map<Vector> du(deriv.data(), d);
        const Complex q = (z - 1.0) * (z + 1.0);
        du = coefficient_matrix(sys.a, sys.b, z) * u;
        if (!field_terms.is_zero()) {
            du += field_terms.evaluate(z, u) / q;
        }
    };
    auto check = [&](const State &state) {
        Eigen::Map<const Vector> u(state.data(), d);
        if (!(u.norm() <= opt.ball_radius)) {
            throw NumericalFailure("integrate_nonlinear: solution left the ball of radius "
                                   + std::to_string(opt.ball_radius));
        }
    };
    transport(path, field, y, opt.tol, check);
    return Eigen::Map<const Vector>(y.data(), d);
}

// u = H(x, w) = w + h(x, w)
inline Vector apply_H(const VectorSeries &h, Complex x, const Vector &w)
{
    return w + h.evaluate(x, w);
}

struct ConjugacyResult {
    double error = 0.0;
    Vector u_end;
    Vector h_of_w_end;
};

// |u(x1) - H(x1, w(x1))| where w follows the linear system from w0 and u
// follows u' = M u + (f - g)/Q from H(x0, w0). With g = phi from the
// correction driver this measures the truncation error of the linearization.
inline ConjugacyResult conjugacy_check(const FuchsianSystem &sys, const VectorSeries &h, const VectorSeries &g,
                                       const PathSpec &path, const Vector &w0, const FlowOptions &opt = {})
{
    FuchsianSystem linear = sys;
    linear.f = VectorSeries(sys.dim, sys.order);
    const Vector w1 = integrate_nonlinear(linear, path, w0, opt);
    const Vector u0 = apply_H(h, path.start(), w0);
    const Vector u1 = integrate_nonlinear(sys, path, u0, opt, &g);
    ConjugacyResult out;
    out.u_end = u1;
    out.h_of_w_end = apply_H(h, path.end(), w1);
    out.error = (out.u_end - out.h_of_w_end).norm();
    return out;
}

inline ConjugacyResult conjugacy_check(const FuchsianSystem &sys, const CorrectionOutput &corr, const PathSpec &path,
                                       const Vector &w0, const FlowOptions &opt = {})
{
    return conjugacy_check(sys, corr.h, corr.phi(), path, w0, opt);
}

} // namespace fuchsnf::numeric

#endif
