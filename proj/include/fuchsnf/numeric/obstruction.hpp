#ifndef FUCHSNF_NUMERIC_OBSTRUCTION_HPP
#define FUCHSNF_NUMERIC_OBSTRUCTION_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "../engine.hpp"
#include "quadrature.hpp"

namespace fuchsnf::numeric
{

struct ObstructionResult {
    Vector value;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail
{

inline bool is_diagonal(const Matrix &m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && m(i, j) != Complex(0.0)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

// Integral over (-1, 1) of Q(t)^{-1} Y(t)^{-1} R_n(t, Y(t) c), Y(0) = I,
// with R_n re-assembled from h (orders below n) and phi (orders through n).
// A and B must be diagonal, so on the real segment Y(t) = diag((1-t)^a_i (1+t)^b_i),
// which is the continuous transport from 0. Each monomial term is evaluated
// with its combined endpoint exponents, so no intermediate overflow occurs.
inline ObstructionResult obstruction_integral(const FuchsianSystem &sys, const VectorSeries &h, const VectorSeries &phi,
                                              unsigned n, const Vector &c, double tol = 1e-10)
{
    sys.validate();
    const std::size_t d = sys.dim;
    if (!detail::is_diagonal(sys.a) || !detail::is_diagonal(sys.b)) {
        throw InvalidSystem("obstruction_integral: requires d = 1 or diagonal A and B");
    }
    if (static_cast<std::size_t>(c.size()) != d) {
        throw InvalidSystem("obstruction_integral: sample vector has wrong dimension");
    }
    if (n < 2 || n > sys.order) {
        throw InvalidSystem("obstruction_integral: order outside [2, N]");
    }
    const Vector ea = sys.a.diagonal();
    const Vector eb = sys.b.diagonal();
    for (std::size_t i = 0; i < d; ++i) {
        const double ra = ea(static_cast<Eigen::Index>(i)).real();
        const double rb = eb(static_cast<Eigen::Index>(i)).real();
        if (!(ra > 0.0 && ra < 1.0 && rb > 0.0 && rb < 1.0)) {
            throw NumericalFailure("obstruction_integral: eigenvalue real parts of A and B must lie in (0, 1); got "
                                   + std::to_string(ra) + ", " + std::to_string(rb)
                                   + " (endpoint behaviour not integrable or outside the admissible range)");
        }
    }

    const XPoly rn = assemble_rhs(sys, h, phi, n, DriverMode::correction);

    // Flattened terms: t^p * v_j * c^m * (1-t)^{m.a - a_j - 1} (1+t)^{m.b - b_j - 1}, negated for 1/Q.
    struct Term {
        std::size_t power;
        std::size_t j;
        Complex weight;
        Complex exp_minus;
        Complex exp_plus;
    };
    std::vector<Term> terms;
    for (std::size_t p = 0; p < rn.size(); ++p) {
        for (const auto &[m, v] : rn.coeffs()[p].terms()) {
            const Complex cm = HomVecPoly::monomial_value(m, c);
            Complex ma(0.0), mb(0.0);
            for (std::size_t k = 0; k < d; ++k) {
                ma += static_cast<double>(m[k]) * ea(static_cast<Eigen::Index>(k));
                mb += static_cast<double>(m[k]) * eb(static_cast<Eigen::Index>(k));
            }
            for (std::size_t j = 0; j < d; ++j) {
                const Complex vj = v(static_cast<Eigen::Index>(j));
                if (vj == Complex(0.0)) {
                    continue;
                }
                const Complex em = ma - ea(static_cast<Eigen::Index>(j)) - 1.0;
                const Complex ep = mb - eb(static_cast<Eigen::Index>(j)) - 1.0;
                if (!(em.real() > -1.0 && ep.real() > -1.0)) {
                    throw NumericalFailure("obstruction_integral: integrand not integrable at an endpoint for term w^"
                                           + [&] {
                                                 std::ostringstream os;
                                                 os << m;
                                                 return os.str();
                                             }());
                }
                terms.push_back({p, j, -vj * cm, em, ep});
            }
        }
    }

    auto integrand = [&](double t, double one_minus, double one_plus) {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(d));
        const double lm = std::log(one_minus);
        const double lp = std::log(one_plus);
        for (const auto &term : terms) {
            const Complex e = std::exp(term.exp_minus * lm + term.exp_plus * lp);
            out(static_cast<Eigen::Index>(term.j)) += term.weight * std::pow(t, static_cast<int>(term.power)) * e;
        }
        return out;
    };
    const auto q = tanh_sinh(integrand, static_cast<Eigen::Index>(d), tol);
    if (!(q.error_estimate <= tol)) {
        throw NumericalFailure("obstruction_integral: quadrature did not reach tolerance (estimate "
                               + std::to_string(q.error_estimate) + ")");
    }
    return {q.value, q.error_estimate, q.evaluations};
}

} // namespace fuchsnf::numeric

#endif
