#ifndef FUCHSNF_RODRIGUES_HPP
#define FUCHSNF_RODRIGUES_HPP

#include "operators.hpp"

namespace fuchsnf
{

namespace detail
{

// sum_{a,b} x^{a+b} d^2 q(T_a w, T_b w) for an x-free q.
inline XPoly second_derivative_matrix_poly(const MatrixPoly &t, const HomVecPoly &q)
{
    XPoly out(q.dim(), q.degree());
    for (std::size_t a = 0; a < t.size(); ++a) {
        for (std::size_t b = 0; b < t.size(); ++b) {
            out.add_to_coeff(a + b, second_derivative_linear(q, t[a], t[b]));
        }
    }
    return out;
}

} // namespace detail

// Polynomial solutions P_k(x, w; q), k <= 2, of Q D(P) = F_{k+1} with zero
// correction, written as
//   P_k = Y(x) d^k/dt^k [Q(t)^k Y(t)^{-1} q(Y(t) Y(x)^{-1} w)] at t = x
// for a fundamental matrix Y' = M Y, and expanded with Y'' = (M' + M^2) Y.
// Every M-product is reduced to a polynomial through
//   QM = x(A+B) + (A-B),  Q^2 M' = -(x+1)^2 A - (x-1)^2 B,  (Q^2)' M = 4x QM.
inline XPoly rodrigues_P(unsigned k, const HomVecPoly &q, const Matrix &a, const Matrix &b)
{
    const std::size_t d = q.dim();
    require_square(a, d, "rodrigues_P(A)");
    require_square(b, d, "rodrigues_P(B)");
    const XPoly q0(q);
    const MatrixPoly qm = qm_poly(a, b);

    switch (k) {
    case 0:
        return q0;
    case 1: {
        // (Q' - QM) q + Q dq M w
        XPoly out = q0.times_scalar_poly({Complex(0.0), Complex(2.0)});
        out -= apply_matrix_poly(qm, q0);
        out += directional_matrix_poly(qm, q0);
        return out;
    }
    case 2: {
        const MatrixPoly qm2 = multiply(qm, qm);
        const MatrixPoly q2mprime = {-(a + b), Complex(-2.0) * (a - b), -(a + b)};
        const XPoly grad_qm = directional_matrix_poly(qm, q0);

        // [(Q^2)'' + Q^2 (M^2 - M') - 2 (Q^2)' M] q
        XPoly out = q0.times_scalar_poly({Complex(-4.0), Complex(0.0), Complex(12.0)});
        out += apply_matrix_poly(add(qm2, q2mprime, -1.0), q0);
        out -= apply_matrix_poly(qm, q0).times_scalar_poly({Complex(0.0), Complex(8.0)});

        // 2 [(Q^2)' - Q^2 M] dq M w
        XPoly mixed = grad_qm.times_scalar_poly({Complex(0.0), Complex(4.0)});
        mixed -= apply_matrix_poly(qm, grad_qm);
        out += Complex(2.0) * mixed;

        // Q^2 dq (M' + M^2) w + Q^2 d^2 q (M w, M w)
        out += directional_matrix_poly(add(q2mprime, qm2), q0);
        out += detail::second_derivative_matrix_poly(qm, q);
        return out;
    }
    default:
        throw InvalidSystem("rodrigues_P: only k in {0, 1, 2} is supported");
    }
}

// F_{k+1} = Q D(P_k): the right-hand side for which P_k solves the homological
// equation with zero correction.
inline XPoly rodrigues_F(unsigned k, const HomVecPoly &q, const Matrix &a, const Matrix &b)
{
    return apply_D(rodrigues_P(k, q, a, b), a, b);
}

} // namespace fuchsnf

#endif
