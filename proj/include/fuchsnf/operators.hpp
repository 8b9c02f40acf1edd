#ifndef FUCHSNF_OPERATORS_HPP
#define FUCHSNF_OPERATORS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "xpoly.hpp"

namespace fuchsnf
{

struct Tolerances {
    // |k + m.lambda - lambda_j| below this counts as a resonance.
    double resonance = 1e-9;
    // Shifted solves with a larger condition estimate are refused.
    double condition_alarm = 1e10;
};

inline void require_square(const Matrix &m, std::size_t dim, const char *what)
{
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim) {
        throw InvalidSystem(std::string(what) + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim)
                            + " matrix");
    }
    if (!m.allFinite()) {
        throw InvalidSystem(std::string(what) + ": non-finite entry");
    }
}

// Matrix of p -> (dp) Lambda w - Lambda p on P_n in the basis of
// HomVecPoly::to_dense.
inline Matrix build_J_matrix(const Matrix &lambda, unsigned degree)
{
    const auto d = static_cast<std::size_t>(lambda.rows());
    require_square(lambda, d, "build_J_matrix");
    const auto basis = enumerate_multi_indices(d, degree);
    const auto size = static_cast<Eigen::Index>(basis.size() * d);
    Matrix out(size, size);
    Eigen::Index col = 0;
    for (const auto &m : basis) {
        for (std::size_t j = 0; j < d; ++j, ++col) {
            HomVecPoly e(d, degree);
            e.add_term(m, j, Complex(1.0));
            out.col(col) = apply_J(lambda, e).to_dense();
        }
    }
    return out;
}

inline std::vector<Complex> eigenvalues(const Matrix &m)
{
    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("eigenvalue computation did not converge");
    }
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

// Solves (l + J_Lambda) p = q on P_n for repeated shifts l at one degree n.
// The operator is factored densely per shift; no diagonalization is used.
class ShiftedSolver
{
public:
    ShiftedSolver(const Matrix &lambda, unsigned degree, Tolerances tol = {})
        : lambda_(lambda), degree_(degree), tol_(tol), basis_(enumerate_multi_indices(lambda.rows(), degree))
    {
        require_square(lambda, static_cast<std::size_t>(lambda.rows()), "ShiftedSolver");
        j_matrix_ = build_J_matrix(lambda, degree);
        spectrum_ = eigenvalues(lambda);
    }

    unsigned degree() const noexcept
    {
        return degree_;
    }

    const Matrix &j_matrix() const noexcept
    {
        return j_matrix_;
    }

    // Nearest predicted eigenvalue of l + J: min over (m, j) of |l + m.lambda - lambda_j|.
    ResonanceInfo nearest_resonance(unsigned shift) const
    {
        const std::size_t d = spectrum_.size();
        ResonanceInfo best;
        best.order = degree_;
        best.shift = shift;
        best.margin = std::numeric_limits<double>::infinity();
        for (const auto &m : basis_) {
            Complex mdot(0.0);
            for (std::size_t k = 0; k < d; ++k) {
                mdot += static_cast<double>(m[k]) * spectrum_[k];
            }
            for (std::size_t j = 0; j < d; ++j) {
                const double v = std::abs(static_cast<double>(shift) + mdot - spectrum_[j]);
                if (v < best.margin) {
                    best.margin = v;
                    best.component = j;
                    best.multi_index = m;
                }
            }
        }
        return best;
    }

    struct Result {
        HomVecPoly p;
        double residual = 0.0;
    };

    Result solve(unsigned shift, const HomVecPoly &q) const
    {
        if (q.degree() != degree_ || q.dim() != static_cast<std::size_t>(lambda_.rows())) {
            throw InvalidSystem("solve_shifted: right-hand side has wrong degree or dimension");
        }
        ResonanceInfo near = nearest_resonance(shift);
        if (near.margin < tol_.resonance) {
            throw ResonanceSingular(near);
        }
        Matrix op = j_matrix_;
        op.diagonal().array() += Complex(static_cast<double>(shift));
        Eigen::PartialPivLU<Matrix> lu(op);
        const double rcond = lu.rcond();
        if (!(rcond * tol_.condition_alarm >= 1.0)) {
            near.ill_conditioned = true;
            near.margin = rcond;
            throw ResonanceSingular(near);
        }
        const Vector rhs = q.to_dense();
        const Vector x = lu.solve(rhs);
        Result r{HomVecPoly::from_dense(q.dim(), degree_, x), 0.0};
        const double scale = std::max(1.0, max_abs(rhs));
        r.residual = max_abs(op * x - rhs) / scale;
        return r;
    }

private:
    Matrix lambda_;
    unsigned degree_;
    Tolerances tol_;
    std::vector<MultiIndex> basis_;
    Matrix j_matrix_;
    std::vector<Complex> spectrum_;
};

inline HomVecPoly solve_shifted(unsigned shift, const Matrix &lambda, const HomVecPoly &q, Tolerances tol = {})
{
    return ShiftedSolver(lambda, q.degree(), tol).solve(shift, q).p;
}

// Q(x) M(x) = x (A + B) + (A - B) as a matrix polynomial.
inline MatrixPoly qm_poly(const Matrix &a, const Matrix &b)
{
    return {a - b, a + b};
}

// Q(x) [d_x P + (d_w P) M w - M P] with Q = x^2 - 1 and M = A/(x-1) + B/(x+1).
// Uses Q M = x L + N, L = A + B, N = A - B, so everything stays polynomial.
inline XPoly apply_D(const XPoly &p, const Matrix &a, const Matrix &b)
{
    const std::size_t d = p.dim();
    require_square(a, d, "apply_D(A)");
    require_square(b, d, "apply_D(B)");
    const Matrix l = a + b;
    const Matrix n = a - b;
    XPoly out = p.derivative().times_scalar_poly({Complex(-1.0), Complex(0.0), Complex(1.0)});
    for (std::size_t k = 0; k < p.size(); ++k) {
        const HomVecPoly &pk = p.coeffs()[k];
        out.add_to_coeff(k + 1, apply_J(l, pk));
        out.add_to_coeff(k, apply_J(n, pk));
    }
    return out;
}

} // namespace fuchsnf

#endif
