#ifndef FUCHSNF_HOM_VEC_POLY_HPP
#define FUCHSNF_HOM_VEC_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "multi_index.hpp"

namespace fuchsnf
{

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline double max_abs(const Vector &v)
{
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

// Homogeneous vector-valued polynomial of degree n in w in C^d:
// sum over |m| = n of c_m w^m, c_m in C^d. Sparse; absent keys are zero.
class HomVecPoly
{
public:
    using TermMap = std::map<MultiIndex, Vector>;

    HomVecPoly() = default;

    HomVecPoly(std::size_t dim, unsigned degree) : dim_(dim), degree_(degree)
    {
        if (dim == 0) {
            throw std::invalid_argument("HomVecPoly: dimension must be positive");
        }
    }

    std::size_t dim() const noexcept
    {
        return dim_;
    }

    unsigned degree() const noexcept
    {
        return degree_;
    }

    const TermMap &terms() const noexcept
    {
        return terms_;
    }

    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    // Full dimension of the space P_n.
    std::size_t space_dim() const
    {
        return dim_ * monomial_count(dim_, degree_);
    }

    Vector coeff(const MultiIndex &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Vector::Zero(static_cast<Eigen::Index>(dim_)) : it->second;
    }

    // Accumulates; exact zeros are dropped.
    void add_term(const MultiIndex &m, const Vector &c)
    {
        check_key(m);
        if (c.size() != static_cast<Eigen::Index>(dim_)) {
            throw std::invalid_argument("HomVecPoly::add_term: coefficient size mismatch");
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
        }
        if (it->second.isZero(0.0)) {
            terms_.erase(it);
        }
    }

    // Adds c * e_j * w^m.
    void add_term(const MultiIndex &m, std::size_t j, Complex c)
    {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_));
        v(static_cast<Eigen::Index>(j)) = c;
        add_term(m, v);
    }

    HomVecPoly &operator+=(const HomVecPoly &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    HomVecPoly &operator-=(const HomVecPoly &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    HomVecPoly &operator*=(Complex s)
    {
        if (s == Complex(0.0)) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend HomVecPoly operator+(HomVecPoly a, const HomVecPoly &b)
    {
        return a += b;
    }

    friend HomVecPoly operator-(HomVecPoly a, const HomVecPoly &b)
    {
        return a -= b;
    }

    friend HomVecPoly operator*(Complex s, HomVecPoly a)
    {
        return a *= s;
    }

    HomVecPoly operator-() const
    {
        return Complex(-1.0) * *this;
    }

    // Applies a constant matrix to every coefficient vector: (T p)(w) = T p(w).
    HomVecPoly left_multiplied(const Matrix &t) const
    {
        HomVecPoly out(dim_, degree_);
        for (const auto &[m, c] : terms_) {
            out.add_term(m, t * c);
        }
        return out;
    }

    double max_abs() const
    {
        double r = 0.0;
        for (const auto &[m, c] : terms_) {
            r = std::max(r, fuchsnf::max_abs(c));
        }
        return r;
    }

    Vector evaluate(const Vector &w) const
    {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
        for (const auto &[m, c] : terms_) {
            out += monomial_value(m, w) * c;
        }
        return out;
    }

    static Complex monomial_value(const MultiIndex &m, const Vector &w)
    {
        Complex v(1.0);
        for (std::size_t k = 0; k < m.dim(); ++k) {
            for (unsigned e = 0; e < m[k]; ++e) {
                v *= w(static_cast<Eigen::Index>(k));
            }
        }
        return v;
    }

    // Coordinates in the basis w^m e_j, monomials in graded-lex order,
    // component index fastest: position = monomial_position * d + j.
    Vector to_dense() const
    {
        const auto basis = enumerate_multi_indices(dim_, degree_);
        Vector out = Vector::Zero(static_cast<Eigen::Index>(basis.size() * dim_));
        for (std::size_t b = 0; b < basis.size(); ++b) {
            auto it = terms_.find(basis[b]);
            if (it != terms_.end()) {
                out.segment(static_cast<Eigen::Index>(b * dim_), static_cast<Eigen::Index>(dim_)) = it->second;
            }
        }
        return out;
    }

    static HomVecPoly from_dense(std::size_t dim, unsigned degree, const Vector &coords)
    {
        const auto basis = enumerate_multi_indices(dim, degree);
        if (coords.size() != static_cast<Eigen::Index>(basis.size() * dim)) {
            throw std::invalid_argument("HomVecPoly::from_dense: coordinate vector has wrong length");
        }
        HomVecPoly out(dim, degree);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            out.add_term(basis[b], coords.segment(static_cast<Eigen::Index>(b * dim), static_cast<Eigen::Index>(dim)));
        }
        return out;
    }

private:
    void check_key(const MultiIndex &m) const
    {
        if (m.dim() != dim_ || m.degree() != degree_) {
            throw std::invalid_argument("HomVecPoly: multi-index does not match dimension/degree");
        }
    }

    void check_compatible(const HomVecPoly &o) const
    {
        if (o.dim_ != dim_ || o.degree_ != degree_) {
            throw std::invalid_argument("HomVecPoly: incompatible operands");
        }
    }

    std::size_t dim_ = 1;
    unsigned degree_ = 0;
    TermMap terms_;
};

// (dp) T w: the derivative of p applied to the linear field T w. Degree preserved.
inline HomVecPoly directional_linear(const HomVecPoly &p, const Matrix &t)
{
    const std::size_t d = p.dim();
    HomVecPoly out(d, p.degree());
    for (const auto &[m, c] : p.terms()) {
        for (std::size_t k = 0; k < d; ++k) {
            if (m[k] == 0) {
                continue;
            }
            const MultiIndex base = m.decremented(k);
            for (std::size_t l = 0; l < d; ++l) {
                const Complex s = static_cast<double>(m[k]) * t(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
                if (s != Complex(0.0)) {
                    out.add_term(base.incremented(l), s * c);
                }
            }
        }
    }
    return out;
}

// d^2 p (U w, V w). Degree preserved.
inline HomVecPoly second_derivative_linear(const HomVecPoly &p, const Matrix &u, const Matrix &v)
{
    const std::size_t d = p.dim();
    HomVecPoly out(d, p.degree());
    for (const auto &[m, c] : p.terms()) {
        for (std::size_t k = 0; k < d; ++k) {
            if (m[k] == 0) {
                continue;
            }
            const MultiIndex mk = m.decremented(k);
            for (std::size_t l = 0; l < d; ++l) {
                if (mk[l] == 0) {
                    continue;
                }
                // d^2 w^m / dw_k dw_l = m_k (m - e_k)_l w^{m - e_k - e_l}
                const double factor = static_cast<double>(m[k]) * static_cast<double>(mk[l]);
                const MultiIndex base = mk.decremented(l);
                for (std::size_t s = 0; s < d; ++s) {
                    for (std::size_t r = 0; r < d; ++r) {
                        const Complex coef = factor * u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s))
                                             * v(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r));
                        if (coef != Complex(0.0)) {
                            out.add_term(base.incremented(s).incremented(r), coef * c);
                        }
                    }
                }
            }
        }
    }
    return out;
}

// (J_Lambda p)(w) = (dp) Lambda w - Lambda p(w).
inline HomVecPoly apply_J(const Matrix &lambda, const HomVecPoly &p)
{
    return directional_linear(p, lambda) - p.left_multiplied(lambda);
}

} // namespace fuchsnf

#endif
