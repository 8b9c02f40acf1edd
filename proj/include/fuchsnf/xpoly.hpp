#ifndef FUCHSNF_XPOLY_HPP
#define FUCHSNF_XPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hom_vec_poly.hpp"

namespace fuchsnf
{

// Scalar polynomial in x, coefficients ascending.
using ScalarPoly = std::vector<Complex>;

// Polynomial in x with d x d matrix coefficients, ascending.
using MatrixPoly = std::vector<Matrix>;

// Polynomial in x whose coefficients are homogeneous vector polynomials of a
// shared w-degree n: P(x, w) = sum_k x^k p_k(w).
class XPoly
{
public:
    XPoly() = default;

    XPoly(std::size_t dim, unsigned degree) : dim_(dim), degree_(degree) {}

    // x-free polynomial.
    explicit XPoly(HomVecPoly p) : dim_(p.dim()), degree_(p.degree())
    {
        coeffs_.push_back(std::move(p));
        trim();
    }

    XPoly(std::size_t dim, unsigned degree, std::vector<HomVecPoly> coeffs)
        : dim_(dim), degree_(degree), coeffs_(std::move(coeffs))
    {
        for (const auto &c : coeffs_) {
            check(c);
        }
        trim();
    }

    std::size_t dim() const noexcept
    {
        return dim_;
    }

    // Homogeneous degree in w.
    unsigned degree() const noexcept
    {
        return degree_;
    }

    bool is_zero() const noexcept
    {
        return coeffs_.empty();
    }

    // Degree in x; 0 for the zero polynomial (check is_zero()).
    std::size_t x_degree() const noexcept
    {
        return coeffs_.empty() ? 0 : coeffs_.size() - 1;
    }

    std::size_t size() const noexcept
    {
        return coeffs_.size();
    }

    const std::vector<HomVecPoly> &coeffs() const noexcept
    {
        return coeffs_;
    }

    // Coefficient of x^k (zero beyond the x-degree).
    HomVecPoly coeff(std::size_t k) const
    {
        return k < coeffs_.size() ? coeffs_[k] : HomVecPoly(dim_, degree_);
    }

    void add_to_coeff(std::size_t k, const HomVecPoly &p)
    {
        check(p);
        if (p.is_zero()) {
            return;
        }
        if (k >= coeffs_.size()) {
            coeffs_.resize(k + 1, HomVecPoly(dim_, degree_));
        }
        coeffs_[k] += p;
        trim();
    }

    // Adds x^k * c * w^m.
    void add_term(std::size_t k, const MultiIndex &m, const Vector &c)
    {
        HomVecPoly p(dim_, degree_);
        p.add_term(m, c);
        add_to_coeff(k, p);
    }

    XPoly &operator+=(const XPoly &o)
    {
        check_compatible(o);
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
            add_to_coeff(k, o.coeffs_[k]);
        }
        return *this;
    }

    XPoly &operator-=(const XPoly &o)
    {
        check_compatible(o);
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
            add_to_coeff(k, -o.coeffs_[k]);
        }
        return *this;
    }

    XPoly &operator*=(Complex s)
    {
        for (auto &c : coeffs_) {
            c *= s;
        }
        trim();
        return *this;
    }

    friend XPoly operator+(XPoly a, const XPoly &b)
    {
        return a += b;
    }

    friend XPoly operator-(XPoly a, const XPoly &b)
    {
        return a -= b;
    }

    friend XPoly operator*(Complex s, XPoly a)
    {
        return a *= s;
    }

    XPoly operator-() const
    {
        return Complex(-1.0) * *this;
    }

    // d/dx.
    XPoly derivative() const
    {
        XPoly out(dim_, degree_);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            out.add_to_coeff(k - 1, Complex(static_cast<double>(k)) * coeffs_[k]);
        }
        return out;
    }

    XPoly times_scalar_poly(const ScalarPoly &s) const
    {
        XPoly out(dim_, degree_);
        for (std::size_t a = 0; a < s.size(); ++a) {
            if (s[a] == Complex(0.0)) {
                continue;
            }
            for (std::size_t b = 0; b < coeffs_.size(); ++b) {
                out.add_to_coeff(a + b, s[a] * coeffs_[b]);
            }
        }
        return out;
    }

    // Coefficientwise map p_k -> op(p_k), op linear and degree preserving.
    template <typename Op>
    XPoly map_coeffs(Op &&op) const
    {
        XPoly out(dim_, degree_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            out.add_to_coeff(k, op(coeffs_[k]));
        }
        return out;
    }

    double max_abs() const
    {
        double r = 0.0;
        for (const auto &c : coeffs_) {
            r = std::max(r, c.max_abs());
        }
        return r;
    }

    Vector evaluate(Complex x, const Vector &w) const
    {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            out = (out * x + coeffs_[k].evaluate(w)).eval();
        }
        return out;
    }

    // Regroups by multi-index: m -> x-polynomial with vector coefficients.
    std::map<MultiIndex, std::vector<Vector>> by_multi_index() const
    {
        std::map<MultiIndex, std::vector<Vector>> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            for (const auto &[m, c] : coeffs_[k].terms()) {
                auto &poly = out[m];
                if (poly.size() <= k) {
                    poly.resize(k + 1, Vector::Zero(static_cast<Eigen::Index>(dim_)));
                }
                poly[k] = c;
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
    }

    void check(const HomVecPoly &p) const
    {
        if (p.dim() != dim_ || p.degree() != degree_) {
            throw std::invalid_argument("XPoly: coefficient dimension/degree mismatch");
        }
    }

    void check_compatible(const XPoly &o) const
    {
        if (o.dim_ != dim_ || o.degree_ != degree_) {
            throw std::invalid_argument("XPoly: incompatible operands");
        }
    }

    std::size_t dim_ = 1;
    unsigned degree_ = 0;
    std::vector<HomVecPoly> coeffs_;
};

// sum_{a,b} x^{a+b} T_a p_b
inline XPoly apply_matrix_poly(const MatrixPoly &t, const XPoly &p)
{
    XPoly out(p.dim(), p.degree());
    for (std::size_t a = 0; a < t.size(); ++a) {
        for (std::size_t b = 0; b < p.size(); ++b) {
            out.add_to_coeff(a + b, p.coeffs()[b].left_multiplied(t[a]));
        }
    }
    return out;
}

// sum_{a,b} x^{a+b} (d p_b) T_a w
inline XPoly directional_matrix_poly(const MatrixPoly &t, const XPoly &p)
{
    XPoly out(p.dim(), p.degree());
    for (std::size_t a = 0; a < t.size(); ++a) {
        for (std::size_t b = 0; b < p.size(); ++b) {
            out.add_to_coeff(a + b, directional_linear(p.coeffs()[b], t[a]));
        }
    }
    return out;
}

inline MatrixPoly multiply(const MatrixPoly &a, const MatrixPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    const auto n = a.front().rows();
    MatrixPoly out(a.size() + b.size() - 1, Matrix::Zero(n, n));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline MatrixPoly add(const MatrixPoly &a, const MatrixPoly &b, Complex sb = 1.0)
{
    const auto n = !a.empty() ? a.front().rows() : (!b.empty() ? b.front().rows() : 0);
    MatrixPoly out(std::max(a.size(), b.size()), Matrix::Zero(n, n));
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] += sb * b[i];
    }
    return out;
}

inline MatrixPoly scale(const ScalarPoly &s, const MatrixPoly &a)
{
    if (s.empty() || a.empty()) {
        return {};
    }
    const auto n = a.front().rows();
    MatrixPoly out(s.size() + a.size() - 1, Matrix::Zero(n, n));
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[i + j] += s[i] * a[j];
        }
    }
    return out;
}

inline ScalarPoly multiply(const ScalarPoly &a, const ScalarPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    ScalarPoly out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex(0.0)) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline void accumulate(ScalarPoly &acc, const ScalarPoly &a, Complex s = 1.0)
{
    if (acc.size() < a.size()) {
        acc.resize(a.size(), Complex(0.0));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc[i] += s * a[i];
    }
}

} // namespace fuchsnf

#endif
