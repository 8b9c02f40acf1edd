#ifndef FUCHSNF_VECTOR_SERIES_HPP
#define FUCHSNF_VECTOR_SERIES_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "xpoly.hpp"

namespace fuchsnf
{

// Truncated formal series sum_{2 <= |m| <= N} c_m(x) w^m with d-vector
// polynomial coefficients, stored order by order.
class VectorSeries
{
public:
    VectorSeries() = default;

    VectorSeries(std::size_t dim, unsigned truncation) : dim_(dim), truncation_(truncation)
    {
        if (dim == 0) {
            throw InvalidSystem("VectorSeries: dimension must be positive");
        }
    }

    std::size_t dim() const noexcept
    {
        return dim_;
    }

    unsigned truncation() const noexcept
    {
        return truncation_;
    }

    const std::map<unsigned, XPoly> &orders() const noexcept
    {
        return orders_;
    }

    XPoly order(unsigned n) const
    {
        auto it = orders_.find(n);
        return it == orders_.end() ? XPoly(dim_, n) : it->second;
    }

    void set_order(unsigned n, XPoly p)
    {
        check_order(n);
        if (p.dim() != dim_ || p.degree() != n) {
            throw InvalidSystem("VectorSeries::set_order: component has wrong dimension or degree");
        }
        if (p.is_zero()) {
            orders_.erase(n);
        } else {
            orders_[n] = std::move(p);
        }
    }

    // Adds poly(x) w^m with poly given by ascending vector coefficients.
    void add_term(const MultiIndex &m, const std::vector<Vector> &poly)
    {
        if (m.dim() != dim_) {
            throw InvalidSystem("VectorSeries::add_term: multi-index dimension mismatch");
        }
        check_order(m.degree());
        XPoly p = order(m.degree());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            p.add_term(k, m, poly[k]);
        }
        set_order(m.degree(), std::move(p));
    }

    void add_term(const MultiIndex &m, const Vector &constant)
    {
        add_term(m, std::vector<Vector>{constant});
    }

    bool is_zero() const noexcept
    {
        return orders_.empty();
    }

    // Orders in [lo, hi] only.
    VectorSeries restricted(unsigned lo, unsigned hi) const
    {
        VectorSeries out(dim_, truncation_);
        for (const auto &[n, p] : orders_) {
            if (n >= lo && n <= hi) {
                out.orders_.emplace(n, p);
            }
        }
        return out;
    }

    VectorSeries &operator+=(const VectorSeries &o)
    {
        check_compatible(o);
        for (const auto &[n, p] : o.orders_) {
            set_order(n, order(n) + p);
        }
        return *this;
    }

    VectorSeries &operator-=(const VectorSeries &o)
    {
        check_compatible(o);
        for (const auto &[n, p] : o.orders_) {
            set_order(n, order(n) - p);
        }
        return *this;
    }

    friend VectorSeries operator+(VectorSeries a, const VectorSeries &b)
    {
        return a += b;
    }

    friend VectorSeries operator-(VectorSeries a, const VectorSeries &b)
    {
        return a -= b;
    }

    std::size_t max_x_degree() const noexcept
    {
        std::size_t r = 0;
        for (const auto &[n, p] : orders_) {
            r = std::max(r, p.x_degree());
        }
        return r;
    }

    double max_abs() const
    {
        double r = 0.0;
        for (const auto &[n, p] : orders_) {
            r = std::max(r, p.max_abs());
        }
        return r;
    }

    Vector evaluate(Complex x, const Vector &w) const
    {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
        for (const auto &[n, p] : orders_) {
            out += p.evaluate(x, w);
        }
        return out;
    }

    // Per multi-index view in graded-lex order.
    std::map<MultiIndex, std::vector<Vector>> by_multi_index() const
    {
        std::map<MultiIndex, std::vector<Vector>> out;
        for (const auto &[n, p] : orders_) {
            out.merge(p.by_multi_index());
        }
        return out;
    }

private:
    void check_order(unsigned n) const
    {
        if (n < 2 || n > truncation_) {
            throw InvalidSystem("VectorSeries: order " + std::to_string(n) + " outside [2, "
                                + std::to_string(truncation_) + "]");
        }
    }

    void check_compatible(const VectorSeries &o) const
    {
        if (o.dim_ != dim_) {
            throw InvalidSystem("VectorSeries: dimension mismatch");
        }
    }

    std::size_t dim_ = 1;
    unsigned truncation_ = 2;
    std::map<unsigned, XPoly> orders_;
};

namespace detail
{

// Scalar truncated series in w with polynomial-in-x coefficients.
using ScalarSeries = std::map<MultiIndex, ScalarPoly>;

inline ScalarSeries truncated_product(const ScalarSeries &a, const ScalarSeries &b, unsigned max_degree)
{
    ScalarSeries out;
    for (const auto &[ma, pa] : a) {
        for (const auto &[mb, pb] : b) {
            if (ma.degree() + mb.degree() > max_degree) {
                // Keys are graded, so later mb only grow in degree.
                break;
            }
            accumulate(out[ma + mb], multiply(pa, pb));
        }
    }
    return out;
}

} // namespace detail

// Degree-n part in w of f(x, w + h(x, w)). Only orders of h below n can
// contribute since f starts at order two.
inline XPoly series_substitute(const VectorSeries &f, const VectorSeries &h, unsigned n)
{
    if (f.dim() != h.dim()) {
        throw InvalidSystem("series_substitute: dimension mismatch between f and h");
    }
    const std::size_t d = f.dim();
    XPoly out(d, n);
    if (n < 2) {
        return out;
    }

    // Components u_i = w_i + h_i as scalar series.
    std::vector<detail::ScalarSeries> comps(d);
    for (std::size_t i = 0; i < d; ++i) {
        comps[i][MultiIndex::unit(d, i)] = ScalarPoly{Complex(1.0)};
    }
    for (const auto &[order, poly] : h.orders()) {
        if (order >= n) {
            break;
        }
        for (const auto &[m, vpoly] : poly.by_multi_index()) {
            for (std::size_t i = 0; i < d; ++i) {
                ScalarPoly s(vpoly.size());
                bool nonzero = false;
                for (std::size_t k = 0; k < vpoly.size(); ++k) {
                    s[k] = vpoly[k](static_cast<Eigen::Index>(i));
                    nonzero = nonzero || s[k] != Complex(0.0);
                }
                if (nonzero) {
                    comps[i][m] = std::move(s);
                }
            }
        }
    }

    // powers[i][e] = u_i^e truncated at degree n
    std::vector<std::vector<detail::ScalarSeries>> powers(d);
    auto power = [&](std::size_t i, unsigned e) -> const detail::ScalarSeries & {
        auto &pi = powers[i];
        if (pi.empty()) {
            pi.push_back({{MultiIndex::zero(d), ScalarPoly{Complex(1.0)}}});
        }
        while (pi.size() <= e) {
            pi.push_back(detail::truncated_product(pi.back(), comps[i], n));
        }
        return pi[e];
    };

    for (const auto &[order, fpoly] : f.orders()) {
        if (order > n) {
            break;
        }
        for (const auto &[m, fm] : fpoly.by_multi_index()) {
            detail::ScalarSeries prod{{MultiIndex::zero(d), ScalarPoly{Complex(1.0)}}};
            for (std::size_t i = 0; i < d; ++i) {
                if (m[i] > 0) {
                    prod = detail::truncated_product(prod, power(i, m[i]), n);
                }
            }
            for (const auto &[q, c] : prod) {
                if (q.degree() != n) {
                    continue;
                }
                for (std::size_t a = 0; a < fm.size(); ++a) {
                    for (std::size_t b = 0; b < c.size(); ++b) {
                        if (c[b] != Complex(0.0)) {
                            out.add_term(a + b, q, c[b] * fm[a]);
                        }
                    }
                }
            }
        }
    }
    return out;
}

// (d_w h_j) psi_m, homogeneous of degree j + m - 1 in w.
inline XPoly jacobian_contract(const XPoly &h, const HomVecPoly &psi)
{
    if (h.dim() != psi.dim()) {
        throw InvalidSystem("jacobian_contract: dimension mismatch");
    }
    const std::size_t d = h.dim();
    if (h.degree() + psi.degree() == 0) {
        throw InvalidSystem("jacobian_contract: degrees too small");
    }
    XPoly out(d, h.degree() + psi.degree() - 1);
    for (std::size_t a = 0; a < h.size(); ++a) {
        HomVecPoly acc(d, out.degree());
        for (const auto &[alpha, v] : h.coeffs()[a].terms()) {
            for (std::size_t k = 0; k < d; ++k) {
                if (alpha[k] == 0) {
                    continue;
                }
                const MultiIndex base = alpha.decremented(k);
                for (const auto &[beta, u] : psi.terms()) {
                    const Complex s = static_cast<double>(alpha[k]) * u(static_cast<Eigen::Index>(k));
                    if (s != Complex(0.0)) {
                        acc.add_term(base + beta, s * v);
                    }
                }
            }
        }
        out.add_to_coeff(a, acc);
    }
    return out;
}

} // namespace fuchsnf

#endif
