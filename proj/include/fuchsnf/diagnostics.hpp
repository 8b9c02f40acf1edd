#ifndef FUCHSNF_DIAGNOSTICS_HPP
#define FUCHSNF_DIAGNOSTICS_HPP

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "operators.hpp"

namespace fuchsnf
{

struct ResonanceHit {
    MultiIndex n;
    std::size_t j = 0; // 0-based
    unsigned k = 0;
    double distance = 0.0; // |k - (lambda_j - n.lambda)|
};

struct DiophantineMargin {
    // min over scanned (n, l, s) of |n.mu + l - mu_s|
    double margin = std::numeric_limits<double>::infinity();
    MultiIndex argmin_n;
    unsigned argmin_l = 0;
    std::size_t argmin_s = 0;
    // K = |n| + l  ->  min margin over entries with that K
    std::map<unsigned, double> curve;
};

struct DiagnosticsReport {
    std::vector<Complex> eig_a, eig_b, eig_sum;
    std::vector<bool> integer_a, integer_b;
    std::vector<ResonanceHit> hits;
    DiophantineMargin margin_a, margin_b;
    unsigned max_order = 2;
    unsigned l_max = 0;
    std::optional<std::string> eigen_failure;

    bool has_integer_eigenvalue() const
    {
        for (bool f : integer_a) {
            if (f) {
                return true;
            }
        }
        for (bool f : integer_b) {
            if (f) {
                return true;
            }
        }
        return false;
    }

    bool resonant() const noexcept
    {
        return !hits.empty();
    }

    // First hit at the given order, if any.
    std::optional<ResonanceHit> hit_at_order(unsigned order) const
    {
        for (const auto &h : hits) {
            if (h.n.degree() == order) {
                return h;
            }
        }
        return std::nullopt;
    }
};

inline bool near_integer(Complex z, double tol)
{
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

inline Complex dot(const MultiIndex &m, const std::vector<Complex> &v)
{
    Complex s(0.0);
    for (std::size_t k = 0; k < m.dim(); ++k) {
        s += static_cast<double>(m[k]) * v[k];
    }
    return s;
}

// Resonances k + n.lambda - lambda_j = 0, k in N, 2 <= |n| <= max_order.
inline std::vector<ResonanceHit> scan_resonances(const std::vector<Complex> &lambda, unsigned min_order,
                                                 unsigned max_order, double tol)
{
    std::vector<ResonanceHit> hits;
    const std::size_t d = lambda.size();
    for (unsigned order = std::max(2u, min_order); order <= max_order; ++order) {
        for (const auto &n : enumerate_multi_indices(d, order)) {
            const Complex nl = dot(n, lambda);
            for (std::size_t j = 0; j < d; ++j) {
                const Complex v = lambda[j] - nl;
                const auto kmax = static_cast<unsigned>(std::ceil(std::abs(v))) + 1u;
                for (unsigned k = 0; k <= kmax; ++k) {
                    const double dist = std::abs(static_cast<double>(k) - v);
                    if (dist < tol) {
                        hits.push_back({n, j, k, dist});
                    }
                }
            }
        }
    }
    return hits;
}

inline DiophantineMargin diophantine_margin(const std::vector<Complex> &mu, unsigned max_order, unsigned l_max)
{
    DiophantineMargin out;
    const std::size_t d = mu.size();
    for (unsigned order = 2; order <= max_order; ++order) {
        for (const auto &n : enumerate_multi_indices(d, order)) {
            const Complex nm = dot(n, mu);
            for (unsigned l = 0; l <= l_max; ++l) {
                for (std::size_t s = 0; s < d; ++s) {
                    const double v = std::abs(nm + static_cast<double>(l) - mu[s]);
                    auto [it, inserted] = out.curve.try_emplace(order + l, v);
                    if (!inserted) {
                        it->second = std::min(it->second, v);
                    }
                    if (v < out.margin) {
                        out.margin = v;
                        out.argmin_n = n;
                        out.argmin_l = l;
                        out.argmin_s = s;
                    }
                }
            }
        }
    }
    return out;
}

// Finite-scan check of the standing assumptions: integer eigenvalues of A, B,
// nonresonance of the spectrum of A + B up to max_order, and Diophantine
// margins of A and B up to (max_order, l_max).
inline DiagnosticsReport diagnose(const Matrix &a, const Matrix &b, unsigned max_order, unsigned l_max,
                                  Tolerances tol = {})
{
    if (max_order < 2) {
        throw InvalidSystem("diagnose: order must be at least 2");
    }
    const auto d = static_cast<std::size_t>(a.rows());
    require_square(a, d, "diagnose(A)");
    require_square(b, d, "diagnose(B)");
    DiagnosticsReport rep;
    rep.max_order = max_order;
    rep.l_max = l_max;
    try {
        rep.eig_a = eigenvalues(a);
        rep.eig_b = eigenvalues(b);
        rep.eig_sum = eigenvalues(a + b);
    } catch (const NumericalFailure &e) {
        rep.eigen_failure = e.what();
        return rep;
    }
    for (auto z : rep.eig_a) {
        rep.integer_a.push_back(near_integer(z, tol.resonance));
    }
    for (auto z : rep.eig_b) {
        rep.integer_b.push_back(near_integer(z, tol.resonance));
    }
    rep.hits = scan_resonances(rep.eig_sum, 2, max_order, tol.resonance);
    rep.margin_a = diophantine_margin(rep.eig_a, max_order, l_max);
    rep.margin_b = diophantine_margin(rep.eig_b, max_order, l_max);
    return rep;
}

} // namespace fuchsnf

#endif
