#ifndef FUCHSNF_MULTI_INDEX_HPP
#define FUCHSNF_MULTI_INDEX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fuchsnf
{

// Exponent vector of the monomial w^m = w_1^{m_1} ... w_d^{m_d}.
class MultiIndex
{
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries))
    {
        degree_ = std::accumulate(entries_.begin(), entries_.end(), 0u);
    }

    MultiIndex(std::initializer_list<unsigned> entries) : MultiIndex(std::vector<unsigned>(entries)) {}

    // e_k in dimension d.
    static MultiIndex unit(std::size_t dim, std::size_t k)
    {
        std::vector<unsigned> e(dim, 0u);
        e.at(k) = 1u;
        return MultiIndex(std::move(e));
    }

    static MultiIndex zero(std::size_t dim)
    {
        return MultiIndex(std::vector<unsigned>(dim, 0u));
    }

    std::size_t dim() const noexcept
    {
        return entries_.size();
    }

    unsigned degree() const noexcept
    {
        return degree_;
    }

    unsigned operator[](std::size_t k) const
    {
        return entries_[k];
    }

    const std::vector<unsigned> &entries() const noexcept
    {
        return entries_;
    }

    MultiIndex operator+(const MultiIndex &other) const
    {
        check_dim(other);
        std::vector<unsigned> e(entries_);
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] += other.entries_[k];
        }
        return MultiIndex(std::move(e));
    }

    // Requires entries_[k] > 0.
    MultiIndex decremented(std::size_t k) const
    {
        if (entries_.at(k) == 0u) {
            throw std::invalid_argument("MultiIndex::decremented: zero entry");
        }
        std::vector<unsigned> e(entries_);
        --e[k];
        return MultiIndex(std::move(e));
    }

    MultiIndex incremented(std::size_t k) const
    {
        std::vector<unsigned> e(entries_);
        ++e.at(k);
        return MultiIndex(std::move(e));
    }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) noexcept
    {
        return a.entries_ == b.entries_;
    }

    // Graded-lex: lower total degree first; within a degree the larger leading
    // exponent comes first, so (2,0) < (1,1) < (0,2).
    friend bool operator<(const MultiIndex &a, const MultiIndex &b)
    {
        if (a.degree_ != b.degree_) {
            return a.degree_ < b.degree_;
        }
        a.check_dim(b);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) {
            if (a.entries_[k] != b.entries_[k]) {
                return a.entries_[k] > b.entries_[k];
            }
        }
        return false;
    }

    friend std::ostream &operator<<(std::ostream &os, const MultiIndex &m)
    {
        os << '(';
        for (std::size_t k = 0; k < m.entries_.size(); ++k) {
            os << (k ? "," : "") << m.entries_[k];
        }
        return os << ')';
    }

private:
    void check_dim(const MultiIndex &other) const
    {
        if (other.entries_.size() != entries_.size()) {
            throw std::invalid_argument("MultiIndex: dimension mismatch");
        }
    }

    std::vector<unsigned> entries_;
    unsigned degree_ = 0;
};

inline std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Number of monomials of total degree n in d variables.
inline std::size_t monomial_count(std::size_t dim, unsigned degree)
{
    return binomial(degree + dim - 1, dim - 1);
}

namespace detail
{

inline void enumerate_rec(std::vector<unsigned> &prefix, std::size_t pos, unsigned remaining,
                          std::vector<MultiIndex> &out)
{
    if (pos + 1 == prefix.size()) {
        prefix[pos] = remaining;
        out.emplace_back(prefix);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        prefix[pos] = e;
        enumerate_rec(prefix, pos + 1, remaining - e, out);
    }
}

} // namespace detail

// All m with |m| = degree, in graded-lex order.
inline std::vector<MultiIndex> enumerate_multi_indices(std::size_t dim, unsigned degree)
{
    if (dim == 0) {
        throw std::invalid_argument("enumerate_multi_indices: dimension must be positive");
    }
    std::vector<MultiIndex> out;
    out.reserve(monomial_count(dim, degree));
    std::vector<unsigned> prefix(dim, 0u);
    detail::enumerate_rec(prefix, 0, degree, out);
    return out;
}

} // namespace fuchsnf

#endif
