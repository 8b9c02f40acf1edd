#ifndef FUCHSNF_TESTS_SUPPORT_HPP
#define FUCHSNF_TESTS_SUPPORT_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <fuchsnf/engine.hpp>
#include <fuchsnf/rodrigues.hpp>

namespace fuchsnf::testing
{

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline unsigned uniform_int(Rng &rng, unsigned lo, unsigned hi)
{
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

inline Complex random_complex(Rng &rng, double scale = 1.0)
{
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

inline Vector random_vector(Rng &rng, std::size_t d, double scale = 1.0)
{
    Vector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = random_complex(rng, scale);
    }
    return v;
}

inline Matrix random_matrix(Rng &rng, std::size_t d, double scale = 1.0)
{
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = random_complex(rng, scale);
        }
    }
    return m;
}

// Random well-conditioned S with S^{-1} available.
inline Matrix random_invertible(Rng &rng, std::size_t d)
{
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n) + random_matrix(rng, d, 0.3);
}

// Eigenvalues with real part in [0.1, 0.9] and imaginary part in [1, 1.5]:
// every k + n.lambda - lambda_j with |n| >= 2 has imaginary part >= 0.5.
inline std::vector<Complex> nonresonant_spectrum(Rng &rng, std::size_t d)
{
    std::vector<Complex> out;
    for (std::size_t i = 0; i < d; ++i) {
        out.emplace_back(uniform(rng, 0.1, 0.9), uniform(rng, 1.0, 1.5));
    }
    return out;
}

inline Matrix with_spectrum(Rng &rng, const std::vector<Complex> &spec)
{
    const std::size_t d = spec.size();
    const Matrix s = random_invertible(rng, d);
    Vector diag(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        diag(static_cast<Eigen::Index>(i)) = spec[i];
    }
    return s * diag.asDiagonal() * s.inverse();
}

inline HomVecPoly random_hom(Rng &rng, std::size_t d, unsigned n, double scale = 1.0)
{
    HomVecPoly p(d, n);
    for (const auto &m : enumerate_multi_indices(d, n)) {
        p.add_term(m, random_vector(rng, d, scale));
    }
    return p;
}

inline XPoly random_xpoly(Rng &rng, std::size_t d, unsigned n, std::size_t x_degree, double scale = 1.0)
{
    std::vector<HomVecPoly> coeffs;
    for (std::size_t k = 0; k <= x_degree; ++k) {
        coeffs.push_back(random_hom(rng, d, n, scale));
    }
    return XPoly(d, n, std::move(coeffs));
}

// Non-resonant system: A + B has the given spectrum, A is arbitrary.
inline FuchsianSystem random_system(Rng &rng, std::size_t d, unsigned order, std::size_t x_degree)
{
    const Matrix lambda = with_spectrum(rng, nonresonant_spectrum(rng, d));
    const Matrix a = random_matrix(rng, d, 0.5);
    const Matrix b = lambda - a;
    VectorSeries f(d, order);
    for (unsigned n = 2; n <= order; ++n) {
        f.set_order(n, random_xpoly(rng, d, n, x_degree, 0.5));
    }
    return FuchsianSystem(a, b, std::move(f), order);
}

inline FuchsianSystem riccati(double a, double b, unsigned order)
{
    VectorSeries f(1, order);
    // f = (x^2 + x) u^2
    f.add_term(MultiIndex({2}), std::vector<Vector>{Vector::Zero(1), Vector::Ones(1), Vector::Ones(1)});
    Matrix ma(1, 1), mb(1, 1);
    ma(0, 0) = a;
    mb(0, 0) = b;
    return FuchsianSystem(ma, mb, std::move(f), order);
}

// Greedy nearest matching of two multisets; returns the worst pair distance.
inline double multiset_distance(std::vector<Complex> expected, std::vector<Complex> actual)
{
    if (expected.size() != actual.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    std::vector<bool> used(actual.size(), false);
    for (const auto &e : expected) {
        std::size_t best = actual.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < actual.size(); ++i) {
            if (!used[i] && std::abs(actual[i] - e) < dist) {
                dist = std::abs(actual[i] - e);
                best = i;
            }
        }
        used[best] = true;
        worst = std::max(worst, dist);
    }
    return worst;
}

// {m.lambda - lambda_j} over the graded-lex basis of P_n.
inline std::vector<Complex> expected_J_spectrum(const std::vector<Complex> &lambda, unsigned n)
{
    std::vector<Complex> out;
    for (const auto &m : enumerate_multi_indices(lambda.size(), n)) {
        Complex ml(0.0);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            ml += static_cast<double>(m[i]) * lambda[i];
        }
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            out.push_back(ml - lambda[j]);
        }
    }
    return out;
}

// Max over coefficients of |p - q| as x-polynomials of homogeneous vector polynomials.
inline double xpoly_distance(const XPoly &p, const XPoly &q)
{
    return (p - q).max_abs();
}

} // namespace fuchsnf::testing

#endif
