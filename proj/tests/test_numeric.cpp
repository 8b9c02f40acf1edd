#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <fuchsnf/numeric/flow.hpp>
#include <fuchsnf/numeric/obstruction.hpp>
#include <fuchsnf/numeric/quadrature.hpp>
#include <fuchsnf/numeric/transport.hpp>

#include "support.hpp"

using namespace fuchsnf;
using namespace fuchsnf::testing;
using numeric::LoopAround;
using numeric::PathSpec;

namespace
{

const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);

Matrix scalar_matrix(Complex z)
{
    Matrix m(1, 1);
    m(0, 0) = z;
    return m;
}

Vector scalar(Complex z)
{
    Vector v(1);
    v(0) = z;
    return v;
}

Matrix diag(std::initializer_list<Complex> entries)
{
    const auto n = static_cast<Eigen::Index>(entries.size());
    Matrix m = Matrix::Zero(n, n);
    Eigen::Index i = 0;
    for (auto z : entries) {
        m(i, i) = z;
        ++i;
    }
    return m;
}

double matrix_max_abs(const Matrix &m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

// ---- paths ----

TEST_CASE("path validation", "[path]")
{
    CHECK_THROWS_AS(PathSpec::polyline({0.0, 0.95}), InvalidSystem);
    CHECK_THROWS_AS(PathSpec::polyline({0.0, 0.5}, 0.0), InvalidSystem);
    CHECK_THROWS_AS(PathSpec({numeric::LineSegment{0.0, 0.2}, numeric::LineSegment{0.3, 0.4}}, 0.1), InvalidSystem);
    // straight through a singular point
    CHECK_THROWS_AS(PathSpec::polyline({Complex(-2.0, 0.0), Complex(0.0, 0.0)}), InvalidSystem);
    const auto p = PathSpec::polyline({0.0, Complex(0.0, 2.0), Complex(2.0, 2.0)});
    CHECK(std::abs(p.end() - Complex(2.0, 2.0)) < 1e-15);
    CHECK_FALSE(p.closed());
    for (auto which : {LoopAround::minus_one, LoopAround::plus_one, LoopAround::both}) {
        const auto loop = PathSpec::loop(which);
        CHECK(loop.closed());
        CHECK(loop.min_distance_to_singularities() >= 0.5 - 1e-12);
    }
    CHECK(PathSpec::loop(LoopAround::minus_one).then(PathSpec::loop(LoopAround::plus_one)).closed());
}

// ---- transport and monodromy ----

TEST_CASE("zero-length path gives the identity", "[transport]")
{
    Rng rng(1);
    const Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    CHECK(numeric::integrate_linear(a, b, PathSpec::polyline({0.3})).y == Matrix::Identity(2, 2));
    CHECK(numeric::integrate_linear(a, b, PathSpec::polyline({0.3, 0.3})).y == Matrix::Identity(2, 2));
}

TEST_CASE("scalar transport matches the closed form", "[transport]")
{
    const Complex a(0.3, 0.4), b(-0.2, 0.9);
    const auto r = numeric::integrate_linear(scalar_matrix(a), scalar_matrix(b), PathSpec::polyline({0.0, 0.5}));
    const Complex want = std::pow(Complex(0.5), a) * std::pow(Complex(1.5), b);
    CHECK(std::abs(r.y(0, 0) - want) <= 1e-10);
    CHECK_FALSE(r.monodromy.has_value());
    CHECK(r.stats.steps > 0);
}

TEST_CASE("scalar monodromies", "[transport]")
{
    const Matrix half = scalar_matrix(0.5);
    CHECK(std::abs(numeric::monodromy(half, half, LoopAround::minus_one)(0, 0) + 1.0) <= 1e-8);
    CHECK(std::abs(numeric::monodromy(half, half, LoopAround::plus_one)(0, 0) + 1.0) <= 1e-8);
    CHECK(std::abs(numeric::monodromy(half, half, LoopAround::both)(0, 0) - 1.0) <= 1e-8);

    const Complex a(0.3, 0.2), b(-0.7, 0.1);
    const Matrix ma = scalar_matrix(a), mb = scalar_matrix(b);
    CHECK(std::abs(numeric::monodromy(ma, mb, LoopAround::minus_one)(0, 0) - std::exp(two_pi_i * b)) <= 1e-8);
    CHECK(std::abs(numeric::monodromy(ma, mb, LoopAround::plus_one)(0, 0) - std::exp(two_pi_i * a)) <= 1e-8);
    CHECK(std::abs(numeric::monodromy(ma, mb, LoopAround::both)(0, 0) - std::exp(two_pi_i * (a + b))) <= 1e-8);
    // clockwise inverts
    const auto cw = numeric::integrate_linear(ma, mb, PathSpec::loop(LoopAround::minus_one, 0.5, false));
    CHECK(std::abs((*cw.monodromy)(0, 0) - std::exp(-two_pi_i * b)) <= 1e-8);
}

TEST_CASE("diagonal monodromy is diagonal with exponential entries", "[transport]")
{
    const Matrix a = diag({Complex(0.3, 0.1), Complex(-0.4, 0.0)});
    const Matrix b = diag({Complex(0.25, -0.3), Complex(0.6, 0.2)});
    const Matrix g = numeric::monodromy(a, b, LoopAround::minus_one);
    CHECK(std::abs(g(0, 1)) <= 1e-10);
    CHECK(std::abs(g(1, 0)) <= 1e-10);
    CHECK(std::abs(g(0, 0) - std::exp(two_pi_i * b(0, 0))) <= 1e-8);
    CHECK(std::abs(g(1, 1) - std::exp(two_pi_i * b(1, 1))) <= 1e-8);
}

TEST_CASE("monodromy composition and trivial loops", "[transport]")
{
    Rng rng(31);
    for (int t = 0; t < 3; ++t) {
        const auto d = static_cast<std::size_t>(uniform_int(rng, 2, 3));
        const Matrix a = random_matrix(rng, d, 0.6);
        const Matrix b = random_matrix(rng, d, 0.6);
        const Matrix gm = numeric::monodromy(a, b, LoopAround::minus_one);
        const Matrix gp = numeric::monodromy(a, b, LoopAround::plus_one);
        const Matrix gb = numeric::monodromy(a, b, LoopAround::both);
        CHECK(matrix_max_abs(gb - gp * gm) <= 1e-6);
        const auto chained =
            numeric::integrate_linear(a, b, PathSpec::loop(LoopAround::minus_one).then(PathSpec::loop(LoopAround::plus_one)));
        CHECK(matrix_max_abs(*chained.monodromy - gp * gm) <= 1e-8);
        const auto trivial = PathSpec::polyline({0.0, Complex(0.2, 0.5), Complex(-0.3, 0.4), 0.0});
        const auto id = numeric::integrate_linear(a, b, trivial);
        const auto dd = static_cast<Eigen::Index>(d);
        CHECK(matrix_max_abs(*id.monodromy - Matrix::Identity(dd, dd)) <= 1e-9);
        CHECK(std::abs(gm.determinant()) > 0.0);
    }
}

// ---- quadrature ----

TEST_CASE("tanh-sinh handles algebraic endpoint singularities", "[quadrature]")
{
    for (auto [alpha, beta] : {std::pair{0.3, 0.7}, std::pair{0.5, 0.5}, std::pair{1.5, 0.2}}) {
        auto f = [&](double, double om, double op) {
            return scalar(std::pow(om, alpha - 1.0) * std::pow(op, beta - 1.0));
        };
        const auto r = numeric::tanh_sinh(f, 1, 1e-12);
        const double want = std::pow(2.0, alpha + beta - 1.0) * std::beta(alpha, beta);
        CHECK(std::abs(r.value(0) - want) <= 1e-10 * want);
        CHECK(r.error_estimate <= 1e-10);
    }
    // polynomial, vector-valued
    auto g = [](double t, double, double) {
        Vector v(2);
        v(0) = t * t;
        v(1) = Complex(0.0, 1.0) * (1.0 + t * t * t);
        return v;
    };
    const auto r = numeric::tanh_sinh(g, 2, 1e-13);
    CHECK(std::abs(r.value(0) - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(r.value(1) - Complex(0.0, 2.0)) <= 1e-12);
}

// ---- obstruction integrals ----

TEST_CASE("obstruction integral examples", "[obstruction]")
{
    const auto sys = riccati(0.5, 0.5, 5);
    const auto c = compute_correction(sys);
    SECTION("vanishing R gives zero")
    {
        const FuchsianSystem lin(sys.a, sys.b, VectorSeries(1, 3), 3);
        const VectorSeries zero(1, 3);
        const auto r = numeric::obstruction_integral(lin, zero, zero, 2, scalar(1.0));
        CHECK(fuchsnf::max_abs(r.value) == 0.0);
    }
    SECTION("corrected integrals vanish for n <= 4")
    {
        for (double cv : {0.5, 1.0, 2.0}) {
            for (unsigned n = 2; n <= 4; ++n) {
                const auto r = numeric::obstruction_integral(sys, c.h, c.phi(), n, scalar(cv));
                CHECK(fuchsnf::max_abs(r.value) <= 1e-6);
            }
        }
    }
    SECTION("uncorrected order two equals -c^2 pi / 2")
    {
        // R_2 = (t^2 + t) (Y c)^2 with Y = sqrt(1 - t^2), Q^{-1} Y^{-1} Y^2 = -1/sqrt(1 - t^2)
        const VectorSeries none(1, 5);
        for (double cv : {0.5, 1.0, 2.0}) {
            const auto r = numeric::obstruction_integral(sys, c.h, none, 2, scalar(cv));
            CHECK(std::abs(r.value(0) + cv * cv * std::numbers::pi / 2.0) <= 1e-9);
            CHECK(std::abs(r.value(0)) > 1e-3);
        }
    }
    SECTION("diagonal two-dimensional system: corrected integrals vanish")
    {
        // 2 min(a) > max(a) and likewise for b keeps every term integrable
        Rng rng(44);
        const Matrix a = diag({0.4, 0.6});
        const Matrix b = diag({0.45, 0.55});
        VectorSeries f(2, 3);
        for (unsigned n = 2; n <= 3; ++n) {
            f.set_order(n, random_xpoly(rng, 2, n, 2, 0.5));
        }
        const FuchsianSystem sys2(a, b, f, 3);
        const auto c2 = compute_correction(sys2);
        for (int s = 0; s < 3; ++s) {
            const Vector cv = random_vector(rng, 2);
            for (unsigned n = 2; n <= 3; ++n) {
                CHECK(fuchsnf::max_abs(numeric::obstruction_integral(sys2, c2.h, c2.phi(), n, cv).value) <= 1e-6);
            }
        }
    }
}

TEST_CASE("obstruction integral refuses inadmissible systems", "[obstruction]")
{
    const VectorSeries zero(1, 3);
    SECTION("eigenvalue real part outside (0, 1)")
    {
        const auto sys = riccati(1.5, 0.5, 3);
        CHECK_THROWS_AS(numeric::obstruction_integral(sys, zero, zero, 2, scalar(1.0)), NumericalFailure);
        const auto neg = riccati(-0.5, 0.5, 3);
        CHECK_THROWS_AS(numeric::obstruction_integral(neg, zero, zero, 2, scalar(1.0)), NumericalFailure);
    }
    SECTION("non-diagonal matrices")
    {
        Matrix a = diag({0.3, 0.4});
        a(0, 1) = 0.1;
        const FuchsianSystem sys(a, diag({0.5, 0.5}), VectorSeries(2, 3), 3);
        const VectorSeries z2(2, 3);
        CHECK_THROWS_AS(numeric::obstruction_integral(sys, z2, z2, 2, Vector::Ones(2)), InvalidSystem);
    }
    SECTION("order outside range")
    {
        const auto sys = riccati(0.5, 0.5, 3);
        CHECK_THROWS_AS(numeric::obstruction_integral(sys, zero, zero, 4, scalar(1.0)), InvalidSystem);
    }
}

// ---- nonlinear flow and conjugacy ----

TEST_CASE("integrate_nonlinear basics", "[flow]")
{
    const auto sys = riccati(0.5, 0.5, 5);
    const auto path = PathSpec::polyline({0.0, 0.5});
    CHECK(numeric::integrate_nonlinear(sys, path, scalar(0.0)).norm() == 0.0);

    Rng rng(3);
    const Matrix a = random_matrix(rng, 2, 0.5), b = random_matrix(rng, 2, 0.5);
    const FuchsianSystem lin(a, b, VectorSeries(2, 3), 3);
    const Vector u0 = random_vector(rng, 2, 0.1);
    const Vector u1 = numeric::integrate_nonlinear(lin, path, u0);
    const Vector want = numeric::integrate_linear(a, b, path, 1e-13).y * u0;
    CHECK((u1 - want).norm() <= 1e-11);

    CHECK_THROWS_AS(numeric::integrate_nonlinear(sys, path, scalar(0.45), {1e-12, 0.3}), NumericalFailure);
}

TEST_CASE("conjugacy check", "[flow]")
{
    const auto path = PathSpec::polyline({0.0, 0.5});
    const numeric::FlowOptions opt{1e-14, 0.5};
    SECTION("f = 0 gives integrator-level error")
    {
        Rng rng(6);
        const Matrix a = random_matrix(rng, 2, 0.5), b = random_matrix(rng, 2, 0.5);
        const FuchsianSystem lin(a, b, VectorSeries(2, 4), 4);
        const auto c = compute_correction(lin);
        CHECK(numeric::conjugacy_check(lin, c, path, random_vector(rng, 2, 0.05), opt).error <= 1e-12);
    }
    const auto sys = riccati(0.5, 0.5, 5);
    const auto c = compute_correction(sys);
    auto err = [&](double w, const VectorSeries &g) {
        return numeric::conjugacy_check(sys, c.h, g, path, scalar(w), opt).error;
    };
    SECTION("halving w0 divides the error by about 2^(N+1)")
    {
        const double ratio = err(1e-2, c.phi()) / err(5e-3, c.phi());
        CHECK(ratio >= 32.0);
        CHECK(ratio <= 128.0);
    }
    SECTION("log-log slope over a decade is N + 1")
    {
        const double slope = std::log10(err(4e-2, c.phi()) / err(4e-3, c.phi()));
        CHECK(std::abs(slope - 6.0) <= 0.5);
    }
    SECTION("uncorrected flow has an order-two defect")
    {
        const VectorSeries none(1, 5);
        const double e1 = err(1e-2, none);
        const double e2 = err(5e-3, none);
        CHECK(e1 / e2 >= 2.0);
        CHECK(e1 / e2 <= 8.0);
        CHECK(e1 > 1e4 * err(1e-2, c.phi()));
    }
}
