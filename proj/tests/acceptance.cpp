// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <fuchsnf/cli.hpp>
#include <fuchsnf/fuchsnf.hpp>

#include "support.hpp"

using namespace fuchsnf;
using namespace fuchsnf::testing;

namespace
{

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Recorder
{
public:
    void require(Outcome &o, bool ok, const std::string &what)
    {
        if (!ok) {
            o.pass = false;
            if (!o.detail.empty()) {
                o.detail += "; ";
            }
            o.detail += what;
        }
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Vector scalar(Complex z)
{
    Vector v(1);
    v(0) = z;
    return v;
}

Outcome riccati_closed_form()
{
    Outcome o;
    Recorder r;
    const auto sys = riccati(0.5, 0.5, 5);
    const auto out = compute_correction(sys);
    const MultiIndex m2({2});
    const double e2 = std::abs(out.phi().order(2).coeff(0).coeff(m2)(0) - 0.5);
    r.require(o, e2 <= 1e-12, "phi_2 error " + fmt(e2));
    double high = 0.0;
    for (unsigned n = 3; n <= 5; ++n) {
        high = std::max(high, out.phi().order(n).max_abs());
    }
    r.require(o, high <= 1e-10, "phi_3..5 max " + fmt(high));
    // h_2 = 1 + x/2, h_n = h_2^{n-1}
    const ScalarPoly h2 = {1.0, 0.5};
    ScalarPoly power = h2;
    double herr = 0.0;
    for (unsigned n = 2; n <= 5; ++n) {
        const XPoly &hn = out.h.order(n);
        const MultiIndex mn({n});
        for (std::size_t k = 0; k < std::max(power.size(), hn.size()); ++k) {
            const Complex got = k < hn.size() ? hn.coeff(k).coeff(mn)(0) : Complex(0.0);
            const Complex want = k < power.size() ? power[k] : Complex(0.0);
            herr = std::max(herr, std::abs(got - want));
        }
        power = multiply(power, h2);
    }
    r.require(o, herr <= 1e-10, "h_n error " + fmt(herr));
    o.detail = o.detail.empty() ? "phi_2 err " + fmt(e2) + ", h err " + fmt(herr) : o.detail;
    return o;
}

Outcome resonance_abort()
{
    Outcome o;
    Recorder r;
    const auto dir = std::filesystem::temp_directory_path() / "fuchsnf_acceptance";
    std::filesystem::create_directories(dir);
    const auto cfg_path = dir / "riccati_resonant.json";
    {
        std::ofstream f(cfg_path);
        f << R"({"d": 1, "A": [[[-0.5, 0]]], "B": [[[-0.5, 0]]],
                 "f": [{"m": [2], "poly": [[[0, 0]], [[1, 0]], [[1, 0]]]}], "order": 5})";
    }
    const auto report_path = (dir / "report.json").string();
    const std::string cfg = cfg_path.string();
    std::ostringstream out, err;
    const char *argv[] = {"fuchsnf", "correct", "--config", cfg.c_str(), "--out", report_path.c_str()};
    const int code = cli::run(6, argv, out, err);
    r.require(o, code == 2, "exit code " + std::to_string(code));
    std::ifstream in(report_path);
    const auto report = io::json::parse(in);
    r.require(o, report["error"]["order"] == 2 && report["error"]["shift"] == 1,
              "error does not name order 2, shift 1: " + report["error"].dump());

    const auto sys = riccati(-0.5, -0.5, 5);
    const auto rep = diagnose(sys.a, sys.b, 5, 10);
    const auto hit = rep.hit_at_order(2);
    r.require(o, hit.has_value() && hit->k == 1 && hit->n == MultiIndex({2}), "diagnose did not flag (n=2, k=1)");
    if (o.pass) {
        o.detail = "exit 2 at order 2, shift 1";
    }
    return o;
}

struct RandomBatch {
    std::vector<FuchsianSystem> systems;
};

const RandomBatch &random_batch()
{
    static const RandomBatch batch = [] {
        RandomBatch b;
        Rng rng(20240607);
        for (int i = 0; i < 25; ++i) {
            const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 3));
            const unsigned order = uniform_int(rng, 3, 5);
            const auto xdeg = static_cast<std::size_t>(uniform_int(rng, 0, 2));
            b.systems.push_back(random_system(rng, d, order, xdeg));
        }
        return b;
    }();
    return batch;
}

Outcome residual_certification()
{
    Outcome o;
    Recorder r;
    double worst = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto &sys : random_batch().systems) {
        const auto rep = diagnose(sys.a, sys.b, sys.order, 0);
        for (unsigned n = 2; n <= sys.order; ++n) {
            for (const auto &m : enumerate_multi_indices(sys.dim, n)) {
                const Complex ml = dot(m, rep.eig_sum);
                for (auto lj : rep.eig_sum) {
                    for (unsigned k = 0; k <= 2 * sys.order + 4; ++k) {
                        min_margin = std::min(min_margin, std::abs(static_cast<double>(k) + ml - lj));
                    }
                }
            }
        }
        const auto c = compute_correction(sys);
        const auto nf = compute_normal_form(sys);
        worst = std::max({worst, c.residuals.max_relative(), nf.residuals.max_relative()});
    }
    r.require(o, min_margin >= 0.1, "resonance margin " + fmt(min_margin));
    r.require(o, worst <= 1e-8, "worst relative residual " + fmt(worst));
    if (o.pass) {
        o.detail = "worst relative residual " + fmt(worst) + ", margin " + fmt(min_margin);
    }
    return o;
}

Outcome uniqueness()
{
    Outcome o;
    Recorder r;
    double d2 = 0.0;
    double psi = 0.0;
    for (const auto &sys : random_batch().systems) {
        const auto c = compute_correction(sys);
        const auto nf = compute_normal_form(sys);
        d2 = std::max(d2, (c.phi().order(2) - nf.psi().order(2)).max_abs());
        psi = std::max(psi, compute_normal_form(sys.corrected(c.phi())).psi().max_abs());
    }
    r.require(o, d2 <= 1e-10, "phi_2 - psi_2 = " + fmt(d2));
    r.require(o, psi <= 1e-8, "normal form of corrected system " + fmt(psi));
    if (o.pass) {
        o.detail = "|phi_2 - psi_2| " + fmt(d2) + ", corrected psi " + fmt(psi);
    }
    return o;
}

Outcome operator_spectrum()
{
    Outcome o;
    Recorder r;
    Rng rng(99);
    // diagonal: exact
    for (std::size_t d = 1; d <= 3; ++d) {
        std::vector<Complex> lam;
        for (std::size_t i = 0; i < d; ++i) {
            lam.push_back(random_complex(rng));
        }
        Matrix l = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) {
            l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = lam[i];
        }
        for (unsigned n = 1; n <= 4; ++n) {
            const Matrix j = build_J_matrix(l, n);
            const auto want = expected_J_spectrum(lam, n);
            bool exact = true;
            for (Eigen::Index p = 0; p < j.rows(); ++p) {
                for (Eigen::Index q = 0; q < j.cols(); ++q) {
                    const Complex expect = p == q ? want[static_cast<std::size_t>(p)] : Complex(0.0);
                    exact = exact && j(p, q) == expect;
                }
            }
            r.require(o, exact, "diagonal case not exact at d=" + std::to_string(d) + ", n=" + std::to_string(n));
        }
    }
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const unsigned n = uniform_int(rng, 1, 4);
        const Matrix l = random_matrix(rng, d);
        const auto lam = eigenvalues(l);
        const Matrix j = build_J_matrix(l, n);
        worst = std::max(worst, multiset_distance(expected_J_spectrum(lam, n), eigenvalues(j)));
    }
    r.require(o, worst <= 1e-8, "eigenvalue mismatch " + fmt(worst));
    if (o.pass) {
        o.detail = "diagonal exact, random mismatch " + fmt(worst);
    }
    return o;
}

Outcome rodrigues_round_trip()
{
    Outcome o;
    Recorder r;
    Rng rng(31337);
    double phi = 0.0;
    double p = 0.0;
    for (unsigned k = 0; k <= 2; ++k) {
        for (int t = 0; t < 10; ++t) {
            const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 3));
            const unsigned n = uniform_int(rng, 2, 3);
            const Matrix lambda = with_spectrum(rng, nonresonant_spectrum(rng, d));
            const Matrix a = random_matrix(rng, d, 0.5);
            const Matrix b = lambda - a;
            const HomVecPoly q = random_hom(rng, d, n);
            const auto sol = solve_fdlem(rodrigues_F(k, q, a, b), a, b);
            const XPoly pk = rodrigues_P(k, q, a, b);
            phi = std::max(phi, sol.phi.max_abs());
            p = std::max(p, (sol.p - pk).max_abs() / std::max(1.0, pk.max_abs()));
        }
    }
    r.require(o, phi <= 1e-10, "phi max " + fmt(phi));
    r.require(o, p <= 1e-9, "P mismatch " + fmt(p));
    if (o.pass) {
        o.detail = "phi max " + fmt(phi) + ", P mismatch " + fmt(p);
    }
    return o;
}

Outcome obstruction_quadrature()
{
    Outcome o;
    Recorder r;
    const auto sys = riccati(0.5, 0.5, 5);
    const auto c = compute_correction(sys);
    const VectorSeries none(1, 5);
    double corrected = 0.0;
    double uncorrected = std::numeric_limits<double>::infinity();
    for (double cv : {0.5, 1.0, 2.0}) {
        for (unsigned n = 2; n <= 4; ++n) {
            const auto res = numeric::obstruction_integral(sys, c.h, c.phi(), n, scalar(cv));
            corrected = std::max(corrected, max_abs(res.value));
        }
        const auto raw = numeric::obstruction_integral(sys, c.h, none, 2, scalar(cv));
        uncorrected = std::min(uncorrected, max_abs(raw.value));
    }
    r.require(o, corrected <= 1e-6, "corrected integral " + fmt(corrected));
    r.require(o, uncorrected >= 1e-3, "uncorrected integral " + fmt(uncorrected));
    if (o.pass) {
        o.detail = "corrected " + fmt(corrected) + ", uncorrected " + fmt(uncorrected);
    }
    return o;
}

Outcome monodromy_check()
{
    Outcome o;
    Recorder r;
    using numeric::LoopAround;
    const Complex a(0.3, 0.2), b(-0.7, 0.1);
    Matrix ma(1, 1), mb(1, 1);
    ma(0, 0) = a;
    mb(0, 0) = b;
    const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
    const double e_minus = std::abs(numeric::monodromy(ma, mb, LoopAround::minus_one)(0, 0) - std::exp(two_pi_i * b));
    const double e_plus = std::abs(numeric::monodromy(ma, mb, LoopAround::plus_one)(0, 0) - std::exp(two_pi_i * a));
    const double e_both = std::abs(numeric::monodromy(ma, mb, LoopAround::both)(0, 0) - std::exp(two_pi_i * (a + b)));
    const double scalar_err = std::max({e_minus, e_plus, e_both});
    r.require(o, scalar_err <= 1e-8, "scalar loop error " + fmt(scalar_err));

    Rng rng(7);
    const Matrix a2 = random_matrix(rng, 2, 0.6);
    const Matrix b2 = random_matrix(rng, 2, 0.6);
    const auto trivial = numeric::PathSpec::polyline({0.0, Complex(0.0, 0.4), Complex(-0.4, 0.4), 0.0});
    const double id_err =
        (*numeric::integrate_linear(a2, b2, trivial).monodromy - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    r.require(o, id_err <= 1e-8, "trivial loop error " + fmt(id_err));

    const Matrix gm = numeric::monodromy(a2, b2, LoopAround::minus_one);
    const Matrix gp = numeric::monodromy(a2, b2, LoopAround::plus_one);
    const Matrix gb = numeric::monodromy(a2, b2, LoopAround::both);
    const double comp = (gb - gp * gm).cwiseAbs().maxCoeff();
    r.require(o, comp <= 1e-6, "composition error " + fmt(comp));
    if (o.pass) {
        o.detail = "scalar " + fmt(scalar_err) + ", trivial " + fmt(id_err) + ", composition " + fmt(comp);
    }
    return o;
}

Outcome conjugacy_scaling()
{
    Outcome o;
    Recorder r;
    const auto sys = riccati(0.5, 0.5, 5);
    const auto c = compute_correction(sys);
    const auto path = numeric::PathSpec::polyline({0.0, 0.5});
    const double e1 = numeric::conjugacy_check(sys, c, path, scalar(1e-2), {1e-14, 0.5}).error;
    const double e2 = numeric::conjugacy_check(sys, c, path, scalar(5e-3), {1e-14, 0.5}).error;
    const double ratio = e1 / e2;
    r.require(o, ratio >= 32.0 && ratio <= 128.0, "ratio " + fmt(ratio) + " (errors " + fmt(e1) + ", " + fmt(e2) + ")");
    if (o.pass) {
        o.detail = "ratio " + fmt(ratio) + " (errors " + fmt(e1) + ", " + fmt(e2) + ")";
    }
    return o;
}

struct Criterion {
    int id;
    const char *name;
    double budget_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "riccati closed form", 1.0, riccati_closed_form},
        {2, "resonance abort", 1.0, resonance_abort},
        {3, "residual certification", 30.0, residual_certification},
        {4, "uniqueness and consistency", 0.0, uniqueness},
        {5, "operator spectrum", 0.0, operator_spectrum},
        {6, "rodrigues round trip", 0.0, rodrigues_round_trip},
        {7, "obstruction quadrature", 10.0, obstruction_quadrature},
        {8, "monodromy", 0.0, monodromy_check},
        {9, "conjugacy scaling", 10.0, conjugacy_scaling},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            out.pass = false;
            out.detail += "; runtime " + fmt(secs) + " s exceeds " + fmt(c.budget_seconds) + " s";
        }
        failures += out.pass ? 0 : 1;
        std::printf("criterion %d %-28s %s  %s  [%.3f s]\n", c.id, c.name, out.pass ? "PASS" : "FAIL",
                    out.detail.c_str(), secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
