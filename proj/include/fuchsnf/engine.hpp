#ifndef FUCHSNF_ENGINE_HPP
#define FUCHSNF_ENGINE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "operators.hpp"
#include "vector_series.hpp"

namespace fuchsnf
{

// u' = (A/(x-1) + B/(x+1)) u + f(x, u) / (x^2 - 1), f truncated at order N.
struct FuchsianSystem {
    std::size_t dim = 1;
    Matrix a;
    Matrix b;
    VectorSeries f;
    unsigned order = 2;

    FuchsianSystem() = default;

    FuchsianSystem(Matrix a_, Matrix b_, VectorSeries f_, unsigned order_)
        : dim(static_cast<std::size_t>(a_.rows())), a(std::move(a_)), b(std::move(b_)), f(std::move(f_)), order(order_)
    {
        validate();
    }

    void validate() const
    {
        if (dim == 0) {
            throw InvalidSystem("FuchsianSystem: dimension must be positive");
        }
        require_square(a, dim, "FuchsianSystem(A)");
        require_square(b, dim, "FuchsianSystem(B)");
        if (order < 2) {
            throw InvalidSystem("FuchsianSystem: truncation order must be at least 2");
        }
        if (f.dim() != dim) {
            throw InvalidSystem("FuchsianSystem: nonlinearity dimension does not match A, B");
        }
        for (const auto &[n, p] : f.orders()) {
            if (n < 2) {
                throw InvalidSystem("FuchsianSystem: nonlinearity has terms of degree below two");
            }
            for (const auto &c : p.coeffs()) {
                for (const auto &[m, v] : c.terms()) {
                    if (!v.allFinite()) {
                        throw InvalidSystem("FuchsianSystem: non-finite coefficient");
                    }
                }
            }
        }
    }

    // Same system with f replaced by f - g for an x-independent g.
    FuchsianSystem corrected(const VectorSeries &g) const
    {
        FuchsianSystem out = *this;
        VectorSeries f2(dim, std::max(order, f.truncation()));
        f2 += f;
        f2 -= g;
        out.f = std::move(f2);
        return out;
    }
};

enum class DriverMode { correction, normal_form };

struct FdlemSolution {
    XPoly p;
    HomVecPoly phi;
    // worst relative residual among the shifted solves
    double solve_residual = 0.0;
};

// Finds the unique phi in P_n and polynomial P with Q D(P) = F - phi.
// Matches powers of x from the top: writing P = sum p_j x^j and using
// Q D = Q d/dx + x J_L + J_N (L = A + B, N = A - B), the coefficient of x^l is
//   (l - 1 + J_L) p_{l-1} + J_N p_l - (l + 1) p_{l+1} = F_l - [l = 0] phi.
inline FdlemSolution solve_fdlem(const XPoly &f, const Matrix &a, const Matrix &b, const ShiftedSolver &solver)
{
    const std::size_t d = f.dim();
    const unsigned n = f.degree();
    require_square(a, d, "solve_fdlem(A)");
    require_square(b, d, "solve_fdlem(B)");
    FdlemSolution out{XPoly(d, n), HomVecPoly(d, n), 0.0};
    if (f.is_zero()) {
        return out;
    }
    const std::size_t top = f.x_degree();
    if (top == 0) {
        out.phi = f.coeff(0);
        return out;
    }
    const Matrix nmat = a - b;
    std::vector<HomVecPoly> p(top + 1, HomVecPoly(d, n)); // p[top] stays zero
    for (std::size_t l = top; l >= 1; --l) {
        HomVecPoly rhs = f.coeff(l) - apply_J(nmat, p[l]);
        if (l + 1 < top) {
            rhs += Complex(static_cast<double>(l + 1)) * p[l + 1];
        }
        try {
            auto r = solver.solve(static_cast<unsigned>(l - 1), rhs);
            out.solve_residual = std::max(out.solve_residual, r.residual);
            p[l - 1] = std::move(r.p);
        } catch (const ResonanceSingular &e) {
            ResonanceInfo info = e.info();
            info.order = n;
            throw ResonanceSingular(info);
        }
    }
    out.phi = f.coeff(0) + p[1] - apply_J(nmat, p[0]);
    p.pop_back();
    out.p = XPoly(d, n, std::move(p));
    return out;
}

inline FdlemSolution solve_fdlem(const XPoly &f, const Matrix &a, const Matrix &b, Tolerances tol = {})
{
    return solve_fdlem(f, a, b, ShiftedSolver(a + b, f.degree(), tol));
}

struct ResidualReport {
    std::map<unsigned, double> absolute;
    std::map<unsigned, double> relative;

    double max_relative() const
    {
        double r = 0.0;
        for (const auto &[n, v] : relative) {
            r = std::max(r, v);
        }
        return r;
    }
};

// Degree-n part of the right-hand side of the conjugacy PDE, given h and
// phi/psi through order n (h_n itself is not used).
inline XPoly assemble_rhs(const FuchsianSystem &sys, const VectorSeries &h, const VectorSeries &coeff, unsigned n,
                          DriverMode mode)
{
    const VectorSeries lower_h = h.restricted(2, n - 1);
    XPoly r = series_substitute(sys.f, lower_h, n);
    if (mode == DriverMode::correction) {
        r -= series_substitute(coeff.restricted(2, n), lower_h, n);
    } else {
        r -= coeff.order(n);
        for (unsigned j = 2; j < n; ++j) {
            const unsigned m = n + 1 - j;
            const XPoly hj = lower_h.order(j);
            const XPoly psim = coeff.order(m);
            if (hj.is_zero() || psim.is_zero()) {
                continue;
            }
            r -= jacobian_contract(hj, psim.coeff(0));
        }
    }
    return r;
}

// Per order n: max |Q D(h_n) - R_n| with R_n re-assembled from the final h and
// phi (or psi). Zero means exact conjugacy through that order.
inline ResidualReport residual_check(const FuchsianSystem &sys, const VectorSeries &h, const VectorSeries &coeff,
                                     DriverMode mode)
{
    ResidualReport rep;
    for (unsigned n = 2; n <= sys.order; ++n) {
        const XPoly rn = assemble_rhs(sys, h, coeff, n, mode);
        const XPoly diff = apply_D(h.order(n), sys.a, sys.b) - rn;
        const double abs = diff.max_abs();
        rep.absolute[n] = abs;
        rep.relative[n] = abs / std::max(1.0, rn.max_abs());
    }
    return rep;
}

struct EngineOptions {
    Tolerances tol;
    unsigned l_max = 10;
    // relative residual required per order
    double certify = 1e-8;
};

struct DriverOutput {
    DriverMode mode = DriverMode::correction;
    // phi (correction) or psi (normal form); x-degree zero
    VectorSeries coeff;
    VectorSeries h;
    ResidualReport residuals;
    DiagnosticsReport diagnostics;
    // x-degree of f_n + R~_n per order
    std::map<unsigned, std::size_t> rhs_x_degree;
    bool certified = false;
};

struct CorrectionOutput : DriverOutput {
    const VectorSeries &phi() const noexcept
    {
        return coeff;
    }
};

struct NormalFormOutput : DriverOutput {
    const VectorSeries &psi() const noexcept
    {
        return coeff;
    }
};

// Resonance hit during a driver run; carries everything computed below the
// failing order.
class DriverFailure : public ResonanceSingular
{
public:
    DriverFailure(ResonanceInfo info, DriverOutput partial)
        : ResonanceSingular(std::move(info)), partial_(std::move(partial))
    {
    }

    const DriverOutput &partial() const noexcept
    {
        return partial_;
    }

private:
    DriverOutput partial_;
};

namespace detail
{

inline DriverOutput run_driver(const FuchsianSystem &sys, DriverMode mode, const EngineOptions &opt)
{
    sys.validate();
    DriverOutput out;
    out.mode = mode;
    out.coeff = VectorSeries(sys.dim, sys.order);
    out.h = VectorSeries(sys.dim, sys.order);
    out.diagnostics = diagnose(sys.a, sys.b, sys.order, opt.l_max, opt.tol);
    const Matrix lambda = sys.a + sys.b;
    for (unsigned n = 2; n <= sys.order; ++n) {
        if (auto hit = out.diagnostics.hit_at_order(n)) {
            ResonanceInfo info;
            info.order = n;
            info.shift = hit->k;
            info.component = hit->j;
            info.multi_index = hit->n;
            info.margin = hit->distance;
            throw DriverFailure(info, out);
        }
        const XPoly rhs = assemble_rhs(sys, out.h, out.coeff, n, mode);
        out.rhs_x_degree[n] = rhs.x_degree();
        FdlemSolution sol;
        try {
            sol = solve_fdlem(rhs, sys.a, sys.b, ShiftedSolver(lambda, n, opt.tol));
        } catch (const ResonanceSingular &e) {
            throw DriverFailure(e.info(), out);
        }
        out.h.set_order(n, std::move(sol.p));
        out.coeff.set_order(n, XPoly(std::move(sol.phi)));
    }
    out.residuals = residual_check(sys, out.h, out.coeff, mode);
    out.certified = out.residuals.max_relative() <= opt.certify;
    return out;
}

} // namespace detail

// Order-by-order correction phi and linearization h of the corrected system
// u' = M u + (f(x,u) - phi(u)) / Q.
inline CorrectionOutput compute_correction(const FuchsianSystem &sys, const EngineOptions &opt = {})
{
    CorrectionOutput out;
    static_cast<DriverOutput &>(out) = detail::run_driver(sys, DriverMode::correction, opt);
    return out;
}

// Normal form w' = M w + psi(w) / Q and the conjugating map u = w + h(x, w).
inline NormalFormOutput compute_normal_form(const FuchsianSystem &sys, const EngineOptions &opt = {})
{
    NormalFormOutput out;
    static_cast<DriverOutput &>(out) = detail::run_driver(sys, DriverMode::normal_form, opt);
    return out;
}

} // namespace fuchsnf

#endif
