#ifndef FUCHSNF_CLI_HPP
#define FUCHSNF_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "engine.hpp"
#include "io/config.hpp"
#include "io/report.hpp"
#include "numeric/flow.hpp"
#include "numeric/obstruction.hpp"
#include "numeric/transport.hpp"

namespace fuchsnf::cli
{

enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    resonance = 2,
    invalid_config = 3,
    verification_failed = 4,
};

struct Flags {
    std::string command;
    std::string config_path;
    std::optional<unsigned> order;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

using io::json;

namespace detail
{

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;
    json detail = nullptr;

    json to_json() const
    {
        json j;
        j["name"] = name;
        j["value"] = io::encode_number(value);
        j["tolerance"] = tolerance;
        j["pass"] = pass;
        j["skipped"] = skipped;
        if (!detail.is_null()) {
            j["detail"] = detail;
        }
        return j;
    }
};

inline void put_driver(json &report, const DriverOutput &out, const char *coeff_key)
{
    report[coeff_key] = io::encode_constant_series(out.coeff);
    report["h"] = io::encode_poly_series(out.h);
    json degrees = json::array();
    for (const auto &[n, p] : out.h.orders()) {
        degrees.push_back({{"order", n}, {"h_x_degree", p.x_degree()}, {"rhs_x_degree", out.rhs_x_degree.at(n)}});
    }
    report["degrees"] = std::move(degrees);
    report["residuals"] = io::encode(out.residuals);
    report["certified"] = out.certified;
}

inline double max_abs_difference_order2(const VectorSeries &a, const VectorSeries &b)
{
    return (a.order(2) - b.order(2)).max_abs();
}

inline std::vector<Vector> sample_vectors(const io::RunConfig &cfg)
{
    std::vector<Vector> out = cfg.verify.samples;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (unsigned s = 0; s < cfg.verify.random_samples; ++s) {
        Vector v(static_cast<Eigen::Index>(cfg.dim));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double re = uni(rng);
            const double im = uni(rng);
            v(i) = Complex(re, im);
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<Check> run_checks(const io::RunConfig &cfg, const FuchsianSystem &sys, const CorrectionOutput &corr,
                                     const NormalFormOutput &nf)
{
    std::vector<Check> checks;
    const EngineOptions opt = cfg.engine_options();

    checks.push_back({"correction_residual", corr.residuals.max_relative(), cfg.tol.certify,
                      corr.residuals.max_relative() <= cfg.tol.certify});
    checks.push_back({"normal_form_residual", nf.residuals.max_relative(), cfg.tol.certify,
                      nf.residuals.max_relative() <= cfg.tol.certify});

    const double d2 = max_abs_difference_order2(corr.phi(), nf.psi());
    checks.push_back({"phi2_equals_psi2", d2, cfg.tol.phi_psi, d2 <= cfg.tol.phi_psi});

    {
        Check c{"corrected_normal_form_vanishes", 0.0, cfg.tol.certify, false};
        try {
            const auto nf2 = compute_normal_form(sys.corrected(corr.phi()), opt);
            c.value = nf2.psi().max_abs();
            c.pass = c.value <= cfg.tol.certify;
        } catch (const std::exception &e) {
            c.value = std::numeric_limits<double>::infinity();
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    }

    {
        Check c{"monodromy_composition", 0.0, cfg.tol.monodromy, false};
        try {
            using numeric::LoopAround;
            const double r = cfg.verify.loop_radius;
            const Matrix gm = numeric::monodromy(sys.a, sys.b, LoopAround::minus_one, cfg.tol.integrator, r);
            const Matrix gp = numeric::monodromy(sys.a, sys.b, LoopAround::plus_one, cfg.tol.integrator, r);
            const Matrix gb = numeric::monodromy(sys.a, sys.b, LoopAround::both, cfg.tol.integrator, r);
            // transport around -1 first, then around +1
            c.value = (gb - gp * gm).cwiseAbs().maxCoeff();
            c.pass = c.value <= cfg.tol.monodromy;
            c.detail = {{"around_minus_one", io::encode(gm)}, {"around_plus_one", io::encode(gp)},
                        {"around_both", io::encode(gb)}};
        } catch (const std::exception &e) {
            c.value = std::numeric_limits<double>::infinity();
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    }

    const auto samples = sample_vectors(cfg);
    for (unsigned n = 2; n <= sys.order; ++n) {
        for (std::size_t s = 0; s < samples.size(); ++s) {
            Check c{"obstruction_integral", 0.0, cfg.tol.obstruction, false};
            c.detail = {{"order", n}, {"sample", io::encode(samples[s])}};
            try {
                const auto r = numeric::obstruction_integral(sys, corr.h, corr.phi(), n, samples[s], cfg.tol.quadrature);
                c.value = max_abs(r.value);
                c.pass = c.value <= cfg.tol.obstruction;
                c.detail["integral"] = io::encode(r.value);
                c.detail["quadrature_error"] = r.error_estimate;
            } catch (const InvalidSystem &e) {
                c.skipped = true;
                c.pass = true;
                c.detail["reason"] = e.what();
            } catch (const NumericalFailure &e) {
                // endpoint exponents outside the admissible range are a refusal, not a failure
                c.skipped = true;
                c.pass = true;
                c.detail["reason"] = e.what();
            }
            checks.push_back(std::move(c));
        }
    }

    if (cfg.verify.conjugacy) {
        const auto &cc = *cfg.verify.conjugacy;
        const double nominal = std::pow(2.0, static_cast<double>(sys.order + 1));
        Check c{"conjugacy_scaling", 0.0, nominal, false};
        try {
            const auto path = numeric::PathSpec::polyline(cc.path);
            numeric::FlowOptions fo;
            fo.tol = cc.flow_tolerance;
            fo.ball_radius = cc.ball_radius;
            const double e1 = numeric::conjugacy_check(sys, corr, path, cc.w0, fo).error;
            const double e2 = numeric::conjugacy_check(sys, corr, path, (0.5 * cc.w0).eval(), fo).error;
            c.value = e1 / e2;
            c.pass = c.value >= nominal / 2.0 && c.value <= nominal * 2.0;
            c.detail = {{"error_w0", e1}, {"error_half_w0", e2}, {"accepted_range", {nominal / 2.0, nominal * 2.0}}};
        } catch (const std::exception &e) {
            c.value = std::numeric_limits<double>::infinity();
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

inline int emit(const json &report, const Flags &flags, std::ostream &out)
{
    const std::string text = io::dump(report);
    if (flags.out) {
        std::ofstream f(*flags.out, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open output file " + *flags.out);
        }
        f << text;
    } else {
        out << text;
    }
    return 0;
}

inline io::RunConfig load_config(const Flags &flags)
{
    std::ifstream in(flags.config_path, std::ios::binary);
    if (!in) {
        throw io::ConfigError("cannot read config file '" + flags.config_path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw io::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    io::RunConfig cfg = io::parse_config(j);
    if (flags.order) {
        if (*flags.order < 2) {
            throw io::ConfigError("--order must be at least 2");
        }
        cfg.order = *flags.order;
    }
    if (flags.tol) {
        if (!(*flags.tol > 0.0)) {
            throw io::ConfigError("--tol must be positive");
        }
        cfg.tol.certify = *flags.tol;
    }
    if (flags.seed) {
        cfg.seed = *flags.seed;
    }
    return cfg;
}

} // namespace detail

// Runs one subcommand against a parsed flag set. Writes the report to
// flags.out (or `out`) and returns the process exit code.
inline int execute(const Flags &flags, std::ostream &out, std::ostream &err)
{
    json report;
    report["command"] = flags.command;
    io::RunConfig cfg;
    FuchsianSystem sys;
    try {
        cfg = detail::load_config(flags);
        sys = cfg.system();
    } catch (const std::invalid_argument &e) {
        err << "invalid config: " << e.what() << "\n";
        report["status"] = "invalid_config";
        report["error"] = {{"kind", "invalid_config"}, {"message", e.what()}};
        try {
            detail::emit(report, flags, out);
        } catch (const std::exception &) {
        }
        return invalid_config;
    }
    report["config"] = io::to_json(cfg);
    report["status"] = "ok";

    try {
        const EngineOptions opt = cfg.engine_options();
        int code = ok;
        if (flags.command == "diagnose") {
            Tolerances tol;
            tol.resonance = cfg.tol.resonance;
            tol.condition_alarm = cfg.tol.condition_alarm;
            const auto rep = diagnose(sys.a, sys.b, sys.order, cfg.l_max, tol);
            report["diagnostics"] = io::encode(rep, cfg.tol.resonance);
            if (rep.resonant()) {
                report["status"] = "resonance";
                code = resonance;
            }
        } else if (flags.command == "correct") {
            const auto res = compute_correction(sys, opt);
            report["diagnostics"] = io::encode(res.diagnostics, cfg.tol.resonance);
            detail::put_driver(report, res, "phi");
            if (!res.certified) {
                report["status"] = "verification_failed";
                code = verification_failed;
            }
        } else if (flags.command == "normalform") {
            const auto res = compute_normal_form(sys, opt);
            report["diagnostics"] = io::encode(res.diagnostics, cfg.tol.resonance);
            detail::put_driver(report, res, "psi");
            if (!res.certified) {
                report["status"] = "verification_failed";
                code = verification_failed;
            }
        } else if (flags.command == "verify") {
            const auto corr = compute_correction(sys, opt);
            const auto nf = compute_normal_form(sys, opt);
            report["diagnostics"] = io::encode(corr.diagnostics, cfg.tol.resonance);
            detail::put_driver(report, corr, "phi");
            report["psi"] = io::encode_constant_series(nf.psi());
            report["normal_form_residuals"] = io::encode(nf.residuals);
            json checks = json::array();
            bool all = true;
            for (const auto &c : detail::run_checks(cfg, sys, corr, nf)) {
                all = all && c.pass;
                checks.push_back(c.to_json());
            }
            report["verification"] = std::move(checks);
            if (!all) {
                report["status"] = "verification_failed";
                code = verification_failed;
            }
        } else {
            err << "unknown command '" << flags.command << "'\n";
            return invalid_config;
        }
        detail::emit(report, flags, out);
        return code;
    } catch (const DriverFailure &e) {
        report["status"] = "resonance";
        report["diagnostics"] = io::encode(e.partial().diagnostics, cfg.tol.resonance);
        report["error"] = io::encode(e.info());
        detail::put_driver(report, e.partial(), e.partial().mode == DriverMode::correction ? "phi" : "psi");
        err << e.what() << "\n";
        detail::emit(report, flags, out);
        return resonance;
    } catch (const ResonanceSingular &e) {
        report["status"] = "resonance";
        report["error"] = io::encode(e.info());
        err << e.what() << "\n";
        detail::emit(report, flags, out);
        return resonance;
    } catch (const InvalidSystem &e) {
        err << "invalid system: " << e.what() << "\n";
        report["status"] = "invalid_config";
        report["error"] = {{"kind", "invalid_config"}, {"message", e.what()}};
        detail::emit(report, flags, out);
        return invalid_config;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
}

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Formal corrections, normal forms and linearizations of nonlinear two-singularity Fuchsian systems"};
    app.require_subcommand(1);
    Flags flags;
    unsigned order = 0;
    double tol = 0.0;
    std::string out_path;
    std::uint64_t seed = 0;
    const std::vector<std::pair<const char *, const char *>> commands = {
        {"diagnose", "eigenvalue, resonance and Diophantine-margin scan"},
        {"correct", "compute the correction phi and linearization h"},
        {"normalform", "compute the normal form psi and conjugacy h"},
        {"verify", "run both drivers and all numerical cross-checks"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config_path, "system description (JSON)")->required();
        sub->add_option("--order", order, "truncation order N (overrides config)");
        sub->add_option("--tol", tol, "residual certification tolerance (overrides config)");
        sub->add_option("--out", out_path, "report path (default: stdout)");
        sub->add_option("--seed", seed, "seed for random verification samples");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? ok : invalid_config;
    }
    for (auto *sub : app.get_subcommands()) {
        flags.command = sub->get_name();
        if (sub->count("--order")) {
            flags.order = order;
        }
        if (sub->count("--tol")) {
            flags.tol = tol;
        }
        if (sub->count("--out")) {
            flags.out = out_path;
        }
        if (sub->count("--seed")) {
            flags.seed = seed;
        }
    }
    return execute(flags, out, err);
}

} // namespace fuchsnf::cli

#endif
