#ifndef FUCHSNF_IO_CONFIG_HPP
#define FUCHSNF_IO_CONFIG_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "../engine.hpp"
#include "schema.hpp"
#include "schemas.hpp"

namespace fuchsnf::io
{

using json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct ToleranceConfig {
    double certify = 1e-8;
    double resonance = 1e-9;
    double condition_alarm = 1e10;
    double integrator = 1e-12;
    double quadrature = 1e-10;
    double obstruction = 1e-6;
    double monodromy = 1e-6;
    double phi_psi = 1e-10;
};

struct ConjugacyConfig {
    std::vector<Complex> path{Complex(0.0), Complex(0.5)};
    Vector w0;
    double flow_tolerance = 1e-14;
    double ball_radius = 0.5;
};

struct VerifyConfig {
    std::vector<Vector> samples;
    unsigned random_samples = 2;
    double loop_radius = 0.5;
    std::optional<ConjugacyConfig> conjugacy;
};

struct RunConfig {
    std::size_t dim = 1;
    Matrix a, b;
    // f terms as listed (multi-index, x-polynomial of d-vectors)
    std::vector<std::pair<MultiIndex, std::vector<Vector>>> f_terms;
    unsigned order = 5;
    ToleranceConfig tol;
    unsigned l_max = 10;
    VerifyConfig verify;
    std::uint64_t seed = 0;

    FuchsianSystem system() const
    {
        unsigned trunc = order;
        for (const auto &[m, p] : f_terms) {
            trunc = std::max(trunc, m.degree());
        }
        VectorSeries f(dim, trunc);
        for (const auto &[m, p] : f_terms) {
            f.add_term(m, p);
        }
        return FuchsianSystem(a, b, std::move(f), order);
    }

    EngineOptions engine_options() const
    {
        EngineOptions opt;
        opt.tol.resonance = tol.resonance;
        opt.tol.condition_alarm = tol.condition_alarm;
        opt.l_max = l_max;
        opt.certify = tol.certify;
        return opt;
    }
};

// ---- JSON encodings shared by config and report ----

inline json encode(Complex z)
{
    return json::array({z.real(), z.imag()});
}

inline json encode(const Vector &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(encode(v(i)));
    }
    return out;
}

inline json encode(const Matrix &m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(encode(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline json encode(const MultiIndex &m)
{
    json out = json::array();
    for (auto e : m.entries()) {
        out.push_back(e);
    }
    return out;
}

inline json encode(const std::vector<Vector> &poly)
{
    json out = json::array();
    for (const auto &c : poly) {
        out.push_back(encode(c));
    }
    return out;
}

namespace detail
{

[[noreturn]] inline void fail(const std::string &where, const std::string &what)
{
    throw ConfigError(where + ": " + what);
}

inline double number(const json &j, const std::string &where)
{
    if (!j.is_number()) {
        fail(where, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(where, "number must be finite");
    }
    return v;
}

inline double positive(const json &j, const std::string &where)
{
    const double v = number(j, where);
    if (!(v > 0.0)) {
        fail(where, "must be positive");
    }
    return v;
}

inline unsigned count(const json &j, const std::string &where, unsigned minimum)
{
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(minimum)) {
        fail(where, "expected an integer >= " + std::to_string(minimum));
    }
    return j.get<unsigned>();
}

inline Complex complex(const json &j, const std::string &where)
{
    if (!j.is_array() || j.size() != 2) {
        fail(where, "complex numbers are [re, im] arrays");
    }
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

inline Vector vector(const json &j, std::size_t dim, const std::string &where)
{
    if (!j.is_array() || j.size() != dim) {
        fail(where, "expected an array of " + std::to_string(dim) + " complex numbers");
    }
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v(static_cast<Eigen::Index>(i)) = complex(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

inline Matrix matrix(const json &j, std::size_t dim, const std::string &where)
{
    if (!j.is_array() || j.size() != dim) {
        fail(where, "expected " + std::to_string(dim) + " rows");
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const Vector row = vector(j[i], dim, where + "[" + std::to_string(i) + "]");
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return m;
}

inline void only_keys(const json &j, std::initializer_list<const char *> keys, const std::string &where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (const char *key : keys) {
            known = known || k == key;
        }
        if (!known) {
            fail(where, "unknown key '" + k + "'");
        }
    }
}

} // namespace detail

inline const SchemaValidator &config_validator()
{
    static const SchemaValidator v(json::parse(schemas::config));
    return v;
}

inline const SchemaValidator &report_validator()
{
    static const SchemaValidator v = [] {
        SchemaValidator r(json::parse(schemas::report));
        r.add_document("config.schema.json", json::parse(schemas::config));
        return r;
    }();
    return v;
}

// Validates a configuration document against the shipped schema, then checks
// dimensional consistency and resolves defaults.
inline RunConfig parse_config(const json &j)
{
    using namespace detail;
    if (const auto errors = config_validator().validate(j); !errors.empty()) {
        std::string msg = "schema violation";
        for (std::size_t i = 0; i < errors.size() && i < 5; ++i) {
            msg += (i ? "; " : ": ") + errors[i];
        }
        throw ConfigError(msg);
    }
    only_keys(j, {"d", "A", "B", "f", "order", "tolerances", "scan", "verify", "seed"}, "config");
    for (const char *key : {"d", "A", "B", "f"}) {
        if (!j.contains(key)) {
            fail("config", std::string("missing required key '") + key + "'");
        }
    }
    RunConfig cfg;
    cfg.dim = count(j["d"], "d", 1);
    cfg.a = matrix(j["A"], cfg.dim, "A");
    cfg.b = matrix(j["B"], cfg.dim, "B");
    if (j.contains("order")) {
        cfg.order = count(j["order"], "order", 2);
    }
    if (!j["f"].is_array()) {
        fail("f", "expected an array of terms");
    }
    for (std::size_t t = 0; t < j["f"].size(); ++t) {
        const json &term = j["f"][t];
        const std::string where = "f[" + std::to_string(t) + "]";
        only_keys(term, {"m", "poly"}, where);
        if (!term.contains("m") || !term.contains("poly")) {
            fail(where, "terms need 'm' and 'poly'");
        }
        if (!term["m"].is_array() || term["m"].size() != cfg.dim) {
            fail(where + ".m", "multi-index must have length d");
        }
        std::vector<unsigned> e;
        for (std::size_t k = 0; k < cfg.dim; ++k) {
            e.push_back(count(term["m"][k], where + ".m[" + std::to_string(k) + "]", 0));
        }
        MultiIndex m(std::move(e));
        if (m.degree() < 2) {
            fail(where + ".m", "nonlinear terms must have total degree >= 2");
        }
        if (!term["poly"].is_array()) {
            fail(where + ".poly", "expected an array of x-coefficients");
        }
        std::vector<Vector> poly;
        for (std::size_t k = 0; k < term["poly"].size(); ++k) {
            poly.push_back(vector(term["poly"][k], cfg.dim, where + ".poly[" + std::to_string(k) + "]"));
        }
        cfg.f_terms.emplace_back(std::move(m), std::move(poly));
    }
    if (j.contains("tolerances")) {
        const json &t = j["tolerances"];
        only_keys(t,
                  {"certify", "resonance", "condition_alarm", "integrator", "quadrature", "obstruction", "monodromy",
                   "phi_psi"},
                  "tolerances");
        auto opt = [&](const char *key, double &dst) {
            if (t.contains(key)) {
                dst = positive(t[key], std::string("tolerances.") + key);
            }
        };
        opt("certify", cfg.tol.certify);
        opt("resonance", cfg.tol.resonance);
        opt("condition_alarm", cfg.tol.condition_alarm);
        opt("integrator", cfg.tol.integrator);
        opt("quadrature", cfg.tol.quadrature);
        opt("obstruction", cfg.tol.obstruction);
        opt("monodromy", cfg.tol.monodromy);
        opt("phi_psi", cfg.tol.phi_psi);
    }
    if (j.contains("scan")) {
        only_keys(j["scan"], {"l_max"}, "scan");
        if (j["scan"].contains("l_max")) {
            cfg.l_max = count(j["scan"]["l_max"], "scan.l_max", 0);
        }
    }
    if (j.contains("seed")) {
        cfg.seed = count(j["seed"], "seed", 0);
    }
    if (j.contains("verify")) {
        const json &v = j["verify"];
        only_keys(v, {"samples", "random_samples", "loop_radius", "conjugacy"}, "verify");
        if (v.contains("samples")) {
            if (!v["samples"].is_array()) {
                fail("verify.samples", "expected an array of vectors");
            }
            for (std::size_t s = 0; s < v["samples"].size(); ++s) {
                cfg.verify.samples.push_back(
                    vector(v["samples"][s], cfg.dim, "verify.samples[" + std::to_string(s) + "]"));
            }
        }
        if (v.contains("random_samples")) {
            cfg.verify.random_samples = count(v["random_samples"], "verify.random_samples", 0);
        }
        if (v.contains("loop_radius")) {
            cfg.verify.loop_radius = positive(v["loop_radius"], "verify.loop_radius");
            if (cfg.verify.loop_radius >= 1.0) {
                fail("verify.loop_radius", "must be below 1 so loops around one point do not reach the other");
            }
        }
        if (v.contains("conjugacy") && !v["conjugacy"].is_null()) {
            const json &c = v["conjugacy"];
            only_keys(c, {"path", "w0", "flow_tolerance", "ball_radius"}, "verify.conjugacy");
            ConjugacyConfig cc;
            if (c.contains("path")) {
                if (!c["path"].is_array() || c["path"].size() < 2) {
                    fail("verify.conjugacy.path", "expected at least two complex waypoints");
                }
                cc.path.clear();
                for (std::size_t k = 0; k < c["path"].size(); ++k) {
                    cc.path.push_back(complex(c["path"][k], "verify.conjugacy.path[" + std::to_string(k) + "]"));
                }
            }
            if (!c.contains("w0")) {
                fail("verify.conjugacy", "missing 'w0'");
            }
            cc.w0 = vector(c["w0"], cfg.dim, "verify.conjugacy.w0");
            if (c.contains("flow_tolerance")) {
                cc.flow_tolerance = positive(c["flow_tolerance"], "verify.conjugacy.flow_tolerance");
            }
            if (c.contains("ball_radius")) {
                cc.ball_radius = positive(c["ball_radius"], "verify.conjugacy.ball_radius");
            }
            cfg.verify.conjugacy = std::move(cc);
        }
    }
    return cfg;
}

// Fully resolved configuration, defaults included.
inline json to_json(const RunConfig &cfg)
{
    json j;
    j["d"] = cfg.dim;
    j["A"] = encode(cfg.a);
    j["B"] = encode(cfg.b);
    json f = json::array();
    for (const auto &[m, p] : cfg.f_terms) {
        json term;
        term["m"] = encode(m);
        term["poly"] = encode(p);
        f.push_back(std::move(term));
    }
    j["f"] = std::move(f);
    j["order"] = cfg.order;
    j["tolerances"] = {{"certify", cfg.tol.certify},
                       {"resonance", cfg.tol.resonance},
                       {"condition_alarm", cfg.tol.condition_alarm},
                       {"integrator", cfg.tol.integrator},
                       {"quadrature", cfg.tol.quadrature},
                       {"obstruction", cfg.tol.obstruction},
                       {"monodromy", cfg.tol.monodromy},
                       {"phi_psi", cfg.tol.phi_psi}};
    j["scan"] = {{"l_max", cfg.l_max}};
    json v;
    json samples = json::array();
    for (const auto &s : cfg.verify.samples) {
        samples.push_back(encode(s));
    }
    v["samples"] = std::move(samples);
    v["random_samples"] = cfg.verify.random_samples;
    v["loop_radius"] = cfg.verify.loop_radius;
    if (cfg.verify.conjugacy) {
        const auto &c = *cfg.verify.conjugacy;
        json path = json::array();
        for (auto z : c.path) {
            path.push_back(encode(z));
        }
        v["conjugacy"] = {{"path", std::move(path)},
                          {"w0", encode(c.w0)},
                          {"flow_tolerance", c.flow_tolerance},
                          {"ball_radius", c.ball_radius}};
    } else {
        v["conjugacy"] = nullptr;
    }
    j["verify"] = std::move(v);
    j["seed"] = cfg.seed;
    return j;
}

} // namespace fuchsnf::io

#endif
