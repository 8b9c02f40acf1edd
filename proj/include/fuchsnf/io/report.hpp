#ifndef FUCHSNF_IO_REPORT_HPP
#define FUCHSNF_IO_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "../diagnostics.hpp"
#include "config.hpp"

namespace fuchsnf::io
{

namespace detail
{

inline std::string format_double(double v)
{
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

inline void dump_rec(const json &j, std::string &out, int indent, int depth)
{
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto &[k, v] : j.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + json(k).dump() + ": ";
            dump_rec(v, out, indent, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const auto &v : j) {
            flat = flat && !v.is_object() && !(v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object()));
        }
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                dump_rec(j[i], out, indent, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += pad;
            dump_rec(j[i], out, indent, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

// Deterministic text form: insertion-ordered keys, every float printed with
// 17 significant digits, non-finite values as null.
inline std::string dump(const json &j)
{
    std::string out;
    detail::dump_rec(j, out, 2, 0);
    out += "\n";
    return out;
}

inline json encode_number(double v)
{
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

inline json encode(const DiophantineMargin &m)
{
    json j;
    j["margin"] = encode_number(m.margin);
    j["argmin"] = {{"n", encode(m.argmin_n)}, {"l", m.argmin_l}, {"s", m.argmin_s + 1}};
    json curve = json::array();
    for (const auto &[k, v] : m.curve) {
        curve.push_back({{"K", k}, {"margin", encode_number(v)}});
    }
    j["curve"] = std::move(curve);
    return j;
}

inline json encode(const DiagnosticsReport &rep, double resonance_tol)
{
    auto eigs = [](const std::vector<Complex> &v) {
        json a = json::array();
        for (auto z : v) {
            a.push_back(encode(z));
        }
        return a;
    };
    auto flags = [](const std::vector<bool> &v) {
        json a = json::array();
        for (bool b : v) {
            a.push_back(b);
        }
        return a;
    };
    json j;
    j["scan"] = {{"max_order", rep.max_order}, {"l_max", rep.l_max}, {"resonance_tolerance", resonance_tol}};
    if (rep.eigen_failure) {
        j["eigenvalue_failure"] = *rep.eigen_failure;
    }
    j["eigenvalues"] = {{"A", eigs(rep.eig_a)}, {"B", eigs(rep.eig_b)}, {"A_plus_B", eigs(rep.eig_sum)}};
    j["integer_eigenvalue"] = {{"A", flags(rep.integer_a)}, {"B", flags(rep.integer_b)}};
    j["integer_eigenvalue_warning"] = rep.has_integer_eigenvalue();
    json hits = json::array();
    for (const auto &h : rep.hits) {
        hits.push_back({{"n", encode(h.n)}, {"order", h.n.degree()}, {"j", h.j + 1}, {"k", h.k}, {"distance", h.distance}});
    }
    j["resonance_hits"] = std::move(hits);
    j["nonresonant"] = rep.hits.empty();
    j["diophantine"] = {{"A", encode(rep.margin_a)}, {"B", encode(rep.margin_b)}};
    return j;
}

// [{"m": [...], "value": [[re, im], ...]}] for an x-independent series.
inline json encode_constant_series(const VectorSeries &s)
{
    json out = json::array();
    for (const auto &[m, poly] : s.by_multi_index()) {
        out.push_back({{"m", encode(m)}, {"value", encode(poly.empty() ? Vector::Zero(s.dim()).eval() : poly[0])}});
    }
    return out;
}

inline constexpr double display_trim = 1e-12;

// [{"m": [...], "poly": [[[re, im], ...], ...]}] ascending in x. Trailing
// coefficients below display_trim are omitted from the text only.
inline json encode_poly_series(const VectorSeries &s)
{
    json out = json::array();
    for (const auto &[m, poly] : s.by_multi_index()) {
        std::size_t len = poly.size();
        while (len > 1 && max_abs(poly[len - 1]) < display_trim) {
            --len;
        }
        out.push_back({{"m", encode(m)}, {"poly", encode(std::vector<Vector>(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(len)))}});
    }
    return out;
}

inline json encode(const ResidualReport &r)
{
    json out = json::array();
    for (const auto &[n, abs] : r.absolute) {
        out.push_back({{"order", n}, {"absolute", abs}, {"relative", r.relative.at(n)}});
    }
    return out;
}

inline json encode(const ResonanceInfo &info)
{
    json j;
    j["kind"] = "resonance";
    j["order"] = info.order;
    j["shift"] = info.shift;
    j["j"] = info.component + 1;
    j["n"] = info.multi_index ? encode(*info.multi_index) : json(nullptr);
    j["margin"] = encode_number(info.margin);
    j["ill_conditioned"] = info.ill_conditioned;
    return j;
}

} // namespace fuchsnf::io

#endif
