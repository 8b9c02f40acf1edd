#ifndef FUCHSNF_IO_SCHEMA_HPP
#define FUCHSNF_IO_SCHEMA_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fuchsnf::io
{

// Validator for the JSON Schema subset used by the shipped schemas:
// type, enum, const, properties, required, additionalProperties (bool or schema),
// items, minItems, maxItems, minimum, maximum, exclusiveMinimum, exclusiveMaximum,
// oneOf, anyOf, and "$ref" of the form "#/pointer" or "name.json#/pointer" where
// name.json is registered with add_document.
class SchemaValidator
{
public:
    using json = nlohmann::ordered_json;

    explicit SchemaValidator(json schema) : root_(std::move(schema)) {}

    void add_document(const std::string &name, json schema)
    {
        documents_[name] = std::move(schema);
    }

    // Empty result means valid. Messages carry a JSON pointer to the offending value.
    std::vector<std::string> validate(const json &doc) const
    {
        std::vector<std::string> errors;
        check(root_, root_, doc, "", errors, 0);
        return errors;
    }

private:
    json root_;
    std::map<std::string, json> documents_;

    static bool has_type(const json &v, const std::string &t)
    {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "number") return v.is_number();
        if (t == "integer") {
            if (v.is_number_integer()) return true;
            return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
        }
        return false;
    }

    // Returns {document, target}.
    std::pair<const json *, const json *> resolve(const json &doc, const std::string &ref) const
    {
        const auto hash = ref.find('#');
        const json *base = &doc;
        if (hash != 0) {
            const std::string name = ref.substr(0, hash);
            const auto it = documents_.find(name);
            if (it == documents_.end()) {
                throw std::invalid_argument("schema: unknown referenced document " + name);
            }
            base = &it->second;
        }
        const std::string pointer = hash == std::string::npos ? "" : ref.substr(hash + 1);
        return {base, &base->at(json::json_pointer(pointer))};
    }

    void check(const json &doc, const json &s, const json &v, const std::string &at, std::vector<std::string> &errors, int depth) const
    {
        if (depth > 64) {
            throw std::invalid_argument("schema: reference depth exceeded");
        }
        if (s.is_boolean()) {
            if (!s.get<bool>()) errors.push_back(at + ": not allowed");
            return;
        }
        if (s.contains("$ref")) {
            const auto [base, target] = resolve(doc, s["$ref"].get<std::string>());
            check(*base, *target, v, at, errors, depth + 1);
        }
        if (s.contains("type")) {
            bool ok = false;
            if (s["type"].is_array()) {
                for (const auto &t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
            } else {
                ok = has_type(v, s["type"].get<std::string>());
            }
            if (!ok) {
                errors.push_back(at + ": expected type " + s["type"].dump());
                return;
            }
        }
        if (s.contains("enum")) {
            bool ok = false;
            for (const auto &e : s["enum"]) ok = ok || e == v;
            if (!ok) errors.push_back(at + ": value not in " + s["enum"].dump());
        }
        if (s.contains("const") && s["const"] != v) {
            errors.push_back(at + ": expected " + s["const"].dump());
        }
        if (v.is_number()) {
            const double x = v.get<double>();
            if (s.contains("minimum") && x < s["minimum"].get<double>())
                errors.push_back(at + ": below minimum " + s["minimum"].dump());
            if (s.contains("maximum") && x > s["maximum"].get<double>())
                errors.push_back(at + ": above maximum " + s["maximum"].dump());
            if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
                errors.push_back(at + ": must exceed " + s["exclusiveMinimum"].dump());
            if (s.contains("exclusiveMaximum") && x >= s["exclusiveMaximum"].get<double>())
                errors.push_back(at + ": must be below " + s["exclusiveMaximum"].dump());
        }
        if (v.is_array()) {
            if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
                errors.push_back(at + ": fewer than " + s["minItems"].dump() + " items");
            if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
                errors.push_back(at + ": more than " + s["maxItems"].dump() + " items");
            if (s.contains("items")) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    check(doc, s["items"], v[i], at + "/" + std::to_string(i), errors, depth + 1);
                }
            }
        }
        if (v.is_object()) {
            if (s.contains("required")) {
                for (const auto &k : s["required"]) {
                    if (!v.contains(k.get<std::string>()))
                        errors.push_back(at + ": missing required key " + k.dump());
                }
            }
            const json *props = s.contains("properties") ? &s["properties"] : nullptr;
            for (const auto &[k, sub] : v.items()) {
                const std::string child = at + "/" + k;
                if (props && props->contains(k)) {
                    check(doc, (*props)[k], sub, child, errors, depth + 1);
                } else if (s.contains("additionalProperties")) {
                    check(doc, s["additionalProperties"], sub, child, errors, depth + 1);
                }
            }
        }
        for (const char *combo : {"oneOf", "anyOf"}) {
            if (!s.contains(combo)) continue;
            std::size_t matches = 0;
            for (const auto &alt : s[combo]) {
                std::vector<std::string> sub;
                check(doc, alt, v, at, sub, depth + 1);
                matches += sub.empty() ? 1 : 0;
            }
            const bool ok = std::string(combo) == "oneOf" ? matches == 1 : matches >= 1;
            if (!ok) errors.push_back(at + ": does not match " + combo);
        }
    }
};

} // namespace fuchsnf::io

#endif
