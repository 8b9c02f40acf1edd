#ifndef FUCHSNF_IO_SCHEMAS_HPP
#define FUCHSNF_IO_SCHEMAS_HPP

// Generated by tools/embed_schemas.py from schemas/. Do not edit.

namespace fuchsnf::io::schemas
{

inline constexpr const char *config = R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "fuchsnf/config.schema.json",
  "title": "Fuchsian system run configuration",
  "type": "object",
  "required": ["d", "A", "B", "f"],
  "additionalProperties": false,
  "properties": {
    "d": {"type": "integer", "minimum": 1},
    "A": {"$ref": "#/$defs/matrix"},
    "B": {"$ref": "#/$defs/matrix"},
    "f": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["m", "poly"],
        "additionalProperties": false,
        "properties": {
          "m": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
          "poly": {"type": "array", "items": {"$ref": "#/$defs/vector"}}
        }
      }
    },
    "order": {"type": "integer", "minimum": 2},
    "tolerances": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "certify": {"$ref": "#/$defs/positive"},
        "resonance": {"$ref": "#/$defs/positive"},
        "condition_alarm": {"$ref": "#/$defs/positive"},
        "integrator": {"$ref": "#/$defs/positive"},
        "quadrature": {"$ref": "#/$defs/positive"},
        "obstruction": {"$ref": "#/$defs/positive"},
        "monodromy": {"$ref": "#/$defs/positive"},
        "phi_psi": {"$ref": "#/$defs/positive"}
      }
    },
    "scan": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "l_max": {"type": "integer", "minimum": 0}
      }
    },
    "verify": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "samples": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
        "random_samples": {"type": "integer", "minimum": 0},
        "loop_radius": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "conjugacy": {
          "type": ["object", "null"],
          "required": ["w0"],
          "additionalProperties": false,
          "properties": {
            "path": {"type": "array", "minItems": 2, "items": {"$ref": "#/$defs/complex"}},
            "w0": {"$ref": "#/$defs/vector"},
            "flow_tolerance": {"$ref": "#/$defs/positive"},
            "ball_radius": {"$ref": "#/$defs/positive"}
          }
        }
      }
    },
    "seed": {"type": "integer", "minimum": 0}
  },
  "$defs": {
    "positive": {"type": "number", "exclusiveMinimum": 0},
    "complex": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}},
    "vector": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/complex"}},
    "matrix": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/vector"}}
  }
}
)schema";

inline constexpr const char *report = R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "fuchsnf/report.schema.json",
  "title": "Run report",
  "type": "object",
  "required": ["command", "status"],
  "additionalProperties": false,
  "properties": {
    "command": {"enum": ["diagnose", "correct", "normalform", "verify"]},
    "config": {"$ref": "config.schema.json"},
    "status": {"enum": ["ok", "resonance", "invalid_config", "verification_failed"]},
    "diagnostics": {"$ref": "#/$defs/diagnostics"},
    "phi": {"$ref": "#/$defs/constant_series"},
    "psi": {"$ref": "#/$defs/constant_series"},
    "h": {"$ref": "#/$defs/poly_series"},
    "degrees": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["order", "h_x_degree", "rhs_x_degree"],
        "additionalProperties": false,
        "properties": {
          "order": {"type": "integer", "minimum": 2},
          "h_x_degree": {"type": "integer", "minimum": 0},
          "rhs_x_degree": {"type": "integer", "minimum": 0}
        }
      }
    },
    "residuals": {"$ref": "#/$defs/residuals"},
    "normal_form_residuals": {"$ref": "#/$defs/residuals"},
    "certified": {"type": "boolean"},
    "verification": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "value", "tolerance", "pass", "skipped"],
        "additionalProperties": false,
        "properties": {
          "name": {"type": "string"},
          "value": {"type": ["number", "null"]},
          "tolerance": {"type": "number"},
          "pass": {"type": "boolean"},
          "skipped": {"type": "boolean"},
          "detail": {}
        }
      }
    },
    "error": {
      "type": "object",
      "required": ["kind"],
      "properties": {
        "kind": {"enum": ["resonance", "invalid_config"]},
        "message": {"type": "string"},
        "order": {"type": "integer"},
        "shift": {"type": "integer"},
        "j": {"type": "integer", "minimum": 1},
        "n": {"type": ["array", "null"], "items": {"type": "integer", "minimum": 0}},
        "margin": {"type": ["number", "null"]},
        "ill_conditioned": {"type": "boolean"}
      }
    }
  },
  "$defs": {
    "complex": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": ["number", "null"]}},
    "vector": {"type": "array", "items": {"$ref": "#/$defs/complex"}},
    "multi_index": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
    "constant_series": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["m", "value"],
        "additionalProperties": false,
        "properties": {"m": {"$ref": "#/$defs/multi_index"}, "value": {"$ref": "#/$defs/vector"}}
      }
    },
    "poly_series": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["m", "poly"],
        "additionalProperties": false,
        "properties": {
          "m": {"$ref": "#/$defs/multi_index"},
          "poly": {"type": "array", "items": {"$ref": "#/$defs/vector"}}
        }
      }
    },
    "residuals": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["order", "absolute", "relative"],
        "additionalProperties": false,
        "properties": {
          "order": {"type": "integer", "minimum": 2},
          "absolute": {"type": ["number", "null"]},
          "relative": {"type": ["number", "null"]}
        }
      }
    },
    "margin": {
      "type": "object",
      "required": ["margin", "argmin", "curve"],
      "properties": {
        "margin": {"type": ["number", "null"]},
        "argmin": {"type": "object"},
        "curve": {"type": "array"}
      }
    },
    "diagnostics": {
      "type": "object",
      "required": ["scan", "eigenvalues", "integer_eigenvalue", "integer_eigenvalue_warning", "resonance_hits", "nonresonant", "diophantine"],
      "properties": {
        "scan": {"type": "object"},
        "eigenvalue_failure": {"type": "string"},
        "eigenvalues": {
          "type": "object",
          "required": ["A", "B", "A_plus_B"],
          "properties": {
            "A": {"$ref": "#/$defs/vector"},
            "B": {"$ref": "#/$defs/vector"},
            "A_plus_B": {"$ref": "#/$defs/vector"}
          }
        },
        "integer_eigenvalue": {"type": "object"},
        "integer_eigenvalue_warning": {"type": "boolean"},
        "resonance_hits": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["n", "order", "j", "k", "distance"],
            "properties": {
              "n": {"$ref": "#/$defs/multi_index"},
              "order": {"type": "integer", "minimum": 2},
              "j": {"type": "integer", "minimum": 1},
              "k": {"type": "integer", "minimum": 0},
              "distance": {"type": "number"}
            }
          }
        },
        "nonresonant": {"type": "boolean"},
        "diophantine": {
          "type": "object",
          "required": ["A", "B"],
          "properties": {"A": {"$ref": "#/$defs/margin"}, "B": {"$ref": "#/$defs/margin"}}
        }
      }
    }
  }
}
)schema";

} // namespace fuchsnf::io::schemas

#endif
