#!/usr/bin/env python3
"""Regenerate include/fuchsnf/io/schemas.hpp from schemas/*.schema.json."""
import json
import pathlib
import sys

root = pathlib.Path(__file__).resolve().parent.parent
out = root / "include" / "fuchsnf" / "io" / "schemas.hpp"

parts = [
    "#ifndef FUCHSNF_IO_SCHEMAS_HPP",
    "#define FUCHSNF_IO_SCHEMAS_HPP",
    "",
    "// Generated by tools/embed_schemas.py from schemas/. Do not edit.",
    "",
    "namespace fuchsnf::io::schemas",
    "{",
    "",
]
for name in ("config", "report"):
    text = (root / "schemas" / f"{name}.schema.json").read_text()
    json.loads(text)
    parts.append(f'inline constexpr const char *{name} = R"schema({text})schema";')
    parts.append("")
parts += ["} // namespace fuchsnf::io::schemas", "", "#endif", ""]
out.write_text("\n".join(parts))
sys.stdout.write(f"wrote {out.relative_to(root)}\n")
