"""JSON model files: networks and SVAR models with exact coefficients.

A polynomial is a coefficient array, constant term first, whose entries are
integers or ``"num/den"`` strings; a bare integer or string is accepted as a
constant.  Polynomial matrices are nested row-major arrays.

Network payload::

    {"format": "behavnet", "version": 1, "kind": "network",
     "signals": [{"name": "w1", "dim": 1}, ...],
     "components": [{"name": "Sigma1", "rows": [[poly, ...], ...]}, ...]}

A component may carry its own ``"signals"`` list naming the blocks its rows
cover; every other block is then zero filled (partial interconnection).

SVAR payload::

    {"format": "behavnet", "version": 1, "kind": "svar",
     "X": [[poly, ...], ...], "Q": [[poly, ...], ...],
     "outputs": ["y1", ...], "inputs": ["u", ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import jsonschema

from .behavior import KernelRep, SignalSpace
from .network import Network
from .polyalg import Poly, PolyMatrix
from .rational import to_rational
from .svar import SvarModel, validate

FORMAT = "behavnet"
VERSION = 1

_COEFF = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$"}]}
_POLY = {"anyOf": [_COEFF, {"type": "array", "items": _COEFF}]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _POLY}}
_NAMES = {"type": "array", "items": {"type": "string", "minLength": 1}}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "behavnet model file",
    "type": "object",
    "required": ["kind"],
    "properties": {
        "format": {"const": FORMAT},
        "version": {"const": VERSION},
        "kind": {"enum": ["network", "svar"]},
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "network"}}},
            "then": {
                "required": ["signals", "components"],
                "properties": {
                    "signals": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["name"],
                            "properties": {
                                "name": {"type": "string", "minLength": 1},
                                "dim": {"type": "integer", "minimum": 1},
                            },
                            "additionalProperties": False,
                        },
                    },
                    "components": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["rows"],
                            "properties": {
                                "name": {"type": "string", "minLength": 1},
                                "signals": _NAMES,
                                "rows": _MATRIX,
                            },
                            "additionalProperties": False,
                        },
                    },
                },
            },
        },
        {
            "if": {"properties": {"kind": {"const": "svar"}}},
            "then": {
                "required": ["X", "Q"],
                "properties": {"X": _MATRIX, "Q": _MATRIX, "outputs": _NAMES, "inputs": _NAMES},
            },
        },
    ],
}


class ModelFileError(ValueError):
    """Malformed or schema-invalid model file."""


@dataclass(frozen=True)
class ModelFile:
    kind: str
    network: Network | None = None
    svar: SvarModel | None = None
    extra: dict | None = None


def _path(error: jsonschema.ValidationError) -> str:
    out = ""
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def parse_poly(value) -> Poly:
    if isinstance(value, list):
        return Poly(to_rational(c) for c in value)
    return Poly.const(to_rational(value))


def parse_matrix(rows: list, cols: int | None = None, where: str = "matrix") -> PolyMatrix:
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for i, r in enumerate(rows):
        if len(r) != cols:
            raise ModelFileError(f"{where}[{i}]: expected {cols} entries, got {len(r)}")
    return PolyMatrix.from_rows([[parse_poly(x) for x in r] for r in rows], cols)


def _build_network(doc: dict) -> Network:
    try:
        space = SignalSpace(tuple((s["name"], s.get("dim", 1)) for s in doc["signals"]))
    except ValueError as exc:
        raise ModelFileError(f"signals: {exc}") from None
    comps, names = [], []
    for k, comp in enumerate(doc["components"]):
        where = f"components[{k}]"
        covered = comp.get("signals", space.names)
        unknown = [n for n in covered if n not in space.names]
        if unknown:
            raise ModelFileError(f"{where}.signals: unknown blocks {unknown}")
        if len(set(covered)) != len(covered):
            raise ModelFileError(f"{where}.signals: repeated block names")
        cols = [c for n in covered for c in space.columns(n)]
        local = parse_matrix(comp["rows"], len(cols), where=f"{where}.rows")
        rows = []
        for i in range(local.rows):
            full = [Poly()] * space.q
            for k2, c in enumerate(cols):
                full[c] = local[i, k2]
            rows.append(full)
        comps.append(KernelRep(space, PolyMatrix.from_rows(rows, space.q)))
        names.append(comp.get("name", f"Sigma{k + 1}"))
    if len(set(names)) != len(names):
        raise ModelFileError("component names must be unique")
    return Network(space, tuple(comps), tuple(names))


def _build_svar(doc: dict) -> SvarModel:
    x = parse_matrix(doc["X"], where="X")
    n = x.rows
    q_rows = doc["Q"]
    if len(q_rows) != n:
        raise ModelFileError(f"Q has {len(q_rows)} rows, X has {n}")
    m = len(q_rows[0]) if q_rows else len(doc.get("inputs", []))
    q = parse_matrix(q_rows, m, where="Q") if q_rows else PolyMatrix.zeros(0, m)
    if x.cols != n:
        raise ModelFileError(f"X must be square, got {n}x{x.cols}")
    return validate(x, q, doc.get("outputs"), doc.get("inputs"))


def loads(text: str) -> ModelFile:
    """Parse and validate a model file.  SVAR assumption failures propagate as SvarError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ModelFileError(f"{_path(err)}: {err.message}")
    extra = {k: v for k, v in doc.items() if k not in {"format", "version", "kind", "signals", "components", "X", "Q", "outputs", "inputs"}}
    if doc["kind"] == "network":
        return ModelFile("network", network=_build_network(doc), extra=extra)
    return ModelFile("svar", svar=_build_svar(doc), extra=extra)


def load(path: str) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def network_to_doc(net: Network) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "kind": "network",
        "signals": [{"name": n, "dim": d} for n, d in net.space.blocks],
        "components": [
            {"name": name, "rows": comp.r.to_json()} for name, comp in zip(net.names, net.components)
        ],
    }


def svar_to_doc(model: SvarModel) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "kind": "svar",
        "X": model.x.to_json(),
        "Q": model.q.to_json(),
        "outputs": list(model.output_names),
        "inputs": list(model.input_names),
    }


def _flat(obj) -> bool:
    # scalars, or lists of scalars / lists of scalars (a matrix row of polynomials)
    if not isinstance(obj, (list, dict)):
        return True
    if isinstance(obj, dict):
        return len(obj) <= 2 and all(not isinstance(v, (list, dict)) for v in obj.values())
    return all(not isinstance(x, (list, dict)) or (isinstance(x, list) and all(not isinstance(y, (list, dict)) for y in x)) for x in obj)


def _format(obj, indent: int) -> str:
    if _flat(obj):
        return json.dumps(obj)
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_format(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    items = [pad + _format(x, indent + 1) for x in obj]
    return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"


def dumps(doc: dict) -> str:
    """JSON text with one matrix row per line."""
    return _format(doc, 0) + "\n"
