"""Versioned JSON instances: signature grids, set systems and embedded planar grids.

Rationals are written as strings ``"p/q"`` (or integers); floats are
rejected.  Every document carries ``"version"`` and ``"kind"``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exact import as_rat, rat_str
from .holant import SetSystem, SignatureGrid
from .planar import PlanarGraph, PlanarGrid
from .signatures import EQ3, DenseSig, Side, SymSig3

SCHEMA_VERSION = 1
KINDS = ("grid", "set-system", "planar-grid")


class SchemaError(ValueError):
    """A JSON instance does not follow the schema."""


def parse_rat(v: Any, where: str = "value") -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise SchemaError(f"{where}: {v!r} is not exact; write rationals as \"p/q\" strings or integers")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return as_rat(v)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: cannot parse {v!r} as a rational \"p/q\"") from None
    raise SchemaError(f"{where}: expected a rational string or integer, got {type(v).__name__}")


def parse_sig(values: Any, where: str) -> SymSig3:
    if not isinstance(values, list) or len(values) != 4:
        raise SchemaError(f"{where}: a symmetric ternary signature is a list of 4 rationals")
    return SymSig3(*(parse_rat(v, f"{where}[{i}]") for i, v in enumerate(values)))


def sig_json(s: SymSig3) -> list[str]:
    return [rat_str(v) for v in s.values]


def _int_list(v: Any, where: str, length: int | None = None) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SchemaError(f"{where}: expected a list of integers")
    if length is not None and len(v) != length:
        raise SchemaError(f"{where}: expected {length} integers, got {len(v)}")
    return v


def _header(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("instance must be a JSON object")
    if doc.get("version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported or missing \"version\" (expected {SCHEMA_VERSION})")
    if doc.get("kind") != kind:
        raise SchemaError(f"expected \"kind\": \"{kind}\", got {doc.get('kind')!r}")
    return doc


# ---------------------------------------------------------------------------
# grids


def grid_to_json(g: SignatureGrid) -> dict:
    """Grids whose vertices all carry symmetric ternary signatures."""
    lhs, rhs = [], []
    for side, sigs, out in (("LHS", g.lhs, lhs), ("RHS", g.rhs, rhs)):
        for v, s in enumerate(sigs):
            if s.arity != 3 or not s.is_symmetric():
                raise SchemaError(f"{side} vertex {v} is not a symmetric ternary signature")
            out.append(sig_json(s.to_sym3()))
    doc: dict = {"version": SCHEMA_VERSION, "kind": "grid"}
    if all(s == lhs[0] for s in lhs):
        doc["lhs_signature"] = lhs[0]
        doc["n_lhs"] = len(lhs)
    else:
        doc["lhs_signatures"] = lhs
    if all(s == sig_json(EQ3) for s in rhs):
        doc["n_rhs"] = len(rhs)
    else:
        doc["rhs_signatures"] = rhs
    doc["edges"] = [list(e) for e in g.edges]
    return doc


def grid_from_json(doc: Any) -> SignatureGrid:
    doc = _header(doc, "grid")
    if "lhs_signatures" in doc:
        raw = doc["lhs_signatures"]
        if not isinstance(raw, list):
            raise SchemaError("lhs_signatures: expected a list")
        lhs = [parse_sig(s, f"lhs_signatures[{i}]") for i, s in enumerate(raw)]
    elif "lhs_signature" in doc:
        n = doc.get("n_lhs")
        if not isinstance(n, int):
            raise SchemaError("n_lhs: required integer alongside lhs_signature")
        lhs = [parse_sig(doc["lhs_signature"], "lhs_signature")] * n
    else:
        raise SchemaError("one of \"lhs_signature\" or \"lhs_signatures\" is required")
    if "rhs_signatures" in doc:
        raw = doc["rhs_signatures"]
        if not isinstance(raw, list):
            raise SchemaError("rhs_signatures: expected a list")
        rhs = [parse_sig(s, f"rhs_signatures[{i}]") for i, s in enumerate(raw)]
    else:
        n = doc.get("n_rhs")
        if not isinstance(n, int):
            raise SchemaError("n_rhs: required integer when rhs_signatures is absent (RHS is =3)")
        rhs = [EQ3] * n
    if "edges" in doc:
        raw = doc["edges"]
        if not isinstance(raw, list):
            raise SchemaError("edges: expected a list of [l, lport, r, rport]")
        edges = [tuple(_int_list(e, f"edges[{k}]", 4)) for k, e in enumerate(raw)]
        try:
            return SignatureGrid(
                tuple(DenseSig.from_symmetric(s.values, Side.LHS) for s in lhs),
                tuple(DenseSig.from_symmetric(s.values, Side.RHS) for s in rhs),
                tuple(edges),
            )
        except ValueError as e:
            raise SchemaError(str(e)) from None
    if "pairs" in doc:
        raw = doc["pairs"]
        if not isinstance(raw, list):
            raise SchemaError("pairs: expected a list of [l, r]")
        pairs = [tuple(_int_list(e, f"pairs[{k}]", 2)) for k, e in enumerate(raw)]
        try:
            g = SignatureGrid.from_pairs(pairs, lhs[0] if lhs else EQ3, EQ3, len(lhs), len(rhs))
            return SignatureGrid(
                tuple(DenseSig.from_symmetric(s.values, Side.LHS) for s in lhs),
                tuple(DenseSig.from_symmetric(s.values, Side.RHS) for s in rhs),
                g.edges,
            )
        except ValueError as e:
            raise SchemaError(str(e)) from None
    raise SchemaError("one of \"edges\" or \"pairs\" is required")


# ---------------------------------------------------------------------------
# set systems


def set_system_to_json(s: SetSystem) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "kind": "set-system",
        "elements": list(s.elements),
        "sets": [list(m) for m in s.sets],
    }


def set_system_from_json(doc: Any) -> SetSystem:
    doc = _header(doc, "set-system")
    elements, sets = doc.get("elements"), doc.get("sets")
    if not isinstance(elements, list) or not isinstance(sets, list):
        raise SchemaError("\"elements\" and \"sets\" must be lists")
    for e in elements:
        if not isinstance(e, (int, str)) or isinstance(e, bool):
            raise SchemaError(f"element ids must be integers or strings, got {e!r}")
    try:
        return SetSystem(tuple(elements), tuple(tuple(m) for m in sets))
    except (ValueError, TypeError) as e:
        raise SchemaError(str(e)) from None


# ---------------------------------------------------------------------------
# planar grids


def planar_to_json(pg: PlanarGrid) -> dict:
    g = pg.graph
    return {
        "version": SCHEMA_VERSION,
        "kind": "planar-grid",
        "name": pg.name,
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "rotation": [list(r) for r in g.rotation],
        "lhs": list(pg.lhs),
    }


def planar_from_json(doc: Any) -> PlanarGrid:
    doc = _header(doc, "planar-grid")
    n = doc.get("n")
    if not isinstance(n, int) or n < 0:
        raise SchemaError("n: expected a non-negative integer")
    raw_edges, raw_rot = doc.get("edges"), doc.get("rotation")
    if not isinstance(raw_edges, list) or not isinstance(raw_rot, list):
        raise SchemaError("\"edges\" and \"rotation\" must be lists")
    edges = [tuple(_int_list(e, f"edges[{k}]", 2)) for k, e in enumerate(raw_edges)]
    rotation = [tuple(_int_list(r, f"rotation[{v}]")) for v, r in enumerate(raw_rot)]
    lhs = tuple(_int_list(doc.get("lhs"), "lhs"))
    try:
        graph = PlanarGraph(n, tuple(edges), tuple(rotation))
    except (ValueError, IndexError) as e:
        raise SchemaError(f"rotation system: {e}") from None
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name: expected a string")
    return PlanarGrid(graph, lhs, name)


# ---------------------------------------------------------------------------
# files


_READERS = {"grid": grid_from_json, "set-system": set_system_from_json, "planar-grid": planar_from_json}


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _reject_float(text: str):
    raise SchemaError(f"float literal {text} is not allowed; write rationals as \"p/q\" strings")


def load_instance(path: str | Path, kind: str | None = None):
    doc = load_json(path)
    found = doc.get("kind") if isinstance(doc, dict) else None
    if kind is not None and found != kind:
        raise SchemaError(f"{path}: expected a \"{kind}\" instance, found {found!r}")
    if found not in _READERS:
        raise SchemaError(f"{path}: unknown kind {found!r}; expected one of {', '.join(KINDS)}")
    return _READERS[found](doc)


def dump_instance(obj) -> dict:
    if isinstance(obj, SignatureGrid):
        return grid_to_json(obj)
    if isinstance(obj, SetSystem):
        return set_system_to_json(obj)
    if isinstance(obj, PlanarGrid):
        return planar_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def digest(doc: Any) -> str:
    return hashlib.sha256(canonical(doc).encode()).hexdigest()[:16]


def dumps(doc: dict) -> str:
    """One top-level key per line, values compact."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"
