"""JSON model, mass, belief and weight files.

Elements are always identified by their part lists (``["1", "12"]``), never by
rank, so files stay valid across orderings.  ``[]`` names the empty set.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any

import numpy as np

from dsmt.belief import BeliefVector, MassVector
from dsmt.lattice import Lattice, generate
from dsmt.venn import FREE, SHAFER, FrameModel

FILE_TOL = 1e-9  # reals are written with 12 significant digits


class SchemaError(ValueError):
    pass


def fmt_real(x: float) -> float:
    return float(f"{x:.12g}")


def fmt_fraction(q: Fraction) -> str:
    return str(q)


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def model_from_spec(n: int, framework: str, spec: Any) -> FrameModel:
    """Model from the ``model`` field: "free", "shafer", or a constraint list."""
    if framework not in ("dst", "dsmt"):
        raise SchemaError(f"framework must be 'dst' or 'dsmt', got {framework!r}")
    if framework == "dst":
        if spec not in (None, "shafer"):
            raise SchemaError("the dst framework takes no model constraints")
        return FrameModel.shafer(n)
    if spec in (None, "free", []):
        return FrameModel.free(n)
    if spec == "shafer":
        raise SchemaError("use framework 'dst' for the Shafer model")
    if not isinstance(spec, list) or not all(isinstance(c, list) for c in spec):
        raise SchemaError(f"model must be 'free' or a list of constraints, got {spec!r}")
    return FrameModel.from_intersections(n, spec)


def model_to_spec(model: FrameModel) -> Any:
    if model.kind == FREE:
        return "free"
    if model.kind == SHAFER:
        return "shafer"
    return [[str(i) for i in c] for c in model.constraint_sets()]


def framework_of(model: FrameModel) -> str:
    return "dst" if model.kind == SHAFER else "dsmt"


def load_model_file(path: str | Path, n: int) -> FrameModel:
    spec = read_json(path)
    return model_from_spec(n, "dsmt", spec)


@lru_cache(maxsize=64)
def _lattice_for(model: FrameModel) -> Lattice:
    return generate(model.n, model)


def lattice_for(model: FrameModel) -> Lattice:
    """Shared lattice per model, so vectors loaded from separate files can be combined."""
    return _lattice_for(model)


def _header(obj: Any) -> tuple[FrameModel, Lattice]:
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    try:
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("missing or invalid 'n'") from exc
    model = model_from_spec(n, obj.get("framework", "dsmt"), obj.get("model"))
    return model, lattice_for(model)


def _entries(lattice: Lattice, items: Any, key: str) -> dict[int, float]:
    if not isinstance(items, list):
        raise SchemaError(f"'{key}' must be a list")
    out: dict[int, float] = {}
    for item in items:
        try:
            parts = [str(p) for p in item["parts"]]
            value = float(item["value"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad entry in '{key}': {item!r}") from exc
        mask = lattice.basis.mask_of(parts)
        if mask not in lattice:
            raise SchemaError(f"parts {parts} do not form an element of this lattice")
        out[mask] = out.get(mask, 0.0) + value
    return out


def _head_dict(model: FrameModel) -> dict[str, Any]:
    return {"n": model.n, "framework": framework_of(model), "model": model_to_spec(model)}


def parse_masses(obj: Any) -> MassVector:
    model, lattice = _header(obj)
    entries = _entries(lattice, obj.get("masses"), "masses")
    m = MassVector.from_masks(lattice, entries, open_world=entries.get(0, 0.0) > 0)
    try:
        m.validate(FILE_TOL)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    return m


def load_masses(path: str | Path) -> MassVector:
    try:
        return parse_masses(read_json(path))
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def dump_masses(m: MassVector, **extra: Any) -> dict[str, Any]:
    lattice = m.lattice
    out = _head_dict(lattice.model)
    out["masses"] = [
        {"parts": lattice.basis.codes_of(mask), "label": lattice.pretty(lattice.index_of(mask)), "value": fmt_real(x)}
        for mask, x in m.focal()
        if fmt_real(x) != 0.0
    ]
    out.update(extra)
    return out


def parse_beliefs(obj: Any) -> BeliefVector:
    _, lattice = _header(obj)
    entries = _entries(lattice, obj.get("beliefs"), "beliefs")
    if len(entries) != len(lattice):
        raise SchemaError(f"belief file lists {len(entries)} of {len(lattice)} elements")
    return BeliefVector(lattice, np.array([entries[m] for m in lattice.masks]))


def dump_beliefs(bel: BeliefVector, pl: list[float] | None = None, **extra: Any) -> dict[str, Any]:
    lattice = bel.lattice
    out = _head_dict(lattice.model)
    rows = []
    for i, mask in enumerate(lattice.masks):
        row = {"parts": lattice.basis.codes_of(mask), "label": lattice.pretty(i), "value": fmt_real(bel.values[i])}
        if pl is not None:
            row["pl"] = fmt_real(pl[i])
        rows.append(row)
    out["beliefs"] = rows
    out.update(extra)
    return out


def parse_weights(obj: Any, lattice: Lattice) -> dict[int, float]:
    """Weight map from ``{"weights": [...]}`` or a bare entry list."""
    items = obj.get("weights") if isinstance(obj, dict) else obj
    return _entries(lattice, items, "weights")
