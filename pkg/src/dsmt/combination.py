"""Combination of two sources: conjunctive consensus, Dempster, the weighted
redistribution family (Dempster / Yager / Smets presets) and the DSm rule."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import reduce
from math import fsum
from typing import Mapping, Sequence

import numpy as np

from dsmt.belief import TOL, MassVector
from dsmt.venn import FREE, HYBRID, SHAFER

PRESETS = ("dempster", "yager", "smets")


class FullContradictionError(ValueError):
    """k12 = 1: Dempster's orthogonal sum does not exist."""


class LatticeMismatchError(ValueError):
    pass


@dataclass
class ConflictReport:
    k12: float
    pairs: list[tuple[int, int, float]] = field(default_factory=list)


@dataclass
class WeightScheme:
    """Redistribution coefficients keyed by element mask (0 is ∅)."""

    weights: dict[int, float]

    def validate(self, tol: float = TOL) -> None:
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("redistribution weights must be non-negative")
        total = sum(self.weights.values())
        if abs(total - 1.0) > tol:
            raise ValueError(f"redistribution weights sum to {total!r}, not 1")


def _same_lattice(m1: MassVector, m2: MassVector) -> None:
    if m1.lattice is not m2.lattice:
        raise LatticeMismatchError("mass vectors live on different lattices")


def conjunctive_consensus(m1: MassVector, m2: MassVector) -> tuple[MassVector, ConflictReport]:
    """m(C) = sum over X ∩ Y = C of m1(X) m2(Y), ∅ included."""
    _same_lattice(m1, m2)
    lattice = m1.lattice
    buckets: dict[int, list[float]] = defaultdict(list)
    pairs = []
    for x, a in m1.focal():
        for y, b in m2.focal():
            c = x & y
            buckets[c].append(a * b)
            if c == 0:
                pairs.append((x, y, a * b))
    # fsum is correctly rounded, so the result does not depend on argument order
    out = np.zeros(len(lattice))
    for c, terms in buckets.items():
        out[lattice.index_of(c)] = fsum(terms)
    report = ConflictReport(float(out[0]), pairs)
    return MassVector(lattice, out, open_world=True), report


def _require_shafer(m: MassVector) -> None:
    if m.lattice.model.kind != SHAFER:
        raise ValueError("this rule works on the Shafer powerset; use dsm_combine on D^Θ")


def dempster_combine(m1: MassVector, m2: MassVector) -> MassVector:
    _require_shafer(m1)
    conj, report = conjunctive_consensus(m1, m2)
    if report.k12 >= 1.0 - TOL:
        raise FullContradictionError(
            f"full contradiction (k12 = {report.k12:.12g}): the orthogonal sum does not exist"
        )
    out = conj.values / (1.0 - report.k12)
    out[0] = 0.0
    return MassVector(m1.lattice, out)


def preset_scheme(name: str, conj: MassVector, k12: float) -> WeightScheme:
    """Weights for a named rule; Dempster's depend on the consensus itself."""
    lattice = conj.lattice
    if name == "yager":
        return WeightScheme({lattice.top: 1.0})
    if name == "smets":
        return WeightScheme({0: 1.0})
    if name == "dempster":
        if k12 >= 1.0 - TOL:
            raise FullContradictionError(
                f"full contradiction (k12 = {k12:.12g}): Dempster weights are undefined"
            )
        return WeightScheme({m: x / (1.0 - k12) for m, x in conj.focal() if m != 0})
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESETS}")


def weighted_redistribution(
    m1: MassVector, m2: MassVector, scheme: str | WeightScheme | Mapping[int, float]
) -> MassVector:
    """m'(A) = m∩(A) + w(A) k12 for A ≠ ∅, and m'(∅) = w(∅) k12."""
    _require_shafer(m1)
    conj, report = conjunctive_consensus(m1, m2)
    k12 = report.k12
    if isinstance(scheme, str):
        scheme = preset_scheme(scheme, conj, k12)
    elif not isinstance(scheme, WeightScheme):
        scheme = WeightScheme(dict(scheme))
    scheme.validate()

    lattice = m1.lattice
    out = conj.values.copy()
    out[0] = 0.0
    for mask, w in scheme.weights.items():
        out[lattice.index_of(mask)] += w * k12
    return MassVector(lattice, out, open_world=out[0] > 0)


def dsm_combine(m1: MassVector, m2: MassVector) -> MassVector:
    """DSm rule on the free hyper-powerset; no normalization, never fails."""
    _same_lattice(m1, m2)
    kind = m1.lattice.model.kind
    if kind == HYBRID:
        raise ValueError("DSm combination under hybrid models is not supported")
    if kind != FREE:
        raise ValueError("dsm_combine expects a gbba on the free-model hyper-powerset")
    conj, _ = conjunctive_consensus(m1, m2)
    return MassVector(m1.lattice, conj.values)


def combine(rule: str, masses: Sequence[MassVector], weights: Mapping[int, float] | None = None):
    """Left fold of a binary rule; returns (result, conflict of the last step)."""
    if len(masses) < 2:
        raise ValueError("need at least two sources")
    last: dict[str, float] = {}

    def step(a: MassVector, b: MassVector) -> MassVector:
        if rule == "dsm":
            out = dsm_combine(a, b)
            last["k12"] = 0.0
            return out
        last["k12"] = conjunctive_consensus(a, b)[1].k12
        if rule == "dempster" and weights is None:
            return dempster_combine(a, b)
        return weighted_redistribution(a, b, weights if weights is not None else rule)

    if rule not in ("dsm", "custom") + PRESETS:
        raise ValueError(f"unknown rule {rule!r}")
    if rule == "custom" and weights is None:
        raise ValueError("the custom rule needs a weight map")
    if rule == "dsm" and weights is not None:
        raise ValueError("the DSm rule takes no redistribution weights")
    result = reduce(step, masses)
    return result, last["k12"]
