"""Reference tables and the self-verification harness behind ``dsmt verify``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from dsmt.belief import build_bm, bm_recursive_dst
from dsmt.lattice import (
    DEDEKIND_COUNTS,
    apply_constraints,
    generate_closure_oracle,
    generate_isotone,
    generate_powerset_bibe,
    parse_expression,
)
from dsmt.ordering import dsm_cardinality, strength_vector, total_order, verify_closed_forms
from dsmt.venn import FrameModel

# rows of D_3 over <1> <2> <12> <3> <13> <23> <123>
D3_ROWS = """
0000000 0000001 0000011 0000101 0000111 0001111 0010001 0010011 0010101 0010111
0011111 0110011 0110111 0111111 1010101 1010111 1011111 1110111 1111111
""".split()

ALPHA3 = [
    "∅", "θ1∩θ2∩θ3", "θ2∩θ3", "θ1∩θ3", "(θ1∪θ2)∩θ3", "θ3", "θ1∩θ2", "(θ1∪θ3)∩θ2",
    "(θ2∪θ3)∩θ1", "[(θ1∩θ2)∪θ3]∩(θ1∪θ2)", "(θ1∩θ2)∪θ3", "θ2", "(θ1∩θ3)∪θ2", "θ2∪θ3",
    "θ1", "(θ2∩θ3)∪θ1", "θ1∪θ3", "θ1∪θ2", "θ1∪θ2∪θ3",
]

CARD_FREE3 = [
    ("∅", 0), ("θ1∩θ2∩θ3", 1), ("θ1∩θ2", 2), ("θ1∩θ3", 2), ("θ2∩θ3", 2),
    ("(θ1∪θ2)∩θ3", 3), ("(θ1∪θ3)∩θ2", 3), ("(θ2∪θ3)∩θ1", 3),
    ("θ1", 4), ("θ2", 4), ("θ3", 4), ("{(θ1∩θ2)∪θ3}∩(θ1∪θ2)", 4),
    ("(θ1∩θ2)∪θ3", 5), ("(θ1∩θ3)∪θ2", 5), ("(θ2∩θ3)∪θ1", 5),
    ("θ1∪θ2", 6), ("θ1∪θ3", 6), ("θ2∪θ3", 6), ("θ1∪θ2∪θ3", 7),
]

# all conjunctions forced empty except θ1∩θ2
HYBRID3_CONSTRAINTS = [[1, 3], [2, 3], [1, 2, 3]]
CARD_HYBRID3 = [
    ("∅", 0), ("θ1∩θ2", 1), ("θ3", 1), ("θ1", 2), ("θ2", 2),
    ("θ1∪θ2", 3), ("θ1∪θ3", 3), ("θ2∪θ3", 3), ("θ1∪θ2∪θ3", 4),
]

STRENGTH2 = [("∅", Fraction(0)), ("θ1∩θ2", Fraction(1, 2)), ("θ1", Fraction(3, 2)),
             ("θ2", Fraction(3, 2)), ("θ1∪θ2", Fraction(5, 2))]

BM2 = [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 1, 0, 0], [1, 1, 0, 1, 0], [1, 1, 1, 1, 1]]
BM2_INV = [[1, 0, 0, 0, 0], [-1, 1, 0, 0, 0], [0, -1, 1, 0, 0], [0, -1, 0, 1, 0], [0, 1, -1, -1, 1]]

BM3 = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1, 1],
]
BM3_INV = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, 0, 0],
    [1, -1, -1, 1, 0, 0, 0, 0],
    [-1, 0, 0, 0, 1, 0, 0, 0],
    [1, -1, 0, 0, -1, 1, 0, 0],
    [1, 0, -1, 0, -1, 0, 1, 0],
    [-1, 1, 1, -1, 1, -1, -1, 1],
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    note: str = ""


def _dedekind() -> CheckResult:
    got = [len(generate_isotone(n)) for n in range(6)]
    return CheckResult("Dedekind counts n=0..5", got == list(DEDEKIND_COUNTS[:6]), str(got))


def _oracle() -> CheckResult:
    bad = [n for n in range(5) if set(generate_isotone(n).masks) != set(generate_closure_oracle(n).masks)]
    return CheckResult("isotone == closure oracle n<=4", not bad, f"mismatch at n={bad}" if bad else "")


def _d3() -> CheckResult:
    lat = generate_isotone(3)
    rows = ["".join(str(b) for b in r) for r in lat.dn_rows]
    labels_ok = all(parse_expression(t, lat.basis) == m for t, m in zip(ALPHA3, lat.masks))
    return CheckResult("D_3 matrix and alpha_0..alpha_18", rows == D3_ROWS and labels_ok)


def _card_table(lat, table) -> list[str]:
    bad = []
    for text, want in table:
        mask = parse_expression(text, lat.basis)
        if mask not in lat:
            bad.append(f"{text} missing")
        elif dsm_cardinality(mask) != want:
            bad.append(f"{text}: {dsm_cardinality(mask)} != {want}")
    return bad


def _card_free() -> CheckResult:
    lat = generate_isotone(3)
    bad = _card_table(lat, CARD_FREE3)
    complete = len({parse_expression(t, lat.basis) for t, _ in CARD_FREE3}) == len(lat)
    return CheckResult("free n=3 cardinality table", not bad and complete, "; ".join(bad))


def _card_hybrid() -> CheckResult:
    model = FrameModel.from_intersections(3, HYBRID3_CONSTRAINTS)
    lat = apply_constraints(generate_isotone(3), model)
    bad = _card_table(lat, CARD_HYBRID3)
    listed = {parse_expression(t, lat.basis) for t, _ in CARD_HYBRID3}
    extra = [lat.pretty(i) for i, m in enumerate(lat.masks) if m not in listed]
    note = f"lattice also contains {', '.join(extra)} (absent from the printed table)" if extra else ""
    return CheckResult("constrained n=3 cardinality table rows", not bad, "; ".join(bad), note)


def _closed_forms() -> CheckResult:
    bad = [msg for n in range(1, 6) for msg in verify_closed_forms(n).mismatches]
    return CheckResult("closed forms 1<=m<=n<=5", not bad, "; ".join(bad[:3]))


def _strength2() -> CheckResult:
    lat = generate_isotone(2)
    s = strength_vector(lat)
    order = total_order(lat, "strength")
    got = [(lat.pretty(i), s[i]) for i in order]
    return CheckResult("n=2 strength table", got == STRENGTH2, str([str(v) for _, v in got]))


def _bm2() -> CheckResult:
    lat = generate_isotone(2)
    bm = build_bm(lat, total_order(lat, "strength"))
    ok = bm.entries.tolist() == BM2 and bm.inverse.tolist() == BM2_INV
    return CheckResult("BM_2 and BM_2^-1 (strength order)", ok)


def _bm3() -> CheckResult:
    bm = build_bm(generate_powerset_bibe(3))
    ok = bm.entries.tolist() == BM3 and bm.inverse.tolist() == BM3_INV
    return CheckResult("DST BM_3 and BM_3^-1 (bibe order)", ok)


def _recursive() -> CheckResult:
    bad = []
    for n in range(9):
        rec = bm_recursive_dst(n).entries
        if not np.array_equal(rec, build_bm(generate_powerset_bibe(n)).entries):
            bad.append(f"n={n} recursion")
        if not np.array_equal(rec, rec[::-1, ::-1].T):
            bad.append(f"n={n} antidiagonal")
    return CheckResult("DST recursion and antidiagonal symmetry n<=8", not bad, "; ".join(bad))


CHECKS: list[Callable[[], CheckResult]] = [
    _dedekind, _oracle, _d3, _card_free, _card_hybrid, _closed_forms,
    _strength2, _bm2, _bm3, _recursive,
]


def run_checks() -> list[CheckResult]:
    return [check() for check in CHECKS]
