from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from dsmt.lattice import apply_constraints, generate_isotone, parse_expression
from dsmt.ordering import (
    OrderingSpec,
    dsm_cardinality,
    scaled_weights,
    strength,
    strength_vector,
    total_order,
    verify_closed_forms,
)
from dsmt.venn import FrameError, FrameModel, build_basis
from tests.oracles import eval_expr


def strength_oracle(text, n):
    return sum((Fraction(1, len(r)) for r in eval_expr(text, n)), Fraction(0))


@pytest.mark.parametrize("text,want", [
    ("θ1", 4), ("θ1∩θ2", 2), ("θ1∪θ2", 6), ("{(θ1∩θ2)∪θ3}∩(θ1∪θ2)", 4), ("(θ1∪θ2)∩θ3", 3), ("θ1∪θ2∪θ3", 7),
])
def test_cardinality_free_n3(text, want):
    lat = generate_isotone(3)
    assert dsm_cardinality(parse_expression(text, lat.basis)) == want == len(eval_expr(text, 3))


@pytest.mark.parametrize("text,want", [("θ3", 1), ("θ1", 2), ("θ1∪θ2∪θ3", 4), ("∅", 0)])
def test_cardinality_constrained(text, want):
    lat = apply_constraints(generate_isotone(3), FrameModel.from_intersections(3, [[1, 3], [2, 3], [1, 2, 3]]))
    assert dsm_cardinality(parse_expression(text, lat.basis)) == want


def test_strength_n2_table():
    lat = generate_isotone(2)
    got = {lat.pretty(i): strength(m, lat.basis) for i, m in enumerate(lat.masks)}
    assert got == {"∅": 0, "θ1∩θ2": Fraction(1, 2), "θ1": Fraction(3, 2), "θ2": Fraction(3, 2), "θ1∪θ2": Fraction(5, 2)}


@pytest.mark.parametrize("text,want", [("θ1∩θ2∩θ3", Fraction(1, 3)), ("θ1", Fraction(7, 3))])
def test_strength_n3(text, want):
    basis = build_basis(3)
    assert strength(parse_expression(text, basis), basis) == want == strength_oracle(text, 3)


@pytest.mark.parametrize("n", range(5))
def test_strength_vector_equals_dn_rows_dot_weights(n):
    lat = generate_isotone(n)
    rows = lat.dn_rows
    w = lat.basis.weights
    want = [sum((Fraction(int(b)) * wi for b, wi in zip(row, w)), Fraction(0)) for row in rows]
    assert strength_vector(lat) == want
    assert [strength(m, lat.basis) for m in lat.masks] == want


@pytest.mark.parametrize("n", range(5))
def test_cardinality_is_row_sum(n):
    lat = generate_isotone(n)
    assert [dsm_cardinality(m) for m in lat.masks] == lat.dn_rows.sum(axis=1).tolist()


def test_strength_dimension_mismatch():
    with pytest.raises(FrameError):
        strength(0b1000, build_basis(2))


def test_scaled_weights():
    denom, w = scaled_weights(build_basis(3))
    assert denom == 6 and w == [6, 6, 3, 6, 3, 3, 2]


def test_total_order_n2_strength():
    lat = generate_isotone(2)
    assert [lat.pretty(i) for i in total_order(lat, "strength")] == ["∅", "θ1∩θ2", "θ1", "θ2", "θ1∪θ2"]


def test_total_order_n3_cardinality_groups():
    lat = generate_isotone(3)
    order = total_order(lat, OrderingSpec("card"))
    cards = [dsm_cardinality(lat.masks[i]) for i in order]
    assert cards == sorted(cards)
    counts = Counter(cards)
    assert [counts[k] for k in range(8)] == [1, 1, 3, 3, 4, 3, 3, 1]


@pytest.mark.parametrize("n", range(5))
def test_iso_is_identity(n):
    lat = generate_isotone(n)
    assert total_order(lat, "iso") == list(range(len(lat)))


@pytest.mark.parametrize("kind", ["card", "strength"])
@pytest.mark.parametrize("n", range(1, 5))
def test_order_keys_and_tiebreak(kind, n):
    lat = generate_isotone(n)
    order = total_order(lat, kind)
    key = (lambda m: m.bit_count()) if kind == "card" else (lambda m: strength(m, lat.basis))
    keys = [(key(lat.masks[i]), lat.masks[i]) for i in order]
    assert keys == sorted(keys)
    assert order[0] == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_strict_inclusion_monotone(n):
    lat = generate_isotone(n)
    s = strength_vector(lat)
    masks = lat.masks
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if a != b and a & ~b == 0:
                assert s[i] < s[j]
                assert dsm_cardinality(a) < dsm_cardinality(b)


@pytest.mark.parametrize("n", range(1, 5))
def test_equal_strength_never_nested(n):
    lat = generate_isotone(n)
    s = strength_vector(lat)
    masks = lat.masks
    for i, j in combinations(range(len(masks)), 2):
        if s[i] == s[j]:
            assert masks[i] & ~masks[j] and masks[j] & ~masks[i]


@pytest.mark.parametrize("kind", ["card", "strength"])
@pytest.mark.parametrize("n", range(1, 5))
def test_rank_respects_inclusion(kind, n):
    lat = generate_isotone(n)
    rank = {idx: r for r, idx in enumerate(total_order(lat, kind))}
    masks = lat.masks
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if a != b and a & ~b == 0:
                assert rank[i] < rank[j]


@pytest.mark.parametrize("n", range(1, 6))
def test_closed_forms(n):
    report = verify_closed_forms(n)
    assert report.ok, report.mismatches
    assert report.checked == 2 * (2**n - 1)


def test_closed_form_values_n3():
    basis = build_basis(3)
    assert dsm_cardinality(parse_expression("θ1∩θ3", basis)) == 2
    assert dsm_cardinality(parse_expression("θ1∪θ3", basis)) == 6
    assert dsm_cardinality(parse_expression("θ1∩θ2∩θ3", basis)) == 1
    assert dsm_cardinality(parse_expression("θ1∪θ2∪θ3", basis)) == 7


def test_unknown_ordering():
    with pytest.raises(ValueError):
        OrderingSpec("lexicographic")
