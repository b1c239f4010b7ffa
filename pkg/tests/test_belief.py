import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsmt.belief import (
    AlignmentError,
    BeliefVector,
    MassVector,
    NotTriangularError,
    bel_direct,
    bel_from_m,
    bm_recursive_dst,
    build_bm,
    complement,
    invert_bm,
    m_from_bel,
    plausibility,
)
from dsmt.lattice import generate_isotone, generate_powerset_bibe
from dsmt.ordering import total_order
from dsmt.venn import FrameError
from tests.oracles import brute_bel, random_masses

BM2 = [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 1, 0, 0], [1, 1, 0, 1, 0], [1, 1, 1, 1, 1]]
BM2_INV = [[1, 0, 0, 0, 0], [-1, 1, 0, 0, 0], [0, -1, 1, 0, 0], [0, -1, 0, 1, 0], [0, 1, -1, -1, 1]]
BM3_LAST_INV_ROW = [-1, 1, 1, -1, 1, -1, -1, 1]


def strength_bm(n):
    lat = generate_isotone(n)
    return build_bm(lat, total_order(lat, "strength"))


def test_bm2_and_inverse():
    bm = strength_bm(2)
    assert bm.entries.tolist() == BM2
    assert bm.inverse.tolist() == BM2_INV


def test_bm1():
    bm = build_bm(generate_isotone(1))
    assert bm.entries.tolist() == [[1, 0], [1, 1]]
    assert bm.inverse.tolist() == [[1, 0], [-1, 1]]


def test_bm3_dst():
    bm = build_bm(generate_powerset_bibe(3))
    # row i: every j whose bits are inside i
    want = [[int(j & ~i == 0) for j in range(8)] for i in range(8)]
    assert bm.entries.tolist() == want
    assert bm.inverse.tolist()[-1] == BM3_LAST_INV_ROW


@pytest.mark.parametrize("n", range(9))
def test_recursive_matches_subset_built(n):
    rec = bm_recursive_dst(n)
    assert np.array_equal(rec.entries, build_bm(generate_powerset_bibe(n)).entries)
    e = rec.entries
    assert np.array_equal(e, e[::-1, ::-1].T)  # symmetric about the antidiagonal


def test_recursive_first_step():
    assert bm_recursive_dst(1).entries.tolist() == [[1, 0], [1, 1]]
    assert bm_recursive_dst(5).entries.shape == (32, 32)


@pytest.mark.parametrize("kind", ["strength", "card", "iso"])
@pytest.mark.parametrize("n", range(5))
def test_dsmt_triangular_unimodular(kind, n):
    lat = generate_isotone(n)
    bm = build_bm(lat, total_order(lat, kind))
    assert bm.is_unit_lower_triangular()
    inv = invert_bm(bm)
    assert np.array_equal(bm.entries @ inv, np.eye(len(lat), dtype=np.int64))
    assert set(np.unique(inv)) <= {-1, 0, 1}
    if len(lat) <= 20:
        assert round(np.linalg.det(bm.entries)) == 1 == round(np.linalg.det(inv))


@pytest.mark.parametrize("n", range(9))
def test_dst_inverse_entries(n):
    bm = build_bm(generate_powerset_bibe(n))
    inv = bm.inverse
    assert np.array_equal(bm.entries @ inv, np.eye(1 << n, dtype=np.int64))
    assert set(np.unique(inv)) <= {-1, 0, 1}


def test_iso_order_respects_inclusion_n5():
    # r^iso turns out to be a linear extension of ⊆ (checked by sampling pairs)
    lat = generate_isotone(5)
    e = lat.elements
    rng = np.random.default_rng(0)
    i = rng.integers(0, len(e), 200000)
    j = rng.integers(0, len(e), 200000)
    nested = (e[i] & ~e[j]) == 0
    assert np.all(i[nested] <= j[nested])


def test_non_triangular_rejected_and_routed():
    lat = generate_isotone(3)
    order = list(reversed(range(len(lat))))
    bm = build_bm(lat, order)
    with pytest.raises(NotTriangularError):
        invert_bm(bm)
    assert np.array_equal(bm.entries @ bm.inverse, np.eye(19, dtype=np.int64))


def test_build_bm_rejects_bad_permutation():
    with pytest.raises(ValueError):
        build_bm(generate_isotone(2), [0, 1, 1, 2, 3])


def test_dense_cap():
    with pytest.raises(FrameError):
        build_bm(generate_isotone(5))


def test_bel_n2_example():
    lat = generate_isotone(2)
    by = {lat.pretty(i): m for i, m in enumerate(lat.masks)}
    m = MassVector.from_masks(lat, {by["θ1∩θ2"]: 0.2, by["θ1"]: 0.3, by["θ2"]: 0.1, by["θ1∪θ2"]: 0.4})
    bel = bel_from_m(m)
    got = [bel[by[k]] for k in ["∅", "θ1∩θ2", "θ1", "θ2", "θ1∪θ2"]]
    want = brute_bel(lat.masks, m.values)
    assert np.allclose(got, [0, 0.2, 0.5, 0.3, 1.0], atol=1e-12, rtol=0)
    assert np.allclose(bel.values, want, atol=1e-12, rtol=0)


@pytest.mark.parametrize("lat", [generate_isotone(3), generate_powerset_bibe(3)], ids=["dsmt", "dst"])
def test_point_mass_on_top(lat):
    m = MassVector.from_masks(lat, {lat.top: 1.0})
    bel = bel_from_m(m).values
    assert bel[lat.index_of(lat.top)] == 1.0
    assert np.count_nonzero(bel) == 1


@pytest.mark.parametrize("order", ["strength", "card", "iso"])
@pytest.mark.parametrize("make", [generate_isotone, generate_powerset_bibe], ids=["dsmt", "dst"])
@pytest.mark.parametrize("n", range(1, 5))
def test_roundtrip_and_direct_sum(order, make, n):
    lat = make(n)
    rng = np.random.default_rng(1000 * n + len(order))
    for _ in range(20):
        m = MassVector(lat, random_masses(rng, len(lat)))
        bel = bel_from_m(m, order)
        assert np.max(np.abs(bel.values - bel_direct(m).values)) < 1e-12
        back = m_from_bel(bel, order)
        assert np.max(np.abs(back.values - m.values)) < 1e-12


def test_bel_properties():
    lat = generate_isotone(3)
    rng = np.random.default_rng(3)
    m = MassVector(lat, random_masses(rng, len(lat)))
    m.validate()
    bel = bel_from_m(m).values
    assert bel[0] == 0 and abs(bel[lat.index_of(lat.top)] - 1) < 1e-12
    for i, a in enumerate(lat.masks):
        for j, b in enumerate(lat.masks):
            if a & ~b == 0:
                assert bel[i] <= bel[j] + 1e-15


def test_plausibility_dst_example():
    lat = generate_powerset_bibe(2)
    m = MassVector.from_masks(lat, {0b01: 0.3, 0b10: 0.2, 0b11: 0.5})
    pl = plausibility(m, 0b01)
    assert abs(pl - 0.8) < 1e-12
    assert abs(pl - (1 - bel_from_m(m)[complement(lat, 0b01)])) < 1e-12


def test_plausibility_edges():
    lat = generate_isotone(3)
    rng = np.random.default_rng(9)
    m = MassVector(lat, random_masses(rng, len(lat)))
    assert abs(plausibility(m, lat.top) - 1) < 1e-12
    assert plausibility(m, 0) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_bel_le_pl_free(n, seed):
    lat = generate_isotone(n)
    m = MassVector(lat, random_masses(np.random.default_rng(seed), len(lat)))
    bel = bel_from_m(m).values
    for i, a in enumerate(lat.masks):
        assert bel[i] <= plausibility(m, a) + 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_shafer_pl_complement(n, seed):
    lat = generate_powerset_bibe(n)
    m = MassVector(lat, random_masses(np.random.default_rng(seed), len(lat)))
    bel = bel_from_m(m, "iso")
    for a in lat.masks:
        assert abs(plausibility(m, a) - (1 - bel[complement(lat, a)])) < 1e-12


def test_alignment_errors():
    lat = generate_isotone(2)
    with pytest.raises(AlignmentError):
        MassVector(lat, [0.5, 0.5])
    with pytest.raises(AlignmentError):
        BeliefVector(lat, np.zeros(4))


def test_validate_rejects_bad_masses():
    lat = generate_isotone(2)
    with pytest.raises(ValueError):
        MassVector(lat, [0.1, 0.2, 0.3, 0.2, 0.2]).validate()
    with pytest.raises(ValueError):
        MassVector(lat, [0, 0.5, 0.2, 0.2, 0.2]).validate()
    MassVector(lat, [0.1, 0.2, 0.3, 0.2, 0.2], open_world=True).validate()


def test_complement_needs_shafer():
    with pytest.raises(FrameError):
        complement(generate_isotone(2), 1)
