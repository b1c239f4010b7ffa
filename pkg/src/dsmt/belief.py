"""Belief matrices: Bel = BM . m and m = BM^-1 . Bel over an ordered lattice."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from dsmt.lattice import Lattice, generate_powerset_bibe
from dsmt.ordering import OrderingSpec, total_order
from dsmt.venn import MAX_SHAFER_N, SHAFER, FrameError

TOL = 1e-12
MAX_DENSE = 1024
MAX_INVERT = 1024


class NotTriangularError(ValueError):
    """BM is not unit lower-triangular under its order."""


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BeliefMatrix:
    lattice: Lattice
    order: tuple[int, ...]
    entries: np.ndarray

    @property
    def size(self) -> int:
        return len(self.order)

    def is_unit_lower_triangular(self) -> bool:
        e = self.entries
        return bool(np.all(np.triu(e, 1) == 0) and np.all(np.diag(e) == 1))

    @cached_property
    def inverse(self) -> np.ndarray:
        """Exact integer inverse; non-triangular orders are routed through strength order."""
        if self.is_unit_lower_triangular():
            return invert_bm(self)
        strong = build_bm(self.lattice, total_order(self.lattice, "strength"))
        inv_s = invert_bm(strong)
        # position of each of our rows inside the strength order
        where = {idx: k for k, idx in enumerate(strong.order)}
        perm = np.array([where[idx] for idx in self.order])
        return inv_s[np.ix_(perm, perm)]


def build_bm(lattice: Lattice, order: Sequence[int] | None = None, allow_large: bool = False) -> BeliefMatrix:
    """0/1 matrix with entry (i, j) = 1 iff element order[j] ⊆ element order[i]."""
    if order is None:
        order = range(len(lattice))
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(len(lattice))):
        raise ValueError("order is not a permutation of the lattice indices")
    if len(order) > MAX_DENSE and not allow_large:
        raise FrameError(f"dense BM of size {len(order)} exceeds {MAX_DENSE}; pass allow_large=True")
    e = lattice.elements[list(order)]
    entries = ((e[None, :] & ~e[:, None]) == 0).astype(np.int64)
    return BeliefMatrix(lattice, order, entries)


def bm_recursive_dst(n: int) -> BeliefMatrix:
    """BM_{i+1} = [[BM_i, 0], [BM_i, BM_i]] from BM_0 = [1]; bibe order."""
    if not 0 <= n <= MAX_SHAFER_N:
        raise FrameError(f"n must be in 0..{MAX_SHAFER_N}, got {n}")
    bm = np.ones((1, 1), dtype=np.int64)
    for _ in range(n):
        bm = np.block([[bm, np.zeros_like(bm)], [bm, bm]])
    lattice = generate_powerset_bibe(n)
    return BeliefMatrix(lattice, tuple(range(1 << n)), bm)


def invert_bm(bm: BeliefMatrix) -> np.ndarray:
    """Forward substitution on a unit lower-triangular integer matrix."""
    if not bm.is_unit_lower_triangular():
        raise NotTriangularError("BM is not unit lower-triangular under this order; use strength or cardinality")
    if bm.size > MAX_INVERT:
        raise FrameError(f"inversion capped at size {MAX_INVERT}")
    low = bm.entries
    size = bm.size
    inv = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        row = -(low[i, :i] @ inv[:i])
        row[i] += 1
        inv[i] = row
    return inv


@lru_cache(maxsize=32)
def _cached_bm(lattice: Lattice, kind: str) -> BeliefMatrix:
    return build_bm(lattice, total_order(lattice, OrderingSpec(kind)))


@dataclass
class MassVector:
    """Masses aligned with ``lattice`` element indices.

    ``open_world`` allows m(∅) > 0 (unnormalized outputs of the Smets rule).
    """

    lattice: Lattice
    values: np.ndarray
    open_world: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.lattice),):
            raise AlignmentError(f"expected {len(self.lattice)} masses, got shape {self.values.shape}")

    def validate(self, tol: float = TOL) -> None:
        v = self.values
        if np.any(v < -tol):
            raise ValueError("negative mass")
        if not self.open_world and abs(v[0]) > tol:
            raise ValueError("m(∅) must be 0")
        if abs(v.sum() - 1.0) > tol:
            raise ValueError(f"masses sum to {v.sum()!r}, not 1")

    @classmethod
    def from_masks(cls, lattice: Lattice, masses: dict[int, float], open_world: bool = False) -> "MassVector":
        v = np.zeros(len(lattice))
        for mask, x in masses.items():
            v[lattice.index_of(mask)] += x
        return cls(lattice, v, open_world)

    def focal(self) -> list[tuple[int, float]]:
        """(mask, mass) pairs with non-zero mass, in lattice order."""
        masks = self.lattice.masks
        return [(masks[i], float(x)) for i, x in enumerate(self.values) if x != 0.0]

    def __getitem__(self, mask: int) -> float:
        return float(self.values[self.lattice.index_of(mask)])


@dataclass
class BeliefVector:
    lattice: Lattice
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.lattice),):
            raise AlignmentError(f"expected {len(self.lattice)} beliefs, got shape {self.values.shape}")

    def __getitem__(self, mask: int) -> float:
        return float(self.values[self.lattice.index_of(mask)])


def _resolve(lattice: Lattice, order) -> BeliefMatrix:
    if isinstance(order, BeliefMatrix):
        if order.lattice is not lattice:
            raise AlignmentError("belief matrix built on a different lattice")
        return order
    return _cached_bm(lattice, OrderingSpec(order).kind)


def bel_from_m(m: MassVector, order: str | BeliefMatrix = "strength") -> BeliefVector:
    bm = _resolve(m.lattice, order)
    perm = list(bm.order)
    out = np.empty(len(perm))
    out[perm] = bm.entries @ m.values[perm]
    return BeliefVector(m.lattice, out)


def m_from_bel(bel: BeliefVector, order: str | BeliefMatrix = "strength", open_world: bool = False) -> MassVector:
    bm = _resolve(bel.lattice, order)
    perm = list(bm.order)
    out = np.empty(len(perm))
    out[perm] = bm.inverse @ bel.values[perm]
    return MassVector(bel.lattice, out, open_world)


def bel_direct(m: MassVector) -> BeliefVector:
    """Bel(A) as the plain sum of m(B) over B ⊆ A."""
    masks = m.lattice.masks
    focal = m.focal()
    return BeliefVector(m.lattice, [sum(x for b, x in focal if b & ~a == 0) for a in masks])


def plausibility(m: MassVector, a: int) -> float:
    """Pl(A): total mass of elements meeting A."""
    return sum(x for b, x in m.focal() if b & a)


def complement(lattice: Lattice, a: int) -> int:
    if lattice.model.kind != SHAFER:
        raise FrameError("complements are defined on the Shafer powerset only")
    return lattice.top & ~a
