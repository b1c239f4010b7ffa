"""Venn-diagram part codes and the encoding basis.

A part is the region of the n-set Venn diagram that lies inside exactly the
generators listed in its code, e.g. ``<12>`` is inside theta_1 and theta_2 and
outside every other theta.  Lattice elements are unions of parts, stored as
integer bitsets over the basis (bit ``i`` is the part at position ``i``).

Free-model part order follows the recursion

    u_n = u_{n-1}, <n>, [p + "n" for p in u_{n-1}]

which gives ``<1> <2> <12> <3> <13> <23> <123>`` for n = 3.  Equivalently, the
part at free position ``p`` contains generator ``j`` iff bit ``j-1`` of
``p + 1`` is set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

MAX_FREE_N = 6
MAX_SHAFER_N = 10

FREE, HYBRID, SHAFER = "free", "hybrid", "shafer"


class FrameError(ValueError):
    """Invalid frame size or model constraint."""


@dataclass(frozen=True)
class PartCode:
    indices: tuple[int, ...]
    position: int

    def __post_init__(self):
        if not self.indices or list(self.indices) != sorted(set(self.indices)):
            raise FrameError(f"bad part indices {self.indices!r}")
        if self.indices[0] < 1:
            raise FrameError(f"bad part indices {self.indices!r}")

    @property
    def code(self) -> str:
        return "".join(str(i) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return f"<{self.code}>"


def part_weight(part: PartCode) -> Fraction:
    return Fraction(1, len(part.indices))


def free_part_indices(position: int) -> tuple[int, ...]:
    k = position + 1
    return tuple(j + 1 for j in range(k.bit_length()) if k >> j & 1)


def free_generator_mask(n: int, i: int) -> int:
    """Free-basis mask of theta_i: every part whose code contains ``i``."""
    return sum(1 << (k - 1) for k in range(1, 1 << n) if k >> (i - 1) & 1)


def free_intersection_mask(n: int, indices: Iterable[int]) -> int:
    """Free-basis mask of the intersection of the listed generators."""
    want = 0
    for i in indices:
        if not 1 <= i <= n:
            raise FrameError(f"generator {i} not in frame of size {n}")
        want |= 1 << (i - 1)
    if not want:
        raise FrameError("empty intersection constraint")
    return sum(1 << (k - 1) for k in range(1, 1 << n) if k & want == want)


@dataclass(frozen=True)
class FrameModel:
    """Frame size plus the elements forced empty.

    ``forced_empty`` holds masks over the *free* basis of size ``2**n - 1``.
    """

    n: int
    forced_empty: tuple[int, ...] = ()
    kind: str = FREE

    def __post_init__(self):
        if self.n < 0:
            raise FrameError(f"frame size must be >= 0, got {self.n}")
        if self.kind not in (FREE, HYBRID, SHAFER):
            raise FrameError(f"unknown model kind {self.kind!r}")
        if self.kind == FREE and self.forced_empty:
            raise FrameError("free model cannot carry constraints")
        full = (1 << ((1 << self.n) - 1)) - 1
        for c in self.forced_empty:
            if c <= 0 or c & ~full:
                raise FrameError(f"constraint mask {c:#b} outside frame of size {self.n}")
        if self.suppressed == full and self.n > 0:
            raise FrameError("constraints force the whole frame empty")

    @classmethod
    def free(cls, n: int) -> "FrameModel":
        return cls(n)

    @classmethod
    def shafer(cls, n: int) -> "FrameModel":
        if not 0 <= n <= MAX_SHAFER_N:
            raise FrameError(f"Shafer frame size must be in 0..{MAX_SHAFER_N}, got {n}")
        if n > MAX_FREE_N:
            # free masks would be 2**n - 1 bits wide; constraints are implied by kind
            return cls(n, (), SHAFER)
        return cls(n, tuple(free_intersection_mask(n, p) for p in combinations(range(1, n + 1), 2)), SHAFER)

    @classmethod
    def from_intersections(cls, n: int, constraints: Sequence[Sequence[int | str]]) -> "FrameModel":
        """Hybrid model from a list of generator sets, each intersection forced empty."""
        if not constraints:
            return cls.free(n)
        masks = []
        for c in constraints:
            try:
                idx = [int(i) for i in c]
            except (TypeError, ValueError) as exc:
                raise FrameError(f"bad constraint {c!r}") from exc
            masks.append(free_intersection_mask(n, idx))
        return cls(n, tuple(masks), HYBRID)

    @property
    def suppressed(self) -> int:
        """Free-basis mask of every part removed by the constraints."""
        out = 0
        for c in self.forced_empty:
            out |= c
        return out

    def constraint_sets(self) -> list[list[int]]:
        """Constraints written back as generator sets, when each is an intersection."""
        out = []
        for c in self.forced_empty:
            low = (c & -c).bit_length()  # lowest part position + 1 == generator bits
            idx = [j + 1 for j in range(self.n) if low >> j & 1]
            if free_intersection_mask(self.n, idx) != c:
                raise FrameError(f"constraint {c:#b} is not a plain intersection")
            out.append(idx)
        return out


@dataclass(frozen=True)
class EncodingBasis:
    n: int
    parts: tuple[PartCode, ...]
    weights: tuple[Fraction, ...] = field(repr=False)
    free_positions: tuple[int, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.parts)

    @property
    def full_mask(self) -> int:
        return (1 << self.dim) - 1

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(p.code for p in self.parts)

    def position(self, code: str) -> int:
        try:
            return self._lookup[code]
        except KeyError:
            raise FrameError(f"part <{code}> not in basis") from None

    @property
    def _lookup(self) -> dict[str, int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = {p.code: i for i, p in enumerate(self.parts)}
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def mask_of(self, codes: Iterable[str]) -> int:
        out = 0
        for c in codes:
            out |= 1 << self.position(str(c))
        return out

    def codes_of(self, mask: int) -> list[str]:
        if mask & ~self.full_mask:
            raise FrameError(f"mask {mask:#b} wider than basis of dim {self.dim}")
        return [self.parts[i].code for i in range(self.dim) if mask >> i & 1]

    def generator_mask(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise FrameError(f"generator {i} not in frame of size {self.n}")
        return sum(1 << k for k, p in enumerate(self.parts) if i in p.indices)

    def project(self, free_mask: int) -> int:
        """Restrict a free-basis mask to the surviving parts of this basis."""
        out = 0
        for k, fp in enumerate(self.free_positions):
            if free_mask >> fp & 1:
                out |= 1 << k
        return out


def _basis_from_positions(n: int, positions: Sequence[int], indices: Sequence[tuple[int, ...]]) -> EncodingBasis:
    parts = tuple(PartCode(ix, k) for k, ix in enumerate(indices))
    return EncodingBasis(n, parts, tuple(part_weight(p) for p in parts), tuple(positions))


def build_basis(n: int, model: FrameModel | None = None) -> EncodingBasis:
    if model is None:
        model = FrameModel.free(n)
    if model.n != n:
        raise FrameError(f"model is for n={model.n}, basis requested for n={n}")
    if model.kind == SHAFER:
        if not 0 <= n <= MAX_SHAFER_N:
            raise FrameError(f"Shafer frame size must be in 0..{MAX_SHAFER_N}, got {n}")
        # singleton part <i> sits at free position 2**(i-1) - 1
        return _basis_from_positions(n, [(1 << i) - 1 for i in range(n)], [(i + 1,) for i in range(n)])
    if not 0 <= n <= MAX_FREE_N:
        raise FrameError(f"frame size must be in 0..{MAX_FREE_N}, got {n}")

    order: list[tuple[int, ...]] = []
    for k in range(1, n + 1):
        order = order + [(k,)] + [ix + (k,) for ix in order]

    suppressed = model.suppressed
    keep = [p for p in range(len(order)) if not suppressed >> p & 1]
    return _basis_from_positions(n, keep, [order[p] for p in keep])
