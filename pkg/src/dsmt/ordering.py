"""Element orderings: isotone rank, DSm cardinality, intrinsic strength."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from dsmt.lattice import ElementMask, Lattice, generate_isotone
from dsmt.venn import EncodingBasis, FrameError

ISO, CARDINALITY, STRENGTH = "iso", "cardinality", "strength"
_ALIASES = {"iso": ISO, "bibe": ISO, "card": CARDINALITY, "cardinality": CARDINALITY, "strength": STRENGTH}


@dataclass(frozen=True)
class OrderingSpec:
    kind: str
    tiebreak: str = "mask"

    def __post_init__(self):
        if self.kind not in _ALIASES:
            raise ValueError(f"unknown ordering {self.kind!r}")
        object.__setattr__(self, "kind", _ALIASES[self.kind])
        if self.tiebreak != "mask":
            raise ValueError("only the ascending-mask tiebreak is supported")


def _bits(e: ElementMask | int) -> int:
    return e.bits if isinstance(e, ElementMask) else int(e)


def dsm_cardinality(e: ElementMask | int) -> int:
    """Number of Venn parts in the element under its model."""
    return _bits(e).bit_count()


def strength(e: ElementMask | int, basis: EncodingBasis) -> Fraction:
    """Sum of 1/l(u_i) over the parts of ``e``, exact."""
    bits = _bits(e)
    if bits >> basis.dim:
        raise FrameError(f"mask {bits:#b} wider than basis of dim {basis.dim}")
    return sum((basis.weights[i] for i in range(basis.dim) if bits >> i & 1), Fraction(0))


def scaled_weights(basis: EncodingBasis) -> tuple[int, list[int]]:
    """Common denominator L and integer weights L/l(u_i), so strength = sum/L."""
    denom = lcm(*(len(p) for p in basis.parts)) if basis.dim else 1
    return denom, [denom // len(p) for p in basis.parts]


def strength_vector(lattice: Lattice) -> list[Fraction]:
    denom, w = scaled_weights(lattice.basis)
    dim = lattice.basis.dim
    return [Fraction(sum(w[i] for i in range(dim) if m >> i & 1), denom) for m in lattice.masks]


def total_order(lattice: Lattice, spec: OrderingSpec | str) -> list[int]:
    """Permutation of element indices, rank order; ties broken by ascending mask."""
    if isinstance(spec, str):
        spec = OrderingSpec(spec)
    masks = lattice.masks
    if spec.kind == ISO:
        return list(range(len(masks)))
    if spec.kind == CARDINALITY:
        return sorted(range(len(masks)), key=lambda i: (masks[i].bit_count(), masks[i]))
    _, w = scaled_weights(lattice.basis)
    dim = lattice.basis.dim

    def key(i):
        m = masks[i]
        return sum(w[k] for k in range(dim) if m >> k & 1), m

    return sorted(range(len(masks)), key=key)


@dataclass
class ClosedFormReport:
    n: int
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_closed_forms(n: int) -> ClosedFormReport:
    """Check every m-fold intersection / union of generators against 2^(n-m), (2^m-1)2^(n-m)."""
    lattice = generate_isotone(n)
    basis = lattice.basis
    gens = {i: basis.generator_mask(i) for i in range(1, n + 1)}
    report = ClosedFormReport(n)
    for m in range(1, n + 1):
        for combo in combinations(range(1, n + 1), m):
            meet, join = basis.full_mask, 0
            for i in combo:
                meet &= gens[i]
                join |= gens[i]
            for what, mask, want in (
                ("∩", meet, 2 ** (n - m)),
                ("∪", join, (2**m - 1) * 2 ** (n - m)),
            ):
                report.checked += 1
                got = dsm_cardinality(mask)
                name = what.join(f"θ{i}" for i in combo)
                if mask not in lattice:
                    report.mismatches.append(f"{name}: not an element of D^Θ")
                elif got != want:
                    report.mismatches.append(f"{name}: cardinality {got}, expected {want}")
    return report
