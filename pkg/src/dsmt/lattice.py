"""Powerset and hyper-powerset generation.

Elements are bitsets over an :class:`~dsmt.venn.EncodingBasis`; intersection
and union are bitwise AND / OR.  The hyper-powerset is produced from the
isotone Boolean function recursion (rows of ``D_n``), and cross-checked by a
brute-force AND/OR closure from the generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dsmt.venn import (
    FREE,
    SHAFER,
    EncodingBasis,
    FrameError,
    FrameModel,
    build_basis,
)

MAX_ISOTONE_N = 5
DEDEKIND_COUNTS = (1, 2, 5, 19, 167, 7580, 7828353)  # |D^Theta| for n = 0..6

_U64 = np.uint64


class BasisMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ElementMask:
    bits: int
    basis: EncodingBasis

    def _same(self, other: "ElementMask") -> None:
        if self.basis != other.basis:
            raise BasisMismatchError("operands live on different bases")

    def __and__(self, other: "ElementMask") -> "ElementMask":
        self._same(other)
        return ElementMask(self.bits & other.bits, self.basis)

    def __or__(self, other: "ElementMask") -> "ElementMask":
        self._same(other)
        return ElementMask(self.bits | other.bits, self.basis)

    def __le__(self, other: "ElementMask") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementMask") -> bool:
        return self <= other and self.bits != other.bits

    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def parts(self) -> list[str]:
        return self.basis.codes_of(self.bits)

    def __str__(self) -> str:
        return "{" + ",".join(self.parts) + "}"


def intersect(a: ElementMask, b: ElementMask) -> ElementMask:
    return a & b


def union(a: ElementMask, b: ElementMask) -> ElementMask:
    return a | b


def is_subset(a: ElementMask, b: ElementMask) -> bool:
    return a <= b


# Hand-checked expressions for the free model, keyed by mask over u_n.
# n = 3 follows the isotone listing alpha_0 .. alpha_18.
_PRETTY = {
    0: {0: "∅"},
    1: {0: "∅", 1: "θ1"},
    2: {0: "∅", 0b100: "θ1∩θ2", 0b110: "θ2", 0b101: "θ1", 0b111: "θ1∪θ2"},
    3: {
        0b0000000: "∅",
        0b1000000: "θ1∩θ2∩θ3",
        0b1100000: "θ2∩θ3",
        0b1010000: "θ1∩θ3",
        0b1110000: "(θ1∪θ2)∩θ3",
        0b1111000: "θ3",
        0b1000100: "θ1∩θ2",
        0b1100100: "(θ1∪θ3)∩θ2",
        0b1010100: "(θ2∪θ3)∩θ1",
        0b1110100: "[(θ1∩θ2)∪θ3]∩(θ1∪θ2)",
        0b1111100: "(θ1∩θ2)∪θ3",
        0b1100110: "θ2",
        0b1110110: "(θ1∩θ3)∪θ2",
        0b1111110: "θ2∪θ3",
        0b1010101: "θ1",
        0b1110101: "(θ2∩θ3)∪θ1",
        0b1111101: "θ1∪θ3",
        0b1110111: "θ1∪θ2",
        0b1111111: "θ1∪θ2∪θ3",
    },
}


def dnf_label(mask: int, basis: EncodingBasis) -> str:
    """Union over the minimal parts of ``mask`` of the intersection of their generators."""
    if mask == 0:
        return "∅"
    sets = [frozenset(basis.parts[i].indices) for i in range(basis.dim) if mask >> i & 1]
    minimal = sorted((s for s in sets if not any(t < s for t in sets)), key=sorted)
    terms = ["∩".join(f"θ{i}" for i in sorted(s)) for s in minimal]
    if len(terms) == 1:
        return terms[0]
    return "∪".join(f"({t})" if "∩" in t else t for t in terms)


@dataclass(frozen=True, eq=False)
class Lattice:
    """Indexed element list of 2^Theta or D^Theta; index 0 is always the empty set."""

    model: FrameModel
    basis: EncodingBasis
    elements: np.ndarray

    def __post_init__(self):
        self.elements.flags.writeable = False

    @property
    def n(self) -> int:
        return self.model.n

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def masks(self) -> list[int]:
        return [int(x) for x in self.elements]

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    def index_of(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise KeyError(f"mask {mask:#b} is not an element of this lattice") from None

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def element(self, i: int) -> ElementMask:
        return ElementMask(self.masks[i], self.basis)

    @property
    def top(self) -> int:
        return self.basis.full_mask

    def label(self, i: int) -> str:
        return "{" + ",".join(self.basis.codes_of(self.masks[i])) + "}"

    def pretty(self, i: int) -> str:
        mask = self.masks[i]
        if self.model.kind == FREE and mask in _PRETTY.get(self.n, {}):
            return _PRETTY[self.n][mask]
        return dnf_label(mask, self.basis)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(i) for i in range(len(self)))

    @property
    def dn_rows(self) -> np.ndarray:
        """The D_n generating matrix, one 0/1 row per element over the basis."""
        dim = self.basis.dim
        shifts = np.arange(dim, dtype=_U64)
        return ((self.elements[:, None] >> shifts[None, :]) & _U64(1)).astype(np.int8)


def _isotone_rows(n: int) -> np.ndarray:
    # Truth tables of monotone functions; bit k is the value on the input whose
    # set bits name the true variables.  D_0^c = [0 1]'.
    rows = np.array([0, 1], dtype=_U64)
    for level in range(1, n + 1):
        half = _U64(1 << (level - 1))
        out = []
        for r in rows:
            above = rows[(rows & r) == r]
            out.append(r | (above << half))
        rows = np.concatenate(out)
    return rows


def generate_isotone(n: int, allow_large: bool = False) -> Lattice:
    """Free-model hyper-powerset in isotone generation order (r^iso)."""
    limit = 6 if allow_large else MAX_ISOTONE_N
    if not 0 <= n <= limit:
        hint = "" if allow_large or n != 6 else " (pass allow_large=True for n=6)"
        raise FrameError(f"isotone generation supports n in 0..{limit}, got {n}{hint}")
    rows = _isotone_rows(n)
    # drop the constant-one function (last line) and the all-false input column
    elements = rows[:-1] >> _U64(1)
    model = FrameModel.free(n)
    return Lattice(model, build_basis(n, model), elements)


def generate_closure_oracle(n: int, model: FrameModel | None = None) -> Lattice:
    """Brute-force AND/OR fixpoint from {∅, θ_1..θ_n}; elements sorted by mask."""
    if model is None:
        model = FrameModel.free(n)
    if not 0 <= n <= MAX_ISOTONE_N:
        raise FrameError(f"closure oracle supports n in 0..{MAX_ISOTONE_N}, got {n}")
    basis = build_basis(n, model)
    seed = {0} | {basis.generator_mask(i) for i in range(1, n + 1)}
    known = np.array(sorted(seed), dtype=_U64)
    frontier = known
    while frontier.size:
        found = []
        for lo in range(0, frontier.size, 256):
            chunk = frontier[lo:lo + 256, None]
            found.append((chunk & known[None, :]).ravel())
            found.append((chunk | known[None, :]).ravel())
        fresh = np.setdiff1d(np.concatenate(found), known)
        known = np.union1d(known, fresh)
        frontier = fresh
    return Lattice(model, basis, known)


def apply_constraints(free: Lattice, model: FrameModel) -> Lattice:
    """Restrict a free lattice to a hybrid/Shafer model.

    Suppressed part bits are cleared, collapsed duplicates keep their lowest
    original index, and everything that collapses to ∅ is dropped except ∅.
    """
    if free.model.kind != FREE:
        raise FrameError("apply_constraints expects a free-model lattice")
    if model.n != free.n:
        raise FrameError(f"model is for n={model.n}, lattice has n={free.n}")
    if model.kind == FREE:
        return free
    basis = build_basis(model.n, model)
    if basis.dim == 0:
        raise FrameError("constraints force the whole frame empty")
    seen: dict[int, None] = {}
    for m in free.masks:
        p = basis.project(m)
        if p not in seen:
            seen[p] = None
    return Lattice(model, basis, np.array(list(seen), dtype=_U64))


def generate_powerset_bibe(n: int) -> Lattice:
    """Shafer-model powerset; element i is the union of θ_j for each set bit j-1 of i."""
    model = FrameModel.shafer(n)
    basis = build_basis(n, model)
    return Lattice(model, basis, np.arange(1 << n, dtype=_U64))


def generate(n: int, model: FrameModel | None = None) -> Lattice:
    """Lattice for any model: iso order for free/hybrid, bibe order for Shafer."""
    if model is None or model.kind == FREE:
        return generate_isotone(n)
    if model.kind == SHAFER:
        return generate_powerset_bibe(n)
    return apply_constraints(generate_isotone(n), model)


_OPEN = {"(": ")", "[": "]", "{": "}"}
_MEET = {"∩", "&"}
_JOIN = {"∪", "|"}


def parse_expression(text: str, basis: EncodingBasis) -> int:
    """Evaluate an ∪/∩ expression over θ_i (``θ1∩(θ2∪θ3)`` or ``t1&(t2|t3)``) to a mask.

    ∩ binds tighter than ∪; ``∅`` and ``Θ`` name the bottom and top.
    """
    toks: list[str] = []
    i, s = 0, text.replace(" ", "")
    while i < len(s):
        ch = s[i]
        if ch in "θt":
            j = i + 1
            while j < len(s) and s[j].isdigit():
                j += 1
            if j == i + 1:
                raise ValueError(f"generator without index at {i} in {text!r}")
            toks.append(s[i:j])
            i = j
        else:
            toks.append(ch)
            i += 1
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def atom() -> int:
        tok = take() if peek() is not None else None
        if tok is None:
            raise ValueError(f"unexpected end of {text!r}")
        if tok in _OPEN:
            val = join()
            if peek() != _OPEN[tok]:
                raise ValueError(f"unbalanced {tok!r} in {text!r}")
            take()
            return val
        if tok == "∅":
            return 0
        if tok == "Θ":
            return basis.full_mask
        if tok[0] in "θt":
            return basis.generator_mask(int(tok[1:]))
        raise ValueError(f"unexpected {tok!r} in {text!r}")

    def meet() -> int:
        val = atom()
        while peek() in _MEET:
            take()
            val &= atom()
        return val

    def join() -> int:
        val = meet()
        while peek() in _JOIN:
            take()
            val |= meet()
        return val

    out = join()
    if pos != len(toks):
        raise ValueError(f"trailing input {''.join(toks[pos:])!r} in {text!r}")
    return out
