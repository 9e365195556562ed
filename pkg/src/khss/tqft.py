"""The two TQFTs on marked unlinks and the grading-shift calculus.

The Frobenius algebra is F2[X]/(X^2) with v+ = 1 and v- = X, counit
eps(v-) = 1, eps(v+) = 0.  Reduced state spaces use the letters T = v+
and B = v- on the unmarked circles only; the marked circle carries no
letter.  Generator matrices act on the first one or two unmarked tensor
factors; arbitrary positions are reached by conjugating with swaps.

Monomial encoding: basis monomials of V^(tensor m) are integers whose
bit j records the letter on circle j (0 = v+/T, 1 = v-/B).  A linear
map is a list of column masks: entry b is the XOR-set of target basis
indices hit by source basis monomial b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cube import EdgeCobordism
from .gf2 import GF2Matrix

V_PLUS = 0   # the unit, also the letter T
V_MINUS = 1  # the degree-dropping letter, also B


@dataclass(frozen=True)
class FrobeniusElement:
    """An element of V^(tensor circle_count) as a set of monomials."""

    circle_count: int
    terms: frozenset[int]

    def __post_init__(self):
        for t in self.terms:
            if t >> self.circle_count:
                raise ValueError("monomial has letters beyond circle count")

    def __add__(self, other: "FrobeniusElement") -> "FrobeniusElement":
        if self.circle_count != other.circle_count:
            raise ValueError("circle count mismatch")
        return FrobeniusElement(self.circle_count,
                                self.terms ^ other.terms)

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class ReducedElement:
    """An element of the reduced state space: monomials in T/B over the
    unmarked circles (the marked circle carries no letter)."""

    unmarked_count: int
    terms: frozenset[int]

    def __add__(self, other: "ReducedElement") -> "ReducedElement":
        if self.unmarked_count != other.unmarked_count:
            raise ValueError("unmarked count mismatch")
        return ReducedElement(self.unmarked_count, self.terms ^ other.terms)

    def is_zero(self) -> bool:
        return not self.terms


def letter_product(x: int, y: int) -> int | None:
    """Multiply two letters; None encodes zero (v- v- = 0)."""
    if x == V_MINUS and y == V_MINUS:
        return None
    return x | y


def letter_coproduct(x: int) -> list[tuple[int, int]]:
    """Comultiply a letter into pairs: Delta(v+) = v+v- + v-v+,
    Delta(v-) = v-v-."""
    if x == V_MINUS:
        return [(V_MINUS, V_MINUS)]
    return [(V_PLUS, V_MINUS), (V_MINUS, V_PLUS)]


def multiply(x: int, y: int) -> FrobeniusElement:
    p = letter_product(x, y)
    terms = frozenset() if p is None else frozenset({p})
    return FrobeniusElement(1, terms)


def comultiply(x: int) -> FrobeniusElement:
    terms = frozenset(a | (b << 1) for a, b in letter_coproduct(x))
    return FrobeniusElement(2, terms)


# ---------------------------------------------------------------------------
# Edge maps of the cube (quotient construction for the reduced flavor)

def _untouched_position_map(e: EdgeCobordism) -> dict[int, int]:
    by_key = {c: i for i, c in enumerate(e.dst.circles)}
    out = {}
    for i, c in enumerate(e.src.circles):
        if i not in e.sources:
            out[i] = by_key[c]
    return out


def edge_columns_unreduced(e: EdgeCobordism) -> list[int]:
    """Column masks of the edge map on V^(tensor circles)."""
    n_src = e.src.circle_count
    reindex = _untouched_position_map(e)
    cols = []
    for m in range(1 << n_src):
        base = 0
        for i, j in reindex.items():
            if (m >> i) & 1:
                base |= 1 << j
        acc = 0
        if e.kind == "merge":
            i, j = e.sources
            (t,) = e.targets
            p = letter_product((m >> i) & 1, (m >> j) & 1)
            if p is not None:
                acc = 1 << (base | (p << t))
        else:
            (i,) = e.sources
            t1, t2 = e.targets
            for a, b in letter_coproduct((m >> i) & 1):
                acc ^= 1 << (base | (a << t1) | (b << t2))
        cols.append(acc)
    return cols


def edge_columns_reduced(e: EdgeCobordism) -> list[int]:
    """Column masks of the reduced edge map, computed by the quotient:
    put v+ on the marked circle, apply the unreduced map, and delete
    every term carrying v- on the marked circle."""
    n_src = e.src.circle_count
    unred = edge_columns_unreduced(e)
    n_dst = e.dst.circle_count
    cols = []
    for m in range(1 << (n_src - 1)):
        # embed: marked circle (position 0) carries v+
        full_terms = unred[m << 1]
        acc = 0
        t = 0
        while full_terms:
            if full_terms & 1:
                if not t & 1:  # keep only v+ on the marked circle
                    acc ^= 1 << (t >> 1)
            full_terms >>= 1
            t += 1
        cols.append(acc)
    del n_dst
    return cols


def apply_edge_unreduced(e: EdgeCobordism,
                         x: FrobeniusElement) -> FrobeniusElement:
    if x.circle_count != e.src.circle_count:
        raise ValueError("element does not live on the source circles")
    cols = edge_columns_unreduced(e)
    acc = 0
    for t in x.terms:
        acc ^= cols[t]
    return FrobeniusElement(e.dst.circle_count, _mask_to_terms(acc))


def apply_edge_reduced(e: EdgeCobordism, x: ReducedElement) -> ReducedElement:
    if x.unmarked_count != e.src.circle_count - 1:
        raise ValueError("element does not live on the source circles")
    cols = edge_columns_reduced(e)
    acc = 0
    for t in x.terms:
        acc ^= cols[t]
    return ReducedElement(e.dst.circle_count - 1, _mask_to_terms(acc))


def _mask_to_terms(mask: int) -> frozenset[int]:
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def compose_columns(first: list[int], second: list[int]) -> list[int]:
    """Columns of (second after first)."""
    out = []
    for mask in first:
        acc = 0
        while mask:
            low = mask & -mask
            acc ^= second[low.bit_length() - 1]
            mask ^= low
        out.append(acc)
    return out


def columns_to_matrix(cols: list[int], rows: int) -> GF2Matrix:
    return GF2Matrix.from_columns(cols, rows)


# ---------------------------------------------------------------------------
# Generators of the cobordism category on marked unlinks

GENERATOR_KINDS = ("V", "Lam", "X", "IV", "ILam", "Birth", "Death")


@dataclass(frozen=True)
class Generator:
    """An elementary cobordism between marked unlinks.

    ``n`` is the number of source components (marked one included);
    ``i`` is the swapped position for kind "X" (components i, i+1,
    with 2 <= i <= n-1: the marked component cannot be swapped).
    """

    kind: str
    n: int
    i: int | None = None

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        k, n = self.kind, self.n
        if k == "V" and n < 1:
            raise ValueError("V needs n >= 1")
        if k in ("Lam", "Death") and n < 2:
            raise ValueError(f"{k} needs n >= 2")
        if k == "IV" and n < 2:
            raise ValueError("IV needs n >= 2")
        if k == "ILam" and n < 3:
            raise ValueError("ILam needs n >= 3")
        if k == "Birth" and n < 1:
            raise ValueError("Birth needs n >= 1")
        if k == "X":
            if self.i is None or not 2 <= self.i <= n - 1:
                raise ValueError(
                    "X swaps components i, i+1 with 2 <= i <= n-1; "
                    "the marked component cannot be swapped")
        elif self.i is not None:
            raise ValueError(f"{k} takes no position index")

    @property
    def source_size(self) -> int:
        return self.n

    @property
    def target_size(self) -> int:
        if self.kind in ("V", "IV", "Birth"):
            return self.n + 1
        if self.kind in ("Lam", "ILam", "Death"):
            return self.n - 1
        return self.n


def hfl_generator_matrix(g: Generator) -> GF2Matrix:
    """The stated generator matrix on the canonical T/B bases."""
    return columns_to_matrix(_hfl_columns(g), 1 << (g.target_size - 1))


def _hfl_columns(g: Generator) -> list[int]:
    n_src = 1 << (g.source_size - 1)
    cols = []
    for m in range(n_src):
        cols.append(_hfl_one(g, m))
    return cols


def _hfl_one(g: Generator, m: int) -> int:
    k = g.kind
    if k == "V":                       # x -> B (x) on a new first factor
        return 1 << ((m << 1) | 1)
    if k == "Lam":                     # T x -> x ; B x -> 0
        return 0 if m & 1 else 1 << (m >> 1)
    if k == "X":                       # swap factors i-1, i (bits i-2, i-1)
        lo, hi = g.i - 2, g.i - 1
        a, b = (m >> lo) & 1, (m >> hi) & 1
        sw = m & ~((1 << lo) | (1 << hi)) | (b << lo) | (a << hi)
        return 1 << sw
    if k == "IV":                      # T * -> (T B + B T) * ; B * -> B B *
        rest = (m >> 1) << 2
        if m & 1:
            return 1 << (rest | 0b11)
        return (1 << (rest | 0b01)) ^ (1 << (rest | 0b10))
    if k == "ILam":                    # TT->T, TB->B, BT->B, BB->0
        low, rest = m & 0b11, (m >> 2) << 1
        if low == 0b11:
            return 0
        return 1 << (rest | (1 if low else 0))
    if k == "Birth":                   # x -> x (x) T appended last
        return 1 << m
    # Death: last factor T -> 0, B -> 1
    bit = 1 << (g.source_size - 2)
    return 1 << (m & ~bit) if m & bit else 0


def reduced_generator_matrix(g: Generator) -> GF2Matrix:
    """The same generator through the marked-circle quotient of the
    Frobenius TQFT (computed, not copied)."""
    return columns_to_matrix(_reduced_columns(g), 1 << (g.target_size - 1))


def _reduced_columns(g: Generator) -> list[int]:
    cols = []
    for m in range(1 << (g.source_size - 1)):
        cols.append(_reduced_one(g, m))
    return cols


def _reduced_one(g: Generator, m: int) -> int:
    k = g.kind
    if k == "V":
        # comultiply the marked v+; quotient keeps the term with v+ on
        # the marked child, so the new unmarked factor carries v-.
        acc = 0
        for a, b in letter_coproduct(V_PLUS):
            if a == V_PLUS:
                acc ^= 1 << ((m << 1) | b)
        return acc
    if k == "Lam":
        # multiply the marked v+ with the first unmarked letter; terms
        # leaving v- on the marked circle die in the quotient.
        p = letter_product(V_PLUS, m & 1)
        return 0 if p == V_MINUS else 1 << (m >> 1)
    if k == "X":
        lo, hi = g.i - 2, g.i - 1
        a, b = (m >> lo) & 1, (m >> hi) & 1
        sw = m & ~((1 << lo) | (1 << hi)) | (b << lo) | (a << hi)
        return 1 << sw
    if k == "IV":
        rest = (m >> 1) << 2
        acc = 0
        for a, b in letter_coproduct(m & 1):
            acc ^= 1 << (rest | a | (b << 1))
        return acc
    if k == "ILam":
        p = letter_product(m & 1, (m >> 1) & 1)
        if p is None:
            return 0
        return 1 << (((m >> 2) << 1) | p)
    if k == "Birth":
        return 1 << (m | (V_PLUS << (g.source_size - 1)))
    # Death: counit on the last factor, eps(v+) = 0, eps(v-) = 1
    bit = 1 << (g.source_size - 2)
    return 1 << (m & ~bit) if m & bit else 0


@dataclass(frozen=True)
class GeneratorWord:
    """A composable sequence of generators, applied left to right."""

    generators: tuple[Generator, ...]

    def __post_init__(self):
        for a, b in zip(self.generators, self.generators[1:]):
            if a.target_size != b.source_size:
                raise ValueError(
                    f"non-composable word: {a.kind} targets {a.target_size} "
                    f"components but {b.kind} expects {b.source_size}")

    @property
    def source_size(self) -> int:
        return self.generators[0].source_size if self.generators else 1

    @property
    def target_size(self) -> int:
        return self.generators[-1].target_size if self.generators else 1


def evaluate_word(word: GeneratorWord, matrix_fn=_hfl_columns) -> list[int]:
    """Column masks of the composite of a word, identity when empty."""
    cols = [1 << m for m in range(1 << (word.source_size - 1))]
    for g in word.generators:
        cols = compose_columns(cols, matrix_fn(g))
    return cols


@dataclass(frozen=True)
class TriangleReport:
    ok: bool
    detail: str = ""


def check_triangle(word: GeneratorWord, corrupt: bool = False) -> TriangleReport:
    """Compare the composites of the stated generator matrices and the
    quotient-construction matrices along a word.

    ``corrupt`` flips one matrix entry first; a harness control that must
    always produce a failure report.
    """
    lhs = evaluate_word(word, _hfl_columns)
    rhs = evaluate_word(word, _reduced_columns)
    if corrupt:
        lhs = list(lhs)
        lhs[0] ^= 1
    if lhs == rhs:
        return TriangleReport(True)
    col = next(i for i, (a, b) in enumerate(zip(lhs, rhs)) if a != b)
    return TriangleReport(
        False, f"composites differ at source basis monomial {col}")


# ---------------------------------------------------------------------------
# Grading-shift calculus (half-integers stored doubled)

@dataclass(frozen=True)
class GradingShift:
    """Alexander/Maslov shift of a cobordism map, doubled to stay integral."""

    alexander2: int
    maslov2: int

    @property
    def alexander(self) -> Fraction:
        return Fraction(self.alexander2, 2)

    @property
    def maslov(self) -> Fraction:
        return Fraction(self.maslov2, 2)

    @property
    def delta(self) -> Fraction:
        return self.alexander - self.maslov

    def __add__(self, other: "GradingShift") -> "GradingShift":
        return GradingShift(self.alexander2 + other.alexander2,
                            self.maslov2 + other.maslov2)


_SHIFT_TABLE = {
    "pos-stab": (1, 1),
    "neg-stab": (-1, -1),
    "pos-destab": (1, 1),
    "neg-destab": (-1, -1),
    "birth": (0, 1),
    "death": (0, 1),
    "saddle": (0, -1),
    "isotopy": (0, 0),
}


def grading_shift_word(kinds: list[str]) -> GradingShift:
    """Sum of the per-kind (Alexander, Maslov) shifts."""
    total = GradingShift(0, 0)
    for kind in kinds:
        if kind not in _SHIFT_TABLE:
            raise ValueError(f"unknown elementary cobordism kind {kind!r}")
        total = total + GradingShift(*_SHIFT_TABLE[kind])
    return total


def grading_shift_surface(chi_f: int, chi_rplus: int,
                          chi_rminus: int) -> GradingShift:
    """Shift from Euler characteristics of the surface and its positive
    and negative decoration regions."""
    a2 = chi_rplus - chi_rminus
    m2 = chi_f + a2
    return GradingShift(a2, m2)
