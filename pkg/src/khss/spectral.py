"""Pages of the filtered complex, homology, and comparison verdicts.

Page indexing: page 1 carries the chain-group dimensions and page 2 the
homology with respect to the jump-1 differential alone.  Pages are
computed per quantum degree q (every differential preserves q) by the
subspace formula

    Z^r_p = {x in F_p : dx in F_{p+r}},
    E^r_p = Z^r_p / (d Z^{r-1}_{p-r+1} + Z^{r-1}_{p+1}),

with F_p spanned by the generators of homological degree >= p and
Z^0_q = F_q.  The page-r differential is induced by d and raises p by r.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .filtered import FilteredComplex
from .gf2 import BitSpan


@dataclass(frozen=True)
class PageTable:
    """Bigraded dimensions of one page, plus outgoing differential ranks."""

    r: int
    dims: dict[tuple[int, int], int]
    dr_ranks: dict[tuple[int, int], int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, PageTable) and self.r == other.r
                and self.dims == other.dims)


@dataclass(frozen=True)
class SpectralResult:
    """All pages from 2 to stabilization, plus the abutment data."""

    pages: tuple[PageTable, ...]   # r = 2, 3, ...
    collapse_page: int
    total_homology: dict[int, int]  # q -> dim H(C, d)

    def page(self, r: int) -> PageTable:
        if r < 2:
            raise ValueError("stored pages start at 2")
        idx = min(r - 2, len(self.pages) - 1)
        return self.pages[idx]

    @property
    def infinity(self) -> PageTable:
        return self.pages[-1]


class _QBlock:
    """The part of the complex in one quantum degree."""

    def __init__(self, c: FilteredComplex, q: int):
        idx = [i for i, g in enumerate(c.generators) if g.q == q]
        self.global_to_local = {gi: li for li, gi in enumerate(idx)}
        self.p_of = [c.generators[gi].h for gi in idx]
        self.n = len(idx)
        full = c.full_columns()
        self.cols = []
        for gi in idx:
            mask = full[gi]
            acc = 0
            while mask:
                low = mask & -mask
                acc |= 1 << self.global_to_local[low.bit_length() - 1]
                mask ^= low
            self.cols.append(acc)
        self.p_values = sorted(set(self.p_of))
        self._filter_masks: dict[int, int] = {}
        self._z_cache: dict[tuple[int, int], list[int]] = {}

    def filter_mask(self, p: int) -> int:
        """Coordinate mask of F_p (generators with degree >= p)."""
        m = self._filter_masks.get(p)
        if m is None:
            m = sum(1 << i for i, pi in enumerate(self.p_of) if pi >= p)
            self._filter_masks[p] = m
        return m

    def apply_d(self, v: int) -> int:
        acc = 0
        while v:
            low = v & -v
            acc ^= self.cols[low.bit_length() - 1]
            v ^= low
        return acc

    def cycles_z(self, r: int, p: int) -> list[int]:
        """Basis of Z^r_p = {x in F_p : dx in F_{p+r}} (r >= 0)."""
        key = (r, p)
        cached = self._z_cache.get(key)
        if cached is not None:
            return cached
        coords = [i for i in range(self.n) if self.p_of[i] >= p]
        if r == 0:
            basis = [1 << i for i in coords]
        else:
            forbidden = ~self.filter_mask(p + r)
            # kernel of x -> dx mod F_{p+r}, over the F_p coordinates
            basis = []
            pivots: dict[int, tuple[int, int]] = {}  # pivot -> (image, x)
            for i in coords:
                img = self.cols[i] & forbidden
                x = 1 << i
                done = 0
                while img:
                    pos = img.bit_length() - 1
                    entry = pivots.get(pos)
                    if entry is not None:
                        img ^= entry[0]
                        x ^= entry[1]
                    else:
                        bit = 1 << pos
                        done |= bit
                        img ^= bit
                if done == 0:
                    basis.append(x)
                else:
                    pivots[done.bit_length() - 1] = (done, x)
        self._z_cache[key] = basis
        return basis

    def boundary_span(self, r: int, p: int) -> BitSpan:
        """Span of d Z^{r-1}_{p-r+1} + Z^{r-1}_{p+1}."""
        span = BitSpan()
        for x in self.cycles_z(r - 1, p - r + 1):
            span.add(self.apply_d(x))
        for x in self.cycles_z(r - 1, p + 1):
            span.add(x)
        return span

    def page_dims(self, r: int) -> dict[int, int]:
        out = {}
        for p in self.p_values:
            z = self.cycles_z(r, p)
            span = self.boundary_span(r, p)
            dim = 0
            probe = span.copy()
            for x in z:
                if probe.add(x):
                    dim += 1
            if dim:
                out[p] = dim
        return out

    def dr_ranks(self, r: int) -> dict[int, int]:
        """Rank of the page-r differential out of each p."""
        out = {}
        for p in self.p_values:
            target = self.boundary_span(r, p + r)
            rank = 0
            for x in self.cycles_z(r, p):
                if target.add(self.apply_d(x)):
                    rank += 1
            if rank:
                out[p] = rank
        return out

    def homology_dim(self) -> int:
        """dim ker(d) - dim im(d) for the full differential."""
        image = BitSpan(self.cols)
        return (self.n - image.dim) - image.dim


def khovanov_oracle(c: FilteredComplex) -> PageTable:
    """Page 2 computed directly as homology of the jump-1 differential,
    ignoring all diagonals (the independent route for page(c, 2))."""
    d1 = c.components.get(1, {})
    by_q: dict[int, list[int]] = {}
    for i, g in enumerate(c.generators):
        by_q.setdefault(g.q, []).append(i)
    dims: dict[tuple[int, int], int] = {}
    for q, idx in sorted(by_q.items()):
        local = {gi: li for li, gi in enumerate(idx)}
        cols = []
        for gi in idx:
            mask = d1.get(gi, 0)
            acc = 0
            while mask:
                low = mask & -mask
                acc |= 1 << local[low.bit_length() - 1]
                mask ^= low
            cols.append(acc)
        p_of = [c.generators[gi].h for gi in idx]
        for p in sorted(set(p_of)):
            # ker at degree p minus image coming from degree p-1
            out_rank = BitSpan(cols[i] for i in range(len(idx))
                               if p_of[i] == p).dim
            n_p = sum(1 for pi in p_of if pi == p)
            in_rank = BitSpan(cols[i] for i in range(len(idx))
                              if p_of[i] == p - 1).dim
            dim = (n_p - out_rank) - in_rank
            if dim:
                dims[(p, q)] = dim
    return PageTable(2, dims)


def _blocks(c: FilteredComplex) -> list[tuple[int, _QBlock]]:
    return [(q, _QBlock(c, q)) for q in sorted({g.q for g in c.generators})]


def _page_from_blocks(blocks, r: int) -> PageTable:
    dims: dict[tuple[int, int], int] = {}
    ranks: dict[tuple[int, int], int] = {}
    for q, block in blocks:
        for p, dim in block.page_dims(r).items():
            dims[(p, q)] = dim
        for p, rk in block.dr_ranks(r).items():
            ranks[(p, q)] = rk
    return PageTable(r, dims, ranks)


def page(c: FilteredComplex, r: int) -> PageTable:
    """One page of the spectral sequence (r >= 1)."""
    if r < 1:
        raise ValueError("page index starts at 1")
    return _page_from_blocks(_blocks(c), r)


def total_homology(c: FilteredComplex, blocks=None) -> dict[int, int]:
    """q -> dim of the homology of the full differential."""
    out = {}
    for q, block in (blocks if blocks is not None else _blocks(c)):
        dim = block.homology_dim()
        if dim:
            out[q] = dim
    return out


def compute(c: FilteredComplex) -> SpectralResult:
    """All pages from 2 to stabilization, collapse page, abutment."""
    p_values = [g.h for g in c.generators]
    length = (max(p_values) - min(p_values)) if p_values else 0
    r_max = max(2, length + 2)  # no differential has jump > length
    blocks = _blocks(c)
    pages = tuple(_page_from_blocks(blocks, r) for r in range(2, r_max + 1))
    final = pages[-1].dims
    collapse = pages[-1].r
    for pt in pages:
        if pt.dims == final:
            collapse = pt.r
            break
    return SpectralResult(pages, collapse, total_homology(c, blocks))


@dataclass(frozen=True)
class Verdict:
    equal: bool
    detail: str = ""


def compare_pages(a: SpectralResult, b: SpectralResult) -> Verdict:
    """Equality of every page's dimension table (pages persist past
    their stabilization, so shorter lists are padded with the last)."""
    top = max(a.pages[-1].r, b.pages[-1].r)
    for r in range(2, top + 1):
        da, db = a.page(r).dims, b.page(r).dims
        if da != db:
            diff = sorted(set(da) ^ set(db)
                          | {k for k in set(da) & set(db) if da[k] != db[k]})
            p, q = diff[0]
            return Verdict(False,
                           f"first difference at page {r}, (p={p}, q={q}): "
                           f"{da.get((p, q), 0)} vs {db.get((p, q), 0)}")
    return Verdict(True)


def basepoint_sweep(d, build_fn=None) -> Verdict:
    """Reduced results for every basepoint arc on the marked component
    must agree pairwise."""
    from . import filtered

    build_fn = build_fn or (lambda dd: compute(filtered.build(dd, True)))
    comp = d.marked_component()
    if comp is None or len(comp) < 2:
        return Verdict(True, "single-arc marked component")
    results = []
    for arc in comp:
        results.append((arc, build_fn(d.with_basepoint(arc))))
    base_arc, base = results[0]
    for arc, res in results[1:]:
        v = compare_pages(base, res)
        if not v.equal:
            return Verdict(False,
                           f"basepoint {base_arc} vs {arc}: {v.detail}")
    return Verdict(True)
