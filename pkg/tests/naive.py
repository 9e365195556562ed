"""Independent naive prototype used as an oracle by the tests.

Deliberately shares no code with the package: its own PD mini-parser,
its own circle tracing, dense numpy matrices, and straightforward GF(2)
Gaussian elimination.  It computes the total dimension of the reduced
homology (with respect to the single-crossing-flip differential) by
fixing the marked circle's label to the dotted letter, i.e. the
subcomplex model rather than the package's quotient model.
"""

from __future__ import annotations

import re

import numpy as np

PLUS, MINUS = 0, 1


def parse(text: str) -> list[tuple[int, int, int, int]]:
    text = "".join(text.split())
    if text == "U":
        return []
    m = re.fullmatch(r"PD\[(.*)\]", text)
    if not m:
        raise ValueError("bad PD text")
    return [tuple(int(x) for x in g.split(","))
            for g in re.findall(r"X\(([^)]*)\)", m.group(1))]


def circles_of(crossings, state: int) -> list[frozenset[int]]:
    arcs = sorted({a for t in crossings for a in t})
    parent = {a: a for a in arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for i, (a, b, c, d) in enumerate(crossings):
        if (state >> i) & 1:
            union(a, d), union(b, c)
        else:
            union(a, b), union(c, d)
    groups: dict[int, set[int]] = {}
    for a in arcs:
        groups.setdefault(find(a), set()).add(a)
    return [frozenset(g) for g in groups.values()]


def rank_gf2(m: np.ndarray) -> int:
    m = m.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] ^= m[rank]
        rank += 1
    return rank


def reduced_total_dim(text: str, basepoint: int = 1) -> int:
    crossings = parse(text)
    if not crossings:
        return 1
    n = len(crossings)

    # generators: (state, frozenset of dotted circles); marked always dotted
    index: dict[tuple[int, frozenset], int] = {}
    per_state: dict[int, list[frozenset]] = {}
    for u in range(1 << n):
        circ = circles_of(crossings, u)
        marked = next(c for c in circ if basepoint in c)
        others = [c for c in circ if c is not marked]
        labelings = []
        for mask in range(1 << len(others)):
            dotted = frozenset({marked} | {c for j, c in enumerate(others)
                                           if (mask >> j) & 1})
            labelings.append(dotted)
            index[(u, dotted)] = len(index)
        per_state[u] = labelings

    total = len(index)
    d = np.zeros((total, total), dtype=np.uint8)
    for u in range(1 << n):
        src_circles = circles_of(crossings, u)
        for i in range(n):
            if (u >> i) & 1:
                continue
            v = u | (1 << i)
            dst_circles = circles_of(crossings, v)
            for dotted in per_state[u]:
                for out in _transfer(src_circles, dst_circles, dotted):
                    d[index[(v, out)], index[(u, dotted)]] ^= 1
    return total - 2 * rank_gf2(d)


def _transfer(src, dst, dotted):
    """Images of one labeling under a merge or split, as dotted-sets."""
    if len(dst) == len(src) - 1:  # merge
        merged = next(c for c in dst if not any(c == s for s in src))
        parts = [s for s in src if s <= merged]
        untouched = {c for c in dotted if c not in parts}
        n_dots = sum(1 for p in parts if p in dotted)
        if n_dots == 2:
            return []
        if n_dots == 1:
            return [frozenset(untouched | {merged})]
        return [frozenset(untouched)]
    # split
    split_src = next(s for s in src if not any(s == c for c in dst))
    halves = [c for c in dst if c <= split_src]
    untouched = {c for c in dotted if c is not split_src and c != split_src}
    if split_src in dotted:
        return [frozenset(untouched | set(halves))]
    return [frozenset(untouched | {halves[0]}),
            frozenset(untouched | {halves[1]})]
