import pytest

import naive
from conftest import FIGURE_EIGHT, HOPF, TREFOIL
from khss.diagram import parse_pd, reidemeister1, reidemeister2
from khss.filtered import build
from khss.spectral import (
    basepoint_sweep,
    compare_pages,
    compute,
    khovanov_oracle,
    page,
    total_homology,
)


def test_oracle_against_naive_prototype():
    for text, expected in (("U", 1), (TREFOIL, 3), (FIGURE_EIGHT, 5)):
        assert naive.reduced_total_dim(text) == expected
        c = build(parse_pd(text), reduced=True)
        assert khovanov_oracle(c).total() == expected


def test_page_one_is_chain_dimensions():
    c = build(parse_pd(TREFOIL), reduced=True)
    p1 = page(c, 1)
    expect = {}
    for g in c.generators:
        expect[(g.h, g.q)] = expect.get((g.h, g.q), 0) + 1
    assert p1.dims == expect


def test_page_two_equals_oracle():
    for text in (TREFOIL, FIGURE_EIGHT, HOPF):
        for reduced in (True, False):
            c = build(parse_pd(text), reduced=reduced)
            assert page(c, 2).dims == khovanov_oracle(c).dims


def test_page_index_validation():
    c = build(parse_pd("U"), reduced=True)
    with pytest.raises(ValueError):
        page(c, 0)
    res = compute(c)
    with pytest.raises(ValueError):
        res.page(1)


def test_pages_descend():
    c = build(parse_pd(FIGURE_EIGHT), reduced=False)
    res = compute(c)
    prev = None
    for pt in res.pages:
        if prev is not None:
            for key, dim in pt.dims.items():
                assert dim <= prev.get(key, 0)
        prev = pt.dims


def test_euler_characteristic_per_q_constant_across_pages():
    c = build(parse_pd(TREFOIL), reduced=True)
    tables = [page(c, r) for r in range(1, 5)]

    def euler(dims):
        out = {}
        for (p, q), dim in dims.items():
            out[q] = out.get(q, 0) + (-1) ** p * dim
        return {q: v for q, v in out.items() if v}

    base = euler(tables[0].dims)
    for pt in tables[1:]:
        assert euler(pt.dims) == base


def test_abutment():
    for text in (TREFOIL, FIGURE_EIGHT, HOPF):
        c = build(parse_pd(text), reduced=True)
        res = compute(c)
        by_q = {}
        for (p, q), dim in res.infinity.dims.items():
            by_q[q] = by_q.get(q, 0) + dim
        assert by_q == res.total_homology


def test_dr_ranks_account_for_page_drop():
    c = build(parse_pd(FIGURE_EIGHT), reduced=False)
    res = compute(c)
    for cur, nxt in zip(res.pages, res.pages[1:]):
        drop = sum(cur.dims.values()) - sum(nxt.dims.values())
        assert drop == 2 * sum(cur.dr_ranks.values())


def test_r1_invariance():
    d = parse_pd(TREFOIL)
    base = compute(build(d, reduced=True))
    for arc, sign in ((1, 1), (4, -1)):
        moved = reidemeister1(d, arc, sign)
        assert compare_pages(base, compute(build(moved, reduced=True))).equal


def test_r2_invariance():
    d = parse_pd(FIGURE_EIGHT)
    base = compute(build(d, reduced=True))
    moved = reidemeister2(d, 2, 6)
    assert compare_pages(base, compute(build(moved, reduced=True))).equal


def test_distinct_knots_compare_unequal():
    a = compute(build(parse_pd(TREFOIL), reduced=True))
    b = compute(build(parse_pd(FIGURE_EIGHT), reduced=True))
    verdict = compare_pages(a, b)
    assert not verdict.equal
    assert "page" in verdict.detail


def test_basepoint_sweep_trefoil_and_hopf():
    assert basepoint_sweep(parse_pd(TREFOIL)).equal
    assert basepoint_sweep(parse_pd(HOPF)).equal


def test_total_homology_unknot():
    c = build(parse_pd("U"), reduced=True)
    assert total_homology(c) == {0: 1}


def test_unreduced_unknot():
    c = build(parse_pd("U"), reduced=False)
    assert total_homology(c) == {-1: 1, 1: 1}
