from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filiform_tgs.catalog import FamilySpec, all_specs, build
from filiform_tgs.exactlinalg import (
    InnerProduct,
    NotPositiveDefinite,
    Subspace,
    matvec,
    orthogonal_complement,
    transpose,
    unit,
)
from filiform_tgs.liecore import ideal_g
from filiform_tgs.tgsverify import (
    SearchTooLarge,
    adapted_basis,
    first_eq1_violation,
    graded_tgs_search,
    is_subalgebra,
    is_totally_geodesic,
)
from strategies import inner_products, invertible_matrices, rationals

SMALL = [s for s in all_specs(9, [F(1, 2), F(-1), F(3)])]


def X(n, i):
    return unit(n, i - 1)


def test_subalgebra_examples():
    g = build(FamilySpec("m0", 6))
    assert is_subalgebra(g, Subspace.coordinate([2, 4, 6], 6))
    assert not is_subalgebra(g, Subspace.coordinate([1, 2], 6))
    assert is_subalgebra(g, Subspace.zero(6))


def test_tgs_examples():
    g = build(FamilySpec("m0", 6))
    ip = InnerProduct.identity(6)
    assert is_totally_geodesic(g, ip, Subspace.coordinate([2, 4, 6], 6)).verdict
    rep = is_totally_geodesic(g, ip, Subspace.coordinate([5, 6], 6))
    assert not rep.verdict and rep.is_subalgebra
    w = rep.witness
    assert (w.x, w.y, w.z, w.residual) == (X(6, 1), X(6, 5), X(6, 6), 1)


@given(st.integers(3, 8), st.data())
def test_central_line_is_totally_geodesic(n, data):
    g = build(FamilySpec("m0", n))
    ip = data.draw(inner_products(n))
    assert is_totally_geodesic(g, ip, Subspace.coordinate([n], n)).verdict


def test_non_subalgebra_reports_false():
    g = build(FamilySpec("m0", 6))
    rep = is_totally_geodesic(g, InnerProduct.identity(6), Subspace.coordinate([1, 2], 6))
    assert not rep.verdict and not rep.is_subalgebra


def test_adapted_basis_examples():
    g = build(FamilySpec("m0", 5))
    assert adapted_basis(g, InnerProduct.identity(5)) == [X(5, i) for i in range(1, 6)]
    gram = [[F(int(i == j)) for j in range(5)] for i in range(5)]
    gram[3][4] = gram[4][3] = F(1, 2)
    es = adapted_basis(g, InnerProduct(gram))
    assert es[3] == (0, 0, 0, 1, F(-1, 2)) and es[4] == X(5, 5)


def test_search_examples():
    r = graded_tgs_search(build(FamilySpec("m0", 6)), InnerProduct.identity(6))
    assert r.max_dim == 3 and (2, 4, 6) in r.max_subsets
    r = graded_tgs_search(build(FamilySpec("m01", 7)), InnerProduct.identity(7))
    assert r.max_dim == 3 and (2, 4, 6) in r.max_subsets
    r = graded_tgs_search(build(FamilySpec("m0", 4)), InnerProduct.identity(4))
    assert (2, 4) in r.max_subsets and r.max_dim == 2
    assert r.examined == 7
    assert "attainment" in r.note


def test_search_cap():
    g = build(FamilySpec("m0", 8))
    with pytest.raises(SearchTooLarge):
        graded_tgs_search(g, InnerProduct.identity(8), cap=7)


def test_parallel_search_matches_serial():
    g = build(FamilySpec("g9", 9, F(1, 2)))
    ip = InnerProduct.identity(9)
    a = graded_tgs_search(g, ip)
    b = graded_tgs_search(g, ip, workers=2)
    assert [s for s, _ in a.passing] == [s for s, _ in b.passing]
    assert (a.examined, a.subalgebras) == (b.examined, b.subalgebras)


@given(st.sampled_from(SMALL), st.data())
def test_fast_route_agrees_with_direct_route(spec, data):
    """Every subset verdict of the search equals the bilinear-form test."""
    g = build(spec)
    n = g.dim
    if n > 7:
        return
    ip = data.draw(inner_products(n))
    es = adapted_basis(g, ip)
    hits = {s for s, _ in graded_tgs_search(g, ip, es, include_degree_one=True).passing}
    for r in range(1, n + 1):
        for s in itertools.combinations(range(1, n + 1), r):
            h = Subspace.span([es[i - 1] for i in s], n)
            assert is_totally_geodesic(g, ip, h).verdict == (s in hits), s


@given(st.sampled_from(SMALL), st.data(), rationals(10, 7).filter(lambda c: c > 0))
def test_verdict_invariant_under_scaling(spec, data, c):
    g = build(spec)
    n = g.dim
    ip = data.draw(inner_products(n))
    es = adapted_basis(g, ip)
    k = data.draw(st.integers(1, n))
    idx = sorted(data.draw(st.sets(st.integers(1, n), min_size=1, max_size=k)))
    h = Subspace.span([es[i - 1] for i in idx], n)
    assert is_totally_geodesic(g, ip, h).verdict == is_totally_geodesic(g, ip.scaled(c), h).verdict


@given(st.sampled_from(SMALL), st.data())
def test_witness_existence_invariant_under_basis_change(spec, data):
    g = build(spec)
    n = g.dim
    ip = data.draw(inner_products(n, bound=2))
    h = Subspace.coordinate(sorted(data.draw(st.sets(st.integers(2, n), min_size=1, max_size=n - 1))), n)
    perp = orthogonal_complement(h, ip)
    base = first_eq1_violation(g, ip, h.basis, perp.basis) is None
    a = data.draw(invertible_matrices(h.dim, 3))
    b = data.draw(invertible_matrices(perp.dim, 3))
    hb = [matvec(transpose(list(map(list, h.basis))), row) for row in a]
    pb = [matvec(transpose(list(map(list, perp.basis))), row) for row in b]
    assert (first_eq1_violation(g, ip, hb, pb) is None) == base


@given(st.sampled_from(SMALL), st.data())
def test_adjacent_adapted_pair_never_geodesic(spec, data):
    g = build(spec)
    n = g.dim
    ip = data.draw(inner_products(n))
    es = adapted_basis(g, ip)
    i = data.draw(st.integers(2, n - 1))
    assert not is_totally_geodesic(g, ip, Subspace.span([es[i - 1], es[i]], n)).verdict


@given(st.sampled_from(SMALL), st.data())
def test_degree_one_excluded_from_proper_hits(spec, data):
    g = build(spec)
    n = g.dim
    ip = data.draw(inner_products(n))
    res = graded_tgs_search(g, ip, adapted_basis(g, ip), include_degree_one=True)
    for s, _ in res.passing:
        if 2 <= len(s) < n:
            assert 1 not in s


@given(st.sampled_from(SMALL), st.data())
def test_adapted_flag(spec, data):
    g = build(spec)
    n = g.dim
    ip = data.draw(inner_products(n))
    es = adapted_basis(g, ip)
    for k in range(1, n + 1):
        assert Subspace.span(es[k - 1 :], n) == ideal_g(g, k)


def test_not_positive_definite_rejected():
    with pytest.raises(NotPositiveDefinite):
        InnerProduct(((1, 0), (0, -1)))
