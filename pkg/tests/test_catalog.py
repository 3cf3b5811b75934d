from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filiform_tgs.catalog import (
    FORBIDDEN_ALPHA,
    BadDimension,
    DuplicateFamilyWarning,
    FamilySpec,
    RestrictionViolated,
    all_specs,
    build,
    classify_families,
    excluded_value_witness,
    find_diagonal_witness,
    g_presentation,
    identity_witness,
    iso_witness_check,
    quotient_matches_family,
    remark_witness,
)
from filiform_tgs.exactlinalg import DimensionMismatch, unit
from filiform_tgs.liecore import bracket, grading_check, is_filiform, jacobi_check
from strategies import rationals

SAMPLE_ALPHAS = [F(-3), F(-3, 2), F(-1), F(-1, 4), F(0), F(1, 2), F(1), F(2), F(8), F(10), F(-13, 6), F(-17, 6)]


def X(n, i):
    return unit(n, i - 1)


def tensor(g):
    """Dense c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k."""
    n = g.dim
    c = [[[F(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in g.sc.items():
        for k, a in enumerate(v):
            c[i - 1][j - 1][k] = a
            c[j - 1][i - 1][k] = -a
    return c


def dense_iso_oracle(src, dst, phi) -> bool:
    """phi [X_i, X_j] = [phi X_i, phi X_j] via explicit index sums."""
    n = src.dim
    cs, cd = tensor(src), tensor(dst)
    for i in range(n):
        for j in range(n):
            lhs = [sum(phi[r][k] * cs[i][j][k] for k in range(n)) for r in range(n)]
            rhs = [
                sum(phi[a][i] * phi[b][j] * cd[a][b][r] for a in range(n) for b in range(n))
                for r in range(n)
            ]
            if lhs != rhs:
                return False
    return True


def test_table_spot_values():
    g9 = build(FamilySpec("g9", 9, F(1, 2)))
    assert bracket(g9, X(9, 4), X(9, 5)) == tuple(F(1, 2) * a for a in X(9, 9))
    assert bracket(g9, X(9, 3), X(9, 6)) == tuple(F(1, 2) * a for a in X(9, 9))
    m01 = build(FamilySpec("m01", 7))
    assert bracket(m01, X(7, 2), X(7, 5)) == tuple(-a for a in X(7, 7))
    assert bracket(m01, X(7, 3), X(7, 4)) == X(7, 7)
    g7 = build(FamilySpec("g", 7, 1))
    assert bracket(g7, X(7, 2), X(7, 3)) == tuple(3 * a for a in X(7, 5))
    v = build(FamilySpec("V", 12))
    assert bracket(v, X(12, 3), X(12, 7)) == tuple(4 * a for a in X(12, 10))
    m03 = build(FamilySpec("m03", 9))
    # m = 3, k = 3: (-1)^3 ((3-2) 3 - (1)(2)/2) = -2
    assert bracket(m03, X(9, 3), X(9, 6)) == tuple(-2 * a for a in X(9, 9))


def test_restrictions():
    for fam, bad in FORBIDDEN_ALPHA.items():
        n = int(fam[1:])
        for a in bad:
            with pytest.raises(RestrictionViolated, match="alpha"):
                build(FamilySpec(fam, n, a))
    with pytest.raises(RestrictionViolated, match="!= -2"):
        build(FamilySpec("g", 7, -2))
    with pytest.raises(RestrictionViolated):
        build(FamilySpec("g8", 8))


def test_bad_dimensions():
    for fam, n in (("m0", 2), ("m2", 4), ("m01", 8), ("m01", 5), ("m02", 9), ("m03", 8), ("g9", 10)):
        with pytest.raises(BadDimension):
            build(FamilySpec(fam, n, F(1) if fam.startswith("g") else None))
    with pytest.raises(ValueError):
        FamilySpec("m4", 7)


def test_small_v_warns():
    with pytest.warns(DuplicateFamilyWarning):
        build(FamilySpec("V", 7))


@pytest.mark.parametrize("spec", all_specs(13, SAMPLE_ALPHAS), ids=lambda s: s.label())
def test_every_spec_is_graded_filiform(spec):
    g = build(spec)
    assert jacobi_check(g) is None
    assert grading_check(g) is None
    assert is_filiform(g)


def test_classify_examples():
    assert classify_families(build(FamilySpec("m2", 6))) == {"O1": True, "O2": True}
    assert classify_families(build(FamilySpec("V", 11))) == {"O1": True, "O2": True}
    assert classify_families(build(FamilySpec("g9", 9, -1)))["O1"] is False
    for k in range(3, 7):
        assert classify_families(build(FamilySpec("m01", 2 * k + 1)))["O1"]


def test_classify_g9_o1_exactly_off_two_values():
    for a in SAMPLE_ALPHAS:
        if a in FORBIDDEN_ALPHA["g9"]:
            continue
        o1 = classify_families(build(FamilySpec("g9", 9, a)))["O1"]
        assert o1 == (a not in (F(-1), F(1, 2))), a


def test_iso_examples():
    src = build(FamilySpec("g11", 11, 8))
    dst = build(FamilySpec("V", 11))
    assert iso_witness_check(dst, src, remark_witness(11, to_v=False)) is None
    assert iso_witness_check(src, dst, remark_witness(11)) is None
    m0 = build(FamilySpec("m0", 5))
    assert iso_witness_check(m0, m0, identity_witness(5)) is None
    v = iso_witness_check(m0, build(FamilySpec("m2", 5)), identity_witness(5))
    assert v.where == (2, 3)
    with pytest.raises(DimensionMismatch):
        iso_witness_check(m0, build(FamilySpec("m0", 6)), identity_witness(5))
    sing = identity_witness(5)
    sing[4][4] = F(0)
    assert iso_witness_check(m0, m0, sing).detail.startswith("witness matrix is singular")


@pytest.mark.parametrize("n", range(7, 12))
def test_remark_witness_against_dense_oracle(n):
    g = build(FamilySpec(f"g{n}", n, 8))
    v = build(FamilySpec("V", n))
    phi = remark_witness(n)
    assert iso_witness_check(g, v, phi) is None
    assert dense_iso_oracle(g, v, phi)
    assert phi[3][3] == math.factorial(2) * 60


@pytest.mark.parametrize("n", [5, 6])
def test_m2_matches_v_by_diagonal_search(n):
    src, dst = build(FamilySpec("m2", n)), build(FamilySpec("V", n))
    phi = find_diagonal_witness(src, dst)
    assert phi is not None
    assert iso_witness_check(src, dst, phi) is None
    assert dense_iso_oracle(src, dst, phi)


@pytest.mark.parametrize("n", [7, 8, 9])
def test_excluded_parameter_witnesses(n):
    phi = excluded_value_witness(n)
    assert phi is not None
    target = build(FamilySpec({7: "m01", 8: "m02", 9: "m03"}[n], n))
    assert dense_iso_oracle(g_presentation(n, -2), target, phi)


def test_quotient_examples():
    assert quotient_matches_family(FamilySpec("g8", 8, 1), FamilySpec("g7", 7, 1)).exact
    assert quotient_matches_family(FamilySpec("m02", 10), FamilySpec("m01", 9)).exact
    bad = quotient_matches_family(FamilySpec("g8", 8, 1), FamilySpec("g7", 7, 2))
    assert not bad.ok and bad.mismatch is not None
    with pytest.raises(BadDimension):
        quotient_matches_family(FamilySpec("g9", 9, 1), FamilySpec("g7", 7, 1))


def test_g7_quotient_needs_rescaling():
    res = quotient_matches_family(FamilySpec("g7", 7, 3), FamilySpec("m2", 6))
    assert res.ok and not res.exact
    src = build(FamilySpec("g7", 7, 3)).truncate()
    assert dense_iso_oracle(src, build(FamilySpec("m2", 6)), res.witness)
    assert quotient_matches_family(FamilySpec("g7", 7, -1), FamilySpec("m2", 6)).exact


@given(rationals(30, 10).filter(lambda a: a not in (F(-5, 2), F(-2), F(-1), F(-3))))
def test_g_chain_quotients(a):
    for n in range(8, 12):
        assert quotient_matches_family(FamilySpec(f"g{n}", n, a), FamilySpec(f"g{n - 1}", n - 1, a)).exact


@given(st.sampled_from(["m0", "m2", "m01", "m02", "m03"]), st.integers(7, 14))
def test_spec_json_mirrors_fields(fam, n):
    spec = FamilySpec(fam, n)
    assert spec.to_json() == {"family": fam, "dim": n, "alpha": None}
