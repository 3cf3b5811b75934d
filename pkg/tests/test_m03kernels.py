from __future__ import annotations

from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from filiform_tgs.exactlinalg import Subspace, nullspace, rank, transpose
from filiform_tgs.m03kernels import (
    BadK,
    ProportionalCombinations,
    ZeroCombination,
    build_ktriple,
    j_matrix,
    j_rank_check,
    kernel,
    kernel_poly_formula,
    kernel_span_dimension,
    proportionality_factor,
    rank_assertion,
)
from strategies import rationals

combos = st.tuples(rationals(6, 4), rationals(6, 4), rationals(6, 4)).filter(lambda t: any(t))


def test_entries_k3():
    kt = build_ktriple(3)
    assert kt.K1[0][3] == -1
    assert kt.K2[1][3] == 1
    for m in (kt.K1, kt.K2, kt.K3):
        assert all(m[i][j] == -m[j][i] for i in range(5) for j in range(5))
    with pytest.raises(BadK):
        build_ktriple(2)


def test_formula_examples():
    assert kernel_poly_formula(3, 0, 1, 0) == (0, 0, 2, 0, 0)
    assert Subspace.span([kernel_poly_formula(3, 0, 1, 0)], 5) == Subspace.coordinate([3], 5)
    assert kernel_poly_formula(3, 1, 0, 0) == (0, 0, 0, 0, 1)
    assert nullspace(build_ktriple(3).K1) == Subspace.coordinate([5], 5)
    with pytest.raises(ZeroCombination):
        kernel_poly_formula(3, 0, 0, 0)


def test_formula_sympy_expansion():
    t, a, b, c = sympy.symbols("t a b c")
    k = 4
    expr = sympy.expand((a - b * t + c * t**2 / 2) ** (k - 1))
    vals = {a: 2, b: -3, c: sympy.Rational(5, 7)}
    x = kernel_poly_formula(k, 2, -3, F(5, 7))
    for j in range(2 * k - 1):
        coeff = expr.coeff(t, j).subs(vals)
        assert x[2 * k - 2 - j] == sympy.factorial(j) * coeff


def test_rank_examples():
    assert rank_assertion(3, 1, 1, 1) is None
    assert rank_assertion(4, 0, 1, 0) is None
    with pytest.raises(ZeroCombination):
        rank_assertion(3, 0, 0, 0)


def test_span_dimension_examples():
    assert kernel_span_dimension(3, [0, 1, 2, 3]) == 3
    assert kernel_span_dimension(5, list(range(12))) == 5
    with pytest.raises(ProportionalCombinations):
        kernel_span_dimension(3, [0, 1], (1, 2, 3), (2, 4, 6))


@pytest.mark.parametrize("k", range(3, 8))
def test_j_operator_is_the_k_combination(k):
    kt = build_ktriple(k)
    assert j_matrix(k, 2, -1, F(1, 3)) == kt.combination(2, -1, F(1, 3))
    assert j_rank_check(k, 1, 0, 1) is None


@given(st.integers(3, 7), combos)
def test_formula_spans_nullspace(k, abc):
    kt = build_ktriple(k)
    x = kernel_poly_formula(k, *abc)
    ns = kernel(kt, *abc)
    assert ns.dim == 1
    assert proportionality_factor(x, ns.basis[0]) is not None
    assert rank(kt.combination(*abc)) == 2 * k - 2


@given(st.integers(3, 7), combos)
def test_scaled_combination_gives_proportional_kernel(k, abc):
    x = kernel_poly_formula(k, *abc)
    y = kernel_poly_formula(k, *(2 * v for v in abc))
    assert proportionality_factor(x, y) == 2 ** (k - 1)


@given(st.integers(3, 7), combos, combos)
def test_kernels_of_independent_combinations_meet_trivially(k, n1, n2):
    if rank([list(n1), list(n2)]) < 2:
        return
    kt = build_ktriple(k)
    assert kernel(kt, *n1).intersect(kernel(kt, *n2)).dim == 0


@given(st.integers(3, 6), combos, combos)
def test_pencil_kernels_span_k_dimensions(k, n1, n2):
    if rank([list(n1), list(n2)]) < 2:
        return
    assert kernel_span_dimension(k, list(range(2 * k - 1)), n1, n2) == k


def test_k_matrices_match_transpose_convention():
    kt = build_ktriple(4)
    for m in (kt.K1, kt.K2, kt.K3):
        assert transpose(m) == [[-x for x in r] for r in m]
