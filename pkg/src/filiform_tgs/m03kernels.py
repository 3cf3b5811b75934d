"""The skew matrices K1, K2, K3 attached to m03(2k+3) and their kernels.

For X, Y in span(X_2..X_2k) the bracket of m03(2k+3) is
[X_i, X_j] = sum_a (K_a)_{i-1, j-1} X_{2k+a}, so the operator J_N defined by
<J_N X, Y> = <N, [X, Y]> is the combination a K1 + b K2 + c K3 when
N = a X_{2k+1} + b X_{2k+2} + c X_{2k+3} and the inner product is the
identity.  Every nonzero combination has rank 2k-2 with kernel read off from
the expansion of (a - b t + c t^2 / 2)^(k-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .catalog import FamilySpec, build
from .exactlinalg import (
    Matrix,
    Subspace,
    Vector,
    is_skew,
    is_zero_vector,
    matadd,
    matscale,
    matvec,
    nullspace,
    rank,
    zero_matrix,
)
from .exactnum import as_rational
from .liecore import Violation

F = Fraction
INF = "inf"


class BadK(ValueError):
    pass


class ZeroCombination(ValueError):
    pass


class ProportionalCombinations(ValueError):
    pass


@dataclass(frozen=True)
class KTriple:
    k: int
    K1: Matrix
    K2: Matrix
    K3: Matrix

    @property
    def size(self) -> int:
        return 2 * self.k - 1

    def combination(self, a, b, c) -> Matrix:
        a, b, c = (as_rational(x) for x in (a, b, c))
        if a == b == c == 0:
            raise ZeroCombination("(a, b, c) = (0, 0, 0)")
        return matadd(matadd(matscale(a, self.K1), matscale(b, self.K2)), matscale(c, self.K3))


def build_ktriple(k: int) -> KTriple:
    if not isinstance(k, int) or k < 3:
        raise BadK(f"k must be an integer >= 3, got {k!r}")
    n = 2 * k - 1
    k1, k2, k3 = (zero_matrix(n, n) for _ in range(3))
    for l in range(1, n + 1):
        for m in range(1, n + 1):
            sign = F((-1) ** l)
            if l + m == 2 * k - 1:
                k1[l - 1][m - 1] = sign
            if l + m == 2 * k:
                k2[l - 1][m - 1] = sign * (k - l)
            if l + m == 2 * k + 1:
                k3[l - 1][m - 1] = -sign * F((l - 1) * (m - 1), 2)
    for km in (k1, k2, k3):
        if not is_skew(km):
            raise AssertionError("K matrix is not skew-symmetric")
    return KTriple(k, k1, k2, k3)


def kernel_poly_formula(k: int, a, b, c) -> Vector:
    """x with sum_j x_{2k-1-j} t^j / j! = (a - b t + c t^2 / 2)^(k-1)."""
    a, b, c = (as_rational(x) for x in (a, b, c))
    if a == b == c == 0:
        raise ZeroCombination("(a, b, c) = (0, 0, 0)")
    p = poly.power([a, -b, c / 2], k - 1)
    n = 2 * k - 1
    x = [F(0)] * n
    for j in range(n):
        x[n - 1 - j] = math.factorial(j) * poly.coeff(p, j)
    return tuple(x)


def rank_assertion(k: int, a, b, c, kt: KTriple | None = None) -> Violation | None:
    kt = kt or build_ktriple(k)
    r = rank(kt.combination(a, b, c))
    if r != 2 * k - 2:
        return Violation("rank", (), r, f"rank {r}, expected {2 * k - 2}")
    return None


def kernel(kt: KTriple, a, b, c) -> Subspace:
    return nullspace(kt.combination(a, b, c), kt.size)


def _proportional(u, v) -> bool:
    u, v = tuple(as_rational(x) for x in u), tuple(as_rational(x) for x in v)
    return rank([list(u), list(v)]) < 2


def pencil_point(n1, n2, lam):
    """N1 + lam N2, with lam = "inf" meaning N2."""
    if lam == INF:
        return tuple(as_rational(x) for x in n2)
    lam = as_rational(lam)
    return tuple(as_rational(x) + lam * as_rational(y) for x, y in zip(n1, n2))


def kernel_span_dimension(
    k: int, samples, n1=(1, 0, 0), n2=(0, 0, 1), *, include_infinity: bool = True
) -> int:
    """dim span of ker(J_N) over N = N1 + lam N2 for the sampled lam (and lam = inf).

    Also asserts that kernels at distinct sample points meet trivially.
    """
    if _proportional(n1, n2):
        raise ProportionalCombinations("pencil endpoints must not be proportional")
    kt = build_ktriple(k)
    points = [pencil_point(n1, n2, s) for s in samples]
    if include_infinity and INF not in samples:
        points.append(pencil_point(n1, n2, INF))
    kernels = [kernel(kt, *pt) for pt in points]
    for i in range(len(kernels)):
        for j in range(i + 1, len(kernels)):
            if _proportional(points[i], points[j]):
                continue
            if kernels[i].intersect(kernels[j]).dim != 0:
                raise AssertionError(f"kernels at {points[i]} and {points[j]} intersect")
    total = Subspace.zero(kt.size)
    for s in kernels:
        total = total + s
    return total.dim


def j_matrix(k: int, a, b, c) -> Matrix:
    """<J_N X_i, X_j> = <N, [X_i, X_j]> on span(X_2..X_2k) of m03(2k+3), identity ip."""
    g = build(FamilySpec("m03", 2 * k + 3))
    nvec = [F(0)] * g.dim
    nvec[2 * k] = as_rational(a)
    nvec[2 * k + 1] = as_rational(b)
    nvec[2 * k + 2] = as_rational(c)
    size = 2 * k - 1
    jm = zero_matrix(size, size)
    for i in range(size):
        for j in range(size):
            br = g.basis_bracket(i + 2, j + 2) if i != j else (F(0),) * g.dim
            jm[i][j] = sum((x * y for x, y in zip(nvec, br)), F(0))
    return jm


def j_rank_check(k: int, a, b, c) -> Violation | None:
    """J_N from m03(2k+3) has the same rank as a K1 + b K2 + c K3."""
    kt = build_ktriple(k)
    jm = j_matrix(k, a, b, c)
    rj, rk_ = rank(jm), rank(kt.combination(a, b, c))
    if rj != rk_:
        return Violation("j-rank", (), rj, f"rank(J_N) = {rj}, rank of K combination = {rk_}")
    return None


def proportionality_factor(x, y):
    """c with y = c x, or None if not proportional (x nonzero)."""
    if is_zero_vector(x):
        return None
    i = next(i for i, v in enumerate(x) if v != 0)
    c = as_rational(y[i]) / as_rational(x[i])
    if all(as_rational(yy) == c * as_rational(xx) for xx, yy in zip(x, y)):
        return c
    return None


def formula_in_kernel(k: int, a, b, c) -> bool:
    kt = build_ktriple(k)
    return is_zero_vector(matvec(kt.combination(a, b, c), kernel_poly_formula(k, a, b, c)))
