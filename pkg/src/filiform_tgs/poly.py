"""Dense univariate polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction

from .exactlinalg import identity, matadd, matmul, matscale


def trim(p) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p, q) -> list:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def mul(p, q) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p, e: int) -> list:
    out: list = [Fraction(1)]
    for _ in range(e):
        out = mul(out, p)
    return out


def scale(c, p) -> list:
    return trim(c * a for a in p)


def from_roots(roots) -> list:
    """prod (r - t) over the given roots."""
    out: list = [Fraction(1)]
    for r in roots:
        out = mul(out, [r, Fraction(-1)])
    return out


def evaluate(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def evaluate_matrix(p, m) -> list:
    n = len(m)
    acc = matscale(Fraction(0), identity(n))
    for a in reversed(p):
        acc = matadd(matmul(acc, m), matscale(a, identity(n)))
    return acc


def coeff(p, i: int):
    return p[i] if 0 <= i < len(p) else Fraction(0)
