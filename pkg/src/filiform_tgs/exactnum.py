"""Exact scalars: rationals and real multiquadratic radical numbers.

Rationals are plain :class:`fractions.Fraction` values.  :class:`RadNum`
represents a finite sum ``sum_s q_s * sqrt(s)`` over squarefree positive
integers ``s`` with rational ``q_s``; the ``s = 1`` term is the rational part.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

Rational = Fraction

#: trial division limit used when extracting square factors
FACTOR_BOUND = 10**6


class ZeroInverse(ZeroDivisionError):
    pass


class NegativeRadicand(ValueError):
    pass


class FactorBoundExceeded(ArithmeticError):
    """Squarefree extraction could not finish below the trial-division bound."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, RadNum):
        return x.to_rational()
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@lru_cache(maxsize=4096)
def _factor(n: int, bound: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError("only positive integers are factored")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if p > bound:
            raise FactorBoundExceeded(
                f"{n} has an unresolved cofactor {m} beyond trial bound {bound}"
            )
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def squarefree_split(n: int, bound: int | None = None) -> tuple[int, int]:
    """Return ``(a, s)`` with ``n = a*a*s`` and ``s`` squarefree."""
    if n == 0:
        return 0, 1
    a = s = 1
    for p, e in _factor(n, FACTOR_BOUND if bound is None else bound):
        a *= p ** (e // 2)
        if e % 2:
            s *= p
    return a, s


def prime_factors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in _factor(n, FACTOR_BOUND))


Scalar = Union[int, Fraction, "RadNum"]


class RadNum:
    """Exact real number ``sum q_s sqrt(s)`` with canonical term map.

    Radicands are squarefree and coefficients nonzero, so two values are
    equal exactly when their term maps coincide.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable | int | Fraction = 0):
        if isinstance(terms, RadNum):
            self._terms = terms._terms
            self._hash = None
            return
        if isinstance(terms, (int, Fraction)):
            items: Iterable = [(1, terms)]
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, Fraction] = {}
        for s, q in items:
            q = as_rational(q)
            if q == 0:
                continue
            s = int(s)
            if s < 1:
                raise NegativeRadicand(f"radicand must be positive, got {s}")
            a, sf = squarefree_split(s)
            acc[sf] = acc.get(sf, Fraction(0)) + q * a
        self._terms = tuple(sorted((s, q) for s, q in acc.items() if q != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> RadNum:
        # caller guarantees squarefree keys
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((s, q) for s, q in terms.items() if q != 0))
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, r) -> RadNum:
        return rad_sqrt_rational(r)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self._terms)

    def is_rational(self) -> bool:
        return all(s == 1 for s, _ in self._terms)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def primes(self) -> tuple[int, ...]:
        ps: set[int] = set()
        for s, _ in self._terms:
            if s > 1:
                ps.update(prime_factors(s))
        return tuple(sorted(ps))

    def conjugate(self, p: int) -> RadNum:
        """Image under the field automorphism sqrt(p) -> -sqrt(p)."""
        return RadNum._raw({s: (-q if s % p == 0 else q) for s, q in self._terms})

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> RadNum | None:
        if isinstance(other, RadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return RadNum._raw({1: Fraction(other)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for s, q in o._terms:
            acc[s] = acc.get(s, 0) + q
        return RadNum._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return RadNum._raw({s: -q for s, q in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RadNum._raw({})
            return RadNum._raw({s: q * other for s, q in self._terms})
        if not isinstance(other, RadNum):
            return NotImplemented
        if not self._terms or not other._terms:
            return RadNum._raw({})
        # integer numerators over a common denominator, one Fraction per output term
        d1, n1 = self._integral()
        d2, n2 = other._integral()
        acc: dict[int, int] = {}
        for s1, a in n1:
            for s2, b in n2:
                # s1, s2 squarefree: s1*s2 = g^2 * (s1/g)*(s2/g)
                g = math.gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                acc[s] = acc.get(s, 0) + a * b * g
        den = d1 * d2
        obj = RadNum.__new__(RadNum)
        obj._terms = tuple(sorted((s, Fraction(v, den)) for s, v in acc.items() if v))
        obj._hash = None
        return obj

    def _integral(self) -> tuple[int, list[tuple[int, int]]]:
        d = math.lcm(*(q.denominator for _, q in self._terms))
        return d, [(s, q.numerator * (d // q.denominator)) for s, q in self._terms]

    __rmul__ = __mul__

    def inverse(self) -> RadNum:
        return rad_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroInverse("division by zero")
            return self * (Fraction(1) / other)
        if not isinstance(other, RadNum):
            return NotImplemented
        return self * rad_inverse(other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * rad_inverse(self)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return rad_inverse(self) ** (-e)
        out = RadNum(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparisons / conversions -----------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_rational())
            else:
                self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return math.fsum(float(q) * math.sqrt(s) for s, q in self._terms)

    def __repr__(self):
        return f"RadNum({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for s, q in self._terms:
            parts.append(str(q) if s == 1 else f"{q}*sqrt({s})")
        return " + ".join(parts)


def rad_add(a, b) -> RadNum:
    return RadNum(a) + RadNum(b)


def rad_mul(a, b) -> RadNum:
    return RadNum(a) * RadNum(b)


def rad_inverse(a) -> RadNum:
    """Multiplicative inverse.

    The denominator is rationalised by multiplying with the conjugates under
    every sign flip of the primes occurring in the radicands; doing it one
    prime at a time multiplies by the full product of the ``2**g - 1``
    nontrivial conjugates.
    """
    a = RadNum(a)
    if not a:
        raise ZeroInverse("zero has no inverse")
    num = RadNum(1)
    den = a
    for p in a.primes():
        c = den.conjugate(p)
        if c == den:
            continue
        num = num * c
        den = den * c
    return num * (Fraction(1) / den.to_rational())


def rad_sqrt_rational(r) -> RadNum:
    """sqrt(p/q) = sqrt(p*q)/q with p*q split into square times squarefree."""
    r = as_rational(r)
    if r <= 0:
        raise NegativeRadicand(f"square root needs a positive rational, got {r}")
    a, s = squarefree_split(r.numerator * r.denominator)
    return RadNum._raw({s: Fraction(a, r.denominator)})


def rational_sqrt(r) -> Fraction | None:
    """Exact rational square root of a nonnegative rational, or None."""
    r = as_rational(r)
    if r < 0:
        return None
    n, d = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None


def is_zero(x) -> bool:
    return x == 0


def to_float(x) -> float:
    return float(x)


# serialization ------------------------------------------------------------


def rational_to_str(q) -> str:
    return str(as_rational(q))


def rational_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def radnum_to_json(x) -> list[dict]:
    return [{"radicand": s, "coeff": str(q)} for s, q in RadNum(x)._terms]


def radnum_from_json(items) -> RadNum:
    return RadNum({int(d["radicand"]): Fraction(d["coeff"]) for d in items})
