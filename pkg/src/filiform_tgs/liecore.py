"""Lie algebras given by structure constants.

Basis labels are 1-based (``X_1 .. X_n``) in structure-constant keys and in
every reported violation; vectors are ordinary 0-based Python tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .exactlinalg import (
    ZERO,
    DimensionMismatch,
    InnerProduct,
    Subspace,
    Vector,
    coordinates,
    independent,
    is_zero_vector,
    orthogonal_complement,
    project,
    unit,
    zeros,
)
from .exactnum import RadNum

INFINITY = math.inf


class NotGraded(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


class SplitConditionFails(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """A failed identity; ``where`` holds the 1-based basis indices involved."""

    kind: str
    where: tuple
    residual: Vector | None = None
    detail: str = ""

    def to_json(self) -> dict:
        from .jsonio import vector_to_json

        out = {"kind": self.kind, "where": list(self.where), "detail": self.detail}
        if self.residual is not None:
            out["residual"] = vector_to_json(self.residual)
        return out


@dataclass
class LieAlgebra:
    """Finite-dimensional Lie algebra.

    ``sc[(i, j)]`` for ``i < j`` (1-based) is the coordinate vector of
    ``[X_i, X_j]``; absent pairs bracket to zero.  ``graded`` asserts that
    X_i spans the degree-i piece of an N-grading.
    """

    dim: int
    sc: dict[tuple[int, int], Vector] = field(default_factory=dict)
    graded: bool = False
    name: str = ""

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.sc.items():
            if len(v) != self.dim:
                raise DimensionMismatch(f"bracket [X{i},X{j}] has length {len(v)}")
            if not (1 <= i <= self.dim and 1 <= j <= self.dim) or i == j:
                raise ValueError(f"bad structure-constant key {(i, j)}")
            v = tuple(v)
            if i > j:
                i, j, v = j, i, tuple(-a for a in v)
            if not is_zero_vector(v):
                clean[(i, j)] = v
        self.sc = clean
        self._sparse: dict | None = None

    @classmethod
    def from_relations(
        cls, dim: int, relations: Mapping[tuple[int, int], Mapping[int, object]], **kw
    ) -> LieAlgebra:
        """Build from ``{(i, j): {k: coeff}}`` meaning [X_i,X_j] = sum coeff X_k."""
        sc: dict[tuple[int, int], Vector] = {}
        for (i, j), terms in relations.items():
            v = [ZERO] * dim
            for k, c in terms.items():
                if k > dim:
                    continue
                v[k - 1] = v[k - 1] + c
            if i > j:
                i, j = j, i
                v = [-a for a in v]
            old = sc.get((i, j))
            sc[(i, j)] = tuple(v) if old is None else tuple(a + b for a, b in zip(old, v))
        return cls(dim, sc, **kw)

    @property
    def scalar_kind(self) -> str:
        for v in self.sc.values():
            if any(isinstance(a, RadNum) and not a.is_rational() for a in v):
                return "radical"
        return "rational"

    def _sparse_sc(self) -> dict:
        if self._sparse is None:
            sp = {}
            for (i, j), v in self.sc.items():
                terms = tuple((k, a) for k, a in enumerate(v) if a != 0)
                sp[(i - 1, j - 1)] = terms
                sp[(j - 1, i - 1)] = tuple((k, -a) for k, a in terms)
            self._sparse = sp
        return self._sparse

    def basis_bracket(self, i: int, j: int) -> Vector:
        """[X_i, X_j] for 1-based i, j."""
        if i == j:
            return zeros(self.dim)
        if i < j:
            return self.sc.get((i, j), zeros(self.dim))
        return tuple(-a for a in self.sc.get((j, i), zeros(self.dim)))

    def bracket(self, x, y) -> Vector:
        return bracket(self, x, y)

    def ad(self, x) -> list[list]:
        """Matrix of ad(x) acting on coordinate vectors."""
        cols = [bracket(self, x, unit(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def structure_equal(self, other: LieAlgebra) -> bool:
        return self.dim == other.dim and self.sc == other.sc

    def truncate(self) -> LieAlgebra:
        """Quotient by span(X_n) in the induced basis X_1..X_{n-1}."""
        n = self.dim
        sc = {(i, j): v[: n - 1] for (i, j), v in self.sc.items() if i < n and j < n}
        return LieAlgebra(n - 1, sc, graded=self.graded, name=f"{self.name}/X{n}")

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.structure_equal(other) and self.graded == other.graded

    def __getstate__(self):
        return {"dim": self.dim, "sc": self.sc, "graded": self.graded, "name": self.name}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._sparse = None


def bracket(g: LieAlgebra, x, y) -> Vector:
    n = g.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"bracket arguments must have length {n}")
    sp = g._sparse_sc()
    out = [ZERO] * n
    xs = [(i, a) for i, a in enumerate(x) if a != 0]
    ys = [(j, b) for j, b in enumerate(y) if b != 0]
    for i, a in xs:
        for j, b in ys:
            terms = sp.get((i, j))
            if not terms:
                continue
            c = a * b
            for k, s in terms:
                out[k] = out[k] + c * s
    return tuple(out)


# Jacobi --------------------------------------------------------------------


def jacobi_violations(g: LieAlgebra) -> Iterator[Violation]:
    n = g.dim
    e = [unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = g.basis_bracket(i + 1, j + 1)
            for k in range(j + 1, n):
                r1 = bracket(g, e[i], g.basis_bracket(j + 1, k + 1))
                r2 = bracket(g, e[j], g.basis_bracket(k + 1, i + 1))
                r3 = bracket(g, e[k], bij)
                res = tuple(a + b + c for a, b, c in zip(r1, r2, r3))
                if not is_zero_vector(res):
                    yield Violation("jacobi", (i + 1, j + 1, k + 1), res)


def jacobi_check(g: LieAlgebra, all_violations: bool = False):
    """None when the Jacobi identity holds on all basis triples.

    Otherwise the first violating triple (or, with ``all_violations``, the
    full list).
    """
    if all_violations:
        return list(jacobi_violations(g)) or None
    return next(jacobi_violations(g), None)


# grading and degree --------------------------------------------------------


def degree(g: LieAlgebra, y) -> int | float:
    """Largest k with y in span(X_k..X_n); INFINITY for y = 0."""
    if not g.graded:
        raise NotGraded(f"{g.name or 'algebra'} carries no grading")
    if len(y) != g.dim:
        raise DimensionMismatch("vector length differs from algebra dimension")
    for i, a in enumerate(y):
        if a != 0:
            return i + 1
    return INFINITY


def grading_check(g: LieAlgebra) -> Violation | None:
    n = g.dim
    for (i, j) in sorted(g.sc):
        v = g.sc[(i, j)]
        support = [k + 1 for k, a in enumerate(v) if a != 0]
        if i + j > n or support != [i + j]:
            return Violation("grading", (i, j), v, f"[X{i},X{j}] leaves V_{i + j}")
    return None


def ideal_g(g: LieAlgebra, k: int) -> Subspace:
    """The characteristic ideal g_k = span(X_k, ..., X_n)."""
    return Subspace.coordinate(range(k, g.dim + 1), g.dim)


# center, series ------------------------------------------------------------


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    rows = []
    for i in range(n):
        rows.extend(g.ad(unit(n, i)))
    from .exactlinalg import nullspace

    return nullspace(rows, n)


def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vs = [bracket(g, x, y) for x in a.basis for y in b.basis]
    return Subspace.span([v for v in vs if not is_zero_vector(v)], g.dim)


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """g, [g,g], [g,[g,g]], ... until it reaches 0 or stabilizes."""
    full = Subspace.full(g.dim)
    series = [full]
    while series[-1].dim > 0:
        nxt = bracket_span(g, full, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_filiform(g: LieAlgebra) -> bool:
    n = g.dim
    if n < 3:
        return False
    dims = [s.dim for s in lower_central_series(g)]
    return dims == [n] + list(range(n - 2, -1, -1))


# subalgebras, ideals, quotients ---------------------------------------------


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    n = g.dim
    return all(s.contains(bracket(g, unit(n, i), v)) for i in range(n) for v in s.basis)


def split_quotient(
    g: LieAlgebra, ip: InnerProduct, h: Subspace, ideal: Subspace
) -> tuple[LieAlgebra, InnerProduct, Subspace]:
    """Realize g/ideal on the orthogonal complement of the ideal.

    The bracket is [x, y]' = pi'([x, y]) with pi' the orthogonal projection
    onto the complement.  The basis of the complement is the first maximal
    independent subset of pi'(X_1), ..., pi'(X_n), which makes the structure
    constants those of g/ideal in the induced basis.  Returns the quotient,
    the restricted inner product and pi'(h) in the new coordinates.
    """
    n = g.dim
    if not is_ideal(g, ideal):
        raise NotAnIdeal("subspace is not invariant under ad(g)")
    hp = orthogonal_complement(h, ip)
    if ideal.intersect(h).dim + ideal.intersect(hp).dim != ideal.dim:
        raise SplitConditionFails("ideal is not the sum of its parts in h and h-perp")
    comp = orthogonal_complement(ideal, ip)

    def pi(x):
        return project(x, comp, ip)

    basis: list[Vector] = []
    chosen: list[int] = []
    for i in range(n):
        v = pi(unit(n, i))
        if is_zero_vector(v):
            continue
        if independent(basis + [v]):
            basis.append(v)
            chosen.append(i + 1)
        if len(basis) == comp.dim:
            break
    m = len(basis)
    sc = {}
    for a in range(m):
        for b in range(a + 1, m):
            br = pi(bracket(g, basis[a], basis[b]))
            if not is_zero_vector(br):
                sc[(a + 1, b + 1)] = coordinates(br, basis)
    quotient = LieAlgebra(m, sc, graded=False, name=f"{g.name}/ideal" if g.name else "")
    if g.graded and grading_check(quotient) is None:
        quotient.graded = True
    ip_q = ip.restricted(basis)
    h_q = Subspace.span([coordinates(pi(v), basis) for v in h.basis], m)
    return quotient, ip_q, h_q


def center_projection_check(g: LieAlgebra, ip: InnerProduct, h: Subspace) -> Violation | None:
    """Check that the projection of the center onto h commutes with h."""
    for z in center(g).basis:
        zh = project(z, h, ip)
        for b in h.basis:
            br = bracket(g, zh, b)
            if not is_zero_vector(br):
                return Violation("center-projection", (), br, "pi_h(z) does not commute with h")
    return None
