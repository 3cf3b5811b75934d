"""Totally geodesic subalgebras: the bilinear test, adapted bases, graded search.

A subalgebra h of a metric Lie algebra is totally geodesic when

    <[X, Y], Z> + <[X, Z], Y> = 0   for all X in h-perp and Y, Z in h.

The test is bilinear in X and symmetric bilinear in (Y, Z), so checking
basis triples with Y <= Z is enough.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .exactlinalg import (
    DimensionMismatch,
    InnerProduct,
    NotPositiveDefinite,
    Subspace,
    Vector,
    columns_to_matrix,
    dot,
    gram_schmidt_by_degree,
    inverse,
    matvec,
    orthogonal_complement,
    unit,
)
from .liecore import LieAlgebra, NotGraded, bracket, degree

__all__ = [
    "InnerProduct",
    "NotPositiveDefinite",
    "TgsReport",
    "SearchResult",
    "SearchTooLarge",
    "AdaptedBasisDegenerate",
    "is_subalgebra",
    "is_totally_geodesic",
    "eq1_residual",
    "first_eq1_violation",
    "adapted_basis",
    "graded_tgs_search",
]

SEARCH_CAP = 20

SEARCH_LIMITATION = (
    "search covers spans of subsets of the supplied degree-adapted basis only; "
    "it certifies attainment, not upper bounds over all subspaces or inner products"
)


class SearchTooLarge(ValueError):
    pass


class AdaptedBasisDegenerate(AssertionError):
    pass


@dataclass(frozen=True)
class Witness:
    x: Vector
    y: Vector
    z: Vector
    residual: object

    def to_json(self) -> dict:
        from .jsonio import scalar_to_json, vector_to_json

        return {
            "X": vector_to_json(self.x),
            "Y": vector_to_json(self.y),
            "Z": vector_to_json(self.z),
            "residual": scalar_to_json(self.residual, _kind(self.residual)),
        }


def _kind(x) -> str:
    from .exactnum import RadNum

    return "radical" if isinstance(x, RadNum) and not x.is_rational() else "rational"


@dataclass(frozen=True)
class TgsReport:
    verdict: bool
    is_subalgebra: bool
    witness: Witness | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "is_subalgebra": self.is_subalgebra,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _check_dims(g: LieAlgebra, ip: InnerProduct | None, h: Subspace) -> None:
    if h.ambient_dim != g.dim:
        raise DimensionMismatch(f"subspace in dimension {h.ambient_dim}, algebra in {g.dim}")
    if ip is not None and ip.dim != g.dim:
        raise DimensionMismatch(f"inner product in dimension {ip.dim}, algebra in {g.dim}")


def is_subalgebra(g: LieAlgebra, h: Subspace) -> bool:
    _check_dims(g, None, h)
    b = h.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if not h.contains(bracket(g, b[i], b[j])):
                return False
    return True


def eq1_residual(g: LieAlgebra, ip: InnerProduct, x, y, z):
    """<[x, y], z> + <[x, z], y>, i.e. twice <nabla_y z, x>."""
    return ip(bracket(g, x, y), z) + ip(bracket(g, x, z), y)


def first_eq1_violation(
    g: LieAlgebra, ip: InnerProduct, h_basis: Sequence, perp_basis: Sequence
) -> Witness | None:
    """Lexicographically first (X, Y, Z) with nonzero residual, X from
    ``perp_basis`` and Y <= Z from ``h_basis``."""
    hb = [tuple(v) for v in h_basis]
    # <[x, y], z> = x-independent covector pairing; precompute G z
    gz = [ip.apply(v) for v in hb]
    for x in perp_basis:
        x = tuple(x)
        adx = [bracket(g, x, y) for y in hb]
        for a in range(len(hb)):
            for b in range(a, len(hb)):
                r = dot(adx[a], gz[b]) + dot(adx[b], gz[a])
                if r != 0:
                    return Witness(x, hb[a], hb[b], r)
    return None


def is_totally_geodesic(g: LieAlgebra, ip: InnerProduct, h: Subspace) -> TgsReport:
    _check_dims(g, ip, h)
    sub = is_subalgebra(g, h)
    perp = orthogonal_complement(h, ip)
    w = first_eq1_violation(g, ip, h.basis, perp.basis)
    return TgsReport(verdict=sub and w is None, is_subalgebra=sub, witness=w)


def adapted_basis(g: LieAlgebra, ip: InnerProduct) -> list[Vector]:
    """Orthogonal (unnormalized) E_1..E_n with deg(E_i) = i."""
    if not g.graded:
        raise NotGraded("adapted bases need a graded structure basis")
    n = g.dim
    if ip.dim != n:
        raise DimensionMismatch("inner product and algebra dimensions differ")
    es = gram_schmidt_by_degree([unit(n, i) for i in range(n)], ip)
    for i, e in enumerate(es):
        if degree(g, e) != i + 1:
            raise AdaptedBasisDegenerate(f"E_{i + 1} has degree {degree(g, e)}")
    for i in range(1, n - 1):
        if ip(bracket(g, es[0], es[i]), es[i + 1]) == 0:
            raise AdaptedBasisDegenerate(f"<[E_1,E_{i + 1}],E_{i + 2}> vanishes")
    return es


# graded search --------------------------------------------------------------


@dataclass
class SearchResult:
    passing: list[tuple[tuple[int, ...], TgsReport]] = field(default_factory=list)
    max_dim: int = 0
    examined: int = 0
    subalgebras: int = 0
    note: str = SEARCH_LIMITATION

    @property
    def max_subsets(self) -> list[tuple[int, ...]]:
        return [s for s, _ in self.passing if len(s) == self.max_dim]

    def to_json(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "examined": self.examined,
            "subalgebras": self.subalgebras,
            "passing": [{"subset": list(s), "report": r.to_json()} for s, r in self.passing],
            "note": self.note,
        }


class _SearchTables:
    """Bracket data for a fixed search basis b_1..b_n, shared by all subsets.

    Since the b_i form a basis, each subset test reduces to a support check:
    [b_a, b_b] must have basis coordinates supported on the subset, and each
    functional X -> <[X,b_y],b_z> + <[X,b_z],b_y> must be a combination of
    the covectors G b_y over the subset, i.e. f B M^{-1} (M the Gram matrix
    of the b_i) must be supported there.
    """

    def __init__(self, g: LieAlgebra, ip: InnerProduct, basis: Sequence[Vector]):
        n = g.dim
        self.n = n
        self.basis = [tuple(b) for b in basis]
        bmat = columns_to_matrix(self.basis)
        binv = inverse(bmat)
        gb = [ip.apply(b) for b in self.basis]
        minv = inverse([[dot(gb[i], self.basis[j]) for j in range(n)] for i in range(n)])
        self.br_support = {}
        for a in range(n):
            for b in range(a + 1, n):
                c = matvec(binv, bracket(g, self.basis[a], self.basis[b]))
                self.br_support[(a, b)] = frozenset(i for i, x in enumerate(c) if x != 0)
        e = [unit(n, i) for i in range(n)]
        # pair[a][y][z] = <[e_a, b_y], b_z>
        ad_e = [[bracket(g, e[a], self.basis[y]) for y in range(n)] for a in range(n)]
        pair = [[[dot(ad_e[a][y], gb[z]) for z in range(n)] for y in range(n)] for a in range(n)]
        self.eq_support = {}
        for y in range(n):
            for z in range(y, n):
                f = [pair[x][y][z] + pair[x][z][y] for x in range(n)]
                fb = [dot(f, self.basis[j]) for j in range(n)]
                phi = [dot(fb, [minv[i][j] for i in range(n)]) for j in range(n)]
                self.eq_support[(y, z)] = frozenset(i for i, x in enumerate(phi) if x != 0)

    def subalgebra(self, idx: Sequence[int]) -> bool:
        sel = frozenset(idx)
        return all(self.br_support[p] <= sel for p in itertools.combinations(idx, 2))

    def geodesic(self, idx: Sequence[int]) -> bool:
        # the test for all X in h-perp  <=>  each functional lies in
        # span{G b_y : y in idx}
        sel = frozenset(idx)
        return all(
            self.eq_support[(a, b)] <= sel for ia, a in enumerate(idx) for b in idx[ia:]
        )


def _scan(args) -> tuple[list[tuple[int, ...]], int, int]:
    g, ip, basis, subsets = args
    tables = _SearchTables(g, ip, basis)
    hits, examined, subalg = [], 0, 0
    for s in subsets:
        idx = [i - 1 for i in s]
        examined += 1
        if not tables.subalgebra(idx):
            continue
        subalg += 1
        if tables.geodesic(idx):
            hits.append(s)
    return hits, examined, subalg


def _subsets(n: int, include_degree_one: bool) -> list[tuple[int, ...]]:
    pool = list(range(1 if include_degree_one else 2, n + 1))
    out = []
    for r in range(1, len(pool) + 1):
        out.extend(itertools.combinations(pool, r))
    return out


def graded_tgs_search(
    g: LieAlgebra,
    ip: InnerProduct,
    basis: Sequence[Vector] | None = None,
    *,
    cap: int = SEARCH_CAP,
    workers: int = 1,
    include_degree_one: bool = False,
) -> SearchResult:
    """Test every span of a subset of ``basis`` indexed by {2..n}.

    ``basis`` defaults to the structure basis.  Subsets are nonempty and
    ordered by size, then lexicographically; each hit is re-verified with
    :func:`is_totally_geodesic` and its report attached.
    """
    n = g.dim
    if n > cap:
        raise SearchTooLarge(f"dimension {n} exceeds search cap {cap}")
    if ip.dim != n:
        raise DimensionMismatch("inner product and algebra dimensions differ")
    if basis is None:
        basis = [unit(n, i) for i in range(n)]
    if len(basis) != n:
        raise DimensionMismatch("search basis must have one vector per degree")
    subsets = _subsets(n, include_degree_one)
    if workers > 1 and len(subsets) > 64:
        chunks = [subsets[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, [(g, ip, basis, c) for c in chunks]))
    else:
        parts = [_scan((g, ip, basis, subsets))]
    hits = sorted((s for p in parts for s in p[0]), key=lambda s: (len(s), s))
    result = SearchResult(
        examined=sum(p[1] for p in parts), subalgebras=sum(p[2] for p in parts)
    )
    for s in hits:
        h = Subspace.span([basis[i - 1] for i in s], n)
        rep = is_totally_geodesic(g, ip, h)
        if not rep.verdict:
            raise AssertionError(f"fast and direct tests disagree on subset {s}")
        result.passing.append((s, rep))
    result.max_dim = max((len(s) for s in hits), default=0)
    return result
