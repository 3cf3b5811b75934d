"""Dense exact linear algebra over Fraction or RadNum entries.

Matrices are lists of rows; vectors are tuples.  Nothing here ever rounds:
pivots are tested with ``== 0`` and all divisions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import as_rational

Vector = tuple
Matrix = list


class DimensionMismatch(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    pass


ZERO = Fraction(0)
ONE = Fraction(1)


# small vector helpers ------------------------------------------------------


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    """Coordinate vector e_i, 0-based position ``i``."""
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(x, y) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x) -> Vector:
    return tuple(c * a for a in x)


def dot(x, y):
    s = ZERO
    for a, b in zip(x, y):
        if a != 0 and b != 0:
            s = s + a * b
    return s


def is_zero_vector(x) -> bool:
    return all(a == 0 for a in x)


def lincomb(coeffs, vectors, n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a != 0:
                out[i] = out[i] + c * a
    return tuple(out)


# matrices ------------------------------------------------------------------


def shape(m) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise DimensionMismatch("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [list(unit(n, i)) for i in range(n)]


def zero_matrix(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def transpose(m) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a, b) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def matvec(a, x) -> Vector:
    if a and len(a[0]) != len(x):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(dot(row, x) for row in a)


def matadd(a, b) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matscale(c, a) -> Matrix:
    return [[c * x for x in r] for r in a]


def matpow(a, e: int) -> Matrix:
    n = len(a)
    out = identity(n)
    for _ in range(e):
        out = matmul(out, a)
    return out


def is_zero_matrix(a) -> bool:
    return all(x == 0 for r in a for x in r)


def is_symmetric(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def is_skew(a) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(i, n))


def diag(entries) -> Matrix:
    n = len(entries)
    m = zero_matrix(n, n)
    for i, d in enumerate(entries):
        m[i][i] = d
    return m


def columns_to_matrix(vectors: Sequence[Sequence], n: int | None = None) -> Matrix:
    if not vectors:
        return [[] for _ in range(n or 0)]
    return transpose([list(v) for v in vectors])


# elimination ---------------------------------------------------------------


def rref(m) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form.

    Pivot rule: leftmost column with a nonzero entry, first nonzero row
    below the current pivot row.  Returns ``(R, rank, pivot_columns)``.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            inv = ONE / piv
            a[r] = [x * inv if x != 0 else x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ar = a[r]
                a[i] = [x - f * y if y != 0 else x for x, y in zip(a[i], ar)]
        pivots.append(c)
        r += 1
    return a, len(pivots), pivots


def rank(m) -> int:
    return rref(m)[1] if m else 0


def determinant(m):
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(r) for r in m]
    det = ONE
    for col in range(n):
        p = next((i for i in range(col, n) if a[i][col] != 0), None)
        if p is None:
            return ZERO
        if p != col:
            a[col], a[p] = a[p], a[col]
            det = -det
        piv = a[col][col]
        det = det * piv
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def _nullspace_vectors(m, cols: int) -> list[Vector]:
    if not m:
        return [unit(cols, i) for i in range(cols)]
    r, rk, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, pc in enumerate(pivots):
            if r[row][f] != 0:
                v[pc] = -r[row][f]
        basis.append(tuple(v))
    return basis


def nullspace(m, cols: int | None = None) -> "Subspace":
    """Kernel ``{x : m x = 0}`` as a normalized Subspace."""
    if cols is None:
        cols = shape(m)[1]
    return Subspace.span(_nullspace_vectors(m, cols), cols)


def solve_linear(m, b) -> Vector | None:
    """Some exact solution of ``m x = b``; None when the system is inconsistent."""
    rows, cols = shape(m)
    if len(b) != rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {rows}")
    aug = [list(r) + [bb] for r, bb in zip(m, b)]
    r, rk, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for row, pc in enumerate(pivots):
        x[pc] = r[row][cols]
    return tuple(x)


def inverse(m) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    r, rk, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r[:n]]


# subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^n stored by its RREF basis, so ``==`` is subspace equality."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        if not rows:
            return cls(ambient_dim, ())
        r, rk, _ = rref(rows)
        return cls(ambient_dim, tuple(tuple(row) for row in r[:rk]))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> Subspace:
        """Span of X_i for the given 1-based indices."""
        return cls.span([unit(n, i - 1) for i in sorted(set(indices))], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        return reduce_against(self.basis, v) is None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        n = self.ambient_dim
        ann = list(annihilator(self).basis) + list(annihilator(other).basis)
        if not ann:
            return Subspace.full(n)
        return nullspace(ann, n)


def reduce_against(rref_basis: Sequence[Vector], v) -> Vector | None:
    """Remainder of ``v`` modulo an RREF basis; None when it reduces to zero."""
    w = list(v)
    for row in rref_basis:
        pc = next(i for i, a in enumerate(row) if a != 0)
        c = w[pc]
        if c != 0:
            w = [x - c * y if y != 0 else x for x, y in zip(w, row)]
    if all(x == 0 for x in w):
        return None
    return tuple(w)


def annihilator(s: Subspace) -> Subspace:
    """Euclidean annihilator {x : b.x = 0 for all basis vectors b}."""
    if not s.basis:
        return Subspace.full(s.ambient_dim)
    return nullspace([list(b) for b in s.basis], s.ambient_dim)


def independent(vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return True
    return rank([list(v) for v in vectors]) == len(vectors)


# inner products ------------------------------------------------------------


@dataclass(frozen=True)
class InnerProduct:
    """Symmetric positive-definite Gram matrix in the structure basis."""

    gram: tuple[tuple, ...]

    def __post_init__(self):
        g = tuple(tuple(as_rational(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionMismatch("Gram matrix must be square")
        if not is_symmetric(g):
            raise NotPositiveDefinite("Gram matrix is not symmetric")
        for k in range(1, n + 1):
            if determinant([row[:k] for row in g[:k]]) <= 0:
                raise NotPositiveDefinite(f"leading principal minor of order {k} is not positive")

    @classmethod
    def identity(cls, n: int) -> InnerProduct:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.gram) for j, x in enumerate(row)
        )

    def apply(self, x) -> Vector:
        """G x, the covector of ``x``."""
        if self.is_identity():
            return tuple(x)
        return tuple(dot(row, x) for row in self.gram)

    def __call__(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("vector length differs from inner-product dimension")
        return dot(self.apply(x), y)

    def scaled(self, c) -> InnerProduct:
        c = as_rational(c)
        return InnerProduct(tuple(tuple(c * x for x in row) for row in self.gram))

    def restricted(self, vectors: Sequence[Sequence]) -> InnerProduct:
        """Gram matrix of the given vectors (must have rational pairings)."""
        return InnerProduct(tuple(tuple(self(a, b) for b in vectors) for a in vectors))


def gram_schmidt_by_degree(basis: Sequence[Sequence], ip: InnerProduct) -> list[Vector]:
    """Orthogonalize from the top degree down; vectors are left unnormalized.

    Returns E_1..E_n with E_n = X_n and E_i = X_i minus its projection on
    span(E_{i+1}, ..., E_n).
    """
    n = len(basis)
    out: list[Vector | None] = [None] * n
    norms: list = [None] * n
    for i in range(n - 1, -1, -1):
        v = tuple(basis[i])
        for j in range(i + 1, n):
            c = ip(basis[i], out[j])
            if c != 0:
                v = vsub(v, vscale(c / norms[j], out[j]))
        nv = ip(v, v)
        if not nv > 0:
            raise NotPositiveDefinite(f"nonpositive squared norm at position {i + 1}")
        out[i] = v
        norms[i] = nv
    return out  # type: ignore[return-value]


def orthogonal_complement(s: Subspace, ip: InnerProduct) -> Subspace:
    if s.ambient_dim != ip.dim:
        raise DimensionMismatch(
            f"subspace lives in dimension {s.ambient_dim}, inner product in {ip.dim}"
        )
    if not s.basis:
        return Subspace.full(s.ambient_dim)
    return nullspace([list(ip.apply(b)) for b in s.basis], s.ambient_dim)


def project(x, s: Subspace, ip: InnerProduct) -> Vector:
    """Orthogonal projection of ``x`` onto ``s``."""
    n = s.ambient_dim
    if not s.basis:
        return zeros(n)
    b = s.basis
    gram = [[ip(u, v) for v in b] for u in b]
    rhs = [ip(u, x) for u in b]
    c = solve_linear(gram, rhs)
    return lincomb(c, b, n)


def coordinates(v, basis: Sequence[Sequence]) -> Vector | None:
    """Coefficients of ``v`` in the (independent) ``basis``; None if outside the span."""
    if not basis:
        return () if is_zero_vector(v) else None
    return solve_linear(columns_to_matrix(basis), list(v))
