"""A metric model of m01(2k+1) with a totally geodesic subalgebra of codimension 4.

Pipeline (all exact, scalars in Q extended by square roots of rationals):

1. ``choose_S_u``: diagonal S = diag(d) with distinct |d_i| and a vector u with
   d_i^{-1} u_i^2 = prod_{j != i} d_i^2 / (d_i^2 - d_j^2); then
   T = S(-S + u u^t) is nilpotent.
2. ``build_q``: q = S^{2-2k} P(S^2) u where P is the truncated square root of
   chi(t) = det(S^2 - t) + (-1)^k t^{k-1}; this gives <T^m S q, q> = delta_{m,k-2}.
3. ``build_p``: p = -w / <w, w> with w = (T^{k-2} S)^t q, so <T^{k-2} S p, q> = -1.
4. ``assemble``: the bracket [E_1, X] = N X, [X, Y] = <K X, Y> E_{2k+1} on the
   orthonormal frame E_1..E_{2k+1}, the subalgebra h, and a certification
   record of every identity the argument relies on.
5. ``verify_m01_presentation``: X_2 = (0, q, 0, 0), X_i = N^{i-2} X_2 realize
   the m01(2k+1) relations, giving an explicit isomorphism witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import poly
from .catalog import FamilySpec, build, iso_witness_check
from .exactlinalg import (
    InnerProduct,
    Subspace,
    Vector,
    columns_to_matrix,
    diag,
    dot,
    independent,
    is_skew,
    is_symmetric,
    is_zero_matrix,
    is_zero_vector,
    matadd,
    matmul,
    matpow,
    matscale,
    matvec,
    orthogonal_complement,
    rank,
    transpose,
    zero_matrix,
    zeros,
)
from .exactnum import RadNum, as_rational, rad_sqrt_rational, rational_sqrt
from .liecore import LieAlgebra, Violation, bracket, is_filiform, jacobi_check
from .tgsverify import is_subalgebra, is_totally_geodesic

F = Fraction


class DuplicateEntries(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class DuplicateMagnitudes(ValueError):
    pass


class NonSquareConstantTerm(ValueError):
    pass


class DegreeTooHigh(ValueError):
    pass


class DegenerateW(ArithmeticError):
    pass


class CertificationFailed(AssertionError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"{stage}: {detail}" if detail else stage)
        self.stage = stage
        self.detail = detail


# combinatorial identity and truncated square root ----------------------------


def comb_sum(b, l: int) -> Fraction:
    """sum_i b_i^l prod_{j != i} 1/(b_i - b_j); equals 1 if l = m-1, else 0."""
    b = [as_rational(x) for x in b]
    m = len(b)
    if m < 2:
        raise ValueError("need at least two entries")
    if len(set(b)) != m:
        raise DuplicateEntries("entries must be distinct")
    if any(x == 0 for x in b):
        raise ValueError("entries must be nonzero")
    if not 0 <= l <= m - 1:
        raise IndexOutOfRange(f"l must lie in 0..{m - 1}")
    total = F(0)
    for i, bi in enumerate(b):
        den = F(1)
        for j, bj in enumerate(b):
            if j != i:
                den *= bi - bj
        total += bi**l / den
    return total


def poly_sqrt_truncate(chi, r: int) -> list[Fraction]:
    """P of degree <= r with t^{r+1} | P^2 - chi (constant term must be a rational square).

    Solves c_0 = sqrt(chi_0), 2 c_0 c_m + sum_{0<i<m} c_i c_{m-i} = chi_m.
    """
    chi = poly.trim(as_rational(x) for x in chi)
    if poly.degree(chi) > r:
        raise DegreeTooHigh(f"deg(chi) = {poly.degree(chi)} exceeds r = {r}")
    b0 = poly.coeff(chi, 0)
    c0 = rational_sqrt(b0) if b0 > 0 else None
    if c0 is None:
        raise NonSquareConstantTerm(f"constant term {b0} is not a positive rational square")
    c = [c0]
    for m in range(1, r + 1):
        s = sum((c[i] * c[m - i] for i in range(1, m)), F(0))
        c.append((poly.coeff(chi, m) - s) / (2 * c0))
    return c


# S, u, q, p ---------------------------------------------------------------------


def default_magnitudes(k: int) -> list[Fraction]:
    return [F(i + 1) for i in range(1, k)]


def choose_S_u(k: int, magnitudes=None) -> tuple[list[Fraction], list[RadNum]]:
    """Diagonal of S with signs fixed so every u_i^2 target is positive, and u."""
    if k < 3:
        raise ValueError("k must be at least 3")
    mags = default_magnitudes(k) if magnitudes is None else [as_rational(x) for x in magnitudes]
    if len(mags) != k - 1:
        raise ValueError(f"need k-1 = {k - 1} magnitudes, got {len(mags)}")
    if any(x <= 0 for x in mags):
        raise ValueError("magnitudes must be positive")
    if len(set(mags)) != len(mags):
        raise DuplicateMagnitudes("magnitudes must be pairwise distinct")
    d, u = [], []
    for i, mi in enumerate(mags):
        target = F(1)
        for j, mj in enumerate(mags):
            if j != i:
                target *= mi * mi / (mi * mi - mj * mj)
        # u_i^2 = d_i * target must be positive, so sign(d_i) = sign(target)
        di = mi if target > 0 else -mi
        d.append(di)
        u.append(rad_sqrt_rational(di * target))
    return d, u


def s_matrix(d) -> list:
    return diag(list(d))


def t_matrix(d, u) -> list:
    """T = S(-S + u u^t)."""
    s = s_matrix(d)
    uut = [[a * b for b in u] for a in u]
    return matmul(s, matadd(matscale(F(-1), s), uut))


def chi_polynomial(d, k: int) -> list[Fraction]:
    """det(S^2 - t I) + (-1)^k t^{k-1}."""
    p = poly.from_roots([x * x for x in d])
    return poly.add(p, [F(0)] * (k - 1) + [F((-1) ** k)])


def build_q(k: int, d, u) -> Vector:
    chi = chi_polynomial(d, k)
    P = poly_sqrt_truncate(chi, k - 2)
    return tuple(
        (di ** (2 - 2 * k)) * poly.evaluate(P, di * di) * ui for di, ui in zip(d, u)
    )


def build_p(k: int, d, u, q) -> tuple[Vector, Vector]:
    """Return (p, w) with w = (T^{k-2} S)^t q and p = -w/<w,w>."""
    m = matmul(matpow(t_matrix(d, u), k - 2), s_matrix(d))
    w = matvec(transpose(m), q)
    if is_zero_vector(w):
        raise DegenerateW("(T^{k-2} S)^t q vanished")
    ww = dot(w, w)
    inv = RadNum(ww).inverse()
    return tuple(-x * inv for x in w), w


# assembly ------------------------------------------------------------------------


@dataclass
class M01Construction:
    k: int
    d: list
    u: list
    S: list
    T: list
    N: list
    K: list
    q: Vector
    p: Vector
    w: Vector
    algebra: LieAlgebra
    h: Subspace
    X2: Vector = ()
    witness: list = field(default_factory=list)
    report: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return 2 * self.k + 1

    @property
    def ip(self) -> InnerProduct:
        return InnerProduct.identity(self.dim)

    def report_json(self) -> dict:
        return {
            "k": self.k,
            "dim": self.dim,
            "dim_h": self.h.dim,
            "codim_h": self.dim - self.h.dim,
            "d": [str(x) for x in self.d],
            "checks": [{"name": n, "pass": ok} for n, ok in self.report.items()],
            "all_pass": all(self.report.values()),
        }


def n_matrix(k: int, d, u, p) -> list:
    """N on span(E_2..E_{2k+1}) in 2x2 block form plus the p row and the 1 entry."""
    m = k - 1
    size = 2 * k
    n = zero_matrix(size, size)
    s = s_matrix(d)
    lower = matadd(matscale(F(-1), s), [[a * b for b in u] for a in u])
    for i in range(m):
        for j in range(m):
            n[i][m + j] = s[i][j]
            n[m + i][j] = lower[i][j]
        n[2 * m][i] = p[i]
    n[2 * m + 1][2 * m] = F(1)
    return n


def k_matrix(k: int) -> list:
    m = k - 1
    size = 2 * k
    km = zero_matrix(size, size)
    for i in range(m):
        km[i][m + i] = F(1)
        km[m + i][i] = F(-1)
    return km


def algebra_from_nk(k: int, N, K) -> LieAlgebra:
    """[E_1, X] = N X and [X, Y] = <K X, Y> E_{2k+1} on the frame E_1..E_{2k+1}."""
    dim = 2 * k + 1
    sc = {}
    for b in range(2 * k):
        col = [N[r][b] for r in range(2 * k)]
        if any(x != 0 for x in col):
            sc[(1, b + 2)] = (F(0),) + tuple(col)
    for a in range(2 * k):
        for b in range(a + 1, 2 * k):
            c = K[b][a]  # <K e_a, e_b>
            if c != 0:
                v = [F(0)] * dim
                v[dim - 1] = c
                sc[(a + 2, b + 2)] = tuple(v)
    return LieAlgebra(dim, sc, graded=False, name=f"m01-model(k={k})")


def h_subspace(k: int, u) -> Subspace:
    """Orthogonal complement of span(E_1, E_2k, (0,u,0_{k+1}), (0_k,u,0,0))."""
    dim = 2 * k + 1
    e1 = [F(0)] * dim
    e1[0] = F(1)
    e2k = [F(0)] * dim
    e2k[2 * k - 1] = F(1)
    ua = [F(0)] + list(u) + [F(0)] * (k + 1)
    ub = [F(0)] * k + list(u) + [F(0), F(0)]
    perp = Subspace.span([e1, e2k, ua, ub], dim)
    return orthogonal_complement(perp, InnerProduct.identity(dim))


def _block_pattern_ok(k, S, T, u, p, N) -> bool:
    m = k - 1
    lower = matadd(matscale(F(-1), S), [[a * b for b in u] for a in u])
    Tt = transpose(T)
    for mm in range(1, k):
        got = matpow(N, 2 * mm + 1)
        want = zero_matrix(2 * k, 2 * k)
        tl = matmul(S, matpow(Tt, mm))
        bl = matmul(lower, matpow(T, mm))
        prow = matvec(transpose(matpow(T, mm)), p)  # p^t T^m
        last = matvec(transpose(matmul(S, matpow(Tt, mm - 1))), p)  # p^t S (T^t)^{m-1}
        for i in range(m):
            for j in range(m):
                want[i][m + j] = tl[i][j]
                want[m + i][j] = bl[i][j]
            want[2 * m][i] = prow[i]
            want[2 * m + 1][m + i] = last[i]
        if any(got[i][j] != want[i][j] for i in range(2 * k) for j in range(2 * k)):
            return False
    return True


def certify(c: M01Construction, *, full: bool = True) -> dict[str, bool]:
    k, d, u, S, T, N, K, p, q = c.k, c.d, c.u, c.S, c.T, c.N, c.K, c.p, c.q
    m = k - 1
    r: dict[str, bool] = {}
    Sinv = diag([1 / x for x in d])

    def upair(power):
        return dot(matvec(matpow(Sinv, -power) if power < 0 else matpow(S, power), u), u)

    r["S symmetric nonsingular, |d_i| distinct"] = (
        is_symmetric(S) and all(x != 0 for x in d) and len({abs(x) for x in d}) == m
    )
    r["u_i^2 = d_i prod d_i^2/(d_i^2-d_j^2)"] = all(
        u[i] * u[i] == d[i] * _prod_target(d, i) for i in range(m)
    )
    r["<S^-1 u,u> = 1"] = upair(-1) == 1
    r["<S^(1-2l) u,u> = 0, l=2..k-1"] = all(upair(1 - 2 * l) == 0 for l in range(2, k))
    r["rk(S^-1 u, ..., S^(3-2k) u) = k-1"] = (
        rank(columns_to_matrix([matvec(matpow(Sinv, 2 * j - 1), u) for j in range(1, k)])) == m
    )
    r["T^(k-1) = 0"] = is_zero_matrix(matpow(T, k - 1))
    r["T^m S^(1-2j) u = 0, 1<=j<=m<=k-1"] = all(
        is_zero_vector(matvec(matpow(T, mm), matvec(matpow(Sinv, 2 * j - 1), u)))
        for mm in range(1, k)
        for j in range(1, mm + 1)
    )
    r["<T^m S q,q> = delta_(m,k-2)"] = all(
        dot(matvec(matmul(matpow(T, mm), S), q), q) == (1 if mm == k - 2 else 0)
        for mm in range(0, k - 1)
    )
    tks_p = matvec(matmul(matpow(T, k - 2), S), p)
    r["<T^(k-2) S p,q> = -1"] = dot(tks_p, q) == -1
    r["T^(k-2) S p != 0"] = not is_zero_vector(tks_p)
    r["K skew-symmetric"] = is_skew(K)
    r["KN symmetric"] = is_symmetric(matmul(K, N))
    r["N^(2m+1) block pattern, m=1..k-1"] = _block_pattern_ok(k, S, T, u, p, N)
    r["N^(2k-1) != 0"] = not is_zero_matrix(matpow(N, 2 * k - 1))
    r["N^(2k) = 0"] = is_zero_matrix(matpow(N, 2 * k))
    g = c.algebra
    top = [F(0)] * g.dim
    top[-1] = F(1)
    r["[m, E_(2k+1)] = 0"] = all(
        is_zero_vector(g.basis_bracket(i, g.dim)) for i in range(1, g.dim)
    )
    r["Jacobi identity"] = jacobi_check(g) is None
    r["h subalgebra"] = is_subalgebra(g, c.h)
    r["h totally geodesic"] = is_totally_geodesic(g, c.ip, c.h).verdict
    r["codim(h) = 4"] = g.dim - c.h.dim == 4
    if full:
        r["filiform"] = is_filiform(g)
    return r


def _prod_target(d, i) -> Fraction:
    t = F(1)
    for j in range(len(d)):
        if j != i:
            t *= d[i] * d[i] / (d[i] * d[i] - d[j] * d[j])
    return t


def assemble(k: int, d, u, p, q=None, *, strict: bool = True) -> M01Construction:
    if q is None:
        q = build_q(k, d, u)
    S = s_matrix(d)
    T = t_matrix(d, u)
    N = n_matrix(k, d, u, p)
    K = k_matrix(k)
    g = algebra_from_nk(k, N, K)
    w = matvec(transpose(matmul(matpow(T, k - 2), S)), q)
    c = M01Construction(
        k=k, d=list(d), u=list(u), S=S, T=T, N=N, K=K, q=tuple(q), p=tuple(p), w=w,
        algebra=g, h=h_subspace(k, u),
    )
    c.report = certify(c)
    viol = verify_m01_presentation(c)
    c.report["presentation of m01(2k+1)"] = viol is None
    if strict:
        for name, ok in c.report.items():
            if not ok:
                detail = viol.detail if (viol is not None and name.startswith("presentation")) else ""
                raise CertificationFailed(name, detail)
    return c


def presentation_basis(c: M01Construction) -> list[Vector]:
    """X_1 = E_1 and X_i = N^{i-2} X_2 with X_2 = (0, 0_{k-1}, q, 0, 0)."""
    k = c.k
    dim = 2 * k + 1
    x2 = (F(0),) * k + tuple(c.q) + (F(0), F(0))
    xs = [(F(1),) + (F(0),) * (dim - 1), x2]
    cur = x2[1:]
    for _ in range(3, dim + 1):
        cur = matvec(c.N, cur)
        xs.append((F(0),) + tuple(cur))
    return xs


def verify_m01_presentation(c: M01Construction) -> Violation | None:
    k = c.k
    dim = 2 * k + 1
    g = c.algebra
    xs = presentation_basis(c)
    c.X2 = xs[1]
    c.witness = xs
    if not independent(xs):
        return Violation("presentation", (), None, "X_1..X_n are linearly dependent")
    for i in range(2, dim):
        if bracket(g, xs[0], xs[i - 1]) != tuple(xs[i]):
            return Violation("presentation", (1, i), None, f"[X1,X{i}] != X{i + 1}")
    top = [F(0)] * dim
    top[-1] = F(-1)
    if tuple(xs[-1]) != tuple(top):
        return Violation("presentation", (dim,), None, "X_(2k+1) != -E_(2k+1)")
    for i in range(2, dim + 1):
        for j in range(i + 1, dim + 1):
            want = (
                tuple((-1) ** (i + 1) * a for a in xs[-1]) if i + j == dim else zeros(dim)
            )
            if bracket(g, xs[i - 1], xs[j - 1]) != tuple(want):
                return Violation("presentation", (i, j), None, f"[X{i},X{j}] relation fails")
    phi = columns_to_matrix(xs)
    v = iso_witness_check(build(FamilySpec("m01", dim)), g, phi)
    if v is not None:
        return Violation("presentation", v.where, v.residual, "catalog isomorphism check fails")
    return None


def construct_m01(k: int, magnitudes=None, *, strict: bool = True) -> M01Construction:
    d, u = choose_S_u(k, magnitudes)
    q = build_q(k, d, u)
    p, _ = build_p(k, d, u, q)
    return assemble(k, d, u, p, q, strict=strict)

