"""Constructors for the N-graded filiform algebras of both classification tables.

Six sequences m0(n), m2(n), V_n, m01(2k+1), m02(2k+2), m03(2k+3) and the
one-parameter families g_{n,alpha}, n = 7..11.  Also: the O1/O2 membership
test, isomorphism-witness checking and the generator-image witness search.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import DimensionMismatch, Matrix, columns_to_matrix, diag, matvec, rank, unit
from .exactnum import as_rational
from .liecore import LieAlgebra, NotGraded, Violation, bracket

FAMILIES = ("m0", "m2", "V", "m01", "m02", "m03", "g7", "g8", "g9", "g10", "g11")
G_FAMILIES = ("g7", "g8", "g9", "g10", "g11")


class RestrictionViolated(ValueError):
    pass


class BadDimension(ValueError):
    pass


class DuplicateFamilyWarning(UserWarning):
    pass


F = Fraction

# forbidden alpha values per family
FORBIDDEN_ALPHA = {
    "g7": (F(-2),),
    "g8": (F(-2),),
    "g9": (F(-5, 2), F(-2)),
    "g10": (F(-5, 2),),
    "g11": (F(-5, 2), F(-1), F(-3)),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    dim: int
    alpha: Fraction | None = None

    def __post_init__(self):
        fam = self.family
        if fam == "g":
            fam = f"g{self.dim}"
            object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", as_rational(self.alpha))

    @property
    def k(self) -> int | None:
        offs = {"m01": 1, "m02": 2, "m03": 3}.get(self.family)
        return None if offs is None else (self.dim - offs) // 2

    def validate(self) -> None:
        fam, n = self.family, self.dim
        if fam == "m0" and n < 3:
            raise BadDimension("m0(n) needs n >= 3")
        if fam == "m2" and n < 5:
            raise BadDimension("m2(n) needs n >= 5")
        if fam == "V":
            if n < 3:
                raise BadDimension("V_n needs n >= 3")
        for f, off in (("m01", 1), ("m02", 2), ("m03", 3)):
            if fam == f and ((n - off) % 2 or (n - off) // 2 < 3):
                raise BadDimension(f"{f} needs n = 2k+{off} with k >= 3, got n = {n}")
        if fam in G_FAMILIES:
            if n != int(fam[1:]):
                raise BadDimension(f"{fam} has dimension {fam[1:]}, got {n}")
            if self.alpha is None:
                raise RestrictionViolated(f"{fam} needs a parameter alpha")
            bad = FORBIDDEN_ALPHA[fam]
            if self.alpha in bad:
                if len(bad) == 1:
                    rule = f"alpha != {bad[0]}"
                else:
                    rule = "alpha not in {" + ", ".join(str(b) for b in bad) + "}"
                raise RestrictionViolated(f"{fam} requires {rule} (got alpha = {self.alpha})")
        elif self.alpha is not None:
            raise ValueError(f"{fam} takes no parameter")

    def label(self) -> str:
        if self.family in G_FAMILIES:
            return f"g_{self.dim},{self.alpha}"
        if self.family == "V":
            return f"V_{self.dim}"
        return f"{self.family}({self.dim})"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "dim": self.dim,
            "alpha": None if self.alpha is None else str(self.alpha),
        }


def _chain(rel: dict, n: int, top: int | None = None) -> None:
    for i in range(2, (top or n)):
        rel[(1, i)] = {i + 1: 1}


def _m0(n):
    rel = {}
    _chain(rel, n)
    return rel


def _m2(n):
    rel = _m0(n)
    for i in range(3, n - 1):
        rel[(2, i)] = {i + 2: 1}
    return rel


def _v(n):
    rel = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i + j <= n:
                rel[(i, j)] = {i + j: j - i}
    return rel


def _m01_part(rel, k):
    for l in range(2, k + 1):
        rel[(l, 2 * k - l + 1)] = {2 * k + 1: (-1) ** (l + 1)}


def _m02_part(rel, k):
    for j in range(2, k + 1):
        rel[(j, 2 * k - j + 2)] = {2 * k + 2: (-1) ** (j + 1) * (k - j + 1)}


def _m03_part(rel, k):
    for m in range(3, k + 2):
        c = F((m - 2) * k) - F((m - 2) * (m - 1), 2)
        rel[(m, 2 * k - m + 3)] = {2 * k + 3: (-1) ** m * c}


def _g_relations(n: int, a: Fraction) -> dict:
    rel = {}
    _chain(rel, n)
    rel[(2, 3)] = {5: 2 + a}
    rel[(2, 4)] = {6: 2 + a}
    rel[(2, 5)] = {7: 1 + a}
    rel[(3, 4)] = {7: 1}
    if n >= 8:
        rel[(2, 6)] = {8: a}
        rel[(3, 5)] = {8: 1}
    if n >= 9:
        d = 2 * a + 5
        rel[(2, 7)] = {9: (2 * a * a + 3 * a - 2) / d}
        rel[(3, 6)] = {9: (2 * a + 2) / d}
        rel[(4, 5)] = {9: F(3) / d}
    if n >= 10:
        d = 2 * a + 5
        rel[(2, 8)] = {10: (2 * a * a + a - 1) / d}
        rel[(3, 7)] = {10: (2 * a - 1) / d}
        rel[(4, 6)] = {10: F(3) / d}
    if n >= 11:
        d = 2 * a + 5
        q = a * a + 4 * a + 3
        rel[(2, 9)] = {11: (2 * a**3 + 2 * a * a + 3) / (2 * q)}
        rel[(3, 8)] = {11: (4 * a**3 + 8 * a * a - 8 * a - 21) / (2 * q * d)}
        rel[(4, 7)] = {11: 3 * (2 * a * a + 4 * a + 5) / (2 * q * d)}
        rel[(5, 6)] = {11: 3 * (4 * a + 1) / (2 * q * d)}
    return rel


def build(spec: FamilySpec) -> LieAlgebra:
    """Structure constants of the requested table entry, basis X_1..X_n."""
    spec.validate()
    fam, n = spec.family, spec.dim
    if fam == "m0":
        rel = _m0(n)
    elif fam == "m2":
        rel = _m2(n)
    elif fam == "V":
        if n < 12:
            warnings.warn(
                f"V_{n} with n < 12 duplicates another family", DuplicateFamilyWarning, stacklevel=2
            )
        rel = _v(n)
    elif fam in ("m01", "m02", "m03"):
        k = spec.k
        rel = {}
        _chain(rel, n)
        _m01_part(rel, k)
        if fam in ("m02", "m03"):
            _m02_part(rel, k)
        if fam == "m03":
            _m03_part(rel, k)
    else:
        rel = _g_relations(n, spec.alpha)
    rel = {key: {k: F(c) for k, c in terms.items()} for key, terms in rel.items()}
    return LieAlgebra.from_relations(n, rel, graded=True, name=spec.label())


def g_presentation(n: int, alpha) -> LieAlgebra:
    """The g_{n,alpha} brackets with no restriction check.

    Only meaningful where no denominator vanishes; used to compare the
    excluded parameter values with the families they coincide with.
    """
    if not 7 <= n <= 11:
        raise BadDimension("g_{n,alpha} exists for n = 7..11")
    rel = _g_relations(n, as_rational(alpha))
    rel = {key: {k: F(c) for k, c in terms.items()} for key, terms in rel.items()}
    return LieAlgebra.from_relations(n, rel, graded=True, name=f"g_{n},{alpha}")


EXCLUDED_MATCHES = {7: "m01", 8: "m02", 9: "m03"}


def excluded_value_witness(n: int) -> Matrix | None:
    """Generator-image search for g_{n,-2} -> m0j(n), n = 7, 8, 9."""
    return find_diagonal_witness(g_presentation(n, -2), build(FamilySpec(EXCLUDED_MATCHES[n], n)))


def build_family(family: str, dim: int, alpha=None) -> LieAlgebra:
    return build(FamilySpec(family, dim, None if alpha is None else as_rational(alpha)))


def all_specs(max_dim: int = 15, alphas=()) -> list[FamilySpec]:
    """Every constructible spec up to ``max_dim`` (V from 12 on, as tabulated)."""
    out = []
    for n in range(3, max_dim + 1):
        out.append(FamilySpec("m0", n))
        if n >= 5:
            out.append(FamilySpec("m2", n))
        if n >= 12:
            out.append(FamilySpec("V", n))
        for fam, off in (("m01", 1), ("m02", 2), ("m03", 3)):
            if (n - off) % 2 == 0 and (n - off) // 2 >= 3:
                out.append(FamilySpec(fam, n))
    for fam in G_FAMILIES:
        n = int(fam[1:])
        if n > max_dim:
            continue
        for a in alphas:
            a = as_rational(a)
            if a not in FORBIDDEN_ALPHA[fam]:
                out.append(FamilySpec(fam, n, a))
    return out


# O1 / O2 ----------------------------------------------------------------------


def _multiple_of(v, k: int) -> bool:
    """v is a nonzero multiple of X_k (1-based)."""
    return v[k - 1] != 0 and all(a == 0 for i, a in enumerate(v) if i != k - 1)


def classify_families(g: LieAlgebra) -> dict[str, bool]:
    """Syntactic O1/O2 membership in the stored basis.

    O1: [X_i, X_{n-i}] is a nonzero multiple of X_n for i = 2..floor((n-1)/2).
    O2: O1 and [X_2, X_i] is a nonzero multiple of X_{i+2} for i = 3..n-2.
    """
    if not g.graded:
        raise NotGraded("classify_families needs a graded basis")
    n = g.dim
    for i in range(2, n):
        if not _multiple_of(g.basis_bracket(1, i), i + 1):
            raise NotGraded(f"[X1,X{i}] is not a nonzero multiple of X{i + 1}")
    o1 = all(_multiple_of(g.basis_bracket(i, n - i), n) for i in range(2, (n - 1) // 2 + 1))
    o2 = o1 and all(_multiple_of(g.basis_bracket(2, i), i + 2) for i in range(3, n - 1))
    return {"O1": o1, "O2": o2}


# isomorphism witnesses --------------------------------------------------------


def iso_witness_check(src: LieAlgebra, dst: LieAlgebra, phi: Matrix) -> Violation | None:
    """None iff ``phi`` (columns = images of the src basis) is a Lie isomorphism."""
    n = src.dim
    if dst.dim != n or len(phi) != n or any(len(r) != n for r in phi):
        raise DimensionMismatch("witness must be a square matrix matching both dimensions")
    if rank(phi) != n:
        return Violation("iso", (), None, "witness matrix is singular")
    cols = [tuple(phi[r][c] for r in range(n)) for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = matvec(phi, src.basis_bracket(i + 1, j + 1))
            rhs = bracket(dst, cols[i], cols[j])
            if lhs != rhs:
                res = tuple(a - b for a, b in zip(lhs, rhs))
                return Violation("iso", (i + 1, j + 1), res)
    return None


def remark_witness(n: int, to_v: bool = True) -> Matrix:
    """Diagonal witness between g_{n,8} and V_n.

    With ``to_v`` the matrix maps g_{n,8} -> V_n (X_k -> (k-2)! * 60 * X_k);
    otherwise it maps V_n -> g_{n,8} using the basis X_1, X_k / ((k-2)! * 60).
    """
    d = [F(1)] + [F(math.factorial(k - 2) * 60) for k in range(2, n + 1)]
    if not to_v:
        d = [1 / x for x in d]
    return diag(d)


def _chain_coeffs(g: LieAlgebra) -> list:
    # c[i] with [X_1, X_i] = c[i] X_{i+1}
    n = g.dim
    out = [None, None]
    for i in range(2, n):
        v = g.basis_bracket(1, i)
        if not _multiple_of(v, i + 1):
            raise NotGraded(f"{g.name}: [X1,X{i}] is not a multiple of X{i + 1}")
        out.append(v[i])
    return out


def diagonal_map(src: LieAlgebra, dst: LieAlgebra, a, b) -> Matrix:
    """Extend X_1 -> a Y_1, X_2 -> b Y_2 along X_{i+1} = [X_1, X_i]/c_i."""
    n = src.dim
    cs, cd = _chain_coeffs(src), _chain_coeffs(dst)
    lam = [F(0)] * (n + 1)
    lam[1], lam[2] = as_rational(a), as_rational(b)
    for i in range(2, n):
        lam[i + 1] = lam[1] * lam[i] * cd[i] / cs[i]
    return diag(lam[1:])


def find_diagonal_witness(src: LieAlgebra, dst: LieAlgebra) -> Matrix | None:
    """Generator-image search over diagonal maps fixed by the images of X_1, X_2.

    With a = 1 each relation [X_i, X_j] = s X_{i+j} (i, j >= 2) pins b by a
    linear equation; the distinct candidates are tried with a = +-1.
    """
    if src.dim != dst.dim:
        return None
    n = src.dim
    try:
        base = diagonal_map(src, dst, 1, 1)
    except NotGraded:
        return None
    # with b scaling X_2 and everything above it, lam_i(b) = b * base_i for i >= 2
    candidates = {F(1)}
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            if i + j > n:
                continue
            s = src.basis_bracket(i, j)[i + j - 1]
            t = dst.basis_bracket(i, j)[i + j - 1]
            if s != 0 and t != 0:
                # b^2 base_i base_j t = s b base_{i+j}
                candidates.add(s * base[i + j - 1][i + j - 1] / (base[i - 1][i - 1] * base[j - 1][j - 1] * t))
    for b in sorted(candidates, key=lambda x: (abs(x.numerator) + x.denominator, x)):
        for a in (F(1), F(-1)):
            phi = diagonal_map(src, dst, a, b * a * a)
            if iso_witness_check(src, dst, phi) is None:
                return phi
    return None


@dataclass(frozen=True)
class QuotientMatch:
    ok: bool
    exact: bool
    witness: Matrix | None = None
    mismatch: tuple | None = None

    def to_json(self) -> dict:
        from .jsonio import matrix_to_json

        return {
            "ok": self.ok,
            "exact": self.exact,
            "witness": None if self.witness is None else matrix_to_json(self.witness),
            "mismatch": None if self.mismatch is None else list(self.mismatch),
        }


def quotient_matches_family(big: FamilySpec, small: FamilySpec) -> QuotientMatch:
    """Compare big/span(X_n) with the small algebra.

    Exact equality of structure constants is tried first; failing that, a
    diagonal generator-image witness is searched (needed for g7 -> m2(6)).
    """
    if big.dim != small.dim + 1:
        raise BadDimension("quotient comparison needs dim(big) = dim(small) + 1")
    q = build(big).truncate()
    s = build(small)
    if q.structure_equal(s):
        return QuotientMatch(True, True)
    phi = find_diagonal_witness(q, s)
    if phi is not None:
        return QuotientMatch(True, False, witness=phi)
    first = next(
        (key for key in sorted(set(q.sc) | set(s.sc)) if q.sc.get(key) != s.sc.get(key)), None
    )
    return QuotientMatch(False, False, mismatch=first)


def identity_witness(n: int) -> Matrix:
    return [list(unit(n, i)) for i in range(n)]


def witness_columns(vectors) -> Matrix:
    return columns_to_matrix(vectors)
