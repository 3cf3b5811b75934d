"""JSON encodings for scalars, vectors, algebras, inner products and subspaces.

Rationals are strings "p/q" (or "p"); radical scalars are arrays of
``{"radicand": s, "coeff": "p/q"}`` sorted by radicand.  Every document
written here carries ``"version": "v1"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exactlinalg import InnerProduct, Subspace
from .exactnum import RadNum, radnum_from_json, radnum_to_json
from .liecore import LieAlgebra

SCHEMA_VERSION = "v1"


def scalar_to_json(x, kind: str = "rational"):
    if kind == "radical":
        return radnum_to_json(x)
    if isinstance(x, RadNum):
        x = x.to_rational()
    return str(Fraction(x))


def scalar_from_json(obj):
    if isinstance(obj, list):
        r = radnum_from_json(obj)
        return r.to_rational() if r.is_rational() else r
    if isinstance(obj, (int, str)):
        return Fraction(str(obj))
    raise ValueError(f"unrecognized scalar encoding {obj!r}")


def _kind_of(values) -> str:
    for x in values:
        if isinstance(x, RadNum) and not x.is_rational():
            return "radical"
    return "rational"


def vector_to_json(v, kind: str | None = None) -> list:
    kind = kind or _kind_of(v)
    return [scalar_to_json(x, kind) for x in v]


def vector_from_json(items) -> tuple:
    return tuple(scalar_from_json(x) for x in items)


def matrix_to_json(m, kind: str | None = None) -> list:
    kind = kind or _kind_of([x for r in m for x in r])
    return [[scalar_to_json(x, kind) for x in r] for r in m]


def matrix_from_json(rows) -> list:
    return [list(vector_from_json(r)) for r in rows]


def algebra_to_json(g: LieAlgebra) -> dict:
    kind = g.scalar_kind
    return {
        "version": SCHEMA_VERSION,
        "dim": g.dim,
        "scalar": kind,
        "graded": g.graded,
        "name": g.name,
        "brackets": [
            {"i": i, "j": j, "value": vector_to_json(g.sc[(i, j)], kind)}
            for (i, j) in sorted(g.sc)
        ],
    }


def algebra_from_json(doc: dict) -> LieAlgebra:
    n = int(doc["dim"])
    sc = {}
    for b in doc.get("brackets", []):
        sc[(int(b["i"]), int(b["j"]))] = vector_from_json(b["value"])
    return LieAlgebra(n, sc, graded=bool(doc.get("graded", False)), name=doc.get("name", ""))


def ip_to_json(ip: InnerProduct) -> dict:
    return {"version": SCHEMA_VERSION, "gram": matrix_to_json(ip.gram, "rational")}


def ip_from_json(doc: dict) -> InnerProduct:
    return InnerProduct(tuple(tuple(r) for r in matrix_from_json(doc["gram"])))


def subspace_to_json(s: Subspace) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "ambient_dim": s.ambient_dim,
        "basis": matrix_to_json(s.basis) if s.basis else [],
    }


def subspace_from_json(doc: dict, ambient_dim: int | None = None) -> Subspace:
    basis = [vector_from_json(v) for v in doc.get("basis", [])]
    n = doc.get("ambient_dim", ambient_dim)
    if n is None:
        if not basis:
            raise ValueError("empty basis needs an ambient dimension")
        n = len(basis[0])
    return Subspace.span(basis, int(n))


def dumps(doc) -> str:
    """Deterministic serialization (sorted keys, fixed indentation)."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write(path, doc) -> None:
    Path(path).write_text(dumps(doc))


def read(path) -> dict:
    return json.loads(Path(path).read_text())
