"""Command-line interface.

Exit codes: 0 for a verified positive outcome, 1 for a verified negative
outcome (for example a TGS verdict of false), 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .catalog import (
    BadDimension,
    FamilySpec,
    RestrictionViolated,
    build,
    classify_families,
    find_diagonal_witness,
    iso_witness_check,
    quotient_matches_family,
    remark_witness,
)
from .exactlinalg import DimensionMismatch, InnerProduct, NotPositiveDefinite, Subspace
from .liecore import NotGraded, jacobi_check
from .m01construct import construct_m01
from .m03kernels import (
    ZeroCombination,
    build_ktriple,
    kernel,
    kernel_poly_formula,
    proportionality_factor,
    rank_assertion,
)
from .tgsverify import (
    SEARCH_CAP,
    AdaptedBasisDegenerate,
    SearchTooLarge,
    adapted_basis,
    graded_tgs_search,
    is_totally_geodesic,
)

log = logging.getLogger("filiform_tgs")
V = jsonio.SCHEMA_VERSION


class UsageError(ValueError):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from exc


def rational_list(text: str) -> list[Fraction]:
    return [rational(t) for t in text.split(",") if t.strip()]


def family_arg(text: str) -> FamilySpec:
    """FAMILY:DIM[:ALPHA], e.g. g8:8:1/2 or m02:10."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected FAMILY:DIM[:ALPHA], got {text!r}")
    try:
        dim = int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dimension in {text!r}") from exc
    alpha = rational(parts[2]) if len(parts) == 3 else None
    try:
        return FamilySpec(parts[0], dim, alpha)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# file loading -----------------------------------------------------------------


def load_algebra(path):
    return jsonio.algebra_from_json(jsonio.read(path))


def load_ip(path, n: int) -> InnerProduct:
    if path in (None, "identity"):
        return InnerProduct.identity(n)
    return jsonio.ip_from_json(jsonio.read(path))


def load_subspace(path, n: int) -> Subspace:
    return jsonio.subspace_from_json(jsonio.read(path), n)


def emit(doc, out) -> None:
    text = jsonio.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# verbs ------------------------------------------------------------------------


def cmd_build(a) -> int:
    spec = FamilySpec(a.family, a.dim, a.alpha)
    g = build(spec)
    doc = jsonio.algebra_to_json(g)
    doc["family"] = spec.to_json()
    emit(doc, a.out)
    return 0


def cmd_jacobi(a) -> int:
    g = load_algebra(a.algebra)
    res = jacobi_check(g, all_violations=a.verbose)
    if isinstance(res, list):
        viol = [v.to_json() for v in res]
    else:
        viol = [] if res is None else [res.to_json()]
    emit({"version": V, "ok": not viol, "violations": viol}, a.out)
    return 0 if not viol else 1


def cmd_classify(a) -> int:
    g = load_algebra(a.algebra)
    emit({"version": V, **classify_families(g)}, a.out)
    return 0


def cmd_tgs_check(a) -> int:
    g = load_algebra(a.algebra)
    ip = load_ip(a.ip, g.dim)
    h = load_subspace(a.subalgebra, g.dim)
    rep = is_totally_geodesic(g, ip, h)
    emit({"version": V, "dim_h": h.dim, **rep.to_json()}, a.out)
    return 0 if rep.verdict else 1


def cmd_adapted_basis(a) -> int:
    g = load_algebra(a.algebra)
    ip = load_ip(a.ip, g.dim)
    es = adapted_basis(g, ip)
    emit({"version": V, "basis": [jsonio.vector_to_json(e) for e in es]}, a.out)
    return 0


def cmd_search_graded(a) -> int:
    g = load_algebra(a.algebra)
    ip = load_ip(a.ip, g.dim)
    basis = adapted_basis(g, ip) if a.adapted else None
    res = graded_tgs_search(
        g, ip, basis, cap=a.cap, workers=a.threads, include_degree_one=a.include_degree_one
    )
    doc = {"version": V, "dim": g.dim, "floor_half": g.dim // 2, **res.to_json()}
    if not a.verbose:
        doc["passing"] = [p for p in doc["passing"] if len(p["subset"]) == res.max_dim]
    emit(doc, a.out)
    return 0 if res.max_dim > 0 else 1


def cmd_construct_m01(a) -> int:
    c = construct_m01(a.k, a.magnitudes, strict=False)
    report = {"version": V, **c.report_json()}
    if a.out:
        out = Path(a.out)
        out.mkdir(parents=True, exist_ok=True)
        jsonio.write(out / "algebra.json", jsonio.algebra_to_json(c.algebra))
        jsonio.write(out / "subalgebra.json", jsonio.subspace_to_json(c.h))
        jsonio.write(
            out / "witness.json",
            {
                "version": V,
                "target": FamilySpec("m01", c.dim).to_json(),
                "columns": [jsonio.vector_to_json(x, "radical") for x in c.witness],
            },
        )
        jsonio.write(out / "report.json", report)
    else:
        emit(report, None)
    return 0 if report["all_pass"] else 1


def cmd_kernel_k(a) -> int:
    kt = build_ktriple(a.k)
    x = kernel_poly_formula(a.k, a.a, a.b, a.c)
    ns = kernel(kt, a.a, a.b, a.c)
    factor = proportionality_factor(x, ns.basis[0]) if ns.dim == 1 else None
    rank_ok = rank_assertion(a.k, a.a, a.b, a.c, kt) is None
    doc = {
        "version": V,
        "k": a.k,
        "formula": jsonio.vector_to_json(x),
        "nullspace": [jsonio.vector_to_json(v) for v in ns.basis],
        "factor": None if factor is None else str(factor),
        "rank_ok": rank_ok,
    }
    emit(doc, a.out)
    return 0 if factor is not None and rank_ok else 1


def cmd_quotient_check(a) -> int:
    res = quotient_matches_family(a.big, a.small)
    emit(
        {"version": V, "big": a.big.to_json(), "small": a.small.to_json(), **res.to_json()},
        a.out,
    )
    return 0 if res.ok else 1


def cmd_iso_check(a) -> int:
    src = load_algebra(a.src)
    dst = load_algebra(a.dst)
    if a.map:
        doc = jsonio.read(a.map)
        phi = jsonio.matrix_from_json(doc["matrix"] if isinstance(doc, dict) else doc)
    elif a.remark:
        phi = remark_witness(src.dim, to_v=True)
    else:
        phi = find_diagonal_witness(src, dst)
        if phi is None:
            emit({"version": V, "ok": False, "witness": None, "violation": None}, a.out)
            return 1
    v = iso_witness_check(src, dst, phi)
    emit(
        {
            "version": V,
            "ok": v is None,
            "witness": jsonio.matrix_to_json(phi),
            "violation": None if v is None else v.to_json(),
        },
        a.out,
    )
    return 0 if v is None else 1


# parser -----------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="filiform-tgs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = verb("build", cmd_build, "build a catalog algebra as JSON")
    sp.add_argument("--family", required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--alpha", type=rational)

    sp = verb("jacobi", cmd_jacobi, "check the Jacobi identity")
    sp.add_argument("algebra")

    sp = verb("classify", cmd_classify, "O1/O2 membership in the stored basis")
    sp.add_argument("algebra")

    sp = verb("tgs-check", cmd_tgs_check, "test a subalgebra for total geodesy")
    sp.add_argument("algebra")
    sp.add_argument("ip", help="inner product JSON, or 'identity'")
    sp.add_argument("subalgebra")

    sp = verb("adapted-basis", cmd_adapted_basis, "degree-adapted orthogonal basis")
    sp.add_argument("algebra")
    sp.add_argument("ip", nargs="?", default="identity")

    sp = verb("search-graded", cmd_search_graded, "search spans of basis subsets")
    sp.add_argument("algebra")
    sp.add_argument("ip", nargs="?", default="identity")
    sp.add_argument("--adapted", action="store_true", help="search the adapted basis")
    sp.add_argument("--cap", type=int, default=SEARCH_CAP)
    sp.add_argument("--include-degree-one", action="store_true")

    sp = verb("construct-m01", cmd_construct_m01, "certified codimension-4 model of m01(2k+1)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--magnitudes", type=rational_list)

    sp = verb("kernel-k", cmd_kernel_k, "kernel of a K1 + b K2 + c K3")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--a", type=rational, required=True)
    sp.add_argument("--b", type=rational, required=True)
    sp.add_argument("--c", type=rational, required=True)

    sp = verb("quotient-check", cmd_quotient_check, "compare big/span(X_n) with small")
    sp.add_argument("big", type=family_arg, help="FAMILY:DIM[:ALPHA]")
    sp.add_argument("small", type=family_arg, help="FAMILY:DIM[:ALPHA]")

    sp = verb("iso-check", cmd_iso_check, "verify an isomorphism witness")
    sp.add_argument("src")
    sp.add_argument("dst")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--map", help='JSON {"matrix": [[...]]}, columns are images')
    g.add_argument("--remark", action="store_true", help="use the g_{n,8} -> V_n witness")
    return p


INPUT_ERRORS = (
    RestrictionViolated,
    BadDimension,
    DimensionMismatch,
    NotPositiveDefinite,
    NotGraded,
    SearchTooLarge,
    ZeroCombination,
    UsageError,
    OSError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


def _validate(a) -> None:
    if a.threads < 1:
        raise UsageError("--threads must be positive")
    if a.verb in ("construct-m01", "kernel-k") and a.k < 3:
        raise UsageError("--k must be at least 3")


def run(argv=None) -> int:
    parser = make_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING)
    try:
        _validate(a)
        return a.func(a)
    except AdaptedBasisDegenerate as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "make_parser"]
