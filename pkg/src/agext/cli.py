"""Command-line front end: ``agext construct|analyze|dual|covering-radius|reproduce``."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import analysis, artifact, codes, linalg, registry
from .curves import (ELLIPTIC, HERMITIAN, LINE, CurveError, elliptic_curve, hermitian_curve,
                     make_support, projective_line, support_all_affine, support_fibers,
                     support_multiples, support_torsion_free_pairs)
from .gf import FieldError, make_field

log = logging.getLogger("agext")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument parsing helpers ------------------------------------------------------

def parse_element(F, text: str) -> int:
    """An element index, ``t^k`` for a power of the generator, or ``-x``."""
    s = str(text).strip().replace("θ", "t")
    if s.startswith("-"):
        return int(F.neg(parse_element(F, s[1:])))
    if s.startswith("t"):
        exp = s[2:] if s.startswith("t^") else (s[1:] or "1")
        return F.power_of_theta(int(exp))
    v = int(s)
    if not 0 <= v < F.q:
        raise UsageError(f"element index {v} out of range for GF({F.q})")
    return v


def parse_support(C, recipe: str):
    """all-affine | torsion-free-pairs | fibers:T | multiples:X,Y,COUNT | explicit list.

    Explicit lists are ``1,2,3`` on the line and ``x:y,x:y,...`` on curves.
    """
    F = C.field
    r = recipe.strip()
    if r == "all-affine":
        return support_all_affine(C)
    if r == "torsion-free-pairs":
        return support_torsion_free_pairs(C)
    if r.startswith("fibers:"):
        return support_fibers(C, int(r.split(":", 1)[1]))
    if r.startswith("multiples:"):
        parts = r.split(":", 1)[1].split(",")
        if len(parts) != 3:
            raise UsageError("multiples recipe is multiples:X,Y,COUNT")
        P = (parse_element(F, parts[0]), parse_element(F, parts[1]))
        return support_multiples(C, P, int(parts[2]))
    pts = []
    for item in filter(None, (s.strip() for s in r.split(","))):
        if C.family == LINE:
            pts.append((parse_element(F, item), None))
        else:
            if ":" not in item:
                raise UsageError(f"explicit point {item!r} must be written x:y")
            x, y = item.split(":", 1)
            pts.append((parse_element(F, x), parse_element(F, y)))
    if not pts:
        raise UsageError("support is empty")
    return pts


def make_curve(args):
    if args.curve == HERMITIAN:
        return hermitian_curve(args.q0)
    F = make_field(args.p, args.e)
    if args.curve == LINE:
        return projective_line(F)
    return elliptic_curve(F, parse_element(F, args.a), parse_element(F, args.b))


def _config(args) -> registry.RunConfig:
    return registry.RunConfig(workers=args.workers, bitmap_budget=args.bitmap_budget,
                              weight_cap=args.weight_cap, slow=args.slow,
                              backend=args.backend)


def _emit(args, obj: dict, text_lines: list[str]):
    if args.format == "json":
        out = artifact.dump(obj, args.out)
        if not args.out:
            print(out)
        else:
            print("\n".join(text_lines))
    else:
        if args.out:
            artifact.dump(obj, args.out)
        print("\n".join(text_lines))


def _load_code(path):
    obj = artifact.load(path)
    if obj.get("schema") == artifact.DUAL_SCHEMA:
        raise UsageError(f"{path} is a dual artifact; pass the primal code artifact")
    return artifact.code_from_json(obj)


# -- subcommands ---------------------------------------------------------------------

def cmd_construct(args) -> int:
    C = make_curve(args)
    D = make_support(C, parse_support(C, args.support))
    delta = None if args.delta is None else parse_element(C.field, args.delta)
    code = codes.build(C, D, args.m, args.variant, delta)
    obj = artifact.code_to_json(code)
    summary = (f"{code.variant} code over GF({code.field.q}) on {C.family} curve (g={C.genus}): "
               f"[{code.n},{code.k}], support size {len(D)}, m={code.m}"
               + ("" if code.delta is None else f", delta={code.delta}")
               + f", fiber-complete={D.fiber_complete}")
    if args.out:
        artifact.dump(obj, args.out)
        print(summary)
    else:
        print(artifact.dump(obj, None))
        print(summary, file=sys.stderr)
    return EXIT_OK


def _report_context(code) -> dict:
    C, n = code.curve, len(code.support)
    ctx = {"variant": code.variant, "support_size": n, "m": code.m, "genus": C.genus,
           "family": C.family, "q": C.field.q, "point_count": C.point_count()}
    if C.family == ELLIPTIC:
        ctx["plain_mds"] = _plain_mds(code, code.m)
        if code.variant == codes.EXTENDED and code.m + 1 <= n - 1:
            ctx["plain_mds_next"] = _plain_mds(code, code.m + 1)
    return ctx


def _plain_mds(code, m) -> bool:
    plain = codes.build_code(code.curve, code.support, m)
    return analysis.weight_distribution(plain).min_distance == plain.n - plain.k + 1


def cmd_analyze(args) -> int:
    code = _load_code(args.artifact)
    t0 = time.perf_counter()
    rep = analysis.build_report(code, rho=args.rho, rho_dual=args.rho_dual,
                                context=_report_context(code), workers=args.workers,
                                weight_cap=args.weight_cap, bitmap_budget=args.bitmap_budget,
                                backend=args.backend)
    obj = rep.to_json()
    lines = [f"[{rep.n},{rep.k},{rep.d}] dual [{rep.n},{rep.n - rep.k},{rep.d_dual}]",
             f"defects {rep.defect}/{rep.defect_dual}: {rep.classification}"]
    if rep.designed_distance is not None:
        lines.append(f"designed distance {rep.designed_distance}")
    if rep.rho is not None:
        lines.append(f"rho = {rep.rho}")
    if rep.rho_dual is not None:
        lines.append(f"rho dual = {rep.rho_dual}")
    for b in rep.bounds:
        lines.append(f"{'PASS' if b['pass'] else 'FAIL'}  {b['name']}: {b['detail']}")
    lines.append(f"({time.perf_counter() - t0:.2f} s)")
    _emit(args, obj, lines)
    return EXIT_OK if rep.all_bounds_pass else EXIT_FAIL


def cmd_dual(args) -> int:
    code = _load_code(args.artifact)
    F = code.field
    if args.method == "functional":
        dual = codes.functional_dual(code)
        G, lambdas = dual.generator, dual.lambdas
    else:
        G, lambdas = codes.nullspace_dual(code), None
    ok = (codes.is_orthogonal(F, G, code.generator)
          and linalg.rank(F, G) == code.n - linalg.rank(F, code.generator))
    obj = artifact.dual_to_json(code, G, args.method, lambdas, ok)
    lines = [f"{args.method} dual of [{code.n},{code.k}]: {G.shape[0]} x {G.shape[1]}"]
    if lambdas:
        lines.append("lambda = " + ", ".join(F.format(v) for v in lambdas))
    lines.append(f"{'PASS' if ok else 'FAIL'}  orthogonality and rank")
    _emit(args, obj, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_covering_radius(args) -> int:
    code = _load_code(args.artifact)
    F = code.field
    H = code.generator if args.dual else codes.nullspace_dual(code)
    label = "dual" if args.dual else "code"
    t0 = time.perf_counter()
    try:
        cov = analysis.covering_radius_from_parity(
            F, H, args.weight_cap, args.workers, args.bitmap_budget, args.backend)
    except analysis.CoverageIncomplete as exc:
        cov = exc.coverage
        obj = cov.to_json()
        obj["rho_lower_bound"] = cov.weight_cap + 1
        _emit(args, obj, [f"rho({label}) > {cov.weight_cap}: {cov.covered} of "
                          f"{cov.num_syndromes} cosets covered"])
        return EXIT_FAIL
    obj = cov.to_json()
    lines = [f"rho({label}) = {cov.rho}",
             f"cosets per leader weight: {cov.new_per_weight}",
             f"deep hole: {[int(v) for v in cov.witness]}",
             f"({time.perf_counter() - t0:.2f} s, methods {cov.methods[1:]})"]
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    ids = list(registry.REGISTRY) if args.id == "all" else [args.id]
    if args.id != "all" and args.id not in registry.REGISTRY:
        raise UsageError(f"unknown example {args.id!r}; known: {', '.join(registry.REGISTRY)}")
    outcomes = []
    for eid in ids:
        ex = registry.REGISTRY[eid]
        if args.slow and ex.slow_note and args.format == "text":
            print(f"# {eid}: slow tier enabled, {ex.slow_note}", flush=True)
        outcomes.extend(registry.run_example(eid, cfg))
    lines = []
    for o in outcomes:
        status = "SKIP" if o.skipped else ("PASS" if o.passed else "FAIL")
        lines.append(f"{status}  {o.example:18s} {o.check:48s} expected={o.expected!s:14s} "
                     f"computed={o.computed!s} [{o.source}]")
    ok = registry.all_pass(outcomes)
    n_fail = sum(1 for o in outcomes if not o.skipped and not o.passed)
    n_skip = sum(1 for o in outcomes if o.skipped)
    lines.append(f"{len(outcomes) - n_fail - n_skip} passed, {n_fail} failed, {n_skip} skipped")
    _emit(args, {"outcomes": [o.to_json() for o in outcomes], "pass": ok}, lines)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------

def _add_globals(p, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--workers", type=int, default=d(1), help="worker threads for the kernels")
    p.add_argument("--bitmap-budget", type=int, default=d(analysis.DEFAULT_BITMAP_BUDGET),
                   metavar="BYTES", help="memory budget for the coset bitmaps")
    p.add_argument("--weight-cap", type=int, default=d(None), metavar="W",
                   help="stop the covering-radius search after weight W")
    p.add_argument("--slow", action="store_true", default=d(False),
                   help="include the slow-tier covering radii")
    p.add_argument("--out", default=d(None), metavar="PATH", help="write the JSON result here")
    p.add_argument("--format", choices=("json", "text"), default=d("text"))
    p.add_argument("--backend", choices=("compiled", "python"), default=d(None),
                   help="force a kernel backend")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agext", allow_abbrev=False,
        description="Extended and Roth-Lempel AG codes: construction and analysis")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    sub_kw = {"allow_abbrev": False}

    p = sub.add_parser("construct", **sub_kw, help="build a code and write its artifact")
    _add_globals(p, suppress=True)
    p.add_argument("--curve", choices=(LINE, ELLIPTIC, HERMITIAN), required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--a", default="0", help="elliptic coefficient a (index or t^k)")
    p.add_argument("--b", default="0", help="elliptic coefficient b (index or t^k)")
    p.add_argument("--q0", type=int, default=3, help="Hermitian: curve over GF(q0^2)")
    p.add_argument("--support", required=True,
                   help="all-affine, torsion-free-pairs, fibers:T, multiples:X,Y,COUNT, "
                        "or an explicit list (1,2,3 on the line, x:y,... on curves)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=codes.VARIANTS, default=codes.PLAIN)
    p.add_argument("--delta", default=None, help="Roth-Lempel delta (index or t^k)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", **sub_kw, help="distances, classification and bound checks")
    _add_globals(p, suppress=True)
    p.add_argument("artifact")
    p.add_argument("--rho", action="store_true", help="also compute the covering radius")
    p.add_argument("--rho-dual", action="store_true", help="and that of the dual code")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dual", **sub_kw, help="dual generator matrix with orthogonality check")
    _add_globals(p, suppress=True)
    p.add_argument("artifact")
    p.add_argument("--method", choices=("functional", "nullspace"), default="functional")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("covering-radius", **sub_kw, help="exact covering radius by coset enumeration")
    _add_globals(p, suppress=True)
    p.add_argument("artifact")
    p.add_argument("--dual", action="store_true", help="covering radius of the dual code")
    p.set_defaults(func=cmd_covering_radius)

    p = sub.add_parser("reproduce", **sub_kw, help="rerun the worked examples")
    _add_globals(p, suppress=True)
    p.add_argument("id", help="example id or 'all': " + ", ".join(registry.REGISTRY))
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(relativeCreated)8.0f ms %(message)s")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except (UsageError, artifact.ArtifactError, CurveError, FieldError,
            codes.ConstructionError, analysis.InstanceTooLarge, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"agext: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
