"""Batch command-line front end.

Every verb reads JSON descriptions, runs one operation, and writes a
JSON report (stdout or ``--out``).  Exit codes: 0 = verified/true,
2 = verified false with a certificate in the report, 1 = error
(parse failure, unmet hypotheses, deadline).

Reports are byte-identical across reruns for fixed inputs and seed;
wall-clock timing is only added under ``--timing``, which is excluded
from that guarantee.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .axioms import run_axiom_suite
from .dg import dg_check, dg_differential
from .errors import (
    CompositionMismatch,
    DFactorError,
    DeadlineExceeded,
    HypothesesUnmet,
    ParseError,
    ShapeMismatch,
    UnsupportedOperation,
)
from .factorization import (
    Homotopy,
    direct_sum,
    homotopy_decide,
    is_morphism,
    cone,
    standard_triangle,
    suspend,
    unsuspend,
)
from .functors import (
    Lift,
    dual_quotient_check,
    end_ring_cyclic,
    faithful_check,
    full_lift,
    reduce_full,
    total_acyclicity_report,
    window_exact,
)
from .linalg import FredholmCertificate
from .modgb import NoSolutionCertificate
from .rings import QuotientRing
from . import schemas

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSE = 2


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _matrix_json(m, fmt):
    return [[fmt(e) for e in row] for row in m.rows]


def _cert_json(cert):
    if isinstance(cert, NoSolutionCertificate):
        return {
            "kind": "module_groebner",
            "main_len": cert.main_len,
            "gens": [[repr(p) for p in v] for v in cert.gens],
            "gb": [[repr(p) for p in v] for v in cert.gb],
            "remainder": [repr(p) for p in cert.remainder],
        }
    if isinstance(cert, FredholmCertificate):
        return {"kind": "fredholm", "left_null_vector": [str(c) for c in cert.y]}
    return {"kind": type(cert).__name__, "detail": repr(cert)}


def _homotopy_json(h: Homotopy, fmt):
    return {"components": [_matrix_json(c, fmt) for c in h.components]}


class _Outcome(Exception):
    def __init__(self, code, report):
        self.code = code
        self.report = report


def _verb_verify(args, report):
    desc = _load(args.input)
    try:
        X = schemas.factorization_from_json(desc, allow_odd_d=args.allow_odd_d)
    except CompositionMismatch as exc:
        fmt = exc.residual.ctx.backend.format
        report["verdict"] = "false"
        report["certificate"] = {
            "rotation": exc.rotation,
            "residual": _matrix_json(exc.residual, fmt),
        }
        raise _Outcome(EXIT_FALSE, report) from None
    report["verdict"] = "verified"
    report["result"] = schemas.factorization_to_json(X)
    return EXIT_OK


def _verb_sum(args, report):
    a = schemas.factorization_from_json(_load(args.input))
    b = schemas.factorization_from_json(_load(args.second))
    s = direct_sum(a, b)
    report["verdict"] = "verified"
    report["result"] = schemas.factorization_to_json(s)
    return EXIT_OK


def _verb_suspend(args, report, inverse=False):
    X = schemas.factorization_from_json(_load(args.input))
    out = unsuspend(X) if inverse else suspend(X)
    report["verdict"] = "verified"
    report["result"] = schemas.factorization_to_json(out)
    return EXIT_OK


def _morphism_or_false(args, report, path):
    phi = schemas.morphism_from_json(_load(path), allow_odd_d=args.allow_odd_d)
    check = is_morphism(phi)
    if not check.ok:
        fmt = phi.source.ctx.backend.format
        report["verdict"] = "false"
        report["certificate"] = {
            "failing_square": check.failing_square,
            "residual": _matrix_json(check.residual, fmt),
        }
        raise _Outcome(EXIT_FALSE, report)
    return phi


def _verb_cone(args, report):
    phi = _morphism_or_false(args, report, args.input)
    try:
        c = cone(phi)
    except CompositionMismatch as exc:
        fmt = phi.source.ctx.backend.format
        report["verdict"] = "false"
        report["certificate"] = {
            "rotation": exc.rotation,
            "residual": _matrix_json(exc.residual, fmt),
        }
        raise _Outcome(EXIT_FALSE, report) from None
    report["verdict"] = "verified"
    report["result"] = {
        "cone": schemas.factorization_to_json(c.cone),
        "include": schemas.morphism_to_json(c.include),
        "project": schemas.morphism_to_json(c.project),
    }
    return EXIT_OK


def _verb_triangle(args, report):
    phi = _morphism_or_false(args, report, args.input)
    tri = standard_triangle(phi)
    report["verdict"] = "verified"
    report["result"] = {
        "x": schemas.factorization_to_json(tri.x),
        "y": schemas.factorization_to_json(tri.y, include_context=False),
        "z": schemas.factorization_to_json(tri.z, include_context=False),
        "sx": schemas.factorization_to_json(tri.sx, include_context=False),
        "u": schemas.morphism_to_json(tri.u),
        "v": schemas.morphism_to_json(tri.v),
        "w": schemas.morphism_to_json(tri.w),
    }
    return EXIT_OK


def _verb_homotopic(args, report, deadline):
    phi = _morphism_or_false(args, report, args.input)
    psi = _morphism_or_false(args, report, args.second)
    if phi.source != psi.source or phi.target != psi.target:
        raise ShapeMismatch("the two morphisms are not parallel")
    verdict = homotopy_decide(phi, psi, deadline=deadline)
    fmt = phi.source.ctx.backend.format
    if isinstance(verdict, Homotopy):
        report["verdict"] = "homotopic"
        report["witness"] = _homotopy_json(verdict, fmt)
        return EXIT_OK
    report["verdict"] = "not_homotopic"
    report["certificate"] = {
        "detail": verdict.detail,
        "solver": _cert_json(verdict.certificate),
    }
    raise _Outcome(EXIT_FALSE, report)


def _verb_dg(args, report):
    gh = schemas.graded_from_json(_load(args.input))
    ok = dg_check(gh)
    fmt = gh.source.ctx.backend.format
    if not ok:
        report["verdict"] = "false"
        report["certificate"] = {"reason": "a double square does not commute"}
        raise _Outcome(EXIT_FALSE, report)
    diff = dg_differential(gh)
    report["verdict"] = "verified"
    report["result"] = {
        "differential": schemas.graded_to_json(diff),
        "differential_squares_to_zero": dg_differential(diff).is_zero,
    }
    return EXIT_OK


def _verb_reduce(args, report, deadline):
    X = schemas.factorization_from_json(_load(args.input))
    f = _parse_scalar(X.ctx.backend, args.f)
    red = reduce_full(X, f, length=args.window, deadline=deadline)
    report["verdict"] = "verified"
    report["result"] = schemas.window_to_json(red.window)
    report["certificate"] = {"factors_through": _scalar_str(X.ctx.backend, red.h)}
    return EXIT_OK


def _parse_scalar(backend, text):
    if text is None:
        raise ParseError("this verb requires --f")
    return backend.parse(text)


def _scalar_str(backend, value):
    try:
        return backend.format(value)
    except Exception:
        return str(value)


def _exactness_cert(outcome, fmt):
    cert = {
        "failing_position": outcome.failing_position,
        "detail": outcome.detail,
    }
    if outcome.witness is not None:
        witness = outcome.witness
        if witness and isinstance(witness[0], tuple):
            cert["witness"] = [[fmt(e) for e in row] for row in witness]
        else:
            cert["witness"] = [fmt(e) for e in witness]
    if outcome.certificate is not None:
        cert["solver"] = _cert_json(outcome.certificate)
    return cert


def _verb_exact(args, report, deadline):
    W = schemas.window_from_json(_load(args.input))
    outcome = window_exact(W, deadline=deadline)
    if outcome.ok:
        report["verdict"] = "exact"
        return EXIT_OK
    report["verdict"] = "not_exact"
    report["certificate"] = _exactness_cert(outcome, W.backend.format)
    raise _Outcome(EXIT_FALSE, report)


def _verb_checktac(args, report, deadline):
    X = schemas.factorization_from_json(_load(args.input))
    f = _parse_scalar(X.ctx.backend, args.f)
    outcome = total_acyclicity_report(X, f, length=args.window, deadline=deadline)
    if outcome.ok:
        report["verdict"] = "totally_acyclic"
        return EXIT_OK
    report["verdict"] = "not_totally_acyclic"
    fmt = X.ctx.backend.format
    if not outcome.primal.ok:
        report["certificate"] = {"side": "primal", **_exactness_cert(outcome.primal, fmt)}
    else:
        report["certificate"] = {"side": "dual", **_exactness_cert(outcome.dual, fmt)}
    raise _Outcome(EXIT_FALSE, report)


def _verb_endring(args, report, deadline):
    ring = QuotientRing.from_json(_load(args.input))
    if args.g is None:
        raise ParseError("endring requires --g")
    pres = end_ring_cyclic(ring, ring.parse(args.g), deadline=deadline)
    report["verdict"] = "verified"
    report["result"] = {
        "gamma": pres.gamma.to_json(),
        "colon_basis": [repr(p) for p in pres.colon_basis],
    }
    return EXIT_OK


def _verb_dualq(args, report):
    ring = QuotientRing.from_json(_load(args.input))
    if args.x is None:
        raise ParseError("dualq requires --x")
    ok = dual_quotient_check(args.n, ring.parse(args.x), ring, seed=args.seed)
    if ok:
        report["verdict"] = "verified"
        return EXIT_OK
    report["verdict"] = "false"
    raise _Outcome(EXIT_FALSE, report)


def _verb_faithful(args, report, deadline):
    theta = _morphism_or_false(args, report, args.input)
    f = _parse_scalar(theta.source.ctx.backend, args.f)
    verdict = faithful_check(theta, f, deadline=deadline)
    fmt = theta.source.ctx.backend.format
    report["result"] = {
        "downstairs_null": verdict.downstairs_null,
        "downstairs_witness": _homotopy_json(verdict.downstairs_witness, fmt)
        if verdict.downstairs_witness
        else None,
        "upstairs_witness": _homotopy_json(verdict.upstairs_witness, fmt)
        if verdict.upstairs_witness
        else None,
    }
    if verdict.consistent:
        report["verdict"] = "consistent"
        return EXIT_OK
    report["verdict"] = "contradiction"
    raise _Outcome(EXIT_FALSE, report)


def _verb_lift(args, report, deadline):
    desc = _load(args.input)
    ctx = schemas.context_from_json(desc.get("context", {}))
    X = schemas.factorization_from_json({**desc["source"], "d": desc.get("d")}, ctx)
    U = schemas.factorization_from_json({**desc["target"], "d": desc.get("d")}, ctx)
    f = _parse_scalar(ctx.backend, args.f)
    red_x = reduce_full(X, f, deadline=deadline)
    red_u = reduce_full(U, f, deadline=deadline)
    ctx_bar = red_x.downstairs.ctx
    from .context import MatrixMap
    from .factorization import morphism

    comps = []
    for i, m in enumerate(desc.get("components", [])):
        comps.append(
            MatrixMap.from_strings(
                ctx_bar, red_x.downstairs.objects[i], red_u.downstairs.objects[i], m
            )
        )
    try:
        phibar = morphism(red_x.downstairs, red_u.downstairs, comps)
    except ShapeMismatch as exc:
        raise HypothesesUnmet(f"input is not a periodic chain map: {exc}") from exc
    outcome = full_lift(phibar, X, U, f, deadline=deadline)
    fmt = ctx.backend.format
    if isinstance(outcome, Lift):
        report["verdict"] = "lifted"
        report["result"] = {
            "theta": schemas.morphism_to_json(outcome.theta),
            "downstairs_witness": _homotopy_json(outcome.downstairs_witness, fmt),
        }
        return EXIT_OK
    report["verdict"] = "no_lift"
    report["certificate"] = {
        "contradiction_under_certified_hypotheses": outcome.contradiction,
        "solver": _cert_json(outcome.certificate),
    }
    raise _Outcome(EXIT_FALSE, report)


def _verb_axioms(args, report, deadline):
    if args.ctx is None:
        raise ParseError("axioms requires --ctx")
    ctx = schemas.context_from_json(_load(args.ctx))
    report["inputs"][args.ctx] = _digest(args.ctx)
    ok, suite = run_axiom_suite(
        ctx, args.d, seed=args.seed, trials=args.trials, deadline=deadline
    )
    report["result"] = suite
    if ok:
        report["verdict"] = "verified"
        return EXIT_OK
    report["verdict"] = "false"
    report["certificate"] = {"failures": suite["failures"]}
    raise _Outcome(EXIT_FALSE, report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfactor",
        description="Exact d-fold matrix factorizations: verify, rotate, cone, "
        "decide homotopy, reduce to periodic complexes.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, needs_second=False, needs_input=True):
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("input", help="input JSON file")
        if needs_second:
            p.add_argument("second", help="second input JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=50)
        p.add_argument("--window", type=int, default=None)
        p.add_argument("--deadline", type=float, default=60.0, help="seconds per solve")
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--f", help="reduction element (expression)")
        p.add_argument("--g", help="cyclic generator (expression)")
        p.add_argument("--x", help="central element (expression)")
        p.add_argument("--n", type=int, default=1, help="free rank for dualq")
        p.add_argument("--ctx", help="context JSON (axioms)")
        p.add_argument("--timing", action="store_true")
        p.add_argument("--allow-odd-d", action="store_true", help=argparse.SUPPRESS)
        return p

    add("verify")
    add("sum", needs_second=True)
    add("suspend")
    add("unsuspend")
    add("cone")
    add("triangle")
    add("homotopic", needs_second=True)
    add("dg")
    add("reduce")
    add("exact")
    add("checktac")
    add("endring")
    add("dualq")
    add("faithful")
    add("lift")
    add("axioms", needs_input=False)
    return parser


_HANDLERS = {
    "verify": lambda a, r, dl: _verb_verify(a, r),
    "sum": lambda a, r, dl: _verb_sum(a, r),
    "suspend": lambda a, r, dl: _verb_suspend(a, r),
    "unsuspend": lambda a, r, dl: _verb_suspend(a, r, inverse=True),
    "cone": lambda a, r, dl: _verb_cone(a, r),
    "triangle": lambda a, r, dl: _verb_triangle(a, r),
    "homotopic": _verb_homotopic,
    "dg": lambda a, r, dl: _verb_dg(a, r),
    "reduce": _verb_reduce,
    "exact": _verb_exact,
    "checktac": _verb_checktac,
    "endring": _verb_endring,
    "dualq": lambda a, r, dl: _verb_dualq(a, r),
    "faithful": _verb_faithful,
    "lift": _verb_lift,
    "axioms": _verb_axioms,
}


def _emit(report: dict, out_path: str | None):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"verb": args.verb, "inputs": {}, "params": {"seed": args.seed}}
    for attr in ("input", "second"):
        path = getattr(args, attr, None)
        if path:
            try:
                report["inputs"][path] = _digest(path)
            except OSError as exc:
                _emit({"verb": args.verb, "error": f"{path}: {exc}"}, args.out)
                return EXIT_ERROR
    start = time.monotonic()
    deadline = start + args.deadline if args.deadline else None
    try:
        code = _HANDLERS[args.verb](args, report, deadline)
    except _Outcome as outcome:
        report = outcome.report
        code = outcome.code
    except (ParseError, HypothesesUnmet, UnsupportedOperation, DeadlineExceeded, ShapeMismatch) as exc:
        _emit(
            {"verb": args.verb, "error": str(exc), "kind": type(exc).__name__},
            args.out,
        )
        return EXIT_ERROR
    except DFactorError as exc:
        _emit({"verb": args.verb, "error": str(exc), "kind": type(exc).__name__}, args.out)
        return EXIT_ERROR
    except ValueError as exc:
        _emit({"verb": args.verb, "error": str(exc), "kind": "ValueError"}, args.out)
        return EXIT_ERROR
    if args.timing:
        report["timing_ms"] = round((time.monotonic() - start) * 1000.0, 3)
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
