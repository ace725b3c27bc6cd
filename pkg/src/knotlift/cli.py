"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cutsys import (CUT_MOVES, CutSite, apply_cut_move, count_cut_points, cut_move_sites,
                     is_cut_system, standard_cut_system, to_double_lines)
from .diagram import DiagramError, load, serialize_diagram, validate
from .gauss import traverse
from .generate import generate_random_diagram
from .heights import degree, heights
from .invariants import invariant_report
from .lifting import cover0, covering_numbering, coverk, lift0, liftk
from .moves import MoveKind, apply_move, enumerate_sites, parse_site, random_walk
from .numbering import build_constraints, check_numbering, defect, has_cut_points, solve

PIPELINES = ("validate", "ac", "defect", "degree", "heights", "lift", "cover", "cutsys",
             "moves", "report", "verify-theorem", "random-suite")


class InputError(Exception):
    pass


@dataclass
class VerifyPlan:
    pipeline: str
    path: str | None = None
    moduli: tuple = (0,)
    seed: int = 0
    trials: int = 100
    base: str | None = None
    options: dict = field(default_factory=dict)


def fixture_dir():
    env = os.environ.get("KNOTLIFT_FIXTURES")
    return Path(env) if env else Path(__file__).parent / "fixtures"


def resolve(path):
    p = Path(path)
    if p.exists():
        return p
    for cand in (fixture_dir() / p.name, fixture_dir() / (p.name + ".kd")):
        if cand.exists():
            return cand
    raise InputError(f"no such file: {path}")


def _load(plan, validate_result=True):
    if plan.path is None:
        raise InputError("a diagram file is required")
    try:
        return load(resolve(plan.path), validate_result)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc


def _m(plan):
    return plan.moduli[0] if plan.moduli else 0


def _ac(plan):
    d = _load(plan)
    m = _m(plan)
    code = traverse(d)
    cs = build_constraints(code, include_cuts=has_cut_points(code))
    n = solve(cs, m)
    ring = "integral" if m == 0 else f"mod {m}"
    if n is None:
        return 1, {"numberable": False, "modulus": m, "defect": defect(cs),
                   "message": f"no {ring} numbering"}
    return 0, {"numberable": True, "modulus": m, "numbering": n.to_json()}


def _lift(plan):
    d = _load(plan)
    out = lift0(d) if degree(d) == 0 else liftk(d, plan.base)
    return 0, {"diagram": serialize_diagram(out), "code": str(traverse(out))}


def _cover(plan):
    d = _load(plan)
    c = cover0(d, _m(plan) or 1) if degree(d) == 0 else coverk(d, plan.base)
    return 0, {"sheets": c.sheet_count, "diagram": serialize_diagram(c.diagram),
               "provenance": {k: [v[0], list(v[1])] for k, v in sorted(c.provenance.items())}}


def _cutsys(plan):
    action = plan.options.get("action")
    d = _load(plan)
    if action == "standard":
        out = standard_cut_system(d)
        coh, inc = count_cut_points(out)
        return 0, {"diagram": serialize_diagram(out), "coherent": coh, "incoherent": inc}
    if action == "check":
        ok = is_cut_system(d)
        coh, inc = count_cut_points(d)
        return (0 if ok else 1), {"cut_system": ok, "coherent": coh, "incoherent": inc}
    if action == "to-dl":
        return 0, {"diagram": serialize_diagram(to_double_lines(d))}
    if action == "move":
        kind = plan.options.get("kind")
        if kind not in CUT_MOVES:
            raise InputError(f"--kind must be one of {', '.join(CUT_MOVES)}")
        if plan.options.get("site") is None:
            return 0, {"sites": [[k, list(s.args)] for k, s in cut_move_sites(d) if k == kind]}
        args = tuple(plan.options["site"].split(","))
        site = CutSite(kind, args, insert=plan.options.get("insert", False))
        return 0, {"diagram": serialize_diagram(apply_cut_move(d, kind, site))}
    raise InputError(f"unknown cutsys action {action!r}")


def _moves(plan):
    action = plan.options.get("action")
    d = _load(plan)
    if action == "random-walk":
        out, log = random_walk(d, plan.options.get("steps", 10), plan.seed)
        return 0, {"diagram": serialize_diagram(out), "moves": log}
    try:
        kind = MoveKind.parse(plan.options.get("kind") or "")
    except (DiagramError, IndexError) as exc:
        raise InputError(f"bad --kind: {exc}") from exc
    if action == "list":
        return 0, {"kind": str(kind), "sites": [str(s) for s in enumerate_sites(d, kind)]}
    if action == "apply":
        site = parse_site(kind, plan.options.get("site") or "")
        return 0, {"diagram": serialize_diagram(apply_move(d, kind, site))}
    raise InputError(f"unknown moves action {action!r}")


def _report(plan):
    d = _load(plan)
    return 0, invariant_report(d).to_json()


def double_line_form(d):
    """The degree-0 diagram with double lines that verify-theorem covers."""
    if d.cut_points:
        if not is_cut_system(d):
            raise DiagramError("cut points do not form a cut system")
        return to_double_lines(d)
    if d.double_lines:
        return d
    return to_double_lines(standard_cut_system(d))


def verify(d, m):
    dl = double_line_form(d)
    c = cover0(dl, m)
    cn = covering_numbering(c, m)
    cs = build_constraints(traverse(c.diagram))
    ok = cn.numbering is not None and not check_numbering(cs, cn.numbering)
    return ok, c, cn


def _verify_theorem(plan):
    d = _load(plan)
    m = _m(plan) or 2
    ok, c, cn = verify(d, m)
    report = {"modulus": m, "mod_m_almost_classical": ok, "fallback": cn.fallback,
              "components": len(traverse(c.diagram).components),
              "numbering": cn.numbering.to_json() if cn.numbering else None}
    if cn.fallback:
        report["rejected"] = [str(r) for r in cn.rejected]
    return (0 if ok else 1), report


def trial_seed(seed, i):
    return seed * 1_000_003 + i


def _random_suite(plan):
    moduli = [m for m in plan.moduli if m > 0] or [2, 3, 4, 5]
    failures, fallbacks = [], []
    start = time.time()
    for i in range(plan.trials):
        d = generate_random_diagram(trial_seed(plan.seed, i),
                                    plan.options.get("max_crossings", 8),
                                    plan.options.get("max_double_lines", 6))
        for m in moduli:
            ok, _, cn = verify(d, m)
            if not ok:
                failures.append([i, m])
            if cn.fallback:
                fallbacks.append([i, m])
    runs = plan.trials * len(moduli)
    return (1 if failures else 0), {"trials": plan.trials, "moduli": moduli, "runs": runs,
                                    "failures": failures, "fallbacks": fallbacks,
                                    "seconds": round(time.time() - start, 2)}


def _validate(plan):
    bad = validate(_load(plan, validate_result=False))
    return (1 if bad else 0), {"valid": not bad,
                               "violations": [f"{v.kind}: {v.message}" for v in bad]}


def _simple(fn):
    def run(plan):
        d = _load(plan)
        return 0, fn(d, plan)
    return run


_RUNNERS = {
    "validate": _validate,
    "ac": _ac,
    "defect": _simple(lambda d, p: {"defect": defect(build_constraints(traverse(d)))}),
    "degree": _simple(lambda d, p: {"degree": degree(d, p.options.get("component", 0))}),
    "heights": lambda p: _heights(p),
    "lift": _lift,
    "cover": _cover,
    "cutsys": _cutsys,
    "moves": _moves,
    "report": _report,
    "verify-theorem": _verify_theorem,
    "random-suite": _random_suite,
}


def _heights(plan):
    d = _load(plan)
    if plan.base is None:
        raise InputError("--base is required")
    return 0, heights(d, plan.base).to_json()


def run(plan):
    """Returns (exit code, report)."""
    try:
        return _RUNNERS[plan.pipeline](plan)
    except (InputError, ValueError) as exc:
        # DiagramError and the numbering errors are ValueErrors
        return 2, {"error": str(exc)}


def _moduli(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad modulus list {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="knotlift", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=_moduli, default=None, help="modulus, or comma list")
    common.add_argument("--base", help="base double line id")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "ac", "defect", "lift", "cover", "report", "verify-theorem", "heights"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
    p = sub.add_parser("degree", parents=[common])
    p.add_argument("file")
    p.add_argument("--component", type=int, default=0)
    p = sub.add_parser("cutsys", parents=[common])
    p.add_argument("action", choices=("standard", "check", "to-dl", "move"))
    p.add_argument("file")
    p.add_argument("--kind")
    p.add_argument("--site")
    p.add_argument("--insert", action="store_true", help="use the inserting direction")
    p = sub.add_parser("moves", parents=[common])
    p.add_argument("action", choices=("list", "apply", "random-walk"))
    p.add_argument("file")
    p.add_argument("--kind")
    p.add_argument("--site")
    p.add_argument("--steps", type=int, default=10)
    p = sub.add_parser("random-suite", parents=[common])
    p.add_argument("--max-crossings", type=int, default=8)
    p.add_argument("--max-double-lines", type=int, default=6)
    return parser


def _text(report):
    lines = []
    for k, v in report.items():
        if isinstance(v, str) and "\n" in v:
            lines.append(f"{k}:")
            lines.append(v.rstrip("\n"))
        else:
            lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    options = {k: getattr(args, k) for k in ("action", "kind", "site", "insert", "steps",
                                              "component", "max_crossings", "max_double_lines")
               if hasattr(args, k)}
    default_m = (2, 3, 4, 5) if args.command == "random-suite" else (0,)
    plan = VerifyPlan(args.command, getattr(args, "file", None), args.m or default_m,
                      args.seed, args.trials, args.base, options)
    code, report = run(plan)
    out = sys.stderr if "error" in report else sys.stdout
    print(json.dumps(report, indent=2) if args.json else _text(report), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
