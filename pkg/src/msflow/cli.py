"""Command-line front end.

Every invocation writes exactly one JSON document to standard output and
keeps human-readable diagnostics on standard error, so the tool composes
with shell pipelines.  Exit codes: 0 success, 1 invalid input or usage,
2 a verification or consistency check failed.

The environment variable MSFLOW_TOL overrides the orbit-closure tolerance
used by ``verify torus-model``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import flowlab
from .errors import (
    DegenerateOverlap,
    MsflowError,
    NonFinite,
    NothingToRepair,
    OrbitNotClosed,
    RepairFailed,
    VanishingField,
)
from .homology import (
    class_is_admissible,
    class_is_maximal,
    expr_to_vector,
    graph_class_vector,
    graph_h1,
    graph_presentation,
    seifert_h1,
)
from .manifolds import (
    HomologyClassExpr,
    SeifertClosed,
    maximal_class,
    parse_graph,
    parse_seifert,
    validate_class,
)
from .planner import (
    bound_graph,
    bound_seifert,
    bound_sum,
    plan_graph,
    plan_seifert,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> "None":  # type: ignore[override]
        raise _UsageError(message)


@dataclass(frozen=True)
class CommandOutcome:
    """Result of one CLI invocation: exit code, the JSON payload destined
    for stdout, and diagnostic lines destined for stderr."""

    exit_code: int
    payload: "dict | list | None"
    diagnostics: tuple[str, ...] = ()


_VERIFY_FAILURES = (OrbitNotClosed, RepairFailed, NothingToRepair,
                    VanishingField, NonFinite, DegenerateOverlap)


def _build_parser() -> _Parser:
    parser = _Parser(prog="msflow", description="Orbit budgets for non-singular Morse-Smale flows")
    sub = parser.add_subparsers(dest="command", required=True)

    def seifert_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--euler", type=int, required=True)
        p.add_argument("--fibers", default="", help="surgery coefficients, e.g. 2/1;3/1;5/1")

    bound = sub.add_parser("bound", help="closed-form orbit bounds")
    bound_sub = bound.add_subparsers(dest="target", required=True)
    seifert_flags(bound_sub.add_parser("seifert"))
    bound_sub.add_parser("graph").add_argument("file")
    bound_sub.add_parser("sum").add_argument("files", nargs="*")

    plan = sub.add_parser("plan", help="replay the construction as a step ledger")
    plan_sub = plan.add_subparsers(dest="target", required=True)
    plan_seifert_p = plan_sub.add_parser("seifert")
    seifert_flags(plan_seifert_p)
    plan_seifert_p.add_argument("--class", dest="class_spec", default="max")
    plan_seifert_p.add_argument("--out")
    plan_graph_p = plan_sub.add_parser("graph")
    plan_graph_p.add_argument("file")
    plan_graph_p.add_argument("--class", dest="class_spec", default="max")
    plan_graph_p.add_argument("--out")

    hom = sub.add_parser("homology", help="first homology and class checks")
    hom_sub = hom.add_subparsers(dest="target", required=True)
    hom_seifert = hom_sub.add_parser("seifert")
    seifert_flags(hom_seifert)
    hom_seifert.add_argument("--class", dest="class_spec", default=None)
    hom_graph = hom_sub.add_parser("graph")
    hom_graph.add_argument("file")
    hom_graph.add_argument("--class", dest="class_spec", default=None)

    verify = sub.add_parser("verify", help="numerical checks of the local models")
    verify_sub = verify.add_subparsers(dest="target", required=True)
    torus = verify_sub.add_parser("torus-model")
    torus.add_argument("--lambda", dest="lam", type=int, required=True)
    torus.add_argument("--dump-csv", dest="dump_csv")
    verify_sub.add_parser("round-handle")
    verify_sub.add_parser("glue-demo")
    verify_sub.add_parser("collar")

    sub.add_parser("selftest", help="run the whole acceptance grid")
    return parser


def _seifert_from_args(args) -> SeifertClosed:
    text = f"g={args.genus},e={args.euler}"
    if args.fibers:
        text += f",fibers={args.fibers}"
    return parse_seifert(text)


def _parse_class_text(text: str) -> HomologyClassExpr:
    """Parse "lambda=1,2;alpha=2,0;tau=3" with empty value lists allowed."""
    doc: dict[str, tuple[int, ...]] = {}
    for part in text.split(";"):
        key, sep, values = part.partition("=")
        key = key.strip()
        if not sep or key not in ("lambda", "alpha", "tau") or key in doc:
            raise _UsageError(f"bad class component {part!r}")
        try:
            doc[key] = tuple(int(v) for v in values.split(",") if v.strip())
        except ValueError:
            raise _UsageError(f"non-integer coefficient in {part!r}") from None
    if "lambda" not in doc or "alpha" not in doc:
        raise _UsageError("a class needs lambda=... and alpha=... components (or 'max')")
    return HomologyClassExpr(doc["lambda"], doc["alpha"], doc.get("tau"))


def _parse_graph_class(g, text: str):
    """Return (per-piece expressions, cycle coordinates) for a graph class."""
    rank = len(graph_presentation(g).nontree_edges)
    if text == "max":
        exprs = maximal_class(g)
        assert isinstance(exprs, tuple)
        return exprs, (0,) * rank
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"class is neither 'max' nor valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not set(doc) <= {"pieces", "cycles"}:
        raise _UsageError("graph class JSON must be {\"pieces\": [...], \"cycles\": [...]}")
    exprs = tuple(HomologyClassExpr.from_json(p) for p in doc.get("pieces", ()))
    cycles = tuple(int(v) for v in doc.get("cycles", (0,) * rank))
    if len(cycles) != rank:
        raise _UsageError(f"expected {rank} cycle coordinates, got {len(cycles)}")
    return exprs, cycles


def _read(path: str) -> str:
    return Path(path).read_text()


def _tolerance() -> float:
    raw = os.environ.get("MSFLOW_TOL")
    if raw is None:
        return flowlab.CLOSURE_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise _UsageError(f"MSFLOW_TOL={raw!r} is not a number") from None
    if tol <= 0:
        raise _UsageError("MSFLOW_TOL must be positive")
    return tol


def _write_out(path: str | None, payload) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _cmd_bound(args) -> CommandOutcome:
    if args.target == "seifert":
        m = _seifert_from_args(args)
        return CommandOutcome(0, {"bound": bound_seifert(m.genus, m.euler, m.n)})
    if args.target == "graph":
        return CommandOutcome(0, {"bound": bound_graph(parse_graph(_read(args.file)))})
    components = [parse_graph(_read(f)) for f in args.files]
    return CommandOutcome(0, {"bound": bound_sum(components)})


def _cmd_plan(args) -> CommandOutcome:
    if args.target == "seifert":
        m = _seifert_from_args(args)
        if args.class_spec == "max":
            c = maximal_class(m)
            assert isinstance(c, HomologyClassExpr)
        else:
            c = _parse_class_text(args.class_spec)
        ledger = plan_seifert(m, c)
        payload = ledger.to_json()
        if class_is_maximal(m, c):
            expected = bound_seifert(m.genus, m.euler, m.n)
            if ledger.total != expected:
                message = (f"construction needs {ledger.total} orbits but the "
                           f"closed-form bound is {expected}")
                return CommandOutcome(2, {"error": message, "total": ledger.total,
                                          "bound": expected}, (message,))
        _write_out(args.out, payload)
        return CommandOutcome(0, payload)

    g = parse_graph(_read(args.file))
    exprs, cycles = _parse_graph_class(g, args.class_spec)
    for k, v in enumerate(cycles):
        if v != 0:
            message = (f"cycle coordinate {k} is {v}; classes with a nonzero "
                       "cycle component are not realizable by these fields")
            return CommandOutcome(1, {"error": message}, (message,))
    ledger = plan_graph(g, exprs)
    payload = ledger.to_json()
    if class_is_maximal(g, exprs):
        expected = bound_graph(g)
        if ledger.total != expected:
            message = (f"construction needs {ledger.total} orbits but the "
                       f"closed-form bound is {expected}")
            return CommandOutcome(2, {"error": message, "total": ledger.total,
                                      "bound": expected}, (message,))
    _write_out(args.out, payload)
    return CommandOutcome(0, payload)


def _cmd_homology(args) -> CommandOutcome:
    if args.target == "seifert":
        m = _seifert_from_args(args)
        payload: dict = {"group": seifert_h1(m).to_json()}
        if args.class_spec is not None:
            if args.class_spec == "max":
                c = maximal_class(m)
            else:
                c = _parse_class_text(args.class_spec)
            assert isinstance(c, HomologyClassExpr)
            validate_class(m, c)
            payload["class"] = c.to_json()
            payload["maximal"] = class_is_maximal(m, c)
            payload["admissible"] = True
            payload["trivial_in_h1"] = seifert_h1(m).is_trivial_class(expr_to_vector(m, c))
        return CommandOutcome(0, payload)

    g = parse_graph(_read(args.file))
    group, _projection = graph_h1(g)
    payload = {"group": group.to_json()}
    if args.class_spec is not None:
        exprs, cycles = _parse_graph_class(g, args.class_spec)
        validate_class(g, exprs)
        vector = graph_class_vector(g, exprs, cycles)
        payload["class"] = {"pieces": [e.to_json() for e in exprs], "cycles": list(cycles)}
        payload["maximal"] = class_is_maximal(g, exprs)
        payload["admissible"] = class_is_admissible(g, vector)
        payload["trivial_in_h1"] = group.is_trivial_class(vector)
    return CommandOutcome(0, payload)


def _dump_orbits_csv(path: str, orbits) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["orbit_b", "time", "t", "x", "z"])
        for (trajectory, _signs), b in zip(orbits, (0.25, 0.75)):
            for time, point in zip(trajectory.times, trajectory.points):
                writer.writerow([b, f"{time:.6f}"] + [f"{v:.12f}" for v in point])


def _cmd_verify(args) -> CommandOutcome:
    if args.target == "torus-model":
        report, orbits = flowlab.verify_torus_model(args.lam, tol=_tolerance())
        if args.dump_csv:
            _dump_orbits_csv(args.dump_csv, orbits)
    elif args.target == "round-handle":
        report, _orbits = flowlab.verify_round_handle()
    elif args.target == "glue-demo":
        report = flowlab.verify_glue_demo()
    else:
        report = flowlab.verify_collar()
    if report["pass"]:
        return CommandOutcome(0, report)
    return CommandOutcome(2, report, (f"verification failed for {report['model']}",))


def _cmd_selftest() -> CommandOutcome:
    from . import selftest

    results = selftest.run_all()
    payload = {
        "criteria": [
            {"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    diagnostics = tuple(
        f"criterion {r.id} ({r.name}): {'PASS' if r.passed else 'FAIL'} in {r.seconds:.3f}s"
        for r in results)
    return CommandOutcome(0 if payload["passed"] else 2, payload, diagnostics)


def run(argv) -> CommandOutcome:
    """Parse and execute one invocation without touching process state."""
    try:
        args = _build_parser().parse_args(list(argv))
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "homology":
            return _cmd_homology(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_selftest()
    except _UsageError as exc:
        return CommandOutcome(1, {"error": str(exc)}, (f"usage error: {exc}",))
    except _VERIFY_FAILURES as exc:
        return CommandOutcome(2, {"error": str(exc)}, (str(exc),))
    except (MsflowError, ValueError, OSError) as exc:
        return CommandOutcome(1, {"error": str(exc)}, (str(exc),))


def main(argv=None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    for line in outcome.diagnostics:
        print(line, file=sys.stderr)
    if outcome.payload is not None:
        sys.stdout.write(json.dumps(outcome.payload, sort_keys=True, separators=(",", ":")) + "\n")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
