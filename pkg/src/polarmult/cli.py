"""Command line: ``polarmult <command> --input problem.json [--json]``.

Exit codes: 0 computed, 1 inconclusive or unstable, 2 input error,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

from . import criteria, polar, svlength
from .errors import (
    BudgetExceeded,
    EmptySupport,
    GenericityFailure,
    InputError,
    InvalidDepth,
    NotContained,
    PolarError,
    RankDeficient,
    Unstable,
)
from .exactlin import step_budget
from .polar import PolarVector
from .problem import ProblemDescription

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = (
    "polar",
    "polar-ideal",
    "relative",
    "check-integral",
    "check-birational",
    "check-reduction-ideal",
    "br",
    "check-reduction-module",
    "sv",
    "selftest",
)


def _plain(obj):
    """JSON-ready copy with polar vectors as lists and keys as strings."""
    if isinstance(obj, PolarVector):
        return obj.as_list()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


class _Run:
    """Collects vectors, timings and metadata while a command executes."""

    def __init__(self, command, problem):
        self.command = command
        self.problem = problem
        self.options = problem.window()
        self.vectors = {}
        self.timings = {}
        self.verdict = None
        self.seeds = []
        self.extra = {}
        self.main = None

    @contextmanager
    def timed(self, label):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[label] = round(time.perf_counter() - t0, 4)

    def add(self, name, vec, main=False):
        self.vectors[name] = vec
        if main or self.main is None:
            self.main = vec

    def report(self, with_timings=True):
        vecs = [v for v in self.vectors.values() if isinstance(v, PolarVector)]
        out = {
            "command": self.command,
            "r": self.main.r if self.main is not None else None,
            "vectors": {k: _plain(v) for k, v in self.vectors.items()},
            "assumptions_used": list(self.verdict.assumptions_used) if self.verdict else [],
            "window": self.main.window if self.main is not None else None,
            "margin_verified": all(v.margin_verified for v in vecs) if vecs else None,
            "seeds": self.seeds,
            "timings": self.timings if with_timings else None,
            "input": self.problem.to_dict(),
        }
        if self.verdict is not None:
            out["verdict"] = {
                "outcome": self.verdict.outcome,
                "reason": self.verdict.reason,
                "evidence": _plain(self.verdict.evidence),
            }
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------
# commands


def cmd_polar(run: _Run):
    M = run.problem.module_object()
    with run.timed("polar"):
        run.add("polar", polar.polar_vector(M, options=run.options))
    return EXIT_OK


def cmd_polar_ideal(run: _Run):
    M = run.problem.module_object()
    I, J = run.problem.ideals()
    with run.timed("polar"):
        pv = polar.polar_vector(M, options=run.options)
    run.add("polar", pv)
    with run.timed("polar_ideal"):
        run.add("polar_I", polar.polar_wrt_linear_ideal(I, M, run.options, r=pv.r), main=True)
        if J:
            run.add("polar_J", polar.polar_wrt_linear_ideal(J, M, run.options, r=pv.r))
    return EXIT_OK


def cmd_relative(run: _Run):
    B = run.problem.algebra()
    A = run.problem.subalgebra()
    with run.timed("polar_B"):
        pB = polar.polar_vector(B, options=run.options)
    with run.timed("relative"):
        run.add("relative", polar.relative_polar(A, B, run.options, r=pB.r), main=True)
    run.add("polar_B", pB)
    with run.timed("polar_A"):
        run.add("polar_A", polar.polar_vector(polar.image_algebra(A, B), r_override=pB.r, options=run.options))
    return EXIT_OK


def _verdict_exit(run, verdict):
    run.verdict = verdict
    for k, v in verdict.vectors().items():
        run.add(k, v)
    return EXIT_INCONCLUSIVE if verdict.outcome == criteria.INCONCLUSIVE else EXIT_OK


def cmd_check_integral(run: _Run):
    p = run.problem
    with run.timed("check_integral"):
        v = criteria.check_integral(p.subalgebra(), p.algebra(), p.assumptions["equidimensional_B"], run.options,
                                    t_cap=p.options["t_cap"], power_cap=p.options["n_power_cap"])
    return _verdict_exit(run, v)


def cmd_check_birational(run: _Run):
    p = run.problem
    with run.timed("check_birational"):
        v = criteria.check_birational(p.subalgebra(), p.algebra(), p.assumptions["equidimensional_B"], run.options)
    return _verdict_exit(run, v)


def cmd_check_reduction_ideal(run: _Run):
    p = run.problem
    I, J = p.ideals()
    if not J:
        raise InputError("check-reduction-ideal needs ideal_gens.J", field="ideal_gens.J")
    with run.timed("check_reduction_ideal"):
        v = criteria.check_reduction_ideal(I, J, p.module_object(), run.options, cap=p.options["n_power_cap"])
    return _verdict_exit(run, v)


def cmd_br(run: _Run):
    P = run.problem.pair()
    with run.timed("br_E"):
        run.add("br_E", criteria.buchsbaum_rim(P, "E", run.options), main=True)
    with run.timed("br_U"):
        run.add("br_U", criteria.buchsbaum_rim(P, "U", run.options))
    return EXIT_OK


def cmd_check_reduction_module(run: _Run):
    p = run.problem
    with run.timed("check_reduction_module"):
        v = criteria.check_reduction_module(p.pair(), run.options, cap=p.options["n_power_cap"])
    return _verdict_exit(run, v)


def cmd_sv(run: _Run):
    M = run.problem.module_object()
    seed = run.problem.options["seed"]
    seeds = [seed, seed + 1, seed + 2]
    with run.timed("sv"):
        cv = svlength.cross_validate(M, seeds, options=run.options)
    run.add("polar", cv.reference, main=True)
    run.seeds = seeds
    for s, v in cv.per_seed.items():
        run.vectors[f"sv_seed_{s}"] = v if isinstance(v, PolarVector) else str(v)
    run.extra["routes_agree"] = cv.all_agree
    return EXIT_OK if cv.all_agree else EXIT_INCONCLUSIVE


HANDLERS = {
    "polar": cmd_polar,
    "polar-ideal": cmd_polar_ideal,
    "relative": cmd_relative,
    "check-integral": cmd_check_integral,
    "check-birational": cmd_check_birational,
    "check-reduction-ideal": cmd_check_reduction_ideal,
    "br": cmd_br,
    "check-reduction-module": cmd_check_reduction_module,
    "sv": cmd_sv,
}


# ---------------------------------------------------------------------------
# selftest


def selftest(out=sys.stdout) -> int:
    """Fast fixture checks; one line per check."""
    from . import fixtures

    def vec(name, **kw):
        return polar.polar_vector(fixtures.load(name).module_object(), **kw).as_list()

    def rel(name):
        p = fixtures.load(name)
        return polar.relative_polar(p.subalgebra(), p.algebra()).as_list()

    def br(name):
        return criteria.buchsbaum_rim(fixtures.load(name).pair()).as_list()

    checks = [
        ("polar line", lambda: vec("line"), [0, 1]),
        ("polar plane", lambda: vec("plane"), [0, 1, 0]),
        ("polar field line", lambda: vec("field-line"), [1]),
        ("relative double line", lambda: rel("double-line"), [2]),
        ("br of m", lambda: br("rees-m"), [0, 1, 1]),
        ("integral double line", lambda: criteria.check_integral(
            fixtures.load("double-line").subalgebra(), fixtures.load("double-line").algebra()).outcome,
         criteria.HOLDS),
    ]
    failed = 0
    for label, fn, expected in checks:
        try:
            got = fn()
        except PolarError as exc:
            got = f"{type(exc).__name__}: {exc}"
        ok = got == expected
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {label}: {got}", file=out)
    return EXIT_OK if not failed else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarmult", description="Polar multiplicities of graded modules.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", help="problem description (JSON file, '-' for stdin)")
    parser.add_argument("--json", action="store_true", help="print the machine-readable report")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--vmax", type=int)
    parser.add_argument("--nmax", type=int)
    parser.add_argument("--margin", type=int)
    parser.add_argument("--budget", type=int, help="step budget for each completion loop")
    parser.add_argument("--assume-equidimensional", action="store_true")
    parser.add_argument("--no-timings", action="store_true", help="omit timings (byte-stable output)")
    return parser


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _human(report) -> str:
    lines = [f"command: {report['command']}"]
    if report.get("r") is not None:
        lines.append(f"r = {report['r']}")
    for name, vec in report.get("vectors", {}).items():
        lines.append(f"{name}: {tuple(vec) if isinstance(vec, list) else vec}")
    if "verdict" in report:
        v = report["verdict"]
        lines.append(f"verdict: {v['outcome']} ({v['reason']})")
    if report.get("assumptions_used"):
        lines.append("assumptions: " + "; ".join(report["assumptions_used"]))
    if "routes_agree" in report:
        lines.append(f"routes agree: {report['routes_agree']}")
    if report.get("error"):
        lines.append(f"error: {report['error']['type']}: {report['error']['message']}")
    return "\n".join(lines)


def _error_report(command, exc, problem=None):
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, InputError):
        err.update({"line": exc.line, "column": exc.column, "token": exc.token, "field": exc.field})
    if isinstance(exc, Unstable) and exc.suggestion is not None:
        err["suggestion"] = {"vmax": exc.suggestion, "nmax": exc.suggestion}
    out = {"command": command, "error": err}
    if problem is not None:
        out["input"] = problem.to_dict()
    return out


def _exit_for(exc) -> int:
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, (InputError, NotContained, RankDeficient)):
        return EXIT_INPUT
    if isinstance(exc, (Unstable, GenericityFailure, EmptySupport, InvalidDepth)):
        return EXIT_INCONCLUSIVE
    return EXIT_INCONCLUSIVE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return selftest()

    problem = None
    try:
        problem = ProblemDescription.from_json(_read_input(args.input))
        problem = problem.with_options(seed=args.seed, vmax=args.vmax, nmax=args.nmax, margin=args.margin,
                                       budget=args.budget)
        if args.assume_equidimensional:
            problem = problem.with_assumption(True)
        run = _Run(args.command, problem)
        with step_budget(problem.options["budget"]):
            code = HANDLERS[args.command](run)
        report = run.report(with_timings=not args.no_timings)
    except (PolarError, ValueError) as exc:
        code = _exit_for(exc)
        report = _error_report(args.command, exc, problem)
    except OSError as exc:
        code = EXIT_INPUT
        report = _error_report(args.command, InputError(str(exc)), None)

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
