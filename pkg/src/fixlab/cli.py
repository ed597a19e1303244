"""Command-line entry point.

Exit codes: 0 success, 1 a verification or expected-block failure,
2 malformed input (bad arguments, unreadable or invalid files).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import kernels
from .dynamics import OrbitTrace
from .errors import ConfigurationError, FixlabError
from .l1 import FeasibleSetSpec
from .numbers import format_rational, to_fraction
from .operators import (
    BoxSampler,
    GridQuantizer,
    GridSampler,
    Perturbation,
    build_operator,
    check_idempotent,
    check_nonexpansive,
    compose,
    describe,
    flatten,
    max_deviation,
    perturbation_estimate,
)
from .scenarios import (
    PAPER_CASES,
    SWEEP_COLUMNS,
    build_pipeline,
    load_scenario,
    paper_case,
    run_scenario,
    sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def write_trace_csv(trace: OrbitTrace, path) -> None:
    if not trace.points:
        raise ConfigurationError("empty trace", "trace")
    try:
        Path(path).write_text(trace.to_csv())
    except OSError as exc:
        raise ConfigurationError(f"cannot write trace: {exc.strerror}", str(path)) from None


def _write_text(path, text, what):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ConfigurationError(f"cannot write {what}: {exc.strerror}", str(path)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_run(args) -> int:
    config = load_scenario(args.scenario)
    report = run_scenario(config)
    t = report.trace
    print(f"scenario   {config.name}")
    print(f"pipeline   {' -> '.join(report.pipeline) or 'identity'}")
    print(f"orbit      {t.steps} steps, preperiod {_opt(t.preperiod)}, period {_opt(t.period)}")
    print(f"final      {t.final}")
    for check in report.checks:
        print(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}: expected {check.expected}, got {check.actual}")
    print(f"wall time  {report.wall_time:.3f}s")
    if args.trace:
        write_trace_csv(t, args.trace)
    if args.report:
        _write_text(args.report, report.to_json(), "report")
    return EXIT_OK if report.passed else EXIT_FAIL


def _opt(v):
    return "none found" if v is None else v


def _case_summary(report) -> str:
    t = report.trace
    bits = [f"preperiod {_opt(t.preperiod)}", f"period {_opt(t.period)}"]
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        bits.append("failed: " + ", ".join(failed))
    else:
        bits.append(f"{len(report.checks)} checks")
    return "; ".join(bits)


def cmd_verify_paper(args) -> int:
    names = [args.case] if args.case else list(PAPER_CASES)
    if args.case and args.case not in PAPER_CASES:
        raise ConfigurationError(f"unknown case {args.case!r}; valid names: {', '.join(PAPER_CASES)}", "--case")
    width = max(len(n) for n in names)
    ok = True
    print(f"{'case':<{width}}  verdict  summary")
    for name in names:
        report = run_scenario(paper_case(name))
        ok &= report.passed
        print(f"{name:<{width}}  {'PASS' if report.passed else 'FAIL':<7}  {_case_summary(report)}")
        if args.verbose:
            for c in report.checks:
                print(f"    [{'PASS' if c.passed else 'FAIL'}] {c.name}: expected {c.expected}, got {c.actual}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    config = load_scenario(args.scenario)
    raw = [v.strip() for v in args.values.split(",")] if args.values.strip() else []
    try:
        values = [to_fraction(v) for v in raw]
    except FixlabError as exc:
        raise ConfigurationError(str(exc), "--values") from None
    rows = sweep(config, args.param, values)
    lines = [SWEEP_COLUMNS] + [[row[c] for c in SWEEP_COLUMNS] for row in rows]
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerows(lines)
        except OSError as exc:
            raise ConfigurationError(f"cannot write sweep: {exc.strerror}", args.out) from None
    print(f"sweep {args.param} over {len(rows)} values")
    for row in rows:
        print("  " + ", ".join(f"{c}={row[c]}" for c in SWEEP_COLUMNS[1:] if row[c] != ""))
    return EXIT_OK


def _stage_bound(spec):
    # per-coordinate bound for grids, L1 bound for perturbations
    if isinstance(spec, GridQuantizer):
        return "coordinate", spec.step / 2
    if isinstance(spec, Perturbation):
        return "norm", spec.delta
    return None, None


def cmd_check_op(args) -> int:
    config = load_scenario(args.scenario)
    space = config.space
    if args.samples < 1:
        raise ConfigurationError("--samples must be at least 1", "--samples")
    sampler = BoxSampler(space, FeasibleSetSpec(config.set.lower, config.set.upper), seed=args.seed)
    samplers = [("sampled", sampler)]
    if args.grid:
        samplers.append((f"grid 1/{args.grid}", GridSampler(space, args.grid, config.set.lower, config.set.upper)))
    metric = config.metric
    leaves = flatten(config.pipeline)
    stage_ops = [(f"stage {i}: {describe(s)}", s, build_operator(s, space, config.set)) for i, s in enumerate(leaves)]
    pipeline = build_pipeline(config)
    results = []

    if args.property == "perturbation":
        nominal = [op for _, s, op in stage_ops if not isinstance(s, Perturbation)]
        if len(nominal) < 2:
            raise ConfigurationError("perturbation check needs a map followed by a coarsening stage", "pipeline")
        t, q = compose(nominal[:-1], space=space), nominal[-1]
        measured = max(max_deviation(q, smp, args.samples, metric=metric).max_deviation for _, smp in samplers)
        if isinstance(q.spec, GridQuantizer):
            # sampled points can miss the rounding ties; use the exact supremum
            delta = q.spec.step / 2 * space.total_mass
        else:
            delta = measured
        print(f"deviation of {q.name}: delta {format_rational(delta)}, "
              f"largest sampled {format_rational(measured)} ({metric} metric)")
        for label, smp in samplers:
            rep = perturbation_estimate(t, q, smp, args.samples, delta, metric=metric)
            results.append((f"{rep.operator} [{label}]", rep, True))
    else:
        targets = [(label, s, op) for label, s, op in stage_ops] + [("pipeline", None, pipeline)]
        for label, s, op in targets:
            for slabel, smp in samplers:
                if args.property == "nonexpansive":
                    rep = check_nonexpansive(op, smp, args.samples, metric=metric)
                elif args.property == "idempotent":
                    rep = check_idempotent(op, smp, args.samples)
                else:
                    kind, bound = _stage_bound(s)
                    rep = max_deviation(op, smp, args.samples, metric=metric)
                    if kind == "coordinate":
                        rep.bound = bound
                        rep.verdict = rep.max_coordinate_deviation <= bound
                    elif kind == "norm":
                        rep.bound = bound
                        rep.verdict = rep.max_deviation <= bound
                results.append((f"{label} [{slabel}]", rep, label == "pipeline" or args.property == "deviation"))

    for label, rep, _ in results:
        d = rep.to_dict()
        detail = {
            "nonexpansive": f"worst ratio {d['worst_ratio']}, skipped {d['skipped']}",
            "idempotent": f"{len(rep.witnesses)} counterexamples shown",
            "deviation": f"max {d['max_deviation']}, per-coordinate {d['max_coordinate_deviation']}"
                         + (f", bound {d['bound']}" if d["bound"] else ""),
            "perturbation": f"largest excess {d['max_deviation']} vs bound {d['bound']}",
        }[rep.property]
        print(f"[{d['verdict'].upper()}] {label}: {rep.samples_used} samples, {detail}")
    if args.report:
        _write_text(args.report, json.dumps([r.to_dict() for _, r, _ in results], indent=2) + "\n", "report")
    gating = [rep for _, rep, gate in results if gate]
    return EXIT_OK if all(r.verdict for r in gating) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fixlab", description="Exact nonexpansive-operator laboratory")
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run a scenario file")
    p.add_argument("scenario")
    p.add_argument("--trace", help="write the orbit as CSV")
    p.add_argument("--report", help="write the run report as JSON")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify-paper", help="run the built-in reference cases")
    p.add_argument("--case", help=f"one of: {', '.join(PAPER_CASES)}")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("sweep", help="vary one parameter of a scenario")
    p.add_argument("scenario")
    p.add_argument("--param", required=True, choices=["d", "step", "delta", "eps"])
    p.add_argument("--values", required=True, help="comma-separated rationals")
    p.add_argument("--out", help="write the sweep as CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check-op", help="check operator properties on seeded samples")
    p.add_argument("scenario")
    p.add_argument("--property", required=True, choices=["nonexpansive", "idempotent", "deviation", "perturbation"])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, help="also scan every multiple of 1/GRID")
    p.add_argument("--report", help="write the diagnostic reports as JSON")
    p.set_defaults(func=cmd_check_op)
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FixlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())
