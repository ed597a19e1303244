"""Scenario files, the built-in reference cases, runs and perturbation trials.

A scenario is plain JSON with every rational written as a string::

    {"name": "hitl-two-point",
     "space": {"weights": ["1", "1"]},
     "set": {"lower": "0", "upper": "1", "mass": "1"},
     "pipeline": {"kind": "composite", "stages": [...]},
     "initial": ["0.8", "0.2"],          # or "random"
     "metric": "L1", "max_steps": 100,
     "stop": {"kind": "exact_repeat"}, "seed": 42,
     "expected": {...}}

Optional keys: ``grid`` (scan resolution, default 100), ``samples``
(diagnostic pairs per stage, default 200, 0 disables), ``profile`` and
``geometry`` (booleans asking for those report blocks).
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .dynamics import (
    DisplacementBelow,
    ExactRepeat,
    OrbitTrace,
    displacement_profile,
    epsilon_fixed_point_search,
    iterate_orbit,
    rotation_period,
)
from .errors import ConfigurationError, FixlabError
from .geometry import chebyshev_estimate
from .l1 import (
    METRICS,
    FeasibleSetSpec,
    L1Function,
    MeasureSpace,
    l1_distance,
    metric_distance,
    validate_membership,
)
from .numbers import format_rational, to_fraction
from .operators import (
    BoxSampler,
    Composite,
    GridQuantizer,
    Operator,
    Perturbation,
    Translation,
    build_operator,
    check_idempotent,
    check_nonexpansive,
    derive_seed,
    describe,
    flatten,
    max_deviation,
    spec_from_json,
)

EXPECTED_KEYS = {
    "orbit_prefix", "preperiod", "period", "fixed_point", "fixed_point_check",
    "stabilizes_within", "constant_consensus", "point_displacements",
    "displacement_min", "displacement_max", "epsilon_search", "period_bound",
    "pigeonhole_d", "rotation_periods", "rotation_budget", "afpp",
}


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    space: MeasureSpace
    set: FeasibleSetSpec
    pipeline: Any
    initial: L1Function | str
    metric: str
    max_steps: int
    stop: Any
    seed: int
    expected: dict | None = None
    grid: int = 100
    samples: int = 200
    profile: bool = False
    geometry: bool = False

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "space": {"weights": [format_rational(w) for w in self.space.weights]},
            "set": {"lower": format_rational(self.set.lower), "upper": format_rational(self.set.upper)},
            "pipeline": self.pipeline.to_json(),
            "initial": self.initial if isinstance(self.initial, str) else self.initial.formatted(),
            "metric": self.metric,
            "max_steps": self.max_steps,
            "stop": ({"kind": "exact_repeat"} if isinstance(self.stop, ExactRepeat)
                     else {"kind": "displacement_below", "eps": format_rational(self.stop.eps)}),
            "seed": self.seed,
            "grid": self.grid,
            "samples": self.samples,
        }
        if self.set.mass is not None:
            out["set"]["mass"] = format_rational(self.set.mass)
        if self.profile:
            out["profile"] = True
        if self.geometry:
            out["geometry"] = True
        if self.expected is not None:
            out["expected"] = self.expected
        return out


# ---------------------------------------------------------------------------
# parsing


def _require(obj, key, where=None):
    if key not in obj:
        raise ConfigurationError(f"missing required key {key!r}", where)
    return obj[key]


def _rational(value, where):
    try:
        return to_fraction(value)
    except ValueError as exc:
        raise ConfigurationError(str(exc), where) from None


def _int(value, where, lo=None, hi=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigurationError(f"expected an integer, got {value!r}", where)
    if (lo is not None and value < lo) or (hi is not None and value >= hi):
        raise ConfigurationError(f"integer {value} out of range", where)
    return value


def parse_scenario(obj: dict) -> ScenarioConfig:
    """Validate a decoded scenario document."""
    if not isinstance(obj, dict):
        raise ConfigurationError("scenario must be a JSON object")
    name = _require(obj, "name")
    if not isinstance(name, str):
        raise ConfigurationError("name must be a string", "name")

    space_obj = _require(obj, "space")
    weights = _require(space_obj, "weights", "space") if isinstance(space_obj, dict) else None
    if not isinstance(weights, list):
        raise ConfigurationError("weights must be a list", "space.weights")
    labels = space_obj.get("labels")
    try:
        space = MeasureSpace.from_weights([_rational(w, f"space.weights[{i}]") for i, w in enumerate(weights)],
                                          labels)
    except FixlabError as exc:
        raise ConfigurationError(str(exc), "space") from None

    set_obj = obj.get("set", {})
    if not isinstance(set_obj, dict):
        raise ConfigurationError("set must be an object", "set")
    try:
        feasible = FeasibleSetSpec(
            _rational(set_obj.get("lower", "0"), "set.lower"),
            _rational(set_obj.get("upper", "1"), "set.upper"),
            None if set_obj.get("mass") is None else _rational(set_obj["mass"], "set.mass"),
        )
        feasible.check_space(space)
    except ConfigurationError:
        raise
    except FixlabError as exc:
        raise ConfigurationError(str(exc), "set") from None

    pipeline = spec_from_json(_require(obj, "pipeline"), "pipeline")

    metric = obj.get("metric", "L1")
    if metric not in METRICS:
        raise ConfigurationError(f"unknown metric {metric!r}", "metric")
    if metric == "circle" and space.size != 1:
        raise ConfigurationError("the circle metric needs a one-atom space", "metric")

    initial = obj.get("initial", "random")
    if initial in ("random", "seeded-random-normalized"):
        initial = "random"
    elif isinstance(initial, list):
        if len(initial) != space.size:
            raise ConfigurationError(f"initial has {len(initial)} values for {space.size} atoms", "initial")
        initial = space.function([_rational(v, f"initial[{i}]") for i, v in enumerate(initial)])
        bad = validate_membership(initial, feasible)
        if bad:
            raise ConfigurationError("; ".join(map(str, bad)), "initial")
    else:
        raise ConfigurationError('initial must be a list of rationals, "random" or "seeded-random-normalized"',
                                 "initial")

    stop_obj = obj.get("stop", {"kind": "exact_repeat"})
    kind = stop_obj.get("kind") if isinstance(stop_obj, dict) else None
    if kind == "exact_repeat":
        stop = ExactRepeat()
    elif kind == "displacement_below":
        eps = _rational(_require(stop_obj, "eps", "stop"), "stop.eps")
        if eps <= 0:
            raise ConfigurationError("eps must be positive", "stop.eps")
        stop = DisplacementBelow(eps)
    else:
        raise ConfigurationError(f"unknown stop rule {kind!r}", "stop.kind")

    expected = obj.get("expected")
    if expected is not None:
        if not isinstance(expected, dict):
            raise ConfigurationError("expected must be an object", "expected")
        unknown = set(expected) - EXPECTED_KEYS
        if unknown:
            raise ConfigurationError(f"unknown keys {sorted(unknown)}", "expected")

    for flag in ("profile", "geometry"):
        if not isinstance(obj.get(flag, False), bool):
            raise ConfigurationError("expected a boolean", flag)

    config = ScenarioConfig(
        name=name,
        space=space,
        set=feasible,
        pipeline=pipeline,
        initial=initial,
        metric=metric,
        max_steps=_int(obj.get("max_steps", 100), "max_steps", 1),
        stop=stop,
        seed=_int(_require(obj, "seed"), "seed", 0, 2**64),
        expected=expected,
        grid=_int(obj.get("grid", 100), "grid", 1),
        samples=_int(obj.get("samples", 200), "samples", 0),
        profile=obj.get("profile", False),
        geometry=obj.get("geometry", False),
    )
    # surface spec/space mismatches (translation on many atoms, bad partitions) at load time
    try:
        build_pipeline(config)
    except ConfigurationError as exc:
        msg = str(exc)[len(exc.field) + 2:] if exc.field else str(exc)
        raise ConfigurationError(msg, "pipeline" + (f".{exc.field}" if exc.field else "")) from None
    return config


def load_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario file: {exc.strerror}", str(path)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                                 str(path)) from None
    return parse_scenario(obj)


# ---------------------------------------------------------------------------
# pipelines


def _map_leaves(spec, fn):
    if isinstance(spec, Composite):
        return Composite(tuple(_map_leaves(s, fn) for s in spec.stages))
    return fn(spec)


def nominal_spec(spec):
    """The pipeline with every perturbation stage removed."""
    return Composite(tuple(s for s in flatten(spec) if not isinstance(s, Perturbation)))


def build_pipeline(config: ScenarioConfig, nominal: bool = False) -> Operator:
    spec = nominal_spec(config.pipeline) if nominal else config.pipeline
    return build_operator(spec, config.space, config.set)


def initial_point(config: ScenarioConfig) -> L1Function:
    if isinstance(config.initial, L1Function):
        return config.initial
    return BoxSampler(config.space, config.set, seed=config.seed).point(0)


SWEEP_PARAMS = ("d", "step", "delta", "eps")


def with_parameter(config: ScenarioConfig, param: str, value) -> ScenarioConfig:
    """Copy of ``config`` with every stage carrying ``param`` set to ``value``."""
    value = to_fraction(value)
    targets = {"d": Translation, "step": GridQuantizer, "delta": Perturbation}
    if param == "eps":
        return config
    if param not in targets:
        raise ConfigurationError(f"unknown parameter {param!r}; expected one of {', '.join(SWEEP_PARAMS)}",
                                 "param")
    cls = targets[param]
    if not any(isinstance(s, cls) for s in flatten(config.pipeline)):
        raise ConfigurationError(f"pipeline has no {cls.kind} stage to vary", "param")

    def swap(s):
        if isinstance(s, cls):
            return dataclasses.replace(s, **{param: value})
        return s

    new = config.replace(pipeline=_map_leaves(config.pipeline, swap))
    build_pipeline(new)
    return new


# ---------------------------------------------------------------------------
# perturbed fixed-point trials


@dataclass
class AfppReport:
    delta: Fraction
    trials: int
    fixed_point: L1Function | None
    max_distance: Fraction | None = None
    worst_seed: int | None = None
    violations: int = 0
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.fixed_point is not None and self.violations == 0

    def to_dict(self) -> dict:
        return {
            "delta": format_rational(self.delta),
            "trials": self.trials,
            "fixed_point": None if self.fixed_point is None else self.fixed_point.formatted(),
            "max_distance": None if self.max_distance is None else format_rational(self.max_distance),
            "worst_seed": self.worst_seed,
            "violations": self.violations,
            "passed": self.passed,
            "message": self.message,
        }


def afpp_trial(config: ScenarioConfig, trials: int, delta=None) -> AfppReport:
    """Evaluate ``||Phi_hat(f*) - f*||_1`` for many perturbation seeds.

    ``f*`` is found by iterating the unperturbed pipeline from the
    scenario's initial point; each trial reseeds every perturbation stage
    with a seed derived from ``(config.seed, trial)``.
    """
    stages = [s for s in flatten(config.pipeline) if isinstance(s, Perturbation)]
    if not stages:
        raise ConfigurationError("pipeline has no perturbation stage", "pipeline")
    delta = stages[0].delta if delta is None else to_fraction(delta)
    if delta < 0:
        raise ConfigurationError("delta must be nonnegative", "delta")
    report = AfppReport(delta, trials, None)

    phi = build_pipeline(config, nominal=True)
    trace = iterate_orbit(phi, initial_point(config), config.max_steps)
    if trace.period != 1 or phi.apply(trace.final) != trace.final:
        report.message = "no fixed point of the unperturbed pipeline within the step budget"
        return report
    fstar = trace.final
    report.fixed_point = fstar

    for t in range(trials):
        seed = derive_seed(config.seed, "afpp", t)

        def reseed(s, seed=seed):
            if isinstance(s, Perturbation):
                return Perturbation(delta, seed)
            return s

        phi_hat = build_operator(_map_leaves(config.pipeline, reseed), config.space, config.set)
        dist = l1_distance(phi_hat.apply(fstar), fstar)
        if report.max_distance is None or dist > report.max_distance:
            report.max_distance = dist
            report.worst_seed = seed
        if dist > delta:
            report.violations += 1
    return report


# ---------------------------------------------------------------------------
# runs


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def to_dict(self):
        return {"check": self.name, "expected": self.expected, "actual": self.actual,
                "pass": self.passed}


@dataclass
class RunReport:
    scenario: str
    pipeline: list[str]
    trace: OrbitTrace
    diagnostics: dict = field(default_factory=dict)
    displacement: dict | None = None
    geometry: dict | None = None
    checks: list[Check] = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        """JSON-ready form; wall time is left out so reruns are byte-identical."""
        t = self.trace
        out = {
            "scenario": self.scenario,
            "pipeline": self.pipeline,
            "orbit": {
                "initial": t.points[0].formatted(),
                "steps": t.steps,
                "preperiod": t.preperiod if t.preperiod is not None else "none found",
                "period": t.period if t.period is not None else "none found",
                "final_point": t.final.formatted(),
                "stopped_by": t.stopped_by,
                "budget": t.budget,
                "metric": t.metric,
            },
            "diagnostics": self.diagnostics,
        }
        if self.displacement is not None:
            out["displacement"] = self.displacement
        if self.geometry is not None:
            out["geometry"] = self.geometry
        out.update(self.extras)
        out["expected"] = [c.to_dict() for c in self.checks]
        out["passed"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _vec(values, space):
    if not isinstance(values, list):
        values = [values]
    return space.function(values)


def _fmt_points(points):
    return [p.formatted() for p in points]


def _grid_step(config):
    steps = [s.step for s in flatten(config.pipeline) if isinstance(s, GridQuantizer)]
    return steps[-1] if steps else None


def _stage_diagnostics(config: ScenarioConfig) -> dict:
    out = {}
    if config.samples == 0:
        return out
    leaves = [s for s in flatten(config.pipeline) if not isinstance(s, Perturbation)]
    sampler = BoxSampler(config.space, FeasibleSetSpec(config.set.lower, config.set.upper),
                         seed=derive_seed(config.seed, "diagnostics"))
    n = config.samples
    ops = [(f"stage {i}: {describe(s)}", build_operator(s, config.space, config.set)) for i, s in enumerate(leaves)]
    ops.append(("pipeline", build_pipeline(config, nominal=True)))
    for label, op in ops:
        out[label] = {
            "nonexpansive": check_nonexpansive(op, sampler, n, metric=config.metric).to_dict()["verdict"],
            "idempotent": check_idempotent(op, sampler, n).to_dict()["verdict"],
            "max_deviation": format_rational(max_deviation(op, sampler, n, metric=config.metric).max_deviation),
        }
    return out


def _scan_set(config):
    if config.space.size == 1:
        return config.grid
    sampler = BoxSampler(config.space, config.set, seed=derive_seed(config.seed, "scan"))
    return sampler.points(max(config.samples, 1))


def run_scenario(config: ScenarioConfig) -> RunReport:
    """Iterate the (unperturbed) pipeline, run diagnostics, grade the expected block."""
    started = time.perf_counter()
    phi = build_pipeline(config, nominal=True)
    f0 = initial_point(config)
    trace = iterate_orbit(phi, f0, config.max_steps, config.stop, config.metric)
    report = RunReport(config.name, phi.stages, trace)
    report.diagnostics = _stage_diagnostics(config)
    exp = config.expected or {}
    space = config.space
    checks = report.checks

    wants_profile = config.profile or "displacement_min" in exp or "displacement_max" in exp
    if wants_profile:
        prof = displacement_profile(phi, config.metric, _scan_set(config))
        report.displacement = prof.to_dict()
    if config.geometry:
        distinct = list(dict.fromkeys(trace.points))
        report.geometry = chebyshev_estimate(distinct, space).to_dict()

    if "orbit_prefix" in exp:
        want = [_vec(v, space) for v in exp["orbit_prefix"]]
        got = trace.points[: len(want)]
        checks.append(Check("orbit_prefix", _fmt_points(want), _fmt_points(got), got == want))
    for key in ("preperiod", "period"):
        if key in exp:
            got = getattr(trace, key)
            checks.append(Check(key, exp[key], got, got == exp[key]))
    if "fixed_point" in exp:
        want = _vec(exp["fixed_point"], space)
        ok = trace.period == 1 and trace.final == want
        checks.append(Check("fixed_point", want.formatted(), trace.final.formatted(), ok))
        if exp.get("fixed_point_check"):
            image = phi.apply(want)
            checks.append(Check("fixed_point_check", want.formatted(), image.formatted(), image == want))
    if "stabilizes_within" in exp:
        k = exp["stabilizes_within"]
        ok = trace.period == 1 and trace.preperiod is not None and trace.preperiod <= k
        checks.append(Check("stabilizes_within", k, trace.preperiod, ok))
    if exp.get("constant_consensus"):
        final = trace.final
        step = _grid_step(config)
        on_grid = step is None or all((v / step).denominator == 1 for v in final.values)
        ok = trace.period == 1 and len(set(final.values)) == 1 and on_grid
        checks.append(Check("constant_consensus", True, final.formatted(), ok))
    if "point_displacements" in exp:
        for x, want in exp["point_displacements"].items():
            xf = _vec(x, space)
            got = metric_distance(config.metric, phi.apply(xf), xf)
            checks.append(Check(f"displacement at {x}", want, format_rational(got), got == to_fraction(want)))
    for key, attr in (("displacement_min", "min"), ("displacement_max", "max")):
        if key in exp:
            got = report.displacement[attr]
            checks.append(Check(key, exp[key], got, to_fraction(got) == to_fraction(exp[key])))
    for item in exp.get("epsilon_search", []):
        res = epsilon_fixed_point_search(phi, config.metric, item["eps"], _scan_set(config))
        actual = res.witness.formatted() if res.found else "none"
        checks.append(Check(f"epsilon_search eps={item['eps']}", "found" if item["found"] else "none",
                            actual, res.found == item["found"]))
    if "period_bound" in exp:
        bound = exp["period_bound"]
        total = None if trace.period is None else trace.preperiod + trace.period
        checks.append(Check("period_bound", bound, total, total is not None and total <= bound))
    if "pigeonhole_d" in exp:
        bound = exp.get("period_bound", 12)
        for d in exp["pigeonhole_d"]:
            row = with_parameter(config, "d", d)
            t = iterate_orbit(build_pipeline(row, nominal=True), initial_point(row), row.max_steps)
            total = None if t.period is None else t.preperiod + t.period
            checks.append(Check(f"pigeonhole d={d}", bound, total, total is not None and total <= bound))
    if "rotation_periods" in exp:
        budget = exp.get("rotation_budget", 10**4)
        for p, q, want in exp["rotation_periods"]:
            got = rotation_period(p, q, budget)
            checks.append(Check(f"rotation_period {p}/{q}", want, got, got == want))
    if "afpp" in exp:
        spec = exp["afpp"]
        results = []
        for delta in spec.get("deltas", [None]):
            res = afpp_trial(config, spec.get("trials", 100), delta)
            results.append(res.to_dict())
            checks.append(Check(f"afpp delta={format_rational(res.delta)}", f"<= {format_rational(res.delta)}",
                                res.to_dict()["max_distance"], res.passed))
        report.extras["afpp"] = results

    report.wall_time = time.perf_counter() - started
    return report


# ---------------------------------------------------------------------------
# sweeps

SWEEP_COLUMNS = ["param", "value", "seed", "preperiod", "period", "min_displacement",
                 "max_displacement", "eps_found", "afpp_max"]


def sweep(base: ScenarioConfig, param: str, values, afpp_trials: int = 100) -> list[dict]:
    """One row per value; row ``i`` runs with seed ``derive_seed(base.seed, "sweep", i)``."""
    if param not in SWEEP_PARAMS:
        raise ConfigurationError(f"unknown parameter {param!r}; expected one of {', '.join(SWEEP_PARAMS)}",
                                 "param")
    values = [to_fraction(v) for v in values]
    if param != "eps":
        # reject inapplicable parameters before doing any work
        probe = base.replace()
        if values:
            with_parameter(probe, param, values[0])
        else:
            with_parameter(probe, param, {"d": "1/2", "step": "1/10", "delta": "0"}[param])
    rows = []
    for i, value in enumerate(values):
        seed = derive_seed(base.seed, "sweep", i)
        config = with_parameter(base.replace(seed=seed), param, value)
        phi = build_pipeline(config, nominal=True)
        trace = iterate_orbit(phi, initial_point(config), config.max_steps, config.stop, config.metric)
        scan = _scan_set(config)
        prof = displacement_profile(phi, config.metric, scan)
        row = {
            "param": param,
            "value": format_rational(value),
            "seed": str(seed),
            "preperiod": "none found" if trace.preperiod is None else str(trace.preperiod),
            "period": "none found" if trace.period is None else str(trace.period),
            "min_displacement": format_rational(prof.min_value),
            "max_displacement": format_rational(prof.max_value),
            "eps_found": "",
            "afpp_max": "",
        }
        if param == "eps":
            res = epsilon_fixed_point_search(phi, config.metric, value, scan)
            row["eps_found"] = "found" if res.found else "none"
        if param == "delta":
            res = afpp_trial(config, afpp_trials)
            row["afpp_max"] = "" if res.max_distance is None else format_rational(res.max_distance)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# built-in cases

_QUANT_PIPELINE = {"kind": "composite", "stages": [
    {"kind": "translation", "d": "0.6"},
    {"kind": "grid_quantizer", "step": "0.1"},
]}

_HITL_PIPELINE = {"kind": "composite", "stages": [
    {"kind": "averaging"},
    {"kind": "clip", "lower": "0", "upper": "1"},
    {"kind": "grid_quantizer", "step": "0.1"},
]}

_CE_PIPELINE = {"kind": "composite", "stages": [
    {"kind": "averaging"},
    {"kind": "clip", "lower": "0", "upper": "1"},
    {"kind": "cond_exp", "blocks": [[0, 1], [2, 3]]},
]}


def _scalar(name, pipeline, metric, expected, **extra):
    doc = {
        "name": name,
        "space": {"weights": ["1"]},
        "set": {"lower": "0", "upper": "1"},
        "pipeline": pipeline,
        "initial": ["0.0"],
        "metric": metric,
        "max_steps": 100,
        "stop": {"kind": "exact_repeat"},
        "seed": 42,
        "samples": 50,
        "expected": expected,
    }
    doc.update(extra)
    return doc


def _paper_documents() -> dict[str, dict]:
    tenths = [f"0.{k}" for k in range(1, 10)]
    return {
        "table1-orbit": _scalar("table1-orbit", _QUANT_PIPELINE, "line", {
            "orbit_prefix": ["0.0", "0.6", "0.2", "0.8", "0.4", "0.0"],
            "preperiod": 0,
            "period": 5,
        }),
        "translation-thresholds": _scalar("translation-thresholds", _QUANT_PIPELINE, "line", {
            "point_displacements": {"0.25": "0.55", "0.35": "0.65"},
        }),
        "translation-circle-bounds": _scalar("translation-circle-bounds", _QUANT_PIPELINE, "circle", {
            "displacement_min": "0.35",
            "displacement_max": "0.45",
            "epsilon_search": [{"eps": "0.3", "found": False}, {"eps": "0.4", "found": True}],
        }),
        "hitl-two-point": {
            "name": "hitl-two-point",
            "space": {"weights": ["1", "1"]},
            "set": {"lower": "0", "upper": "1", "mass": "1"},
            "pipeline": _HITL_PIPELINE,
            "initial": ["0.8", "0.2"],
            "metric": "L1",
            "max_steps": 100,
            "stop": {"kind": "exact_repeat"},
            "seed": 42,
            "samples": 50,
            "expected": {
                "orbit_prefix": [["0.8", "0.2"], ["0.5", "0.5"], ["0.5", "0.5"]],
                "fixed_point": ["0.5", "0.5"],
                "preperiod": 1,
                "period": 1,
            },
        },
        "hitl-four-point": {
            "name": "hitl-four-point",
            "space": {"weights": ["1", "1", "1", "1"]},
            "set": {"lower": "0", "upper": "1", "mass": "2"},
            "pipeline": _HITL_PIPELINE,
            "initial": "random",
            "metric": "L1",
            "max_steps": 100,
            "stop": {"kind": "exact_repeat"},
            "seed": 0,
            "samples": 50,
            "expected": {"stabilizes_within": 5, "constant_consensus": True},
        },
        "ce-four-point": {
            "name": "ce-four-point",
            "space": {"weights": ["1", "1", "1", "1"]},
            "set": {"lower": "0", "upper": "1", "mass": "2"},
            "pipeline": _CE_PIPELINE,
            "initial": "random",
            "metric": "L1",
            "max_steps": 100,
            "stop": {"kind": "exact_repeat"},
            "seed": 0,
            "samples": 50,
            "expected": {"fixed_point": ["0.5", "0.5", "0.5", "0.5"], "fixed_point_check": True, "period": 1},
        },
        "afpp-perturbation": {
            "name": "afpp-perturbation",
            "space": {"weights": ["1", "1"]},
            "set": {"lower": "0", "upper": "1", "mass": "1"},
            "pipeline": {"kind": "composite", "stages": _HITL_PIPELINE["stages"] + [
                {"kind": "perturbation", "delta": "0.05", "seed": 42}]},
            "initial": ["0.8", "0.2"],
            "metric": "L1",
            "max_steps": 100,
            "stop": {"kind": "exact_repeat"},
            "seed": 42,
            "samples": 50,
            "expected": {"fixed_point": ["0.5", "0.5"], "afpp": {"deltas": ["0.05", "0.1"], "trials": 1000}},
        },
        "rational-rotation": _scalar(
            "rational-rotation", {"kind": "translation", "d": "3/10"}, "circle",
            {
                "preperiod": 0,
                "period": 10,
                "rotation_periods": [[3, 10, 10], [1, 2, 2], [3, 1000, 1000]],
                "rotation_budget": 10000,
            },
        ),
        "pigeonhole-bound": _scalar("pigeonhole-bound", _QUANT_PIPELINE, "line", {
            "period_bound": 12,
            "pigeonhole_d": tenths,
        }),
    }


PAPER_CASES = tuple(_paper_documents())


def paper_case_document(name: str) -> dict:
    docs = _paper_documents()
    if name not in docs:
        raise ConfigurationError(f"unknown case {name!r}; valid names: {', '.join(PAPER_CASES)}", "case")
    return docs[name]


def paper_case(name: str) -> ScenarioConfig:
    """Built-in scenario whose expected block encodes the published numbers."""
    return parse_scenario(paper_case_document(name))
