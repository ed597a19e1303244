"""Operator specs, executable operators, samplers and property diagnostics.

Specs are small frozen dataclasses that round-trip through the scenario
JSON format.  :func:`build_operator` binds a spec to a measure space and
returns an :class:`Operator`; composites apply their stages left to right.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, ClassVar, Iterable, Sequence, Union

from .errors import ConfigurationError, StructuralError
from .l1 import FeasibleSetSpec, L1Function, MeasureSpace, l1_norm, metric_distance
from .numbers import format_rational, to_fraction

# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Translation:
    """``x -> x + d (mod 1)`` on a one-atom space."""

    d: Fraction
    kind: ClassVar[str] = "translation"

    def to_json(self):
        return {"kind": self.kind, "d": format_rational(self.d)}


@dataclass(frozen=True)
class Averaging:
    """Replace every coordinate by the mass-weighted mean."""

    kind: ClassVar[str] = "averaging"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class Clip:
    lower: Fraction
    upper: Fraction
    kind: ClassVar[str] = "clip"

    def to_json(self):
        return {"kind": self.kind, "lower": format_rational(self.lower), "upper": format_rational(self.upper)}


@dataclass(frozen=True)
class CondExp:
    """Conditional expectation onto the sigma algebra of a partition."""

    blocks: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "cond_exp"

    def to_json(self):
        return {"kind": self.kind, "blocks": [list(b) for b in self.blocks]}


@dataclass(frozen=True)
class GridQuantizer:
    step: Fraction
    kind: ClassVar[str] = "grid_quantizer"

    def to_json(self):
        return {"kind": self.kind, "step": format_rational(self.step)}


@dataclass(frozen=True)
class Perturbation:
    """``f -> f + R(f)`` with ``||R(f)||_1 <= delta``, seeded."""

    delta: Fraction
    seed: int
    kind: ClassVar[str] = "perturbation"

    def to_json(self):
        return {"kind": self.kind, "delta": format_rational(self.delta), "seed": self.seed}


@dataclass(frozen=True)
class Composite:
    stages: tuple = ()
    kind: ClassVar[str] = "composite"

    def to_json(self):
        return {"kind": self.kind, "stages": [s.to_json() for s in self.stages]}


OperatorSpec = Union[Translation, Averaging, Clip, CondExp, GridQuantizer, Perturbation, Composite]

IDENTITY = Composite(())


def _rat(obj, key, where):
    if key not in obj:
        raise ConfigurationError(f"missing required key {key!r}", where)
    try:
        return to_fraction(obj[key])
    except ValueError as exc:
        raise ConfigurationError(str(exc), f"{where}.{key}") from None


def spec_from_json(obj, where: str = "pipeline") -> OperatorSpec:
    """Parse the JSON form of an operator spec (rationals given as strings)."""
    if not isinstance(obj, dict):
        raise ConfigurationError("operator spec must be an object", where)
    kind = obj.get("kind")
    if kind == "translation":
        return Translation(_rat(obj, "d", where))
    if kind == "averaging":
        return Averaging()
    if kind == "clip":
        return Clip(_rat(obj, "lower", where), _rat(obj, "upper", where))
    if kind == "cond_exp":
        blocks = obj.get("blocks")
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            raise ConfigurationError("blocks must be a list of index lists", f"{where}.blocks")
        for b in blocks:
            for i in b:
                if not isinstance(i, int) or isinstance(i, bool):
                    raise ConfigurationError(f"block index {i!r} is not an integer", f"{where}.blocks")
        return CondExp(tuple(tuple(b) for b in blocks))
    if kind == "grid_quantizer":
        return GridQuantizer(_rat(obj, "step", where))
    if kind == "perturbation":
        seed = obj.get("seed")
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer", f"{where}.seed")
        return Perturbation(_rat(obj, "delta", where), seed)
    if kind == "composite":
        stages = obj.get("stages")
        if not isinstance(stages, list):
            raise ConfigurationError("stages must be a list", f"{where}.stages")
        return Composite(tuple(spec_from_json(s, f"{where}.stages[{i}]") for i, s in enumerate(stages)))
    raise ConfigurationError(f"unknown operator kind {kind!r}", f"{where}.kind")


def flatten(spec: OperatorSpec) -> list:
    """Leaf stages of a spec in application order."""
    if isinstance(spec, Composite):
        return [leaf for s in spec.stages for leaf in flatten(s)]
    return [spec]


def describe(spec: OperatorSpec) -> str:
    if isinstance(spec, Translation):
        return f"translation(d={format_rational(spec.d)})"
    if isinstance(spec, Averaging):
        return "averaging"
    if isinstance(spec, Clip):
        return f"clip[{format_rational(spec.lower)},{format_rational(spec.upper)}]"
    if isinstance(spec, CondExp):
        return "cond_exp(" + "|".join(",".join(map(str, b)) for b in spec.blocks) + ")"
    if isinstance(spec, GridQuantizer):
        return f"grid_quantizer(step={format_rational(spec.step)})"
    if isinstance(spec, Perturbation):
        return f"perturbation(delta={format_rational(spec.delta)},seed={spec.seed})"
    if not spec.stages:
        return "identity"
    return " -> ".join(describe(s) for s in spec.stages)


# ---------------------------------------------------------------------------
# executable operators

Values = tuple  # tuple[Fraction, ...]


def round_half_even(q: Fraction) -> int:
    """Nearest integer, ties to even."""
    return round(q)


def derive_seed(seed: int, *keys) -> int:
    """Deterministic 64-bit seed from a base seed and any printable keys."""
    text = "|".join([str(seed), *map(str, keys)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


class Operator:
    """A spec bound to a measure space.

    ``bounds`` is the feasible box used by perturbation stages to keep
    their output inside ``[lower, upper]``.
    """

    def __init__(self, spec, space: MeasureSpace, fn: Callable[[Values], Values], bounds=None):
        self.spec = spec
        self.space = space
        self.bounds = bounds
        self._fn = fn

    def apply(self, f: L1Function) -> L1Function:
        if not isinstance(f, L1Function) or f.space != self.space:
            raise StructuralError(f"input is not a function on this operator's space ({self.name})")
        return L1Function(self.space, self._fn(f.values))

    __call__ = apply

    @property
    def name(self) -> str:
        return describe(self.spec)

    @property
    def stages(self) -> list[str]:
        return [describe(s) for s in flatten(self.spec)]

    def __repr__(self):
        return f"Operator({self.name})"


def _check_partition(blocks, n):
    seen = []
    for b in blocks:
        if not b:
            raise ConfigurationError("empty block in partition", "blocks")
        seen.extend(b)
    if sorted(seen) != list(range(n)):
        raise ConfigurationError(
            f"blocks {[list(b) for b in blocks]} do not partition atom indices 0..{n - 1}", "blocks"
        )


def _perturbation_direction(values: Values, spec: Perturbation, weights) -> list[Fraction]:
    rng = random.Random(derive_seed(spec.seed, *(f"{v.numerator}/{v.denominator}" for v in values)))
    v = [rng.randint(-1000, 1000) for _ in values]
    if not any(v):
        v[0] = 1
    norm = sum(w * abs(x) for w, x in zip(weights, v))
    return [spec.delta * x / norm for x in v]


def perturbation_vector(spec: Perturbation, f: L1Function, bounds: FeasibleSetSpec | None = None) -> L1Function:
    """The additive term ``R(f)``: norm exactly ``delta`` before clipping, never more after.

    With ``bounds`` each coordinate is shortened (never lengthened) so that
    ``f + R(f)`` stays inside the box wherever ``f`` already is.
    """
    r = _perturbation_direction(f.values, spec, f.space.weights)
    if bounds is not None:
        lo, hi = bounds.lower, bounds.upper
        for i, (x, ri) in enumerate(zip(f.values, r)):
            y = x + ri
            if lo <= y <= hi:
                continue
            if lo <= x <= hi:
                r[i] = (hi if y > hi else lo) - x
            else:
                r[i] = Fraction(0)
    return L1Function(f.space, tuple(r))


def build_operator(spec: OperatorSpec, space: MeasureSpace, bounds: FeasibleSetSpec | None = None) -> Operator:
    """Validate ``spec`` against ``space`` and return its executable form."""
    weights = space.weights
    n = space.size

    if isinstance(spec, Translation):
        if n != 1:
            raise ConfigurationError(f"translation needs a one-atom space, got {n} atoms", "translation")
        d = spec.d
        if not 0 < d < 1:
            raise ConfigurationError(f"translation distance {d} outside (0, 1)", "translation.d")
        return Operator(spec, space, lambda v: ((v[0] + d) % 1,), bounds)

    if isinstance(spec, Averaging):
        total = space.total_mass

        def average(v):
            mean = sum((w * x for w, x in zip(weights, v)), Fraction(0)) / total
            return (mean,) * n

        return Operator(spec, space, average, bounds)

    if isinstance(spec, Clip):
        lo, hi = spec.lower, spec.upper
        if lo > hi:
            raise ConfigurationError(f"clip lower {lo} exceeds upper {hi}", "clip")
        return Operator(spec, space, lambda v: tuple(min(max(x, lo), hi) for x in v), bounds)

    if isinstance(spec, CondExp):
        _check_partition(spec.blocks, n)
        blocks = [(b, sum((weights[i] for i in b), Fraction(0))) for b in spec.blocks]

        def cond_exp(v):
            out = list(v)
            for b, mass in blocks:
                mean = sum((weights[i] * v[i] for i in b), Fraction(0)) / mass
                for i in b:
                    out[i] = mean
            return tuple(out)

        return Operator(spec, space, cond_exp, bounds)

    if isinstance(spec, GridQuantizer):
        step = spec.step
        if step <= 0:
            raise ConfigurationError(f"quantizer step {step} must be positive", "grid_quantizer.step")
        # round_half_even is looked up per call so tests can swap the tie rule
        return Operator(spec, space, lambda v: tuple(round_half_even(x / step) * step for x in v), bounds)

    if isinstance(spec, Perturbation):
        if spec.delta < 0:
            raise ConfigurationError(f"delta {spec.delta} must be nonnegative", "perturbation.delta")
        if not 0 <= spec.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer", "perturbation.seed")

        def perturb(v):
            if spec.delta == 0:
                return v
            r = perturbation_vector(spec, L1Function(space, v), bounds)
            return tuple(a + b for a, b in zip(v, r.values))

        return Operator(spec, space, perturb, bounds)

    if isinstance(spec, Composite):
        return compose([build_operator(s, space, bounds) for s in spec.stages], space=space)

    raise ConfigurationError(f"not an operator spec: {spec!r}")


def compose(ops: Sequence[Operator], space: MeasureSpace | None = None) -> Operator:
    """Chain operators; ``ops[0]`` is applied first."""
    ops = list(ops)
    if not ops and space is None:
        raise StructuralError("cannot infer the space of an empty composition")
    space = space if space is not None else ops[0].space
    for op in ops:
        if op.space != space:
            raise StructuralError(f"operator {op.name} lives on a different space")
    fns = [op._fn for op in ops]

    def chained(v):
        for fn in fns:
            v = fn(v)
        return v

    bounds = next((op.bounds for op in ops if op.bounds is not None), None)
    return Operator(Composite(tuple(op.spec for op in ops)), space, chained, bounds)


def identity(space: MeasureSpace) -> Operator:
    return build_operator(IDENTITY, space)


# ---------------------------------------------------------------------------
# samplers


class BoxSampler:
    """Seeded uniform draws from the feasible box on a grid of ``1/resolution``.

    A mass constraint is met by rescaling to the target norm and, if that
    leaves the box, pulling the point towards the constant function of the
    same mass.  Draw ``i`` depends only on ``(seed, i)``.
    """

    def __init__(self, space: MeasureSpace, feasible: FeasibleSetSpec | None = None, seed: int = 0,
                 resolution: int = 1000):
        self.space = space
        self.feasible = feasible or FeasibleSetSpec()
        self.seed = seed
        self.resolution = resolution
        if self.feasible.mass is not None:
            self.feasible.check_space(space)
            if self.feasible.lower < 0:
                raise ConfigurationError("mass-constrained sampling needs a nonnegative lower bound", "set.lower")

    def point(self, index: int) -> L1Function:
        rng = random.Random(derive_seed(self.seed, "point", index))
        lo, hi = self.feasible.lower, self.feasible.upper
        width = hi - lo
        vals = [lo + width * Fraction(rng.randint(0, self.resolution), self.resolution)
                for _ in range(self.space.size)]
        f = L1Function(self.space, tuple(vals))
        if self.feasible.mass is None:
            return f
        return project_to_mass(f, self.feasible)

    def points(self, n: int) -> list[L1Function]:
        return [self.point(i) for i in range(n)]

    def pairs(self, n: int) -> list[tuple[L1Function, L1Function]]:
        return [(self.point(2 * i), self.point(2 * i + 1)) for i in range(n)]


def project_to_mass(f: L1Function, feasible: FeasibleSetSpec) -> L1Function:
    """Rescale a nonnegative ``f`` to the required mass, staying in the box."""
    space = f.space
    mass = feasible.mass
    centre = mass / space.total_mass
    norm = l1_norm(f)
    if norm == 0:
        return space.constant(centre)
    g = f.scale(mass / norm)
    lam = Fraction(1)
    for x in g.values:
        if x > feasible.upper:
            lam = min(lam, (feasible.upper - centre) / (x - centre))
        elif x < feasible.lower:
            lam = min(lam, (centre - feasible.lower) / (centre - x))
    if lam == 1:
        return g
    return L1Function(space, tuple(lam * x + (1 - lam) * centre for x in g.values))


class GridSampler:
    """Every point of ``{lower + k/m}`` inside ``[lower, upper]`` per coordinate."""

    def __init__(self, space: MeasureSpace, m: int = 100, lower=0, upper=1, limit: int = 250_000):
        self.space = space
        self.m = m
        lower, upper = to_fraction(lower), to_fraction(upper)
        count = int((upper - lower) * m) + 1
        if count ** space.size > limit:
            raise ConfigurationError(f"grid of {count}^{space.size} points exceeds the limit {limit}", "grid")
        axis = [lower + Fraction(k, m) for k in range(count)]
        self._points = [L1Function(space, tuple(p)) for p in itertools.product(axis, repeat=space.size)]

    def points(self, n: int | None = None) -> list[L1Function]:
        return list(self._points)

    def pairs(self, n: int | None = None) -> list[tuple[L1Function, L1Function]]:
        return list(itertools.combinations(self._points, 2))


# ---------------------------------------------------------------------------
# diagnostics


@dataclass
class DiagnosticReport:
    property: str
    operator: str
    samples_used: int = 0
    skipped: int = 0
    worst_ratio: Fraction | None = None
    worst_pair: tuple | None = None
    max_deviation: Fraction | None = None
    max_coordinate_deviation: Fraction | None = None
    bound: Fraction | None = None
    witnesses: list = field(default_factory=list)
    verdict: bool = True

    def to_dict(self) -> dict:
        def num(q):
            return None if q is None else format_rational(q)

        def fn(f):
            return f.formatted()

        out = {
            "property": self.property,
            "operator": self.operator,
            "samples_used": self.samples_used,
            "skipped": self.skipped,
            "worst_ratio": "undefined" if self.worst_ratio is None else num(self.worst_ratio),
            "worst_pair": None if self.worst_pair is None else [fn(p) for p in self.worst_pair],
            "max_deviation": num(self.max_deviation),
            "max_coordinate_deviation": num(self.max_coordinate_deviation),
            "bound": num(self.bound),
            "witnesses": [
                {k: (fn(v) if isinstance(v, L1Function) else num(v) if isinstance(v, Fraction) else v)
                 for k, v in w.items()}
                for w in self.witnesses
            ],
            "verdict": "pass" if self.verdict else "fail",
        }
        return out


def check_nonexpansive(op: Operator, sampler, n: int, witnesses: Iterable = (), metric: str = "L1") -> DiagnosticReport:
    """Worst ratio ``d(op f, op g) / d(f, g)`` over sampled and supplied pairs."""
    if n < 1:
        raise ConfigurationError("need at least one sample pair", "samples")
    report = DiagnosticReport("nonexpansive", op.name)
    best = None

    def visit(f, g, record):
        nonlocal best
        dx = metric_distance(metric, f, g)
        if dx == 0:
            report.skipped += 1
            return
        ratio = metric_distance(metric, op.apply(f), op.apply(g)) / dx
        report.samples_used += 1
        if record:
            report.witnesses.append({"f": f, "g": g, "ratio": ratio})
        if best is None or ratio > best:
            best = ratio
            report.worst_pair = (f, g)

    for f, g in witnesses:
        visit(f, g, True)
    for f, g in sampler.pairs(n):
        visit(f, g, False)
    report.worst_ratio = best
    report.bound = Fraction(1)
    report.verdict = best is None or best <= 1
    return report


def check_idempotent(op: Operator, sampler, n: int) -> DiagnosticReport:
    if n < 1:
        raise ConfigurationError("need at least one sample", "samples")
    report = DiagnosticReport("idempotent", op.name)
    for f in sampler.points(n):
        once = op.apply(f)
        twice = op.apply(once)
        report.samples_used += 1
        if twice != once:
            report.verdict = False
            if len(report.witnesses) < 5:
                report.witnesses.append({"f": f, "once": once, "twice": twice})
    return report


def max_deviation(op: Operator, sampler, n: int, bound=None, metric: str = "L1") -> DiagnosticReport:
    """Largest ``d(op f, f)``; with ``bound`` the verdict checks it.

    ``max_coordinate_deviation`` is the largest single-atom change
    ``|op(f)_i - f_i|``, which is the quantity a grid step controls.
    """
    if n < 1:
        raise ConfigurationError("need at least one sample", "samples")
    report = DiagnosticReport("deviation", op.name)
    worst = Fraction(0)
    worst_coord = Fraction(0)
    for f in sampler.points(n):
        g = op.apply(f)
        dev = metric_distance(metric, g, f)
        report.samples_used += 1
        if dev > worst or report.worst_pair is None:
            worst = dev
            report.worst_pair = (f, g)
        worst_coord = max(worst_coord, max(abs(a - b) for a, b in zip(g.values, f.values)))
    report.max_deviation = worst
    report.max_coordinate_deviation = worst_coord
    if bound is not None:
        report.bound = to_fraction(bound)
        report.verdict = worst <= report.bound
    return report


def perturbation_estimate(t: Operator, q: Operator, sampler, n: int, delta, metric: str = "L1") -> DiagnosticReport:
    """Check ``d(q t f, q t g) <= d(f, g) + 2 delta`` on every sampled pair."""
    if n < 1:
        raise ConfigurationError("need at least one sample pair", "samples")
    delta = to_fraction(delta)
    qt = compose([t, q])
    report = DiagnosticReport("perturbation", qt.name, bound=2 * delta)
    excess_max = None
    for f, g in sampler.pairs(n):
        dx = metric_distance(metric, f, g)
        dy = metric_distance(metric, qt.apply(f), qt.apply(g))
        report.samples_used += 1
        excess = dy - dx
        if excess_max is None or excess > excess_max:
            excess_max = excess
            report.worst_pair = (f, g)
        if excess > 2 * delta:
            report.verdict = False
            if len(report.witnesses) < 5:
                report.witnesses.append({"f": f, "g": g, "input": dx, "output": dy})
    # for this property max_deviation carries the largest observed excess d(out) - d(in)
    report.max_deviation = excess_max
    return report
