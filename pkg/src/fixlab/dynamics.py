"""Orbits, exact cycle detection and displacement scans."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import kernels
from .errors import ConfigurationError, DomainError
from .l1 import L1Function, metric_distance
from .numbers import format_rational, to_fraction
from .operators import GridSampler, Operator


@dataclass(frozen=True)
class ExactRepeat:
    kind = "exact_repeat"


@dataclass(frozen=True)
class DisplacementBelow:
    eps: Fraction
    kind = "displacement_below"


@dataclass
class OrbitTrace:
    """Iterates ``f_0 .. f_N`` of one operator.

    ``displacements[n]`` is the distance from ``points[n]`` to
    ``points[n + 1]``.  ``preperiod``/``period`` are ``None`` when no exact
    repeat was seen within ``budget`` steps.
    """

    points: list[L1Function]
    displacements: list[Fraction]
    preperiod: int | None
    period: int | None
    budget: int
    metric: str = "L1"
    stopped_by: str = "budget"

    @property
    def final(self) -> L1Function:
        return self.points[-1]

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    def csv_rows(self) -> list[list[str]]:
        n = self.points[0].space.size
        rows = [["step", "displacement"] + [f"value_{i}" for i in range(n)]]
        for k, p in enumerate(self.points):
            disp = "" if k == 0 else format_rational(self.displacements[k - 1])
            rows.append([str(k), disp] + p.formatted())
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.csv_rows())
        return buf.getvalue()


def iterate_orbit(op: Operator, f0: L1Function, max_steps: int, stop=ExactRepeat(), metric: str = "L1") -> OrbitTrace:
    """Iterate ``op`` from ``f0``.

    Exact repeats are always detected (and end the run); a
    :class:`DisplacementBelow` stop may end it earlier.
    """
    if max_steps < 1:
        raise ConfigurationError("max_steps must be positive", "max_steps")
    points = [f0]
    displacements = []
    seen = {f0.values: 0}
    trace = OrbitTrace(points, displacements, None, None, max_steps, metric)
    x = f0
    for n in range(1, max_steps + 1):
        y = op.apply(x)
        points.append(y)
        displacements.append(metric_distance(metric, y, x))
        first = seen.get(y.values)
        if first is not None:
            trace.preperiod, trace.period = first, n - first
            trace.stopped_by = "exact_repeat"
            return trace
        seen[y.values] = n
        if isinstance(stop, DisplacementBelow) and displacements[-1] < stop.eps:
            trace.stopped_by = "displacement_below"
            return trace
        x = y
    return trace


def detect_cycle(op: Operator, f0: L1Function, max_steps: int) -> tuple[int, int] | None:
    """``(preperiod, period)`` of the orbit of ``f0``, or ``None`` within budget."""
    trace = iterate_orbit(op, f0, max_steps)
    if trace.period is None:
        return None
    return trace.preperiod, trace.period


@dataclass
class DisplacementProfile:
    metric: str
    grid: str
    min_value: Fraction
    min_witness: L1Function
    max_value: Fraction
    max_witness: L1Function
    histogram: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "grid": self.grid,
            "min": format_rational(self.min_value),
            "min_witness": self.min_witness.formatted(),
            "max": format_rational(self.max_value),
            "max_witness": self.max_witness.formatted(),
            "histogram": {format_rational(k): v for k, v in sorted(self.histogram.items())},
        }


def _scan_points(op: Operator, grid):
    if isinstance(grid, int):
        if op.space.size != 1:
            raise ConfigurationError("an integer grid is only defined on a one-atom space", "grid")
        return GridSampler(op.space, grid).points(), f"multiples of 1/{grid} in [0, 1]"
    points = list(grid)
    if not points:
        raise ConfigurationError("empty evaluation set", "grid")
    return points, f"{len(points)} supplied points"


def displacement_profile(op: Operator, metric: str, grid) -> DisplacementProfile:
    """Exact extrema of ``d(op x, x)`` over a grid.

    ``grid`` is an integer ``m`` (all multiples of ``1/m`` in [0, 1], one-atom
    spaces) or an explicit iterable of points.
    """
    if metric == "circle" and op.space.size != 1:
        raise ConfigurationError("the circle metric needs a one-atom space", "metric")
    points, label = _scan_points(op, grid)
    hist = Counter()
    lo = hi = None
    for x in points:
        d = metric_distance(metric, op.apply(x), x)
        hist[d] += 1
        if lo is None or d < lo[0]:
            lo = (d, x)
        if hi is None or d > hi[0]:
            hi = (d, x)
    return DisplacementProfile(metric, label, lo[0], lo[1], hi[0], hi[1], dict(hist))


@dataclass
class EpsilonSearch:
    eps: Fraction
    witness: L1Function | None
    displacement: Fraction | None
    searched: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def epsilon_fixed_point_search(op: Operator, metric: str, eps, grid) -> EpsilonSearch:
    """Point with ``d(op x, x) < eps`` of least displacement, or none on the grid."""
    eps = to_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    points, _ = _scan_points(op, grid)
    best = None
    for x in points:
        d = metric_distance(metric, op.apply(x), x)
        if d < eps and (best is None or d < best[0]):
            best = (d, x)
    if best is None:
        return EpsilonSearch(eps, None, None, len(points))
    return EpsilonSearch(eps, best[1], best[0], len(points))


def rotation_period(p: int, q: int, budget: int) -> int | None:
    """First return time of ``x -> x + p/q (mod 1)`` started at 0.

    Works on numerators over ``q``; ``0/1`` is the identity with period 1.
    ``None`` when the budget runs out first.
    """
    if q < 1 or p < 0 or budget < 1:
        raise DomainError("need p >= 0, q >= 1 and a positive budget")
    if (p, q) != (0, 1) and (p >= q or gcd(p, q) != 1):
        raise DomainError(f"{p}/{q} must be a reduced fraction in [0, 1)")
    if q == 1:
        return 1
    n = kernels.first_return(p, q, budget)
    return None if n < 0 else n
