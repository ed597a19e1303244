"""Finite measure spaces and exact L1 functions on them.

A :class:`MeasureSpace` is an ordered list of weighted atoms; the sigma
algebra is implicitly the full power set.  An :class:`L1Function` stores
one exact rational per atom together with the space it lives on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, StructuralError
from .numbers import format_rational, to_fraction

__all__ = [
    "MeasureSpace",
    "L1Function",
    "FeasibleSetSpec",
    "Violation",
    "l1_norm",
    "l1_distance",
    "circle_distance",
    "line_distance",
    "convex_combination",
    "validate_membership",
    "metric_distance",
    "METRICS",
]


@dataclass(frozen=True)
class MeasureSpace:
    """Weighted atoms ``(label, mass)``; every mass strictly positive."""

    labels: tuple[str, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise DomainError("a measure space needs at least one atom")
        if len(self.labels) != len(self.weights):
            raise StructuralError("labels and weights differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("atom labels must be unique")
        for label, w in zip(self.labels, self.weights):
            if w <= 0:
                raise DomainError(f"atom {label!r} has non-positive weight {w}")

    @classmethod
    def from_weights(cls, weights: Iterable, labels: Sequence[str] | None = None) -> "MeasureSpace":
        ws = tuple(to_fraction(w) for w in weights)
        if labels is None:
            labels = [str(i) for i in range(len(ws))]
        return cls(tuple(labels), ws)

    @classmethod
    def uniform(cls, n: int) -> "MeasureSpace":
        return cls.from_weights([1] * n)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def function(self, values: Iterable) -> "L1Function":
        return L1Function(self, tuple(to_fraction(v) for v in values))

    def zeros(self) -> "L1Function":
        return L1Function(self, (Fraction(0),) * self.size)

    def constant(self, c) -> "L1Function":
        return L1Function(self, (to_fraction(c),) * self.size)

    def indicator(self, i: int) -> "L1Function":
        vals = [Fraction(0)] * self.size
        vals[i] = Fraction(1)
        return L1Function(self, tuple(vals))


@dataclass(frozen=True)
class L1Function:
    space: MeasureSpace = field(repr=False)
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.space.size:
            raise StructuralError(
                f"function has {len(self.values)} values but the space has {self.space.size} atoms"
            )

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def _check(self, other: "L1Function"):
        if not isinstance(other, L1Function):
            raise StructuralError(f"expected an L1Function, got {type(other).__name__}")
        if other.space != self.space:
            raise StructuralError("functions live on different measure spaces")

    def __add__(self, other):
        self._check(other)
        return L1Function(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return L1Function(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return L1Function(self.space, tuple(-a for a in self.values))

    def scale(self, c) -> "L1Function":
        c = to_fraction(c)
        return L1Function(self.space, tuple(c * a for a in self.values))

    def integral(self) -> Fraction:
        """Signed total mass: sum of weight * value."""
        return sum((w * v for w, v in zip(self.space.weights, self.values)), Fraction(0))

    def formatted(self) -> list[str]:
        return [format_rational(v) for v in self.values]

    def __str__(self):
        inner = ", ".join(self.formatted())
        return f"({inner})"


@dataclass(frozen=True)
class FeasibleSetSpec:
    """Pointwise box ``[lower, upper]`` with an optional L1-mass constraint."""

    lower: Fraction = Fraction(0)
    upper: Fraction = Fraction(1)
    mass: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "lower", to_fraction(self.lower))
        object.__setattr__(self, "upper", to_fraction(self.upper))
        if self.mass is not None:
            object.__setattr__(self, "mass", to_fraction(self.mass))
        if self.lower > self.upper:
            raise DomainError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def check_space(self, space: MeasureSpace) -> None:
        if self.mass is None:
            return
        lo = self.lower * space.total_mass
        hi = self.upper * space.total_mass
        if not lo <= self.mass <= hi:
            raise DomainError(
                f"mass {self.mass} unattainable with bounds [{self.lower}, {self.upper}] "
                f"on total measure {space.total_mass}"
            )


@dataclass(frozen=True)
class Violation:
    kind: str  # "lower", "upper" or "mass"
    index: int | None
    actual: Fraction
    required: Fraction

    def __str__(self):
        where = f"atom {self.index}" if self.index is not None else "norm"
        return (
            f"{self.kind} violation at {where}: actual {format_rational(self.actual)}, "
            f"bound {format_rational(self.required)}"
        )


def _same_space(f: L1Function, space: MeasureSpace) -> None:
    if f.space != space or len(f.values) != space.size:
        raise StructuralError("function does not belong to the given space")


def l1_norm(f: L1Function, space: MeasureSpace | None = None) -> Fraction:
    if space is not None:
        _same_space(f, space)
    return sum((w * abs(v) for w, v in zip(f.space.weights, f.values)), Fraction(0))


def l1_distance(f: L1Function, g: L1Function, space: MeasureSpace | None = None) -> Fraction:
    if space is not None:
        _same_space(f, space)
        _same_space(g, space)
    f._check(g)
    return sum(
        (w * abs(a - b) for w, a, b in zip(f.space.weights, f.values, g.values)), Fraction(0)
    )


def line_distance(a, b) -> Fraction:
    return abs(to_fraction(a) - to_fraction(b))


def circle_distance(a, b) -> Fraction:
    """Distance on [0, 1] with the endpoints identified."""
    a, b = to_fraction(a), to_fraction(b)
    for x in (a, b):
        if not 0 <= x <= 1:
            raise DomainError(f"circle coordinate {x} outside [0, 1]")
    gap = abs(a - b)
    return min(gap, 1 - gap)


def convex_combination(lam, f: L1Function, g: L1Function) -> L1Function:
    """``lam * f + (1 - lam) * g``."""
    lam = to_fraction(lam)
    if not 0 <= lam <= 1:
        raise DomainError(f"convex weight {lam} outside [0, 1]")
    f._check(g)
    mu = 1 - lam
    return L1Function(f.space, tuple(lam * a + mu * b for a, b in zip(f.values, g.values)))


def validate_membership(
    f: L1Function, feasible: FeasibleSetSpec, space: MeasureSpace | None = None
) -> list[Violation]:
    """Return every violated constraint; an empty list means ``f`` is feasible."""
    if space is not None:
        _same_space(f, space)
    out = []
    for i, v in enumerate(f.values):
        if v < feasible.lower:
            out.append(Violation("lower", i, v, feasible.lower))
        if v > feasible.upper:
            out.append(Violation("upper", i, v, feasible.upper))
    if feasible.mass is not None:
        norm = l1_norm(f)
        if norm != feasible.mass:
            out.append(Violation("mass", None, norm, feasible.mass))
    return out


METRICS = ("L1", "line", "circle")


def metric_distance(metric: str, f: L1Function, g: L1Function) -> Fraction:
    """Distance under a named metric.

    ``"L1"`` and ``"line"`` are the weighted L1 distance (they agree on a
    one-atom space).  ``"circle"`` identifies 0 with 1 and needs a one-atom
    space; the atom weight scales it like the L1 case.
    """
    if metric in ("L1", "line"):
        return l1_distance(f, g)
    if metric == "circle":
        f._check(g)
        if f.space.size != 1:
            raise DomainError("the circle metric needs a one-atom space")
        return f.space.weights[0] * circle_distance(f.values[0], g.values[0])
    raise DomainError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
