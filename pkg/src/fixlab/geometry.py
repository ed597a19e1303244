"""Diameters, Chebyshev-radius estimates and midpoint probes for finite sets.

Distances are computed by the integer kernels: every value is put over a
common denominator, so the scans run on plain integers and stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .errors import DomainError, StructuralError
from .l1 import L1Function, MeasureSpace, convex_combination, l1_distance
from .numbers import format_rational


def _scaled(groups: Sequence[Sequence[L1Function]], space: MeasureSpace):
    """Integer rows for every group plus integer weights and the scale."""
    den = 1
    for group in groups:
        for f in group:
            for v in f.values:
                den = lcm(den, v.denominator)
    wden = 1
    for w in space.weights:
        wden = lcm(wden, w.denominator)
    weights = [int(w * wden) for w in space.weights]
    rows = [[[v.numerator * (den // v.denominator) for v in f.values] for f in group] for group in groups]
    return rows, weights, den * wden


def _check(points, space):
    if not points:
        raise DomainError("need at least one point")
    for p in points:
        if p.space != space:
            raise StructuralError("point does not belong to the given space")


def diameter(points: Sequence[L1Function], space: MeasureSpace) -> tuple[Fraction, tuple[L1Function, L1Function]]:
    """Largest pairwise L1 distance and a pair attaining it."""
    points = list(points)
    _check(points, space)
    (rows,), weights, scale = _scaled([points], space)
    best, i, j = kernels.max_pairwise_l1(rows, weights)
    return Fraction(best, scale), (points[i], points[j])


@dataclass
class GeometryReport:
    point_count: int
    diameter: Fraction
    diameter_pair: tuple
    radius_estimate: Fraction
    center: L1Function
    diametral_flag: bool
    candidate_count: int

    @property
    def ratio(self) -> Fraction | None:
        if self.diameter == 0:
            return None
        return self.radius_estimate / self.diameter

    def to_dict(self) -> dict:
        return {
            "point_count": self.point_count,
            "diameter": format_rational(self.diameter),
            "diameter_pair": [p.formatted() for p in self.diameter_pair],
            "radius_estimate": format_rational(self.radius_estimate),
            "center": self.center.formatted(),
            "ratio": "undefined" if self.ratio is None else format_rational(self.ratio),
            "diametral_flag": self.diametral_flag,
            "candidate_count": self.candidate_count,
        }


def barycenter(points: Sequence[L1Function]) -> L1Function:
    n = len(points)
    space = points[0].space
    return L1Function(space, tuple(sum(col, Fraction(0)) / n for col in zip(*(p.values for p in points))))


def default_candidates(points: Sequence[L1Function]) -> list[L1Function]:
    """The points, their barycenter and every pairwise midpoint, deduplicated."""
    half = Fraction(1, 2)
    cands = list(points) + [barycenter(points)]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            cands.append(convex_combination(half, points[i], points[j]))
    return list(dict.fromkeys(cands))


def chebyshev_estimate(points: Sequence[L1Function], space: MeasureSpace, candidates=None) -> GeometryReport:
    """Upper bound on the Chebyshev radius from a finite set of centers.

    The radius estimate is the least, over candidates, of the farthest
    distance to a point.  ``diametral_flag`` is set when every candidate
    is as far from some point as the diameter itself.
    """
    points = list(points)
    _check(points, space)
    cands = default_candidates(points) if candidates is None else list(candidates)
    _check(cands, space)
    (rows, crows), weights, scale = _scaled([points, cands], space)
    maxima = kernels.center_max_l1(crows, rows, weights)
    best = min(range(len(cands)), key=maxima.__getitem__)
    diam, pair = diameter(points, space)
    diam_int = diam * scale
    return GeometryReport(
        point_count=len(points),
        diameter=diam,
        diameter_pair=pair,
        radius_estimate=Fraction(maxima[best], scale),
        center=cands[best],
        diametral_flag=all(m == diam_int for m in maxima),
        candidate_count=len(cands),
    )


@dataclass
class MidpointProbe:
    midpoint: L1Function
    half_distance: Fraction
    full_distance: Fraction

    @property
    def holds(self) -> bool:
        return self.half_distance * 2 == self.full_distance


def midpoint_probe(f: L1Function, g: L1Function, space: MeasureSpace) -> MidpointProbe:
    """Check ``d(m, g) = d(f, g) / 2`` for the midpoint ``m`` of ``f`` and ``g``."""
    _check([f, g], space)
    m = convex_combination(Fraction(1, 2), f, g)
    return MidpointProbe(m, l1_distance(m, g), l1_distance(f, g))
