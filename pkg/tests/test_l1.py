from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fixlab.errors import DomainError, StructuralError
from fixlab.l1 import (
    FeasibleSetSpec,
    MeasureSpace,
    circle_distance,
    convex_combination,
    l1_distance,
    l1_norm,
    metric_distance,
    validate_membership,
)

from .conftest import functions_on, rationals, spaces, unit_rationals


def weighted_abs_sum(weights, values):
    # oracle: the defining sum, written out independently
    total = F(0)
    for i in range(len(weights)):
        total += weights[i] * (values[i] if values[i] >= 0 else -values[i])
    return total


# --- construction ---------------------------------------------------------

def test_space_rejects_zero_weight():
    with pytest.raises(DomainError):
        MeasureSpace.from_weights(["1", "0"])


def test_space_rejects_negative_weight_and_empty():
    with pytest.raises(DomainError):
        MeasureSpace.from_weights(["-1"])
    with pytest.raises(DomainError):
        MeasureSpace.from_weights([])


def test_space_rejects_duplicate_labels():
    with pytest.raises(DomainError):
        MeasureSpace.from_weights([1, 1], labels=["a", "a"])


def test_function_length_must_match(pair_space):
    with pytest.raises(StructuralError):
        pair_space.function(["1"])


def test_feasible_set_invariants(pair_space):
    with pytest.raises(DomainError):
        FeasibleSetSpec("1", "0")
    with pytest.raises(DomainError):
        FeasibleSetSpec("0", "1", "3").check_space(pair_space)
    FeasibleSetSpec("0", "1", "2").check_space(pair_space)


# --- l1_norm ----------------------------------------------------------------

def test_norm_paper_start(pair_space):
    assert l1_norm(pair_space.function(["0.8", "0.2"]), pair_space) == 1


def test_norm_zero(four_space):
    assert l1_norm(four_space.zeros()) == 0


def test_norm_weighted():
    space = MeasureSpace.from_weights([1, 2])
    assert l1_norm(space.function(["1/2", "1/4"]), space) == weighted_abs_sum([1, 2], [F(1, 2), F(1, 4)]) == 1


def test_norm_dimension_mismatch(pair_space, scalar_space):
    with pytest.raises(StructuralError):
        l1_norm(scalar_space.function(["1"]), pair_space)


# --- l1_distance ------------------------------------------------------------

def test_distance_examples(pair_space, four_space):
    f, g = pair_space.function(["0.8", "0.2"]), pair_space.function(["0.5", "0.5"])
    assert l1_distance(f, g, pair_space) == F(3, 5)
    assert l1_distance(f, f) == 0
    assert l1_distance(four_space.indicator(0), four_space.indicator(1)) == 2


def test_distance_mixed_spaces(pair_space, scalar_space):
    with pytest.raises(StructuralError):
        l1_distance(pair_space.zeros(), scalar_space.zeros())


# --- circle_distance ----------------------------------------------------------

@pytest.mark.parametrize("a, b, d", [("0.0", "0.6", "0.4"), ("0.35", "1.0", "0.35"), ("0.3", "0.3", "0")])
def test_circle_examples(a, b, d):
    assert circle_distance(a, b) == F(d)


def test_circle_domain():
    with pytest.raises(DomainError):
        circle_distance("1.2", "0")


@given(unit_rationals, unit_rationals, unit_rationals)
def test_circle_triangle_and_bound(a, b, c):
    assert circle_distance(a, c) <= circle_distance(a, b) + circle_distance(b, c)
    assert circle_distance(a, b) <= abs(a - b)
    assert 0 <= circle_distance(a, b) <= F(1, 2)


def test_circle_metric_needs_scalar(pair_space):
    with pytest.raises(DomainError):
        metric_distance("circle", pair_space.zeros(), pair_space.zeros())


# --- convex_combination -------------------------------------------------------

def test_convex_examples(pair_space):
    f, g = pair_space.function(["0.8", "0.2"]), pair_space.function(["0.5", "0.5"])
    assert convex_combination("1/2", f, g).values == (F("0.65"), F("0.35"))
    assert convex_combination(1, f, g) == f
    assert convex_combination(0, f, g) == g


def test_convex_domain(pair_space):
    with pytest.raises(DomainError):
        convex_combination("1.5", pair_space.zeros(), pair_space.zeros())


# --- membership ---------------------------------------------------------------

def test_membership_examples(pair_space):
    box = FeasibleSetSpec(0, 1, 1)
    assert validate_membership(pair_space.function(["0.8", "0.2"]), box, pair_space) == []
    bad = validate_membership(pair_space.function(["1.2", "-0.2"]), FeasibleSetSpec(0, 1))
    assert [v.kind for v in bad] == ["upper", "lower"]
    mass = validate_membership(pair_space.function(["0.5", "0.6"]), box)
    assert [(v.kind, v.actual) for v in mass] == [("mass", F("1.1"))]


# --- properties ---------------------------------------------------------------

@given(st.data())
def test_metric_axioms(data):
    space = data.draw(spaces())
    f, g, h = (data.draw(functions_on(space)) for _ in range(3))
    assert l1_distance(f, g) == l1_distance(g, f)
    assert l1_distance(f, h) <= l1_distance(f, g) + l1_distance(g, h)
    assert l1_distance(f, g) == weighted_abs_sum(space.weights, (f - g).values)


@given(st.data())
def test_midpoint_identity(data):
    space = data.draw(spaces())
    f, g = data.draw(functions_on(space)), data.draw(functions_on(space))
    m = convex_combination(F(1, 2), f, g)
    assert l1_distance(m, g) == l1_distance(f, g) / 2


@given(st.data(), rationals())
def test_norm_homogeneous(data, c):
    space = data.draw(spaces())
    f = data.draw(functions_on(space))
    assert l1_norm(f.scale(c)) == abs(c) * l1_norm(f)
