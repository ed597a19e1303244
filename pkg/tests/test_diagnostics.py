from fractions import Fraction as F

from fixlab.l1 import FeasibleSetSpec
from fixlab.operators import (
    IDENTITY,
    Averaging,
    BoxSampler,
    Clip,
    Composite,
    CondExp,
    GridQuantizer,
    GridSampler,
    Translation,
    build_operator,
    check_idempotent,
    check_nonexpansive,
    max_deviation,
    perturbation_estimate,
)

TENTH = F(1, 10)


def test_cond_exp_nonexpansive(four_space):
    op = build_operator(CondExp(((0, 2), (1,), (3,))), four_space)
    rep = check_nonexpansive(op, BoxSampler(four_space, seed=1), 300)
    assert rep.verdict and rep.worst_ratio <= 1
    assert rep.samples_used + rep.skipped == 300


def test_grid_witness_ratio_five(scalar_space):
    op = build_operator(GridQuantizer(TENTH), scalar_space)
    pair = (scalar_space.function(["0.54"]), scalar_space.function(["0.56"]))
    rep = check_nonexpansive(op, BoxSampler(scalar_space, seed=2), 10, witnesses=[pair])
    assert rep.witnesses[0]["ratio"] == 5
    assert not rep.verdict


def test_identity_passes_everything(pair_space):
    op = build_operator(IDENTITY, pair_space)
    s = BoxSampler(pair_space, seed=3)
    assert check_nonexpansive(op, s, 50).verdict
    assert check_idempotent(op, s, 50).verdict
    assert max_deviation(op, s, 50).max_deviation == 0


def test_zero_distance_pairs_skipped(scalar_space):
    op = build_operator(IDENTITY, scalar_space)
    x = scalar_space.function(["0.5"])
    rep = check_nonexpansive(op, BoxSampler(scalar_space, seed=0), 1, witnesses=[(x, x)])
    assert rep.skipped >= 1
    assert rep.to_dict()["witnesses"] == []


def test_idempotence_verdicts(scalar_space, four_space):
    s1 = BoxSampler(scalar_space, seed=4)
    assert check_idempotent(build_operator(GridQuantizer(TENTH), scalar_space), s1, 100).verdict
    assert check_idempotent(build_operator(CondExp(((0, 1), (2, 3))), four_space), BoxSampler(four_space), 100).verdict
    rep = check_idempotent(build_operator(Translation(F(3, 5)), scalar_space), GridSampler(scalar_space, 10), 1)
    assert not rep.verdict
    # T(T(0)) = 0.2 while T(0) = 0.6
    zero = [w for w in rep.witnesses if w["f"].values == (0,)][0]
    assert zero["once"].values == (F("0.6"),) and zero["twice"].values == (F("0.2"),)


def test_grid_deviation_supremum(scalar_space, pair_space):
    q = build_operator(GridQuantizer(TENTH), scalar_space)
    rep = max_deviation(q, GridSampler(scalar_space, 200), 1, bound=F(1, 20))
    assert rep.max_deviation == F(1, 20) and rep.verdict
    q2 = build_operator(GridQuantizer(TENTH), pair_space)
    rep2 = max_deviation(q2, GridSampler(pair_space, 40), 1)
    assert rep2.max_deviation <= F(1, 10)
    assert rep2.max_deviation == F(1, 10)  # both coordinates at a tie, e.g. (0.05, 0.05)


def test_perturbation_estimate_hitl(pair_space):
    t = build_operator(Averaging(), pair_space)
    q = build_operator(GridQuantizer(TENTH), pair_space)
    rep = perturbation_estimate(t, q, BoxSampler(pair_space, seed=9), 500, F(1, 10))
    assert rep.verdict and rep.samples_used == 500
    assert rep.max_deviation <= F(1, 5)


def test_perturbation_estimate_identity_q(pair_space):
    t = build_operator(Composite((Averaging(), Clip(F(0), F(1)))), pair_space)
    q = build_operator(IDENTITY, pair_space)
    rep = perturbation_estimate(t, q, BoxSampler(pair_space, seed=1), 200, 0)
    assert rep.verdict and rep.max_deviation <= 0


def test_perturbation_estimate_translation_circle(scalar_space):
    t = build_operator(Translation(F(3, 5)), scalar_space)
    q = build_operator(GridQuantizer(TENTH), scalar_space)
    rep = perturbation_estimate(t, q, GridSampler(scalar_space, 50), 1, F(1, 20), metric="circle")
    assert rep.verdict and rep.bound == F(1, 10)


def test_translation_line_metric_is_not_nonexpansive(scalar_space):
    # wrap-around breaks the line metric: 0.39 -> 0.99 and 0.41 -> 0.01
    t = build_operator(Translation(F(3, 5)), scalar_space)
    pair = (scalar_space.function(["0.39"]), scalar_space.function(["0.41"]))
    assert not check_nonexpansive(t, GridSampler(scalar_space, 10), 1, witnesses=[pair]).verdict
    assert check_nonexpansive(t, GridSampler(scalar_space, 50), 1, witnesses=[pair], metric="circle").verdict


def test_report_serializes(pair_space):
    op = build_operator(GridQuantizer(TENTH), pair_space)
    d = check_nonexpansive(op, BoxSampler(pair_space, FeasibleSetSpec(0, 1), seed=1), 20).to_dict()
    assert d["verdict"] in ("pass", "fail") and isinstance(d["worst_ratio"], str)
