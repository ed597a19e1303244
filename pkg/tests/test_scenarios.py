import copy
import json
from fractions import Fraction as F

import pytest

from fixlab.errors import ConfigurationError
from fixlab.operators import Perturbation, flatten
from fixlab.scenarios import (
    PAPER_CASES,
    SWEEP_COLUMNS,
    afpp_trial,
    build_pipeline,
    load_scenario,
    nominal_spec,
    paper_case,
    paper_case_document,
    parse_scenario,
    run_scenario,
    sweep,
    with_parameter,
)


def doc(name="hitl-two-point"):
    return copy.deepcopy(paper_case_document(name))


@pytest.mark.parametrize("name", PAPER_CASES)
def test_paper_cases_pass(name):
    report = run_scenario(paper_case(name))
    assert report.checks
    assert report.passed, [c for c in report.checks if not c.passed]


@pytest.mark.parametrize("name", PAPER_CASES)
def test_shipped_files_match_registry(name, request):
    path = request.config.rootpath / "scenarios" / f"{name}.json"
    assert json.loads(path.read_text()) == paper_case_document(name)


def test_unknown_case():
    with pytest.raises(ConfigurationError):
        paper_case("nope")


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d["set"].update(lower="1", upper="0"), "set"),
        (lambda d: d.update(initial=["0.5", "0.6"]), "initial"),
        (lambda d: d.update(initial=["0.5"]), "initial"),
        (lambda d: d.update(initial=[0.5, 0.5]), "initial[0]"),
        (lambda d: d.update(metric="circle"), "metric"),
        (lambda d: d.update(metric="sup"), "metric"),
        (lambda d: d.pop("seed"), None),
        (lambda d: d.update(seed=-1), "seed"),
        (lambda d: d.update(max_steps=0), "max_steps"),
        (lambda d: d.update(stop={"kind": "displacement_below", "eps": "0"}), "stop.eps"),
        (lambda d: d.update(expected={"bogus": 1}), "expected"),
        (lambda d: d.update(pipeline={"kind": "translation", "d": "0.5"}), "pipeline"),
        (lambda d: d["space"].update(weights=["1", "-1"]), "space"),
    ],
)
def test_config_errors(mutate, field):
    d = doc()
    mutate(d)
    with pytest.raises(ConfigurationError) as info:
        parse_scenario(d)
    if field is not None:
        assert info.value.field.startswith(field)


def test_load_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_scenario(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigurationError) as info:
        load_scenario(bad)
    assert "line 1" in str(info.value)


def test_round_trip_json():
    cfg = paper_case("afpp-perturbation")
    assert parse_scenario(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_nominal_strips_perturbation():
    cfg = paper_case("afpp-perturbation")
    assert any(isinstance(s, Perturbation) for s in flatten(cfg.pipeline))
    assert not any(isinstance(s, Perturbation) for s in flatten(nominal_spec(cfg.pipeline)))
    assert len(build_pipeline(cfg, nominal=True).stages) == 3


def test_afpp_zero_delta_is_exact():
    rep = afpp_trial(paper_case("afpp-perturbation"), 50, delta=0)
    assert rep.max_distance == 0 and rep.passed


def test_afpp_reports_missing_fixed_point():
    d = doc("table1-orbit")
    d["pipeline"]["stages"].append({"kind": "perturbation", "delta": "0.05", "seed": 1})
    rep = afpp_trial(parse_scenario(d), 10)
    assert rep.fixed_point is None and not rep.passed and rep.message


def test_afpp_needs_perturbation():
    with pytest.raises(ConfigurationError):
        afpp_trial(paper_case("hitl-two-point"), 10)


def test_afpp_deterministic():
    cfg = paper_case("afpp-perturbation")
    assert afpp_trial(cfg, 30).to_dict() == afpp_trial(cfg, 30).to_dict()


def test_with_parameter():
    cfg = paper_case("table1-orbit")
    assert with_parameter(cfg, "d", "0.3").pipeline.stages[0].d == F(3, 10)
    with pytest.raises(ConfigurationError):
        with_parameter(cfg, "delta", "0.1")
    with pytest.raises(ConfigurationError):
        with_parameter(cfg, "d", "1.5")


def test_sweep_rows():
    rows = sweep(paper_case("table1-orbit"), "d", ["0.1", "0.5", "0.6"])
    assert [r["period"] for r in rows] == ["10", "2", "5"]
    assert all(list(r) == SWEEP_COLUMNS for r in rows)
    assert len({r["seed"] for r in rows}) == 3


def test_sweep_eps():
    rows = sweep(paper_case("translation-circle-bounds"), "eps", ["0.3", "0.4"])
    assert [r["eps_found"] for r in rows] == ["none", "found"]


def test_sweep_inapplicable():
    with pytest.raises(ConfigurationError):
        sweep(paper_case("table1-orbit"), "delta", [])


def test_report_byte_identical():
    a = run_scenario(paper_case("hitl-four-point")).to_json()
    b = run_scenario(paper_case("hitl-four-point")).to_json()
    assert a == b
    assert "wall_time" not in a


def test_profile_and_geometry_blocks():
    d = doc("table1-orbit")
    d.update(profile=True, geometry=True)
    rep = run_scenario(parse_scenario(d)).to_dict()
    assert rep["geometry"]["diameter"] == "0.8"
    assert rep["displacement"]["grid"].startswith("multiples of 1/100")


def test_failing_expectation_is_reported():
    d = doc("table1-orbit")
    d["expected"]["period"] = 4
    rep = run_scenario(parse_scenario(d))
    assert not rep.passed
    assert [c.name for c in rep.checks if not c.passed] == ["period"]


def test_budget_exhaustion_reported():
    d = doc("rational-rotation")
    d["pipeline"]["d"] = "1/997"
    d["expected"] = {"period": 997}
    rep = run_scenario(parse_scenario(d))
    assert rep.to_dict()["orbit"]["period"] == "none found"
    assert not rep.passed


def test_random_initial_alias():
    d = doc("hitl-four-point")
    d["initial"] = "seeded-random-normalized"
    assert parse_scenario(d) == paper_case("hitl-four-point")
