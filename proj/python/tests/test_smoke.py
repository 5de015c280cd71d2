import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import lrsynth

MODELS = Path(os.environ.get("LRSYNTH_MODELS_DIR", Path(__file__).resolve().parents[2] / "models"))


def load(name):
    return json.loads((MODELS / name).read_text())


def two_loops(**kwargs):
    return lrsynth.Instance(load("two_loops.json"), sss=["p_s:1/2:1/2", "p_t:1/2:1/2"], **kwargs)


def rare_visits():
    return lrsynth.Instance(load("rare_visits.json"), ltl="G F p_t", theta=1, sss=["p_s:1:1"])


def test_two_loops_is_verified_exactly():
    outcome = two_loops().synthesize(delta=0)
    assert outcome["exit_code"] == lrsynth.EXIT_OK
    assert outcome["report"]["status"] == "verified"
    assert outcome["report"]["verification"]["ap_frequency"] == {"p_s": "1/2", "p_t": "1/2"}
    assert outcome["policy"] is not None


def test_infeasible_bounds():
    inst = lrsynth.Instance(load("two_loops.json"), sss=["p_s:3/5:1", "p_t:3/5:1"])
    outcome = inst.synthesize()
    assert outcome["exit_code"] == lrsynth.EXIT_INFEASIBLE
    assert outcome["policy"] is None


def test_exact_rare_visits_is_refused():
    outcome = rare_visits().synthesize(delta="0")
    assert outcome["exit_code"] == lrsynth.EXIT_ERROR
    assert outcome["report"]["status"] == "refused"
    assert outcome["report"]["satisfiable"] is True


def test_stored_policy_check_and_simulation():
    inst = rare_visits()
    policy = inst.synthesize(delta=Fraction(1, 100))["policy"]
    assert inst.check(policy, delta="1/100")["exit_code"] == lrsynth.EXIT_OK
    assert inst.check(json.dumps(policy), delta="1/1000")["exit_code"] == lrsynth.EXIT_VIOLATED
    sim = inst.simulate(policy, steps=20000, seed=7)
    assert sim == inst.simulate(policy, steps=20000, seed=7)
    assert json.dumps(sim)


def test_model_views():
    inst = rare_visits()
    assert inst.automaton == "ltl G F p_t"
    assert len(inst.product()["states"]) == 3
    assert "Eq1[" in inst.lp_text()
    assert len(lrsynth.mecs(load("two_loops.json"))) == 2


def test_ltl_helpers():
    assert lrsynth.eval_lasso("G F p", [], [{"p"}, set()])
    assert not lrsynth.eval_lasso("F G p", [{"p"}], [set()])
    assert lrsynth.format_ltl(lrsynth.format_ltl("a U (b U c)")) == lrsynth.format_ltl("a U b U c")
    with pytest.raises(ValueError):
        lrsynth.eval_lasso("p", [], [])


def test_errors_become_value_errors():
    with pytest.raises(lrsynth.ParseError):
        lrsynth.format_ltl("a & & b")
    with pytest.raises(ValueError):
        lrsynth.Instance("{not json")
    with pytest.raises(ValueError):
        lrsynth.Instance(load("two_loops.json"), sss=["missing:0:1"])
