from __future__ import annotations

import json

import pytest

from mrdcodes.errors import BudgetExceeded, UnknownSuite
from mrdcodes.gf import find_sqrt_minus_one, tower_for
from mrdcodes.verify import (
    TheoremReport,
    check_char2_selfdual,
    check_level_obstruction,
    check_m4x2_fixture,
    check_transfer,
    enumerate_self_dual_lines,
    m4x2_fixture,
    run_suite,
)


def lines_json(lines):
    return [([x.to_json() for x in ln.code.generators()[0]], ln.distance) for ln in lines]


def test_lines_q5_identity():
    # c^2 = -1 in F_5 gives <(1,2)> and <(1,3)>, both of weight 1
    assert lines_json(enumerate_self_dual_lines(5, 2, "identity")) == [
        ([[1, 0], [2, 0]], 1), ([[1, 0], [3, 0]], 1)]


def test_lines_q3_identity():
    tower = tower_for(3, 2)
    i = find_sqrt_minus_one(tower)
    got = lines_json(enumerate_self_dual_lines(3, 2, "identity"))
    assert got == [([[1, 0], i.to_json()], 2), ([[1, 0], (-i).to_json()], 2)]


def test_lines_q3_hyperbolic():
    assert lines_json(enumerate_self_dual_lines(3, 2, "hyperbolic")) == [
        ([[1, 0], [0, 0]], 1), ([[0, 0], [1, 0]], 1)]


def test_lines_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_self_dual_lines(3, 4, budget=50)


def test_char2_lines():
    rep = check_char2_selfdual(2, 2)
    assert rep.passed and rep.instances == 1
    assert rep.details == [{"line": [[1, 0], [1, 0]], "d1": 1}]
    rep = check_char2_selfdual(2, 4)
    assert rep.passed and all(d["d1"] == 1 for d in rep.details)
    rep = check_char2_selfdual(2, 4, n=4)
    assert rep.passed and rep.instances > 0


def test_transfer_reports():
    for q, m in [(3, 2), (2, 2), (2, 3)]:
        rep = check_transfer(tower_for(q, m), trials=20, seed=1)
        assert rep.passed, rep.counterexamples
        assert rep.instances >= 20


def test_m4x2_fixture_shape_and_controls():
    D = m4x2_fixture()
    assert (D.m, D.n, D.dim) == (4, 2, 4)
    negative = check_m4x2_fixture(perturb=True)
    assert not negative.passed


def test_level_obstruction_sampler():
    rep = check_level_obstruction(3, 2, samples=500, seed=3)
    assert rep.passed and rep.instances == 500
    assert all(d["d1"] == 2 for d in rep.details)


def test_report_flags_and_json():
    rep = TheoremReport("x")
    assert rep.passed
    rep.counterexamples.append({"reason": "r"})
    assert not rep.passed
    data = rep.to_json()
    assert data["passed"] is False and "wall_time" not in data
    assert "wall_time" in rep.to_json(with_time=True)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nosuch")


@pytest.mark.parametrize("name", ["singleton", "transfer", "lagrangian-thm", "char2"])
def test_fast_suites_pass_and_are_deterministic(name):
    a = run_suite(name)
    b = run_suite(name)
    assert a.passed, a.counterexamples
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_finite_suite_small_grid():
    rep = run_suite("finite-thm", q_max=7, n_max=2)
    assert rep.passed
    found = {d["q"]: d["mrdFound"] for d in rep.details if "mrdFound" in d}
    assert found == {2: False, 3: True, 4: False, 5: False, 7: True}


def test_finite_suite_default_grid():
    rep = run_suite("finite-thm")
    assert rep.passed, rep.counterexamples
    assert {"q": 3, "n": 6, "selfDual": True, "d1": 4} in rep.details


def test_constructions_suite():
    rep = run_suite("constructions")
    assert rep.passed, rep.counterexamples
