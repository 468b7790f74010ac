import math

import pytest

import rrsched


def test_generate_counts():
    inst = rrsched.generate(6, 0.5, 1)
    assert inst.n == 6
    assert inst.rounds == 5
    assert inst.matches == 15
    assert sum(1 for c in inst.costs if c == 1) == 37  # floor(0.5 * 75)
    assert inst.rho == 0.5
    assert inst.seed == 1


def test_save_load_roundtrip(tmp_path):
    inst = rrsched.generate(6, 0.7, 9)
    path = str(tmp_path / "inst.json")
    rrsched.save(inst, path)
    back = rrsched.load(path)
    assert back.costs == inst.costs
    assert back.rho == inst.rho
    assert back.seed == inst.seed


def test_relaxation_chain():
    inst = rrsched.generate(6, 0.8, 3)
    v_tra = rrsched.traditional_value(inst)
    v_per = rrsched.permutation_value(inst)
    v_mat = rrsched.matching_value(inst)
    assert v_per == pytest.approx(v_tra, abs=1e-6)
    assert v_tra <= v_mat + 1e-6


def test_dominance_values():
    inst = rrsched.dominance_instance(6)
    assert rrsched.traditional_value(inst) == pytest.approx(0.0, abs=1e-6)
    assert rrsched.matching_value(inst) == pytest.approx(2.0, abs=1e-6)
    strengthened = rrsched.strengthen_traditional(inst)
    assert strengthened["value"] == pytest.approx(2.0, abs=1e-6)
    assert strengthened["cuts_added"] > 0


def test_solve_returns_valid_schedule():
    inst = rrsched.generate(6, 0.6, 5)
    report = rrsched.solve(inst)
    assert report["optimal"]
    assert report["nodes"] >= 1
    schedule = report["schedule"]
    assert len(schedule) == 5
    played = set()
    for rnd in schedule:
        teams = [t for m in rnd for t in m]
        assert sorted(teams) == list(range(6))
        played.update(tuple(m) for m in rnd)
    assert len(played) == 15
    value = sum(
        inst.cost(i, j, r) for r, rnd in enumerate(schedule) for (i, j) in rnd
    )
    assert value == report["value"]
    assert math.isclose(report["best_bound"], report["value"], abs_tol=1e-6)


def test_solve_matches_relaxation_bound():
    inst = rrsched.generate(4, 0.5, 2)
    report = rrsched.solve(inst)
    assert report["value"] == pytest.approx(rrsched.matching_value(inst), abs=1e-6)


def test_circle_method():
    rounds = rrsched.circle_method_schedule(8)
    assert len(rounds) == 7
    assert len({tuple(m) for rnd in rounds for m in rnd}) == 28
