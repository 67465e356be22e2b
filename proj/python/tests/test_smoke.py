import json
import math

import pytest

import amplest


def test_schedules():
    assert amplest.build_exp_nu(16).depths == [0, 1, 2, 4, 8, 16]
    j = amplest.jitter(amplest.build_exp_nu(16), 2.0)
    assert j.kind == "jittered"
    assert j.depths == [0, 1, 2, 4, 8, 13, 14, 15, 16]
    assert j.fractions[-1] == (1, 4)
    assert amplest.s1(j) == 65
    assert amplest.Schedule.from_json(j.to_json()) == j
    s1, s2 = amplest.closed_form_s(16)
    assert s1 == pytest.approx(68.0)
    assert s2 == pytest.approx(math.sqrt(1494.0))


def test_planning():
    assert amplest.required_shots(1e-3, 0.01, amplest.build_exp_nu(16)) == 1111
    plan = amplest.make_plan(1e-3, 0.01, 16)
    assert plan.n_calls == 75548
    assert plan.grid_size == 3000
    assert json.loads(plan.to_json())["n_shot"] == 1111
    assert amplest.erfinv(0.99) == pytest.approx(1.8213863677184497, rel=1e-13)
    with pytest.raises(ValueError):
        amplest.erfinv(1.0)


def test_estimation():
    plan = amplest.make_plan(1e-3, 0.01, 16)
    est = amplest.run_mlqae(0.3, plan, 7)
    assert abs(est.a_hat - 0.3) < 5e-3
    record = amplest.draw_record(0.3, plan.schedule, plan.n_shot, 7)
    again = amplest.grid_maximize(record, plan.grid_size)
    assert again.grid_index == est.grid_index
    assert amplest.log_lik(again.theta_hat, record) == pytest.approx(est.log_likelihood)
    assert amplest.run_mlqae(0.0, plan, 1).a_hat == 0.0


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        amplest.make_plan(0.7, 0.01, 4)
    with pytest.raises(ValueError):
        amplest.grid_maximize([(0, 10, 11)], 100)


def test_oracle_and_harness():
    assert amplest.grover_power_prob(2, [1, 2], 0.4, 3) == pytest.approx(0.9935104, abs=1e-7)
    report = json.loads(amplest.validate_oracle(3, 5))
    assert report["max_abs_deviation"] < 1e-9
    rows = amplest.sweep(3, 16, 1e-3, 0.01, False, 42)
    assert [r[0] for r in rows] == [0.0, 0.5, 1.0]
    assert rows[0][2] == 0.0 and rows[2][2] == 0.0
    assert amplest.sweep(3, 16, 1e-3, 0.01, False, 42) == rows
    ratio = amplest.call_ratio_table([16], 1e-3, 0.01, 2.0)[0]
    assert ratio[1:3] == (75548, 82385)
    assert amplest.achieved_precision(list(range(1, 101)), 0.01) == 99
