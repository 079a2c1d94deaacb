import json

import pytest

import feedback_bandit as fb


def test_simulate_log_round_trips_through_estimate():
    run = fb.simulate(topics=3, followers=2, horizon=60, softmax_lambda=10.0, seed=4)
    lines = run["log"].splitlines()
    assert len(lines) == 60
    assert json.loads(lines[0])["kind"] == "own_post"
    assert len(run["regret"]) == 60
    assert all(b >= a - 1e-12 for a, b in zip(run["regret"], run["regret"][1:]))

    fit = fb.estimate(run["log"], solver="lp")
    weights = fit["weights"]["followers"] + [fit["weights"]["self"]]
    assert sum(weights) == pytest.approx(1.0, abs=1e-9)
    assert min(weights) >= 0.0


def test_simulate_matches_first_regret_run():
    single = fb.simulate(topics=4, followers=3, horizon=50, seed=9)
    averaged = fb.regret(topics=4, followers=3, horizon=50, runs=1, seed=9)
    assert averaged["mean"] == pytest.approx(single["regret"], abs=1e-12)


def test_regret_is_reproducible_across_threads():
    a = fb.regret(topics=5, followers=3, horizon=100, runs=16, seed=2, threads=1)
    b = fb.regret(topics=5, followers=3, horizon=100, runs=16, seed=2, threads=4)
    assert a == b


def test_llr_test_and_untestable_log():
    run = fb.simulate(topics=3, followers=1, horizon=200, softmax_lambda=10.0, seed=1)
    report = fb.llr_test(run["log"])
    assert report["llr"] >= -1e-6
    assert 0.0 <= report["p_value"] <= 1.0
    single = '{"t":1,"kind":"own_post","topic":0,"labels":{"0":1}}\n'
    with pytest.raises(fb.UntestableLogError):
        fb.llr_test(single)
    with pytest.raises(fb.FeedbackError):
        fb.estimate('{"t":1}\n')


def test_chi2_survival_closed_form():
    import math

    assert fb.chi2_survival(3.0, 2) == pytest.approx(math.exp(-1.5), rel=1e-12)


def test_run_command_usage_error_and_lock_in():
    status, _, err = fb.run_command(["simulate", "--bogus"])
    assert status == 2 and err
    walk = fb.lock_in_walk(horizon=100, runs=20, seed=3)
    assert 0.0 <= walk["mean_worse_posts"] <= 100.0
