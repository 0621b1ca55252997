import math

import pytest

import tiltedstop as ts


def test_lr_statistic_and_pmf():
    assert ts.lr_min_statistic([8, 3, 5, 4, 6, 1, 7, 2]) == 3
    assert ts.pmf(2, 3.0, [2, 1]) == pytest.approx(0.75, rel=1e-14)
    assert ts.raising_factorial(2.0, 3) == 24.0
    assert ts.stirling_first_kind(30, 1) == math.factorial(29)


def test_enumeration_normalizes():
    q = 0.7
    total = sum(q**lr for _, lr in ts.enumerate_all(6))
    assert total == pytest.approx(ts.raising_factorial(q, 6), rel=1e-12)


def test_constructions():
    assert ts.kappa_to_permutation([1, 1, 2, 2, 4, 1, 6, 2]) == [8, 3, 5, 4, 6, 1, 7, 2]
    assert ts.insertion_to_permutation([1, 0, 1, 1, 3, 5, 0], 8) == [8, 3, 5, 4, 6, 1, 7, 2]
    p = ts.sample(30, 1.5, seed=4, method="insertion")
    assert sorted(p) == list(range(1, 31))
    assert p == ts.sample(30, 1.5, seed=4, method="insertion")
    with pytest.raises(ValueError):
        ts.sample(3, 1.0, method="other")


def test_exact_engine():
    r = ts.optimal_cutoff(100, 1.0)
    assert r.m_star == 37
    assert abs(r.evaluation.prob - 0.37104) < 1e-4
    assert ts.success_probability(2, 3.0, 0).prob == pytest.approx(0.25, rel=1e-14)
    assert ts.success_probability(4, 1.0, 1).prob == pytest.approx(11 / 24, rel=1e-14)
    assert ts.brute_force_success(5, 2.0, 2) == pytest.approx(ts.success_probability(5, 2.0, 2).prob, abs=1e-12)
    assert ts.expected_lr_min(4, 1.0) == pytest.approx(25 / 12, rel=1e-14)
    with pytest.raises(ValueError):
        ts.success_probability(4, 1.0, 4)


def test_regimes():
    r = ts.classify(0.6, 1.0, 0.0)
    assert r.regime == "vii"
    assert r.L == 2
    assert r.limit_prob == pytest.approx(0.46875, rel=1e-14)
    assert r.recommend(100) == 98
    assert ts.limiting_probability_floor_check(r)
    assert ts.classify(0.5, 0.0, -1.0).regime == "ii"


def test_monte_carlo():
    assert ts.play_game([8, 3, 5, 4, 6, 1, 7, 2], 2)
    est = ts.estimate(100, 1.0, 37, 200_000, seed=1)
    assert abs(est.p_hat - est.exact_ref) <= 4 * math.sqrt(est.exact_ref * (1 - est.exact_ref) / 200_000)
    assert est.successes == ts.estimate(100, 1.0, 37, 200_000, seed=1).successes
    table = ts.record_indicator_suite(6, 2.0, 200_000, seed=3)
    assert table.marginal_expected[3] == pytest.approx(0.4)
    assert table.flagged == 0
