from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_water_level

from dyndrf.core import DemandVector, Instance, ShareVector
from dyndrf.drf import (InternalInconsistency, ReadCounter, StepSolution, run, step_one,
                        step_update_bisect, step_update_lp, step_update_naive, water_level_for_tau)
from dyndrf.generators import gen_random, gen_theorem1, gen_theorem2

STEPPERS = [step_update_bisect, step_update_naive, step_update_lp]

two_agent = Instance.from_rows([[1, F(1, 2)], [F(1, 2), 1]])
skewed = Instance.from_rows([[1, 1], [1, F(1, 4)]])


@pytest.mark.parametrize("n, row, expected", [
    (2, [1, F(1, 2)], F(1, 2)),
    (3, [1, F(1, 10)], F(1, 3)),
    (1, [1, 1], F(1)),
])
def test_step_one(n, row, expected):
    inst = Instance(n, (DemandVector(tuple(row)),) * n)
    sol = step_one(inst)
    assert sol.shares == ShareVector(1, (expected,))
    assert sol.water_level == expected
    assert sol.split == 1


def test_water_level_two_agents():
    assert water_level_for_tau(two_agent, ShareVector(1, (F(1, 2),)), 2, 1) == F(2, 3)


def test_water_level_micro_split_three(micro):
    prev = ShareVector(2, (F(20, 33), F(20, 33)))
    assert water_level_for_tau(micro, prev, 3, 3) == F(1, 3)


def test_water_level_rejects_bad_split(micro):
    with pytest.raises(ValueError):
        water_level_for_tau(micro, ShareVector(2, (F(20, 33), F(20, 33))), 3, 4)


@pytest.mark.parametrize("step", STEPPERS)
def test_two_agent_step(step):
    sol = step(two_agent, ShareVector(1, (F(1, 2),)), 2)
    assert sol == StepSolution(ShareVector(2, (F(2, 3), F(2, 3))), F(2, 3), 1)


@pytest.mark.parametrize("step", STEPPERS)
def test_micro_step_three(step, micro):
    prev = ShareVector(2, (F(20, 33), F(20, 33)))
    sol = step(micro, prev, 3)
    assert sol.split == 3
    assert sol.water_level == F(1, 3)
    assert sol.shares.shares == (F(20, 33), F(20, 33), F(1, 3))
    # resource 1 ends exactly at capacity 1
    assert sum(micro.demands[i][0] * x for i, x in enumerate(sol.shares)) == 1


@pytest.mark.parametrize("step", STEPPERS)
def test_skewed_pair(step):
    sol = step(skewed, ShareVector(1, (F(1, 2),)), 2)
    assert (sol.split, sol.water_level, sol.shares.shares) == (1, F(1, 2), (F(1, 2), F(1, 2)))


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_identical_agents_equal_split(n):
    inst = Instance(n, (DemandVector((1, F(1, 3), 1)),) * n)
    for sol in run(inst):
        assert sol.split == 1
        assert sol.water_level == F(1, n)
        assert set(sol.shares) == {F(1, n)}


def test_tie_split_is_canonical_smallest():
    # after step 1 agent 1 holds 1/2; at step 2 the level is exactly 1/2
    sol = step_update_naive(skewed, ShareVector(1, (F(1, 2),)), 2)
    assert sol.split == 1


def test_naive_reports_inconsistency_on_increasing_prev():
    # increasing and over-capacity prev shares admit no valid split
    inst = Instance.from_rows([[1, 1], [1, 1], [1, 1]], n=3)
    with pytest.raises(InternalInconsistency):
        step_update_naive(inst, ShareVector(2, (F(1, 2), F(3, 5))), 3)


def test_wrong_prev_length(micro):
    with pytest.raises(ValueError):
        step_update_bisect(micro, ShareVector(1, (F(1, 3),)), 3)


def test_run_single_agent():
    inst = Instance(1, (DemandVector((1, F(1, 2))),))
    (sol,) = run(inst)
    assert sol.shares.shares == (1,)


def test_run_theorem1_small():
    eps = F(1, 10)
    sols = run(gen_theorem1(2, 4, eps))
    assert set(sols[-1].shares) == {F(10, 31)}
    assert F(10, 31) == 1 / (4 - 2 + 1 + eps * (2 - 1))


def test_run_theorem2_step_nine():
    m, eps = 3, F(1, 100)
    sols = run(gen_theorem2(m, eps))
    expected = F(m * m) / ((m + eps * (m * m - m)) * (m * m + 1))
    assert expected == F(15, 51)
    assert set(sols[8].shares) == {expected}


@given(st.integers(1, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_bisect_matches_naive_and_brute_force(n, m, seed):
    inst = gen_random(n, m, seed, 8)
    prev = step_one(inst).shares
    for k in range(2, n + 1):
        fast = step_update_bisect(inst, prev, k)
        assert fast == step_update_naive(inst, prev, k)
        assert fast.water_level == brute_water_level(inst, prev, k)
        prev = fast.shares


@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_step_structure(n, m, seed):
    inst = gen_random(n, m, seed, 8)
    sols = run(inst)
    for prev, sol in zip(sols, sols[1:]):
        k, tau, level = sol.step, sol.split, sol.water_level
        old = list(prev.shares) + [F(0)]
        for i in range(1, k + 1):
            x = sol.shares[i - 1]
            if i < tau:
                assert x == old[i - 1] > level
            else:
                assert x == level >= old[i - 1]


def test_random_runs_exercise_inner_splits():
    splits = [s.split for seed in range(40) for s in run(gen_random(10, 3, seed, 8))]
    inner = sum(1 for t in splits if t > 1)
    assert inner > 50


@pytest.mark.parametrize("n, m", [(60, 2), (80, 4)])
def test_read_counter_linear(n, m):
    inst = gen_random(n, m, 11, 8)
    prev = step_one(inst).shares
    for k in range(2, n + 1):
        counter = ReadCounter()
        sol = step_update_bisect(inst, prev, k, counter)
        assert counter.reads <= 8 * k * m
        prev = sol.shares
