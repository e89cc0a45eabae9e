from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import vertex_max

from dyndrf.core import DemandVector, Instance
from dyndrf.drf import run
from dyndrf.generators import gen_random, gen_theorem1, gen_theorem2
from dyndrf.offline import Objective, maxmin_offline, maxsum_offline, maxsum_program


def test_maxmin_micro(micro):
    opt = maxmin_offline(micro, 3)
    assert opt.kind is Objective.MAXMIN
    assert opt.shares.shares == (F(10, 21),) * 3
    assert opt.objective == F(10, 21)
    assert opt.binding == 0  # both resources tie; smallest index reported


def test_maxmin_theorem2_last_step():
    m, eps = 3, F(1, 100)
    opt = maxmin_offline(gen_theorem2(m, eps), m * m + 1)
    assert opt.objective == 1 / (m + 1 + eps * (m * m - m)) == F(50, 203)


def test_maxmin_single_agent(micro):
    assert maxmin_offline(micro, 1).objective == F(1, 3)


def test_maxsum_micro(micro):
    opt = maxsum_offline(micro, 3)
    assert opt.objective == F(20, 11)
    assert opt.kind is Objective.MAXSUM


@pytest.mark.parametrize("m, n, eps", [(2, 4, F(1, 10)), (3, 7, F(1, 100)), (4, 9, F(1, 3))])
def test_maxsum_theorem1_last_step(m, n, eps):
    opt = maxsum_offline(gen_theorem1(m, n, eps), n)
    assert opt.objective == m / (1 + eps * (m - 1))


def test_maxsum_identical_agents():
    inst = Instance(5, (DemandVector((1, 1)),) * 5)
    assert maxsum_offline(inst, 5).objective == 1


def test_step_out_of_range(micro):
    with pytest.raises(ValueError):
        maxsum_offline(micro, 4)
    with pytest.raises(ValueError):
        maxmin_offline(micro, 0)


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 10**6))
def test_maxsum_matches_vertex_enumeration(n, m, seed):
    inst = gen_random(n, m, seed, 6)
    lp = maxsum_program(inst, n)
    assert maxsum_offline(inst, n).objective == vertex_max(lp.objective, lp.constraints, lp.bounds)


@given(st.integers(1, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_offline_orderings(n, m, seed):
    inst = gen_random(n, m, seed, 8)
    for sol in run(inst):
        k = sol.step
        best_sum = maxsum_offline(inst, k)
        best_min = maxmin_offline(inst, k)
        cap = F(k, n)
        for r in range(m):
            assert sum(inst.demands[i][r] * x for i, x in enumerate(best_sum.shares)) <= cap
            assert sum(inst.demands[i][r] * x for i, x in enumerate(best_min.shares)) <= cap
        assert best_sum.objective >= k * best_min.objective
        assert best_sum.objective <= m * cap
        assert sol.shares[k - 1] <= best_min.objective
        assert sum(sol.shares) <= best_sum.objective
