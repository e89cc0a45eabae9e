"""Online dynamic DRF: one exact solution per arrival step.

At step k the agents present are 1..k and a k/n slice of every resource has
been released. Every agent whose previous dominant share is below the new
water level M is raised to M, the rest keep their previous share, and M is
as large as the capacity allows. Because previous shares are non-increasing
in arrival order, the raised agents form a suffix starting at the split
index tau, which the bisection below locates with O(k) coordinate reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import EMPTY_SHARES, Instance, ShareVector, validate
from .lp import LinearProgram, solve_max

ZERO = Fraction(0)


class InternalInconsistency(RuntimeError):
    """No split index satisfies the step structure; indicates a bug."""


@dataclass(frozen=True)
class StepSolution:
    shares: ShareVector
    water_level: Fraction
    split: int  # 1-based index of the first agent raised to the water level

    @property
    def step(self) -> int:
        return self.shares.step


@dataclass
class ReadCounter:
    """Counts demand-coordinate reads made by the bisection step."""
    reads: int = 0


@dataclass
class BisectState:
    lb: int  # agents <= lb keep their previous share (0 is a sentinel)
    ub: int  # agents >= ub are raised to the water level
    probe: int
    alpha: list[Fraction]  # sum over i < probe of d_ir * prev_i
    beta: list[Fraction]  # sum over probe <= i <= k of d_ir


def _prev_share(prev: ShareVector, i: int) -> Fraction:
    # 1-based; the arriving agent starts from zero
    return prev.shares[i - 1] if i <= prev.step else ZERO


def _check_prev(instance: Instance, prev: ShareVector, k: int) -> None:
    if not 1 <= k <= instance.n:
        raise ValueError(f"step {k} outside 1..{instance.n}")
    if prev.step != k - 1 or len(prev) != k - 1:
        raise ValueError(f"step {k} needs the step {k - 1} shares, got step {prev.step}")


def step_one(instance: Instance) -> StepSolution:
    x = Fraction(1, instance.n)
    return StepSolution(ShareVector(1, (x,)), x, 1)


def water_level_for_tau(instance: Instance, prev: ShareVector, k: int, tau: int) -> Fraction:
    """Largest common level for agents tau..k with agents before tau frozen."""
    _check_prev(instance, prev, k)
    if not 1 <= tau <= k:
        raise ValueError(f"split {tau} outside 1..{k}")
    cap = Fraction(k, instance.n)
    best = None
    for r in range(instance.m):
        frozen = sum((instance.demands[i - 1][r] * prev.shares[i - 1] for i in range(1, tau)), ZERO)
        raised = sum((instance.demands[i - 1][r] for i in range(tau, k + 1)), ZERO)
        level = (cap - frozen) / raised
        if best is None or level < best:
            best = level
    return best


def _finish(prev: ShareVector, k: int, level: Fraction, tau: int) -> StepSolution:
    shares = tuple(max(_prev_share(prev, i), level) for i in range(1, k + 1))
    return StepSolution(ShareVector(k, shares), level, tau)


def step_update_naive(instance: Instance, prev: ShareVector, k: int) -> StepSolution:
    """Reference oracle: try every split index in order, O(k^2 m)."""
    _check_prev(instance, prev, k)
    for tau in range(1, k + 1):
        level = water_level_for_tau(instance, prev, k, tau)
        left_ok = tau == 1 or _prev_share(prev, tau - 1) > level
        if left_ok and level >= _prev_share(prev, tau):
            return _finish(prev, k, level, tau)
    raise InternalInconsistency(f"step {k}: no split index satisfies the step structure")


def step_update_bisect(instance: Instance, prev: ShareVector, k: int,
                       counter: ReadCounter | None = None) -> StepSolution:
    """Linear-time step via bisection on the split index."""
    _check_prev(instance, prev, k)
    m = instance.m
    demands = instance.demands
    cap = Fraction(k, instance.n)
    x = prev.shares
    reads = 0

    def p(i):
        return x[i - 1] if i < k else ZERO

    probe = (k + 1) // 2  # ceil((0 + k) / 2)
    alpha = [ZERO] * m
    beta = [ZERO] * m
    for i in range(1, k + 1):
        d = demands[i - 1].coords
        reads += m
        if i < probe:
            xi = x[i - 1]
            for r in range(m):
                alpha[r] += d[r] * xi
        else:
            for r in range(m):
                beta[r] += d[r]
    st = BisectState(0, k, probe, alpha, beta)

    def move(target):
        nonlocal reads
        if target < st.probe:
            for i in range(target, st.probe):
                d = demands[i - 1].coords
                xi = x[i - 1]
                reads += m
                for r in range(m):
                    st.alpha[r] -= d[r] * xi
                    st.beta[r] += d[r]
        else:
            for i in range(st.probe, target):
                d = demands[i - 1].coords
                xi = x[i - 1]
                reads += m
                for r in range(m):
                    st.alpha[r] += d[r] * xi
                    st.beta[r] -= d[r]
        st.probe = target

    while st.ub - st.lb > 1:
        level = p(st.probe)
        if all(a + level * b <= cap for a, b in zip(st.alpha, st.beta)):
            st.ub = st.probe
        else:
            st.lb = st.probe
        if st.ub - st.lb > 1:
            move(-(-(st.lb + st.ub) // 2))
    tau = st.ub
    if st.probe != tau:
        move(tau)
    level = min((cap - a) / b for a, b in zip(st.alpha, st.beta))
    if counter is not None:
        counter.reads += reads
    return _finish(prev, k, level, tau)


def eq3_program(instance: Instance, prev: ShareVector, k: int) -> LinearProgram:
    """The step-k program with shifted variables (M, y_1..y_{k-1}, x_k).

    y_i = x_i - prev_i >= 0 encodes irrevocability as a nonnegativity bound.
    """
    _check_prev(instance, prev, k)
    m = instance.m
    nv = k + 1
    cap = Fraction(k, instance.n)
    rows, rhs = [], []
    for i in range(1, k + 1):
        row = [ZERO] * nv
        row[0] = Fraction(1)
        row[i] = Fraction(-1)
        rows.append(row)
        rhs.append(_prev_share(prev, i))
    for r in range(m):
        row = [ZERO] + [instance.demands[i][r] for i in range(k)]
        rows.append(row)
        used = sum((instance.demands[i][r] * prev.shares[i] for i in range(k - 1)), ZERO)
        rhs.append(cap - used)
    objective = [Fraction(1)] + [ZERO] * k
    return LinearProgram(objective, rows, rhs)


def step_update_lp(instance: Instance, prev: ShareVector, k: int) -> StepSolution:
    """Solve the step program with the simplex oracle, then canonicalize."""
    res = solve_max(eq3_program(instance, prev, k))
    if not res.optimal:
        raise InternalInconsistency(f"step {k}: step program is {res.status.value}")
    level = res.value
    tau = next(i for i in range(1, k + 1) if _prev_share(prev, i) <= level)
    return _finish(prev, k, level, tau)


StepFn = Callable[[Instance, ShareVector, int], StepSolution]

ALGORITHMS: dict[str, StepFn] = {
    "bisect": step_update_bisect,
    "naive": step_update_naive,
    "lp": step_update_lp,
}


def run(instance: Instance, algo: str | StepFn = "bisect", check: bool = True) -> list[StepSolution]:
    """All steps 1..n; each step starts from the previous step's shares."""
    if check:
        validate(instance)
    step = ALGORITHMS[algo] if isinstance(algo, str) else algo
    out = [step_one(instance)]
    for k in range(2, instance.n + 1):
        out.append(step(instance, out[-1].shares, k))
    return out


def final_shares(solutions: Sequence[StepSolution]) -> ShareVector:
    return solutions[-1].shares if solutions else EMPTY_SHARES
