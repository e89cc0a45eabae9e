"""Competitive ratios of the online mechanism and the property battery."""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Instance, resource_usage, validate
from .drf import StepSolution, run, step_one, step_update_bisect, step_update_lp, step_update_naive
from .offline import maxmin_offline, maxsum_offline

_DEC = decimal.Context(prec=20, rounding=decimal.ROUND_HALF_EVEN)


def to_decimal(value: Fraction) -> str:
    """20 significant digits, round-half-even; only used when rendering reports."""
    return str(_DEC.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator)))


@dataclass(frozen=True)
class RatioStep:
    k: int
    online_sum: Fraction | None = None
    offline_maxsum: Fraction | None = None
    ratio1: Fraction | None = None
    online_min: Fraction | None = None
    offline_maxmin: Fraction | None = None
    ratio2: Fraction | None = None


@dataclass(frozen=True)
class RatioReport:
    per_step: tuple[RatioStep, ...]
    cr1: Fraction | None = None
    cr2: Fraction | None = None


@dataclass(frozen=True)
class Violation:
    prop: str
    step: int
    agent: int | None = None  # 1-based
    detail: str = ""

    def __str__(self) -> str:
        where = f"step {self.step}" + (f", agent {self.agent}" if self.agent is not None else "")
        return f"{self.prop} violated at {where}: {self.detail}"


class PropertyViolation(AssertionError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


@dataclass
class PropertyReport:
    ok: bool
    violation: Violation | None = None
    steps_checked: int = 0
    checked: list[str] = field(default_factory=list)


def _solutions(instance: Instance, solutions: Sequence[StepSolution] | None) -> Sequence[StepSolution]:
    return run(instance) if solutions is None else solutions


def _online_min(sol: StepSolution) -> Fraction:
    shares = sol.shares.shares
    low = min(shares)
    if shares[-1] != low:
        raise PropertyViolation(Violation(
            "min_share_is_last", sol.step, shares.index(low) + 1,
            f"minimum share {low} is not held by the newest agent ({shares[-1]})"))
    return low


def cr_maxsum(instance: Instance, solutions: Sequence[StepSolution] | None = None) -> RatioReport:
    sols = _solutions(instance, solutions)
    rows = []
    for sol in sols:
        online = sum(sol.shares.shares, Fraction(0))
        best = maxsum_offline(instance, sol.step).objective
        rows.append(RatioStep(sol.step, online_sum=online, offline_maxsum=best, ratio1=online / best))
    return RatioReport(tuple(rows), cr1=min(r.ratio1 for r in rows))


def cr_maxmin(instance: Instance, solutions: Sequence[StepSolution] | None = None) -> RatioReport:
    sols = _solutions(instance, solutions)
    rows = []
    for sol in sols:
        online = _online_min(sol)
        best = maxmin_offline(instance, sol.step).objective
        rows.append(RatioStep(sol.step, online_min=online, offline_maxmin=best, ratio2=online / best))
    return RatioReport(tuple(rows), cr2=min(r.ratio2 for r in rows))


def ratio_report(instance: Instance, solutions: Sequence[StepSolution] | None = None,
                 objective: str = "both") -> RatioReport:
    if objective not in ("maxsum", "maxmin", "both"):
        raise ValueError(f"unknown objective {objective!r}")
    sols = _solutions(instance, solutions)
    if objective == "maxsum":
        return cr_maxsum(instance, sols)
    if objective == "maxmin":
        return cr_maxmin(instance, sols)
    a, b = cr_maxsum(instance, sols), cr_maxmin(instance, sols)
    merged = tuple(RatioStep(x.k, x.online_sum, x.offline_maxsum, x.ratio1,
                             y.online_min, y.offline_maxmin, y.ratio2)
                   for x, y in zip(a.per_step, b.per_step))
    return RatioReport(merged, a.cr1, b.cr2)


PROPERTIES = (
    "shape", "capacity", "sharing_incentives", "irrevocability", "monotonicity",
    "closure", "pareto", "min_share_is_last", "oracle_equivalence",
    "maxsum_bound", "maxsum_dominates_maxmin", "ratio1_range", "ratio2_range",
)


def _check_step(instance: Instance, sol: StepSolution, prev: StepSolution | None,
                equivalence: bool) -> Violation | None:
    k, n, m = sol.step, instance.n, instance.m
    x = sol.shares.shares
    cap = Fraction(k, n)
    if len(x) != k or not 1 <= sol.split <= k:
        return Violation("shape", k, None, f"{len(x)} shares, split {sol.split}")
    usage = resource_usage(instance, x)
    for r, u in enumerate(usage):
        if u > cap:
            return Violation("capacity", k, None, f"resource {r + 1} uses {u} > {cap}")
    for i, xi in enumerate(x, 1):
        if xi < Fraction(1, n):
            return Violation("sharing_incentives", k, i, f"share {xi} < 1/{n}")
    before = prev.shares.shares if prev is not None else ()
    for i, xi in enumerate(before, 1):
        if x[i - 1] < xi:
            return Violation("irrevocability", k, i, f"share fell from {xi} to {x[i - 1]}")
    for i in range(1, k):
        if x[i - 1] < x[i]:
            return Violation("monotonicity", k, i + 1, f"{x[i]} exceeds earlier agent's {x[i - 1]}")
    level = sol.water_level
    for i in range(1, k + 1):
        old = before[i - 1] if i <= len(before) else Fraction(0)
        if x[i - 1] != max(level, old):
            return Violation("closure", k, i, f"share {x[i - 1]} != max({level}, {old})")
    if cap not in usage:
        return Violation("pareto", k, None, f"no resource reaches {cap}; usage {usage}")
    if x[-1] != min(x):
        return Violation("min_share_is_last", k, k, f"newest agent has {x[-1]} > min {min(x)}")
    if equivalence:
        if prev is None:
            refs = [("step_one", step_one(instance))]
        else:
            refs = [(f.__name__, f(instance, prev.shares, k))
                    for f in (step_update_bisect, step_update_naive, step_update_lp)]
        for name, ref in refs:
            if ref != sol:
                return Violation("oracle_equivalence", k, None,
                                 f"{name} gives M={ref.water_level}, tau={ref.split}")
    best_sum = maxsum_offline(instance, k).objective
    if best_sum > m * cap:
        return Violation("maxsum_bound", k, None, f"maxsum {best_sum} > m*k/n = {m * cap}")
    best_min = maxmin_offline(instance, k).objective
    if best_sum < k * best_min:
        return Violation("maxsum_dominates_maxmin", k, None, f"{best_sum} < {k} * {best_min}")
    lo = Fraction(1, m)
    ratio1 = sum(x, Fraction(0)) / best_sum
    if not lo <= ratio1 <= 1:
        return Violation("ratio1_range", k, None, f"ratio1 {ratio1} outside [1/{m}, 1]")
    ratio2 = x[-1] / best_min
    if not lo <= ratio2 <= 1:
        return Violation("ratio2_range", k, None, f"ratio2 {ratio2} outside [1/{m}, 1]")
    return None


def verify_run(instance: Instance, solutions: Sequence[StepSolution] | None = None,
               equivalence: bool = True) -> PropertyReport:
    """Check every step of a run; stops at the first violated property.

    ``solutions`` defaults to a fresh bisection run. Supplying them allows
    auditing an externally produced (or deliberately corrupted) run.
    """
    validate(instance)
    sols = _solutions(instance, solutions)
    if len(sols) != instance.n:
        v = Violation("shape", len(sols), None, f"run has {len(sols)} steps, expected {instance.n}")
        return PropertyReport(False, v, 0, list(PROPERTIES))
    prev = None
    for idx, sol in enumerate(sols):
        if sol.step != idx + 1:
            return PropertyReport(False, Violation("shape", idx + 1, None, f"step labelled {sol.step}"),
                                  idx, list(PROPERTIES))
        v = _check_step(instance, sol, prev, equivalence)
        if v is not None:
            return PropertyReport(False, v, idx, list(PROPERTIES))
        prev = sol
    return PropertyReport(True, None, len(sols), list(PROPERTIES))

