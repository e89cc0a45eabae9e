"""Offline benchmarks that see every demand up to step k."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import Instance, ShareVector
from .lp import LinearProgram, solve_max


class Objective(enum.Enum):
    MAXSUM = "maxsum"
    MAXMIN = "maxmin"


@dataclass(frozen=True)
class OfflineOptimum:
    step: int
    kind: Objective
    shares: ShareVector
    objective: Fraction
    binding: int | None = None  # resource attaining the min (maxmin only)


def _check_step(instance: Instance, k: int) -> None:
    if not 1 <= k <= instance.n:
        raise ValueError(f"step {k} outside 1..{instance.n}")


def maxmin_offline(instance: Instance, k: int) -> OfflineOptimum:
    """Static DRF over agents 1..k: equal dominant shares, largest feasible."""
    _check_step(instance, k)
    cap = Fraction(k, instance.n)
    best, binding = None, None
    for r in range(instance.m):
        level = cap / sum(instance.demands[i][r] for i in range(k))
        if best is None or level < best:
            best, binding = level, r
    return OfflineOptimum(k, Objective.MAXMIN, ShareVector(k, (best,) * k), best, binding)


def maxsum_program(instance: Instance, k: int) -> LinearProgram:
    cap = Fraction(k, instance.n)
    rows = [[instance.demands[i][r] for i in range(k)] for r in range(instance.m)]
    return LinearProgram([1] * k, rows, [cap] * instance.m)


def maxsum_offline(instance: Instance, k: int) -> OfflineOptimum:
    """Largest total dominant share at step k; the vertex is the solver's choice."""
    _check_step(instance, k)
    res = solve_max(maxsum_program(instance, k))
    if not res.optimal:  # the zero vector is feasible and the region is bounded
        raise RuntimeError(f"maxsum program at step {k} is {res.status.value}")
    return OfflineOptimum(k, Objective.MAXSUM, ShareVector(k, res.solution), res.value)
