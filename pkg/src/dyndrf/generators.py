"""Instance families: the two tight-bound constructions and seeded random ones."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import DemandVector, Instance, Rational, as_fraction, validate


class BadParams(ValueError):
    pass


class OutsideTheoremWarning(UserWarning):
    """The construction is generated but the matching bound is not claimed."""


@dataclass(frozen=True)
class AdversarialParams:
    m: int
    n: int
    eps: Fraction
    seed: int | None = None


def _check_eps(eps: Rational) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise BadParams(f"eps must lie in (0, 1), got {eps}")
    return eps


def _unit_dominant(m: int, r: int, eps: Fraction) -> DemandVector:
    return DemandVector(tuple(Fraction(1) if s == r else eps for s in range(m)))


def gen_theorem1(m: int, n: int, eps: Rational) -> Instance:
    """n - m all-ones agents, then one near-orthogonal agent per resource."""
    eps = _check_eps(eps)
    if m < 2 or n <= m:
        raise BadParams(f"need n > m >= 2, got m={m}, n={n}")
    ones = DemandVector((Fraction(1),) * m)
    demands = [ones] * (n - m) + [_unit_dominant(m, r, eps) for r in range(m)]
    return Instance(n, tuple(demands), note=f"theorem1 m={m} n={n} eps={eps}")


def gen_theorem2(m: int, eps: Rational) -> Instance:
    """m^2 agents cycling through the unit-dominant vectors, then one all-ones agent."""
    eps = _check_eps(eps)
    if m < 2:
        raise BadParams(f"need m >= 2, got m={m}")
    if m == 2:
        warnings.warn("m=2 lies outside the maxmin tightness hypothesis (m > 2)",
                      OutsideTheoremWarning, stacklevel=2)
    n = m * m + 1
    demands = [_unit_dominant(m, i % m, eps) for i in range(m * m)]
    demands.append(DemandVector((Fraction(1),) * m))
    return Instance(n, tuple(demands), note=f"theorem2 m={m} eps={eps}")


def gen_random(n: int, m: int, seed: int, denom_bound: int = 8) -> Instance:
    """Uniform integer numerators in [1, denom_bound], each row divided by its max."""
    if denom_bound < 2:
        raise BadParams(f"denom_bound must be >= 2, got {denom_bound}")
    if n < 1 or m < 1:
        raise BadParams(f"need n, m >= 1, got n={n}, m={m}")
    rng = random.Random(seed)
    demands = []
    for _ in range(n):
        nums = [rng.randint(1, denom_bound) for _ in range(m)]
        top = max(nums)
        demands.append(DemandVector(tuple(Fraction(a, top) for a in nums)))
    inst = Instance(n, tuple(demands), note=f"random n={n} m={m} seed={seed} denom_bound={denom_bound}")
    validate(inst)
    return inst


def random_batch(count: int, seed: int, max_n: int = 12, max_m: int = 4,
                 denom_bound: int = 8) -> list[Instance]:
    """Reproducible batch with n and m drawn uniformly from 1..max_n and 1..max_m."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(1, max_m)
        out.append(gen_random(n, m, rng.getrandbits(32), denom_bound))
    return out
