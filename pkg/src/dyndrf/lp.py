"""Dense exact-rational simplex for small linear programs.

Problems have the form: maximize c.x subject to A x <= b, x >= 0.
Two-phase tableau method with Bland's rule, so pivoting is deterministic
and cannot cycle. Meant for desk-scale oracles, not for speed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Rational, as_fraction

ZERO = Fraction(0)


class LPError(RuntimeError):
    """The solver produced a certificate that fails re-verification."""


class Status(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple[Fraction, ...]
    constraints: tuple[tuple[Fraction, ...], ...]
    bounds: tuple[Fraction, ...]

    def __init__(self, objective: Sequence[Rational], constraints: Sequence[Sequence[Rational]],
                 bounds: Sequence[Rational]):
        c = tuple(as_fraction(v) for v in objective)
        a = tuple(tuple(as_fraction(v) for v in row) for row in constraints)
        b = tuple(as_fraction(v) for v in bounds)
        if len(a) != len(b):
            raise ValueError(f"{len(a)} constraint rows but {len(b)} bounds")
        for i, row in enumerate(a):
            if len(row) != len(c):
                raise ValueError(f"constraint row {i} has {len(row)} coefficients, expected {len(c)}")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraints", a)
        object.__setattr__(self, "bounds", b)

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Fraction | None = None
    solution: tuple[Fraction, ...] = ()
    dual: tuple[Fraction, ...] = ()
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@dataclass
class _Tableau:
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    basis: list[int]
    blocked: set[int] = field(default_factory=set)
    pivots: int = 0

    def pivot(self, obj: list[Fraction], obj_val: list[Fraction], i: int, j: int) -> None:
        row = self.rows[i]
        p = row[j]
        if p != 1:
            inv = 1 / p
            for col, v in enumerate(row):
                if v:
                    row[col] = v * inv
            self.rhs[i] *= inv
        nz = [col for col, v in enumerate(row) if v]
        bi = self.rhs[i]
        for k, other in enumerate(self.rows):
            if k == i:
                continue
            f = other[j]
            if f:
                for col in nz:
                    other[col] -= f * row[col]
                self.rhs[k] -= f * bi
        f = obj[j]
        if f:
            for col in nz:
                obj[col] -= f * row[col]
            obj_val[0] += f * bi
        self.basis[i] = j
        self.pivots += 1

    def optimize(self, obj: list[Fraction], obj_val: list[Fraction]) -> bool:
        """Bland's rule on reduced costs ``obj``; False means unbounded."""
        while True:
            enter = -1
            for j, rc in enumerate(obj):
                if rc > 0 and j not in self.blocked:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                return False
            self.pivot(obj, obj_val, leave, enter)


def solve_max(lp: LinearProgram, verify: bool = True) -> LPResult:
    """Maximize ``lp``; unbounded and infeasible outcomes are returned, not raised."""
    nv = lp.num_vars
    nc = len(lp.constraints)
    signs = [1 if b >= 0 else -1 for b in lp.bounds]
    arts = [i for i in range(nc) if signs[i] < 0]
    width = nv + nc + len(arts)
    rows, rhs, basis = [], [], []
    art_col = {}
    for i, (a, b) in enumerate(zip(lp.constraints, lp.bounds)):
        s = signs[i]
        row = [v if s > 0 else -v for v in a] + [ZERO] * (width - nv)
        row[nv + i] = Fraction(s)
        if s < 0:
            col = nv + nc + len(art_col)
            art_col[i] = col
            row[col] = Fraction(1)
            basis.append(col)
        else:
            basis.append(nv + i)
        rows.append(row)
        rhs.append(b * s)
    tab = _Tableau(rows, rhs, basis)

    if arts:
        obj = [ZERO] * width
        val = [ZERO]
        for col in art_col.values():
            obj[col] = Fraction(-1)
        for i in arts:
            for col, v in enumerate(rows[i]):
                if v:
                    obj[col] += v
            val[0] -= rhs[i]
        tab.optimize(obj, val)
        if val[0] < 0:
            return LPResult(Status.INFEASIBLE, pivots=tab.pivots)
        art_cols = set(art_col.values())
        for i in range(nc):
            if tab.basis[i] in art_cols:
                for j in range(nv + nc):
                    if rows[i][j]:
                        tab.pivot(obj, val, i, j)
                        break
        tab.blocked = art_cols

    obj = [ZERO] * width
    obj[:nv] = list(lp.objective)
    val = [ZERO]
    for i, bcol in enumerate(tab.basis):
        cb = obj[bcol] if bcol < nv else ZERO
        if cb:
            for col, v in enumerate(rows[i]):
                if v:
                    obj[col] -= cb * v
            val[0] += cb * rhs[i]
    if not tab.optimize(obj, val):
        return LPResult(Status.UNBOUNDED, pivots=tab.pivots)

    x = [ZERO] * nv
    for i, bcol in enumerate(tab.basis):
        if bcol < nv:
            x[bcol] = rhs[i]
    dual = tuple(-obj[nv + i] for i in range(nc))
    result = LPResult(Status.OPTIMAL, val[0], tuple(x), dual, tab.pivots)
    if verify:
        check_certificate(lp, result)
    return result


def check_certificate(lp: LinearProgram, result: LPResult) -> None:
    """Primal feasibility, dual feasibility and equal objectives, all exact."""
    x, y = result.solution, result.dual
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        raise LPError("negative primal or dual component")
    for i, (a, b) in enumerate(zip(lp.constraints, lp.bounds)):
        if sum((ai * xi for ai, xi in zip(a, x) if ai), ZERO) > b:
            raise LPError(f"primal solution violates constraint {i}")
    for j, c in enumerate(lp.objective):
        if sum((lp.constraints[i][j] * y[i] for i in range(len(y)) if y[i]), ZERO) < c:
            raise LPError(f"dual solution violates column {j}")
    primal = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    dual = sum((b * v for b, v in zip(lp.bounds, y)), ZERO)
    if primal != result.value or dual != result.value:
        raise LPError(f"objective mismatch: primal {primal}, dual {dual}, reported {result.value}")
