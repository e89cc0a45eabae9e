"""Domain types for dynamic multi-resource allocation.

Resource indices are 0-based in the Python API. Agent indices that appear
in step solutions (the split index) are 1-based, matching arrival order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[Fraction, int, str]


class ValidationError(ValueError):
    """An instance or allocation breaks a structural invariant."""

    def __init__(self, message: str, index: int | None = None, invariant: str = ""):
        super().__init__(message)
        self.index = index
        self.invariant = invariant or type(self).__name__


class NonPositiveDemand(ValidationError):
    pass


class RaggedMatrix(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class CapacityExceeded(ValidationError):
    def __init__(self, message: str, resource: int, total: Fraction, capacity: Fraction):
        super().__init__(message, index=resource)
        self.resource = resource
        self.total = total
        self.capacity = capacity


def as_fraction(value: Rational) -> Fraction:
    """Exact conversion; floats are refused so no binary rounding sneaks in."""
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class DemandVector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    @property
    def m(self) -> int:
        return len(self.coords)

    @property
    def dominant(self) -> int:
        # smallest index among the maxima
        best = 0
        for r, c in enumerate(self.coords):
            if c > self.coords[best]:
                best = r
        return best

    def __getitem__(self, r: int) -> Fraction:
        return self.coords[r]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Instance:
    n: int
    demands: tuple[DemandVector, ...]
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "demands", tuple(
            d if isinstance(d, DemandVector) else DemandVector(tuple(d)) for d in self.demands))

    @property
    def m(self) -> int:
        return self.demands[0].m if self.demands else 0

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Rational]], n: int | None = None,
                  note: str = "") -> "Instance":
        """Normalize raw per-task demands and build a validated instance."""
        demands = normalize(rows)
        inst = cls(n=len(demands) if n is None else n, demands=tuple(demands), note=note)
        validate(inst)
        return inst


@dataclass(frozen=True)
class ShareVector:
    step: int
    shares: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "shares", tuple(as_fraction(x) for x in self.shares))

    def __getitem__(self, i: int) -> Fraction:
        return self.shares[i]

    def __len__(self) -> int:
        return len(self.shares)

    def __iter__(self):
        return iter(self.shares)


EMPTY_SHARES = ShareVector(0, ())


@dataclass(frozen=True)
class Allocation:
    step: int
    entries: tuple[tuple[Fraction, ...], ...]

    def column_sums(self) -> list[Fraction]:
        if not self.entries:
            return []
        return [sum(col, Fraction(0)) for col in zip(*self.entries)]


def normalize(raw: Iterable[Sequence[Rational]]) -> list[DemandVector]:
    """Divide every row by its largest entry.

    >>> normalize([[2, 1]])[0].coords
    (Fraction(1, 1), Fraction(1, 2))
    """
    rows = [[as_fraction(v) for v in row] for row in raw]
    out = []
    width = None
    for i, row in enumerate(rows):
        if not row:
            raise RaggedMatrix(f"row {i + 1} is empty", index=i)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedMatrix(f"row {i + 1} has {len(row)} entries, expected {width}", index=i)
        for r, v in enumerate(row):
            if v <= 0:
                raise NonPositiveDemand(
                    f"row {i + 1}, resource {r + 1}: demand {v} is not positive", index=i)
        top = max(row)
        out.append(DemandVector(tuple(v / top for v in row)))
    return out


def validate(instance: Instance) -> None:
    """Raise the first invariant violation found, or return None."""
    if instance.n < 1:
        raise LengthMismatch(f"n must be >= 1, got {instance.n}", index=None)
    if len(instance.demands) != instance.n:
        raise LengthMismatch(
            f"instance declares n={instance.n} but has {len(instance.demands)} demand rows")
    m = instance.demands[0].m
    if m < 1:
        raise RaggedMatrix("demand vectors need at least one resource", index=0)
    for i, d in enumerate(instance.demands):
        if d.m != m:
            raise RaggedMatrix(f"agent {i + 1} has {d.m} resources, expected {m}", index=i)
        for r, c in enumerate(d.coords):
            if c <= 0:
                raise NonPositiveDemand(
                    f"agent {i + 1}, resource {r + 1}: demand {c} is not positive", index=i)
            if c > 1:
                raise NotNormalized(f"agent {i + 1}, resource {r + 1}: {c} > 1", index=i)
        if d.coords[d.dominant] != 1:
            raise NotNormalized(f"agent {i + 1}: largest coordinate is not 1", index=i)


def allocation_from_shares(instance: Instance, shares: ShareVector) -> Allocation:
    k = shares.step
    if k > instance.n or len(shares) != k:
        raise LengthMismatch(f"share vector for step {k} has {len(shares)} entries (n={instance.n})")
    entries = tuple(tuple(x * c for c in instance.demands[i].coords)
                    for i, x in enumerate(shares.shares))
    alloc = Allocation(k, entries)
    cap = Fraction(k, instance.n)
    for r, total in enumerate(alloc.column_sums()):
        if total > cap:
            raise CapacityExceeded(
                f"step {k}: resource {r + 1} allocated {total} > capacity {cap}",
                resource=r, total=total, capacity=cap)
    return alloc


def resource_usage(instance: Instance, shares: Sequence[Fraction]) -> list[Fraction]:
    """Per-resource sum of d_ir * x_i over the agents in ``shares``."""
    usage = [Fraction(0)] * instance.m
    for i, x in enumerate(shares):
        for r, c in enumerate(instance.demands[i].coords):
            usage[r] += c * x
    return usage


def saturated_resources(instance: Instance, shares: ShareVector) -> list[int]:
    cap = Fraction(shares.step, instance.n)
    return [r for r, u in enumerate(resource_usage(instance, shares.shares)) if u == cap]
