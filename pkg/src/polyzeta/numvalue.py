"""Floating-point values carrying an absolute error radius."""

from __future__ import annotations

import math
from dataclasses import dataclass

# unit roundoff of IEEE double
UNIT = 2.0 ** -53

# absolute slack used by every pass/fail decision on numeric values
ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class NumValue:
    """A double ``value`` with a bound ``err`` on ``|value - truth|``.

    Arithmetic propagates bounds conservatively: the bounds of the operands
    are combined and a rounding margin for the operation itself is added.
    """

    value: float
    err: float = 0.0

    def __post_init__(self):
        if not self.err >= 0.0:
            raise ValueError(f"error bound must be non-negative, got {self.err!r}")

    @classmethod
    def exact(cls, x) -> "NumValue":
        v = float(x)
        return cls(v, abs(v) * UNIT)

    def _round(self, v: float, err: float) -> "NumValue":
        return NumValue(v, err + 2 * UNIT * abs(v))

    def __add__(self, other):
        other = _lift(other)
        return self._round(self.value + other.value, self.err + other.err)

    __radd__ = __add__

    def __neg__(self):
        return NumValue(-self.value, self.err)

    def __sub__(self, other):
        other = _lift(other)
        return self._round(self.value - other.value, self.err + other.err)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        err = (abs(self.value) * other.err + abs(other.value) * self.err
               + self.err * other.err)
        return self._round(self.value * other.value, err)

    __rmul__ = __mul__

    @property
    def lo(self) -> float:
        return self.value - self.err

    @property
    def hi(self) -> float:
        return self.value + self.err

    def contains(self, x: float, floor: float = ABS_FLOOR) -> bool:
        return abs(self.value - x) <= self.err + floor

    def overlaps(self, other, floor: float = ABS_FLOOR) -> bool:
        other = _lift(other)
        return abs(self.value - other.value) <= self.err + other.err + floor

    def to_json(self) -> dict:
        return {"value": self.value, "err": self.err}

    def __format__(self, spec):
        return f"{format(self.value, spec or '.12g')} ± {self.err:.2g}"

    def __str__(self):
        return format(self, "")


def _lift(x) -> NumValue:
    if isinstance(x, NumValue):
        return x
    if isinstance(x, (int, float)) or hasattr(x, "denominator"):
        return NumValue.exact(x)
    raise TypeError(f"cannot combine NumValue with {type(x).__name__}")


def nsum(values) -> NumValue:
    """Sum of NumValues with one rounding margin per addition."""
    total = NumValue(0.0, 0.0)
    for v in values:
        total = total + v
    return total


def isclose_abs(a: NumValue, b: NumValue, tol: float) -> bool:
    """True when the centres differ by at most ``tol``."""
    return math.fabs(a.value - b.value) <= tol
