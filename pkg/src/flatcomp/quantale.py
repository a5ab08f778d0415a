"""Exact arithmetic for the two base quantales.

``Cost`` models the extended non-negative rationals with ``+`` as tensor and
truncated subtraction as internal hom.  The categorical order of the quantale
is the reverse of the numeric one; everything in this module speaks the
numeric order, so ``cost_meet`` is a minimum and ``cost_join`` a maximum.

Truth values are plain ``bool`` (``0``/``1`` compare equal to them).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Tuple, Union

__all__ = [
    "Cost",
    "CostParseError",
    "ZERO",
    "ONE",
    "INF",
    "parse_cost",
    "cost_tensor",
    "cost_hom",
    "cost_meet",
    "cost_join",
    "truth_tensor",
    "truth_hom",
    "truth_ops",
]


class CostParseError(ValueError):
    pass


_TEXT = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")

CostLike = Union["Cost", int, Fraction, str]


class Cost:
    """An extended non-negative rational, kept in lowest terms.

    ``den == 0`` encodes ``+inf`` (stored as ``1/0``).  Instances are
    immutable and hashable; structural equality is semantic equality.
    """

    __slots__ = ("num", "den")

    def __new__(cls, value: CostLike = 0, den: int = 1) -> "Cost":
        if isinstance(value, Cost):
            if den != 1:
                raise TypeError("den is only accepted with an integer numerator")
            return value
        if isinstance(value, str):
            if den != 1:
                raise TypeError("den is only accepted with an integer numerator")
            return parse_cost(value)
        if isinstance(value, bool):
            raise TypeError("bool is not a cost")
        if isinstance(value, Fraction):
            if den != 1:
                raise TypeError("den is only accepted with an integer numerator")
            num, den = value.numerator, value.denominator
        elif isinstance(value, int):
            num = value
        else:
            raise TypeError(f"cannot build a Cost from {type(value).__name__}")
        if not isinstance(den, int) or isinstance(den, bool):
            raise TypeError("denominator must be an int")
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num < 0:
            raise ValueError("costs are non-negative")
        g = gcd(num, den)
        return _make(num // g, den // g)

    @classmethod
    def inf(cls) -> "Cost":
        return INF

    def __setattr__(self, name, value):
        raise AttributeError("Cost is immutable")

    def __delattr__(self, name):
        raise AttributeError("Cost is immutable")

    def __reduce__(self):
        return (parse_cost, (str(self),))

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def to_fraction(self) -> Fraction:
        if self.den == 0:
            raise OverflowError("inf has no rational value")
        return Fraction(self.num, self.den)

    def __eq__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        return self.num != other.num or self.den != other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        if self.den == 0:
            return False
        if other.den == 0:
            return True
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        if other.den == 0:
            return True
        if self.den == 0:
            return False
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        return other.__lt__(self)

    def __ge__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        return other.__le__(self)

    def __add__(self, other):
        if other.__class__ is not Cost:
            return NotImplemented
        a, b = self.den, other.den
        if a == 0 or b == 0:
            return INF
        if a == b:
            num, den = self.num + other.num, a
        else:
            num, den = self.num * b + other.num * a, a * b
        g = gcd(num, den)
        return _make(num // g, den // g)

    def __bool__(self):
        return self.num != 0

    def __str__(self):
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Cost('{self}')"


def _make(num: int, den: int) -> Cost:
    c = object.__new__(Cost)
    object.__setattr__(c, "num", num)
    object.__setattr__(c, "den", den)
    return c


ZERO = _make(0, 1)
ONE = _make(1, 1)
INF = _make(1, 0)


def parse_cost(text: str) -> Cost:
    """Parse ``"p"``, ``"p/q"`` or ``"inf"``."""
    if not isinstance(text, str):
        raise CostParseError(f"expected a string, got {type(text).__name__}")
    if text.strip().lower() == "inf":
        return INF
    m = _TEXT.match(text)
    if m is None:
        raise CostParseError(f"not a non-negative rational or 'inf': {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise CostParseError(f"zero denominator in {text!r}")
    g = gcd(num, den)
    return _make(num // g, den // g)


def cost_tensor(x: Cost, y: Cost) -> Cost:
    return x + y


def cost_hom(x: Cost, y: Cost) -> Cost:
    """Internal hom ``[x, y] = max(y - x, 0)``; ``[inf, y] = 0``."""
    if x.den == 0:
        return ZERO
    if y.den == 0:
        return INF
    a = y.num * x.den - x.num * y.den
    if a <= 0:
        return ZERO
    den = x.den * y.den
    g = gcd(a, den)
    return _make(a // g, den // g)


def cost_meet(xs: Iterable[Cost]) -> Cost:
    return min(xs, default=INF)


def cost_join(xs: Iterable[Cost]) -> Cost:
    return max(xs, default=ZERO)


def truth_tensor(x, y) -> bool:
    return bool(x) and bool(y)


def truth_hom(x, y) -> bool:
    return (not x) or bool(y)


def truth_ops(x, y) -> Tuple[bool, bool]:
    return truth_tensor(x, y), truth_hom(x, y)
