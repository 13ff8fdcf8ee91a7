"""A small closed grammar of real-number expressions with certified evaluation.

Expressions are built from rationals, rational multiples of pi, field
operations, sqrt, cos, sin, cot and acos. Construction folds everything that
is exactly rational (including cos/sin of rational multiples of pi at the
angles where they are rational), so exact grid points never reach the
interval evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainViolation, TieUnresolved
from .interval import Interval

Number = Union[int, Fraction]

START_PREC = 64
MAX_PREC = 1 << 14


class Expr:
    def __add__(self, other) -> "Expr":
        return add(self, lift(other))

    def __radd__(self, other) -> "Expr":
        return add(lift(other), self)

    def __sub__(self, other) -> "Expr":
        return add(self, neg(lift(other)))

    def __rsub__(self, other) -> "Expr":
        return add(lift(other), neg(self))

    def __mul__(self, other) -> "Expr":
        return mul(self, lift(other))

    def __rmul__(self, other) -> "Expr":
        return mul(lift(other), self)

    def __truediv__(self, other) -> "Expr":
        return div(self, lift(other))

    def __rtruediv__(self, other) -> "Expr":
        return div(lift(other), self)

    def __neg__(self) -> "Expr":
        return neg(self)

    def interval(self, prec: int) -> Interval:
        raise NotImplementedError

    def __float__(self) -> float:
        lo, hi = self.interval(80).bounds
        return float((lo + hi) / 2)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def interval(self, prec):
        return Interval.point(self.value, prec)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=True)
class PiMul(Expr):
    """``coef * pi``."""

    coef: Fraction

    def interval(self, prec):
        return Interval.pi(prec) * Interval.point(self.coef, prec)

    def __str__(self):
        return f"{self.coef}*pi"


@dataclass(frozen=True, eq=True)
class Add(Expr):
    a: Expr
    b: Expr

    def interval(self, prec):
        return self.a.interval(prec) + self.b.interval(prec)

    def __str__(self):
        return f"({self.a} + {self.b})"


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    a: Expr

    def interval(self, prec):
        return -self.a.interval(prec)

    def __str__(self):
        return f"-{self.a}"


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    a: Expr
    b: Expr

    def interval(self, prec):
        if self.a == self.b:
            return _square(self.a.interval(prec))
        return self.a.interval(prec) * self.b.interval(prec)

    def __str__(self):
        return f"({self.a} * {self.b})"


@dataclass(frozen=True, eq=True)
class Div(Expr):
    a: Expr
    b: Expr

    def interval(self, prec):
        return self.a.interval(prec) / self.b.interval(prec)

    def __str__(self):
        return f"({self.a} / {self.b})"


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    arg: Expr

    def interval(self, prec):
        x = self.arg.interval(prec)
        if self.name == "cos":
            return x.cos()
        if self.name == "sin":
            return x.sin()
        if self.name == "cot":
            return x.cos() / x.sin()
        if self.name == "acos":
            return x.acos()
        if self.name == "sqrt":
            return x.sqrt()
        raise ValueError(f"unknown function {self.name}")

    def __str__(self):
        return f"{self.name}({self.arg})"


def _square(x: Interval) -> Interval:
    sq = x * x
    lo, _ = x.bounds
    _, hi = x.bounds
    if lo <= 0 <= hi:
        return Interval(Interval.point(0, x.prec).lo, sq.hi, x.prec)
    return sq


def lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} in an exact expression; pass a Fraction")


def const(x: Number) -> Const:
    return Const(Fraction(x))


def pi_times(coef: Number) -> Expr:
    coef = Fraction(coef)
    return Const(Fraction(0)) if coef == 0 else PiMul(coef)


PI = PiMul(Fraction(1))


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if isinstance(a, Const) and a.value == 0:
        return b
    if isinstance(b, Const) and b.value == 0:
        return a
    if isinstance(a, PiMul) and isinstance(b, PiMul):
        return pi_times(a.coef + b.coef)
    if isinstance(b, Neg) and b.a == a:
        return Const(Fraction(0))
    return Add(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, PiMul):
        return PiMul(-a.coef)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Const):
            if x.value == 0:
                return Const(Fraction(0))
            if x.value == 1:
                return y
            if isinstance(y, PiMul):
                return pi_times(x.value * y.coef)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(b, Const):
        if b.value == 0:
            raise DomainViolation("division by exact zero")
        if isinstance(a, Const):
            return Const(a.value / b.value)
        if isinstance(a, PiMul):
            return pi_times(a.coef / b.value)
        if b.value == 1:
            return a
    if isinstance(a, PiMul) and isinstance(b, PiMul):
        return Const(a.coef / b.coef)
    if isinstance(a, Const) and a.value == 0:
        return Const(Fraction(0))
    return Div(a, b)


# cos(r*pi) is rational only for these residues of r modulo 2 (Niven)
_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
    Fraction(4, 3): Fraction(-1, 2),
    Fraction(3, 2): Fraction(0),
    Fraction(5, 3): Fraction(1, 2),
}


def _angle_coef(a: Expr) -> Fraction | None:
    if isinstance(a, PiMul):
        return a.coef
    if isinstance(a, Const) and a.value == 0:
        return Fraction(0)
    return None


def cos(a: Expr) -> Expr:
    r = _angle_coef(a)
    if r is not None:
        v = _RATIONAL_COS.get(r % 2)
        if v is not None:
            return Const(v)
    return Func("cos", a)


def sin(a: Expr) -> Expr:
    r = _angle_coef(a)
    if r is not None:
        v = _RATIONAL_COS.get((r - Fraction(1, 2)) % 2)
        if v is not None:
            return Const(v)
    return Func("sin", a)


def cot(a: Expr) -> Expr:
    c, s = cos(a), sin(a)
    if isinstance(c, Const) and isinstance(s, Const):
        return div(c, s)
    return Func("cot", a)


_RATIONAL_ACOS = {
    Fraction(1): Fraction(0),
    Fraction(1, 2): Fraction(1, 3),
    Fraction(0): Fraction(1, 2),
    Fraction(-1, 2): Fraction(2, 3),
    Fraction(-1): Fraction(1),
}


def acos(a: Expr) -> Expr:
    if isinstance(a, Const):
        if not -1 <= a.value <= 1:
            raise DomainViolation(f"acos({a.value}) is undefined")
        if a.value in _RATIONAL_ACOS:
            return pi_times(_RATIONAL_ACOS[a.value])
    return Func("acos", a)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt(a: Expr) -> Expr:
    if isinstance(a, Const):
        if a.value < 0:
            raise DomainViolation(f"sqrt({a.value}) is undefined")
        r = _exact_sqrt(a.value)
        if r is not None:
            return Const(r)
    return Func("sqrt", a)


def eval_interval(e: Expr, precision_bits: int) -> tuple[Fraction, Fraction]:
    """Rigorous enclosure ``(lo, hi)`` of the value of ``e``."""
    return e.interval(precision_bits).bounds


def _directed(e: Expr, D: int, pick) -> Fraction:
    if D < 1:
        raise ValueError("denominator D must be >= 1")
    e = lift(e)
    if isinstance(e, Const):
        return Fraction(pick(e.value * D), D)
    prec = START_PREC
    while prec <= MAX_PREC:
        lo, hi = eval_interval(e, prec)
        a, b = pick(lo * D), pick(hi * D)
        if a == b:
            return Fraction(a, D)
        prec *= 2
    raise TieUnresolved(f"could not round {e} to the 1/{D} grid within {MAX_PREC} bits")


def round_up(e: Expr, D: int) -> Fraction:
    """ceil(value * D) / D, certified."""
    return _directed(e, D, math.ceil)


def round_down(e: Expr, D: int) -> Fraction:
    """floor(value * D) / D, certified."""
    return _directed(e, D, math.floor)


def compare(a: Expr, b: Expr) -> int:
    """Certified sign of ``a - b``; exact ties are detected only when they fold to a constant."""
    d = lift(a) - lift(b)
    if isinstance(d, Const):
        return (d.value > 0) - (d.value < 0)
    prec = START_PREC
    while prec <= MAX_PREC:
        lo, hi = eval_interval(d, prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2
    raise TieUnresolved(f"cannot decide the sign of {d}")


def discretization_grid(t: int) -> list[Expr]:
    """a_0 = 19pi/180, ..., a_t = pi/2, equally spaced, as exact multiples of pi."""
    if t < 1:
        raise ValueError("t must be >= 1")
    a0, at = Fraction(19, 180), Fraction(1, 2)
    return [pi_times(a0 + i * (at - a0) / t) for i in range(t + 1)]
