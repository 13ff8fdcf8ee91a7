"""Outward-rounded interval arithmetic on mpmath's raw binary floats.

Field operations and sqrt use mpmath's correctly rounded directed modes.
Transcendental endpoints (cos, sin, acos, pi) are computed with extra guard
bits and then padded outward by a relative 2**-(prec + 8), so an enclosure
stays valid even if the library result is off by thousands of ulps at the
guarded precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp
from mpmath.libmp import (
    fone,
    fzero,
    from_int,
    from_rational,
    mpf_abs,
    mpf_acos,
    mpf_add,
    mpf_cmp,
    mpf_cos,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_sin,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
)

from .errors import DomainViolation

GUARD_BITS = 24
# outward pad, relative; still 2**(GUARD_BITS - PAD_BITS) guarded ulps wide
PAD_BITS = 8
MINUS_ONE = from_int(-1)


def to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        if x != fzero:
            raise ValueError("non-finite value in interval")
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _pad_down(x, prec):
    delta = mpf_mul(mpf_abs(x), libmp.from_man_exp(1, -(prec + PAD_BITS)), prec, round_ceiling)
    tiny = libmp.from_man_exp(1, -4 * prec)
    return mpf_sub(mpf_sub(x, delta, prec, round_floor), tiny, prec, round_floor)


def _pad_up(x, prec):
    delta = mpf_mul(mpf_abs(x), libmp.from_man_exp(1, -(prec + PAD_BITS)), prec, round_ceiling)
    tiny = libmp.from_man_exp(1, -4 * prec)
    return mpf_add(mpf_add(x, delta, prec, round_ceiling), tiny, prec, round_ceiling)


def _lt(a, b) -> bool:
    return mpf_cmp(a, b) < 0


def _min(*xs):
    m = xs[0]
    for x in xs[1:]:
        if mpf_cmp(x, m) < 0:
            m = x
    return m


def _max(*xs):
    m = xs[0]
    for x in xs[1:]:
        if mpf_cmp(x, m) > 0:
            m = x
    return m


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with mpmath raw-float endpoints and a working precision."""

    lo: tuple
    hi: tuple
    prec: int

    @classmethod
    def point(cls, q: Fraction | int, prec: int) -> "Interval":
        q = Fraction(q)
        return cls(
            from_rational(q.numerator, q.denominator, prec, round_floor),
            from_rational(q.numerator, q.denominator, prec, round_ceiling),
            prec,
        )

    @classmethod
    def pi(cls, prec: int) -> "Interval":
        g = prec + GUARD_BITS
        return cls(_pad_down(mpf_pi(g, round_floor), prec), _pad_up(mpf_pi(g, round_ceiling), prec), prec)

    @property
    def bounds(self) -> tuple[Fraction, Fraction]:
        return to_fraction(self.lo), to_fraction(self.hi)

    @property
    def width(self) -> Fraction:
        lo, hi = self.bounds
        return hi - lo

    def contains(self, q: Fraction) -> bool:
        lo, hi = self.bounds
        return lo <= q <= hi

    def __add__(self, other: "Interval") -> "Interval":
        p = self.prec
        return Interval(mpf_add(self.lo, other.lo, p, round_floor), mpf_add(self.hi, other.hi, p, round_ceiling), p)

    def __neg__(self) -> "Interval":
        return Interval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        p = self.prec
        ends = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(
            _min(*[mpf_mul(a, b, p, round_floor) for a, b in ends]),
            _max(*[mpf_mul(a, b, p, round_ceiling) for a, b in ends]),
            p,
        )

    def __truediv__(self, other: "Interval") -> "Interval":
        if mpf_cmp(other.lo, fzero) <= 0 <= mpf_cmp(other.hi, fzero):
            raise DomainViolation("division by an interval containing zero")
        p = self.prec
        ends = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(
            _min(*[mpf_div(a, b, p, round_floor) for a, b in ends]),
            _max(*[mpf_div(a, b, p, round_ceiling) for a, b in ends]),
            p,
        )

    def sqrt(self) -> "Interval":
        if _lt(self.hi, fzero):
            raise DomainViolation("sqrt of a negative interval")
        lo = fzero if _lt(self.lo, fzero) else self.lo
        p = self.prec
        return Interval(mpf_sqrt(lo, p, round_floor), mpf_sqrt(self.hi, p, round_ceiling), p)

    def acos(self) -> "Interval":
        if _lt(self.hi, MINUS_ONE) or _lt(fone, self.lo):
            raise DomainViolation("acos argument interval misses [-1, 1]")
        lo = _max(self.lo, MINUS_ONE)
        hi = _min(self.hi, fone)
        p, g = self.prec, self.prec + GUARD_BITS
        # acos is decreasing
        return Interval(
            _max(fzero, _pad_down(mpf_acos(hi, g, round_floor), p)),
            _pad_up(mpf_acos(lo, g, round_ceiling), p),
            p,
        )

    def _periodic(self, fn, offset: Fraction) -> "Interval":
        # fn has extrema (-1)**k at (k + offset)*pi
        p, g = self.prec, self.prec + GUARD_BITS
        a = _pad_down(fn(self.lo, g, round_floor), p)
        b = _pad_down(fn(self.hi, g, round_floor), p)
        c = _pad_up(fn(self.lo, g, round_ceiling), p)
        d = _pad_up(fn(self.hi, g, round_ceiling), p)
        lo, hi = _min(a, b), _max(c, d)
        pi = Interval.pi(p)
        flo, fhi = libmp.to_float(self.lo), libmp.to_float(self.hi)
        if not (math.isfinite(flo) and math.isfinite(fhi)) or fhi - flo > 7.0:
            return Interval(MINUS_ONE, fone, p)
        for k in range(math.floor(flo / math.pi) - 2, math.ceil(fhi / math.pi) + 3):
            spot = pi * Interval.point(k + offset, p)
            if mpf_cmp(spot.hi, self.lo) >= 0 and mpf_cmp(spot.lo, self.hi) <= 0:
                if k % 2 == 0:
                    hi = fone
                else:
                    lo = MINUS_ONE
        return Interval(_max(lo, MINUS_ONE), _min(hi, fone), p)

    def cos(self) -> "Interval":
        return self._periodic(mpf_cos, Fraction(0))

    def sin(self) -> "Interval":
        return self._periodic(mpf_sin, Fraction(1, 2))

    def __repr__(self) -> str:
        return f"Interval([{libmp.to_str(self.lo, 20)}, {libmp.to_str(self.hi, 20)}], prec={self.prec})"

