"""Midpoint-radius enclosures of real numbers.

Arithmetic is carried out on the exact rational values of the decimal
midpoints and radii; only the final conversion back to decimals rounds,
and that rounding error is added to the radius (rounded toward +inf).
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

DIGITS = 50

_NEAREST = Context(prec=DIGITS, rounding=ROUND_HALF_EVEN)
_UP = Context(prec=DIGITS, rounding=ROUND_CEILING)


def _dec(x: Fraction, ctx: Context) -> Decimal:
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


@dataclass(frozen=True)
class CertifiedReal:
    """The closed interval ``[mid - rad, mid + rad]``."""

    mid: Decimal
    rad: Decimal

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def from_exact(cls, value, extra_rad=0) -> "CertifiedReal":
        """Enclose ``value +- extra_rad`` (both exact rationals)."""
        value = Fraction(value)
        extra = Fraction(extra_rad)
        mid = _dec(value, _NEAREST)
        err = abs(value - Fraction(mid)) + extra
        rad = _dec(err, _UP) if err else Decimal(0)
        return cls(mid, rad)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mid) - Fraction(self.rad)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mid) + Fraction(self.rad)

    def contains(self, x) -> bool:
        return abs(Fraction(x) - Fraction(self.mid)) <= Fraction(self.rad)

    def encloses(self, other: "CertifiedReal") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def overlaps(self, other: "CertifiedReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __add__(self, other):
        other = _lift(other)
        return CertifiedReal.from_exact(Fraction(self.mid) + Fraction(other.mid),
                                        Fraction(self.rad) + Fraction(other.rad))

    __radd__ = __add__

    def __neg__(self):
        return CertifiedReal(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        am, ar = Fraction(self.mid), Fraction(self.rad)
        bm, br = Fraction(other.mid), Fraction(other.rad)
        return CertifiedReal.from_exact(am * bm, abs(am) * br + abs(bm) * ar + ar * br)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        lo, hi = other.lower, other.upper
        if lo <= 0 <= hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        cands = [a / b for a in (self.lower, self.upper) for b in (lo, hi)]
        return CertifiedReal.from_bounds(min(cands), max(cands))

    @classmethod
    def from_bounds(cls, lo, hi) -> "CertifiedReal":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls.from_exact((lo + hi) / 2, (hi - lo) / 2)

    def __float__(self):
        return float(self.mid)

    def __str__(self):
        return f"{self.mid} +- {self.rad}"


def _lift(x) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    if hasattr(x, "real_value"):
        x = x.real_value()
    return CertifiedReal.from_exact(x)


@dataclass(frozen=True)
class CertifiedComplex:
    """Rectangular enclosure ``re + i*im`` of a complex number."""

    re: CertifiedReal
    im: CertifiedReal

    @property
    def rad(self) -> Decimal:
        return max(self.re.rad, self.im.rad)

    def contains(self, z) -> bool:
        zr = Fraction(getattr(z, "re", z))
        zi = Fraction(getattr(z, "im", 0))
        return self.re.contains(zr) and self.im.contains(zi)

    def encloses(self, other: "CertifiedComplex") -> bool:
        return self.re.encloses(other.re) and self.im.encloses(other.im)

    def overlaps(self, other: "CertifiedComplex") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def scaled(self, c: CertifiedReal) -> "CertifiedComplex":
        return CertifiedComplex(self.re * c, self.im * c)

    def __str__(self):
        return f"({self.re}) + i({self.im})"
