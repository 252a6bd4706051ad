from decimal import Decimal
from fractions import Fraction as F

import pytest

from mvqj.certified import CertifiedComplex, CertifiedReal
from mvqj.errors import DivisionByZero
from mvqj.exact import GaussRat as GaussRat


def test_from_exact_encloses_value():
    x = CertifiedReal.from_exact(F(1, 3))
    assert x.contains(F(1, 3))
    assert x.rad > 0
    assert CertifiedReal.from_exact(F(3, 8)).rad == 0


def test_arithmetic_is_outward():
    a, b = F(1, 3), F(-2, 7)
    ca, cb = CertifiedReal.from_exact(a, F(1, 10 ** 20)), CertifiedReal.from_exact(b)
    assert (ca + cb).contains(a + b)
    assert (ca - cb).contains(a - b)
    assert (ca * cb).contains(a * b)
    assert (ca / cb).contains(a / b)


def test_division_by_interval_with_zero():
    with pytest.raises((DivisionByZero, ZeroDivisionError)):
        CertifiedReal.from_exact(1) / CertifiedReal.from_exact(0, F(1, 10))


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        CertifiedReal(Decimal(1), Decimal(-1))


def test_complex_enclosure():
    z = CertifiedComplex(CertifiedReal.from_exact(F(1, 3), F(1, 100)),
                         CertifiedReal.from_exact(F(-1, 7), F(1, 100)))
    assert z.contains(GaussRat(F(1, 3), F(-1, 7)))
    w = CertifiedComplex(CertifiedReal.from_exact(F(1, 3)), CertifiedReal.from_exact(F(-1, 7)))
    assert z.encloses(w)
    assert z.overlaps(w)
