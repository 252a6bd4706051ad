from fractions import Fraction as F

import pytest

from mvqj.certified import CertifiedReal
from mvqj.errors import CompatibilityViolated, SingularMomentMatrix, SizeMismatch
from mvqj.exact import GaussRat, Mat
from mvqj.lqjacobi import ScalarParams, lqj_moment_ratio, lqj_monic
from mvqj.mvlqj import Family, FamilyParams
from mvqj.polymat import LaurentMatPoly, MatPoly
from mvqj.weights import (MomentProvider, construct_weight_from_symmetry, gram_schmidt_monic,
                          inner_product_exact, inner_product_series, reducibility_check)

I2 = Mat.identity(2)
TOL = F(1, 10 ** 14)


def test_inner_product_basic(fam1):
    m = fam1.moments
    assert inner_product_exact(MatPoly.identity(2), MatPoly.identity(2), m) == m(0)
    assert inner_product_exact(MatPoly.monomial(1, I2), MatPoly.identity(2), m) == m(1)
    assert m(0)[0, 1] == F(-3, 31)
    with pytest.raises(SizeMismatch):
        inner_product_exact(MatPoly.identity(1), MatPoly.identity(2), m)


def test_sesquilinear(fam2):
    m = fam2.moments
    c = Mat([[1, GaussRat(0, 2)], [F(1, 3), GaussRat(1, -1)]])
    p = MatPoly([Mat([[1, 2], [0, 1]]), Mat([[GaussRat(0, 1), 0], [1, 1]])])
    q = MatPoly([I2, I2, Mat([[0, 1], [F(1, 2), 0]])])
    base = inner_product_exact(p, q, m)
    assert inner_product_exact(c * p, q, m) == c @ base
    assert inner_product_exact(p, c * q, m) == base @ c.H
    assert inner_product_exact(q, p, m) == base.H


def test_series_zero(fam1):
    z = inner_product_series(MatPoly.zero(2), MatPoly.zero(2), fam1.weight(), TOL)
    assert all(e.rad == 0 and e.contains(0) for row in z for e in row)


def test_series_encloses_exact(fam):
    w = fam.weight()
    for n in range(3):
        enc = inner_product_series(MatPoly.monomial(n, I2), MatPoly.identity(2), w, TOL)
        exact = fam.moment_matrix(n)
        for i in range(2):
            for j in range(2):
                e = exact[i, j]
                assert enc[i][j].re.overlaps(_times(w.scale, e.re))
                assert enc[i][j].im.overlaps(_times(w.scale, e.im))
                assert enc[i][j].rad <= TOL


def _times(scale, x):
    return scale * CertifiedReal.from_exact(x)


def test_gram_schmidt_scalar():
    sp = ScalarParams(F(2, 3), F(1, 3), -1)
    mp = MomentProvider(lambda k: Mat([[lqj_moment_ratio(k, sp)]]), 1)
    polys = gram_schmidt_monic(6, mp)
    assert polys[0] == MatPoly.identity(1)
    assert all(polys[n] == lqj_monic(n, sp) for n in range(7))


def test_gram_schmidt_order_independent(fam2):
    assert gram_schmidt_monic(4, fam2.moments) == gram_schmidt_monic(4, fam2.moments, reverse=True)


def test_gram_schmidt_orthogonal_and_positive(fam1):
    polys = gram_schmidt_monic(4, fam1.moments)
    for m in range(5):
        for n in range(5):
            ip = inner_product_exact(polys[m], polys[n], fam1.moments)
            if m == n:
                assert ip.is_positive_definite()
            else:
                assert ip.is_zero()


def test_singular_moments():
    mp = MomentProvider(lambda k: Mat([[1]]), 1)  # point mass at 1
    with pytest.raises(SingularMomentMatrix):
        gram_schmidt_monic(2, mp)


def test_positive_norm_for_random_polynomials(fam2):
    p = MatPoly([Mat([[1, GaussRat(0, 3)], [2, F(-1, 2)]]), I2, Mat([[2, 1], [0, 1]])])
    assert inner_product_exact(p, p, fam2.moments).is_positive_definite()


def test_reducibility():
    diag = lambda x: Mat.diag([F(1, 2) ** x, F(1, 3) ** x])  # noqa: E731
    assert reducibility_check(diag, 5).reducible_candidate
    f0 = Family(FamilyParams(F(1, 2), F(1, 4), F(1, 2), 0))
    assert reducibility_check(f0.weight_profile, 5).reducible_candidate
    f1 = Family(FamilyParams(F(1, 2), F(1, 4), F(1, 2), 1))
    verdict = reducibility_check(f1.weight_profile, 5)
    assert not verdict.reducible_candidate and verdict.witness == (1, 2)


def test_construct_weight(fam):
    op = fam.operator()
    w = construct_weight_from_symmetry(op.coefficient(1), op.coefficient(-1),
                                       fam.s_squared, 6, fam.q)
    assert w(0) == I2
    assert all(w(x) == fam.weight_profile(x) for x in range(7))


def test_construct_weight_incompatible(fam1):
    op = fam1.operator()
    doubled = op.coefficient(1) * 2
    with pytest.raises(CompatibilityViolated):
        construct_weight_from_symmetry(doubled, op.coefficient(-1), fam1.s_squared, 3, fam1.q)


def test_laurent_scaling_helper():
    lp = LaurentMatPoly([I2, I2])
    assert (lp * 2)(1) == I2 * 4
