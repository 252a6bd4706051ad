from fractions import Fraction as F

import mpmath
import pytest

from mvqj.errors import (DivisionByZero, DomainError, InvalidTolerance, NonConvergent,
                         SingularLowerParameter, TerminationNotDetected)
from mvqj.exact import Mat
from mvqj.lqjacobi import ScalarParams, lqj_poly
from mvqj.polymat import MatPoly
from mvqj.qcalc import (GeometricDecay, as_base, phi21_terminating, qbinom, qderiv_lattice_n,
                        qderiv_lattice_once, qderiv_poly, qintegral, qintegral_poly, qpoch,
                        qpoch_inf)

H = F(1, 2)
I2 = Mat.identity(2)


def test_base_validation():
    for bad in (0, 1, F(3, 2), -H):
        with pytest.raises(DomainError):
            as_base(bad)


def test_qpoch_values():
    assert qpoch(F(7, 3), 0, H) == 1
    assert qpoch(0, 7, H) == 1
    assert qpoch(H, 2, H) == F(3, 8)


def test_qpoch_negative_index():
    # (c;q)_{-n} = 1/(cq^{-n};q)_n
    c, q = F(1, 3), F(2, 5)
    assert qpoch(c, -2, q) == 1 / ((1 - c / q ** 2) * (1 - c / q))
    with pytest.raises(DivisionByZero):
        qpoch(q, -1, q)


@pytest.mark.parametrize("n", range(-3, 4))
@pytest.mark.parametrize("m", range(-3, 4))
def test_qpoch_additivity(n, m):
    c, q = F(5, 7), F(1, 3)
    assert qpoch(c, n, q) * qpoch(c * q ** n, m, q) == qpoch(c, n + m, q)


def test_qbinom():
    assert qbinom(5, 0, H) == 1
    assert qbinom(3, 1, H) == F(7, 4)
    assert qbinom(3, 4, H) == 0
    assert qbinom(3, -1, H) == 0


def test_qpoch_inf():
    assert qpoch_inf(0, H, F(1, 10 ** 12)).rad == 0
    assert qpoch_inf(0, H, F(1, 10 ** 12)).contains(1)
    zero = qpoch_inf(1, H, F(1, 10 ** 12))
    assert zero.rad == 0 and zero.contains(0)
    enc = qpoch_inf(H, H, F(1, 10 ** 12))
    assert enc.rad <= F(1, 10 ** 12)
    oracle = mpmath.qp(0.5, 0.5)  # independent implementation
    assert abs(float(enc.mid) - float(oracle)) < 1e-12
    partial = F(1)
    for k in range(60):
        partial *= 1 - H * H ** k
    assert abs(F(enc.mid) - partial) < F(1, 10 ** 12)
    assert abs(float(enc.mid) - 0.2887880951) < 1e-10
    with pytest.raises(InvalidTolerance):
        qpoch_inf(H, H, 0)


def test_qpoch_inf_negative_argument():
    enc = qpoch_inf(F(-3, 2), F(2, 3), F(1, 10 ** 15))
    assert abs(float(enc.mid) - float(mpmath.qp(-1.5, 2 / 3))) < 1e-12


def test_qderiv_poly():
    assert qderiv_poly(MatPoly.constant(Mat([[1, 2], [3, 4]])), H).is_zero()
    assert qderiv_poly(MatPoly.monomial(1, I2), H) == MatPoly.identity(2)
    assert qderiv_poly(MatPoly.monomial(2, I2), H) == MatPoly.monomial(1, I2 * F(3, 2))


def test_qderiv_lattice():
    f = lambda x: I2 * H ** x  # noqa: E731
    assert qderiv_lattice_n(f, 0, 3, H) == f(3)
    for x in range(4):
        assert qderiv_lattice_n(f, 1, x, H) == I2
    g = lambda x: I2 * H ** (2 * x)  # noqa: E731
    assert qderiv_lattice_n(g, 2, 0, H) == I2 * F(3, 2)


@pytest.mark.parametrize("n", range(6))
def test_explicit_formula_matches_iteration(n):
    q = F(3, 5)
    f = lambda x: F(2, 7) ** x * (x * x - 3) + q ** (3 * x)  # noqa: E731
    g = f
    for _ in range(n):
        g = (lambda h: lambda x: qderiv_lattice_once(h, x, q))(g)
    for x in range(3):
        assert qderiv_lattice_n(f, n, x, q) == g(x)


@pytest.mark.parametrize("n", range(1, 5))
def test_explicit_formula_matches_polynomial_derivative(n):
    q = F(2, 3)
    p = MatPoly.scalar([1, -2, F(1, 3), 5, 0, F(-7, 2)])
    dp = p
    for _ in range(n):
        dp = qderiv_poly(dp, q)
    for x in range(3):
        assert qderiv_lattice_n(lambda y: p(q ** y), n, x, q) == dp(q ** x)


def test_qintegral_examples():
    zero = qintegral(lambda k: 0, H, F(1, 10 ** 12), GeometricDecay(F(1, 2), 0))
    assert zero.contains(0) and zero.rad == 0
    one = qintegral(lambda k: 1, H, F(1, 10 ** 12), GeometricDecay(H, 0))
    assert one.contains(1) and one.rad <= F(1, 10 ** 12)
    two_thirds = qintegral(lambda k: H ** k, H, F(1, 10 ** 12), GeometricDecay(F(1, 4), 0))
    assert two_thirds.contains(F(2, 3)) and two_thirds.rad <= F(1, 10 ** 12)


def test_qintegral_probe_mode_and_failure():
    enc = qintegral(lambda k: H ** k, H, F(1, 10 ** 10))
    assert enc.contains(F(2, 3))
    with pytest.raises(NonConvergent):
        qintegral(lambda k: 3 ** k, H, F(1, 10 ** 6), probe_horizon=50)
    with pytest.raises(InvalidTolerance):
        qintegral(lambda k: 1, H, -1)


def test_qintegral_inverts_qderivative():
    q = F(2, 3)
    f = MatPoly.scalar([F(1, 2), 3, 0, -1])
    value = qintegral_poly(qderiv_poly(f, q), q)
    assert value == f(1) - f(0)
    df = qderiv_poly(f, q)
    # df(z) = 3 - (19/9) z^2, so for k >= 2 the term ratio is at most
    # q * 3 / (3 - (19/9) q^4) < 4/5
    enc = qintegral(lambda k: df(q ** k)[0, 0], q, F(1, 10 ** 12), GeometricDecay(F(4, 5), 2))
    assert enc.contains((f(1) - f(0))[0, 0].re)


def test_phi21_terminating():
    assert phi21_terminating(1, F(1, 3), F(1, 5), F(7, 2), H) == 1
    assert phi21_terminating(H ** -3, F(1, 3), F(1, 5), 0, H) == 1
    q, a, b = H, F(1, 4), H
    val = phi21_terminating(1 / q, a * b * q * q, a * q, q, q)
    # p_1(1; a, b; q) = 1 + (1 - 1/q)(1 - abq^2) q / ((1 - q)(1 - aq)) = 1 - 31/28
    assert val == F(-3, 28)
    assert val == lqj_poly(1, ScalarParams(q, a, b))(1)[0, 0]


def test_phi21_errors():
    with pytest.raises(TerminationNotDetected):
        phi21_terminating(F(3, 7), F(1, 3), F(1, 5), H, H)
    with pytest.raises(SingularLowerParameter):
        phi21_terminating(H ** -2, F(1, 3), 1, H, H)
