"""Scalar little q-Jacobi polynomials ``p_n(z; a, b; q)``.

Norms and moments are returned as ratios to ``m_0(a, b)`` so that they stay
rational; ``m_0`` itself is available as an enclosure from :func:`lqj_m0`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certified import CertifiedReal
from .errors import DomainError
from .exact import ONE, GaussRat, Mat, gr
from .polymat import LaurentMatPoly, MatPoly
from .qcalc import as_base, qpoch, qpoch_inf
from .qdiffop import QDiffOp


@dataclass(frozen=True)
class ScalarParams:
    q: GaussRat
    a: GaussRat
    b: GaussRat

    def __init__(self, q, a, b):
        q, a, b = as_base(q), gr(a), gr(b)
        if not (a.is_real and b.is_real):
            raise DomainError("a and b must be real")
        if not (0 < a < ONE / q):
            raise DomainError(f"need 0 < a < 1/q, got a={a}")
        if not b < ONE / q:
            raise DomainError(f"need b < 1/q, got b={b}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def with_a(self, a) -> "ScalarParams":
        return ScalarParams(self.q, a, self.b)


def lqj_coeffs(n: int, p: ScalarParams) -> list[GaussRat]:
    """Power-basis coefficients of ``p_n(z)``.

    ``p_n(z) = 2phi1(q^{-n}, abq^{n+1}; aq; q, qz)``; the ``z^k`` coefficient is
    ``(q^{-n}, abq^{n+1}; q)_k q^k / (q, aq; q)_k``.
    """
    q, a, b = p.q, p.a, p.b
    u1, u2, lo = q ** (-n), a * b * q ** (n + 1), a * q
    out, t = [ONE], ONE
    for k in range(n):
        qk = q ** k
        t = t * (ONE - u1 * qk) * (ONE - u2 * qk) * q / ((ONE - q ** (k + 1)) * (ONE - lo * qk))
        out.append(t)
    return out


def lqj_poly(n: int, p: ScalarParams) -> MatPoly:
    return MatPoly.scalar(lqj_coeffs(n, p))


def lqj_leading(n: int, p: ScalarParams) -> GaussRat:
    """Leading coefficient ``(-1)^n q^{-n(n-1)/2} (abq^{n+1};q)_n / (aq;q)_n``."""
    q, a, b = p.q, p.a, p.b
    sign = -1 if n % 2 else 1
    return sign * q ** (-(n * (n - 1) // 2)) * qpoch(a * b * q ** (n + 1), n, q) / qpoch(a * q, n, q)


def lqj_monic(n: int, p: ScalarParams) -> MatPoly:
    return lqj_poly(n, p) * (ONE / lqj_leading(n, p))


def lqj_moment_ratio(n: int, p: ScalarParams) -> GaussRat:
    """``m_n(a,b) / m_0(a,b) = (aq;q)_n / (abq^2;q)_n``."""
    q, a, b = p.q, p.a, p.b
    return qpoch(a * q, n, q) / qpoch(a * b * q * q, n, q)


def lqj_norm_ratio(n: int, p: ScalarParams) -> GaussRat:
    """``h_n(a,b;q) / m_0(a,b)``."""
    q, a, b = p.q, p.a, p.b
    ab = a * b
    num = (ONE - ab * q) * (a * q) ** n * qpoch(q, n, q) * qpoch(b * q, n, q)
    den = (ONE - ab * q ** (2 * n + 1)) * qpoch(a * q, n, q) * qpoch(ab * q, n, q)
    return num / den


def lqj_m0(p: ScalarParams, tol=Fraction(1, 10 ** 30)) -> CertifiedReal:
    """Enclosure of ``m_0(a,b) = (abq^2;q)_inf / (aq;q)_inf``."""
    q, a, b = p.q, p.a, p.b
    tol = Fraction(tol)
    num = qpoch_inf(a * b * q * q, q, tol / 4)
    den = qpoch_inf(a * q, q, tol / 4)
    return num / den


def lqj_recurrence(n: int, p: ScalarParams) -> tuple[GaussRat, GaussRat]:
    """``(A_n, C_n)`` with ``-z p_n = A_n p_{n+1} - (A_n + C_n) p_n + C_n p_{n-1}``."""
    q, a, b = p.q, p.a, p.b
    ab = a * b
    big_a = q ** n * (ONE - a * q ** (n + 1)) * (ONE - ab * q ** (n + 1)) / (
        (ONE - ab * q ** (2 * n + 1)) * (ONE - ab * q ** (2 * n + 2)))
    big_c = a * q ** n * (ONE - q ** n) * (ONE - b * q ** n) / (
        (ONE - ab * q ** (2 * n)) * (ONE - ab * q ** (2 * n + 1)))
    return big_a, big_c


def lqj_eigenvalue(n: int, p: ScalarParams) -> GaussRat:
    """``q^{-n}(1 - q^n)(1 - abq^{n+1})``."""
    q = p.q
    return q ** (-n) * (ONE - q ** n) * (ONE - p.a * p.b * q ** (n + 1))


def lqj_operator(p: ScalarParams) -> QDiffOp:
    """``a(bq - z^{-1}) E_1 - ((abq+1) - (1+a) z^{-1}) E_0 + (1 - z^{-1}) E_{-1}``."""
    q, a, b = p.q, p.a, p.b

    def lp(c0, c1):
        return LaurentMatPoly([Mat([[c0]]), Mat([[c1]])], 1)

    return QDiffOp({
        1: lp(a * b * q, -a),
        0: lp(-(a * b * q + ONE), ONE + a),
        -1: lp(ONE, -ONE),
    }, q)


def lqj_weight_value(x: int, p: ScalarParams) -> GaussRat:
    """Lattice weight ``a^x (bq;q)_x / (q;q)_x`` (the ``q^x`` factor sits in the inner product)."""
    q = p.q
    return p.a ** x * qpoch(p.b * q, x, q) / qpoch(q, x, q)
