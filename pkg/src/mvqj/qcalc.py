"""q-Pochhammer symbols, q-binomials, q-derivatives and q-integrals.

Finite quantities are exact :class:`~mvqj.exact.GaussRat` values. Infinite
products and sums return :class:`~mvqj.certified.CertifiedReal` enclosures
whose radii come from explicit geometric tail bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .certified import CertifiedReal
from .errors import (DivisionByZero, DomainError, InvalidTolerance, NonConvergent,
                     SingularLowerParameter, TerminationNotDetected)
from .exact import ONE, ZERO, GaussRat, Mat, gr
from .polymat import MatPoly


def as_base(q) -> GaussRat:
    """Validate a base ``0 < q < 1`` (exact rational)."""
    q = gr(q)
    if not q.is_real or not (0 < q < 1):
        raise DomainError(f"base q must satisfy 0 < q < 1, got {q}")
    return q


def qpoch(c, n: int, q) -> GaussRat:
    """``(c;q)_n`` for any integer ``n``.

    Negative ``n`` uses ``(c;q)_{-n} = 1/(c q^{-n}; q)_n``.

    >>> qpoch(Fraction(1, 2), 2, Fraction(1, 2))
    GaussRat('3/8', '0')
    """
    c, q = gr(c), gr(q)
    if n >= 0:
        out, cq = ONE, c
        for _ in range(n):
            out = out * (ONE - cq)
            cq = cq * q
        return out
    m = -n
    denom = qpoch(c * q ** n, m, q)
    if not denom:
        raise DivisionByZero(f"(c;q)_{n} has a vanishing factor")
    return ONE / denom


def qpoch_multi(cs, n: int, q) -> GaussRat:
    """``(c_1, ..., c_l; q)_n``."""
    out = ONE
    for c in cs:
        out = out * qpoch(c, n, q)
    return out


def qbinom(n: int, k: int, q) -> GaussRat:
    """Gaussian binomial coefficient; zero outside ``0 <= k <= n``."""
    if k < 0 or k > n:
        return ZERO
    q = gr(q)
    return qpoch(q, n, q) / (qpoch(q, k, q) * qpoch(q, n - k, q))


def qpoch_inf(c, q, tol) -> CertifiedReal:
    """Enclosure of ``(c;q)_inf = prod_{k>=0} (1 - c q^k)`` for real ``c``.

    With the partial product ``P_K`` over ``k < K`` and ``t = |c| q^K < 1``,
    ``|log prod_{k>=K}(1 - c q^k)| <= sum_{k>=K} |c|q^k/(1-|c|q^k)
    <= t / ((1-q)(1-t)) =: tau``, so ``|P - P_K| <= |P_K| (e^tau - 1)
    <= |P_K| tau/(1-tau)`` for ``tau < 1``.
    """
    q = as_base(q)
    c = gr(c).real_value()
    tol = Fraction(tol)
    if tol <= 0:
        raise InvalidTolerance("tolerance must be positive")
    qf = q.real_value()
    if c == 0:
        return CertifiedReal.from_exact(1)
    partial = Fraction(1)
    cq = c
    k = 0
    budget = tol / 2  # other half absorbs decimal rounding of the midpoint
    while True:
        t = abs(cq)
        if t < 1:
            tau = t / ((1 - qf) * (1 - t))
            if tau < 1:
                bound = abs(partial) * tau / (1 - tau)
                if bound <= budget:
                    return CertifiedReal.from_exact(partial, bound)
        factor = 1 - cq
        if factor == 0:
            return CertifiedReal.from_exact(0)
        partial *= factor
        cq *= qf
        k += 1
        if k > 100000:
            raise NonConvergent("infinite product did not reach tolerance")


def qderiv_poly(f: MatPoly, q) -> MatPoly:
    """Exact ``D_q`` on a matrix polynomial: ``c_k z^k -> c_k [k]_q z^{k-1}``."""
    q = gr(q)
    out = []
    for k in range(1, len(f.coeffs)):
        out.append(f.coeffs[k] * ((ONE - q ** k) / (ONE - q)))
    return MatPoly(out, f.size)


@dataclass(frozen=True)
class LatticeFunction:
    """A rule ``x -> value`` on the lattice points ``q^x``, ``x = 0, 1, 2, ...``."""

    rule: Callable[[int], object]

    def __call__(self, x: int):
        return self.rule(x)


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def qderiv_lattice_n(f: Callable[[int], object], n: int, x: int, q):
    """``(D_q^n f)(q^x)`` from the values ``f(q^{x+j})``, ``j = 0..n``.

    Uses ``(D_q^n f)(z) = ((1-q)^n q^{n(n-1)/2} z^n)^{-1}
    sum_j (-1)^j [n, j]_q q^{(n-j)(n-j-1)/2} f(q^j z)``.
    """
    q = gr(q)
    if n == 0:
        return f(x)
    acc = None
    for j in range(n + 1):
        w = qbinom(n, j, q) * q ** _binom2(n - j)
        if j % 2:
            w = -w
        term = f(x + j) * w
        acc = term if acc is None else acc + term
    denom = (ONE - q) ** n * q ** _binom2(n) * q ** (n * x)
    return acc * (ONE / denom)


def qderiv_lattice_once(f: Callable[[int], object], x: int, q):
    """Two-point rule ``(f(q^x) - f(q^{x+1})) / ((1-q) q^x)``."""
    q = gr(q)
    return (f(x) - f(x + 1)) * (ONE / ((ONE - q) * q ** x))


@dataclass(frozen=True)
class GeometricDecay:
    """Certificate ``|t_{k+1}| <= ratio * |t_k|`` for every ``k >= onset``."""

    ratio: Fraction
    onset: int = 0


def qintegral(f: Callable[[int], object], q, tol, certificate: GeometricDecay | None = None,
              probe_horizon: int = 2000, probe_window: int = 8) -> CertifiedReal:
    """Enclosure of ``(1-q) sum_k f(q^k) q^k`` for a real scalar lattice function.

    With a certificate the tail after ``K >= onset`` is bounded by
    ``|t_K| r / (1 - r)``. Without one the term ratios are probed over a
    sliding window and the largest observed ratio is used as ``r``; that mode
    is a heuristic and raises :class:`NonConvergent` if no window with all
    ratios below one is found before ``probe_horizon``.
    """
    q = as_base(q)
    qf = q.real_value()
    tol = Fraction(tol)
    if tol <= 0:
        raise InvalidTolerance("tolerance must be positive")
    budget = tol / (2 * (1 - qf))
    total = Fraction(0)
    prev = None
    ratios: list[Fraction] = []
    qk = Fraction(1)
    for k in range(probe_horizon + 1):
        t = gr(f(k)).real_value() * qk
        total += t
        qk *= qf
        if certificate is not None:
            r = Fraction(certificate.ratio)
            if r >= 1:
                raise NonConvergent("decay ratio must be < 1")
            if k >= certificate.onset:
                bound = abs(t) * r / (1 - r)
                if bound <= budget:
                    return CertifiedReal.from_exact((1 - qf) * total, (1 - qf) * bound)
        else:
            if prev is not None:
                if prev == 0:
                    ratios.append(Fraction(0) if t == 0 else Fraction(2))
                else:
                    ratios.append(abs(t / prev))
                window = ratios[-probe_window:]
                if len(window) == probe_window and max(window) < 1:
                    r = max(window)
                    bound = abs(t) * r / (1 - r)
                    if bound <= budget:
                        return CertifiedReal.from_exact((1 - qf) * total,
                                                        (1 - qf) * bound)
            prev = t
    raise NonConvergent(f"q-integral terms not certified to decay within {probe_horizon} terms")


def qintegral_poly(f: MatPoly, q) -> Mat:
    """Exact q-integral over ``[0, 1]`` of a matrix polynomial.

    ``int_0^1 z^k d_q z = (1-q)/(1-q^{k+1})``.
    """
    q = gr(q)
    acc = Mat.zeros(f.size)
    for k, c in enumerate(f.coeffs):
        acc = acc + c * ((ONE - q) / (ONE - q ** (k + 1)))
    return acc


def detect_termination(upper, q, bound: int = 200) -> int:
    """Return ``n`` with ``upper == q^{-n}``, ``0 <= n <= bound``."""
    upper, q = gr(upper), gr(q)
    p = ONE
    for n in range(bound + 1):
        if upper == p:
            return n
        p = p / q
    raise TerminationNotDetected(f"{upper} is not q^(-n) for n <= {bound}")


def phi21_terminating(upper1, upper2, lower, z, q, bound: int = 200) -> GaussRat:
    """Exact value of a terminating ``2phi1(q^{-n}, upper2; lower; q, z)``."""
    q = as_base(q)
    upper1, upper2, lower, z = gr(upper1), gr(upper2), gr(lower), gr(z)
    n = detect_termination(upper1, q, bound)
    return sum(phi21_terms(upper1, upper2, lower, z, q, n), ZERO)


def phi21_terms(upper1, upper2, lower, z, q, n: int) -> list[GaussRat]:
    """Terms ``k = 0..n`` of the basic hypergeometric series, built by ratios."""
    terms = [ONE]
    t = ONE
    a1, a2, b1 = gr(upper1), gr(upper2), gr(lower)
    for k in range(n):
        qk = q ** k
        den = (ONE - q ** (k + 1)) * (ONE - b1 * qk)
        if not den:
            raise SingularLowerParameter(f"(lower;q)_{k + 1} vanishes")
        t = t * (ONE - a1 * qk) * (ONE - a2 * qk) * z / den
        terms.append(t)
    return terms
