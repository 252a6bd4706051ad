"""q-weights on the lattice and the matrix inner products they define.

``<P, Q>_W = sum_x q^x P(q^x) W(q^x) Q(q^x)^*``.  The exact route goes
through normalized moments; the series route sums the lattice terms with a
certified tail and exists as an independent cross-check.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .certified import CertifiedComplex, CertifiedReal
from .errors import (CompatibilityViolated, InvalidTolerance, NonConvergent,
                     NotPositiveDefinite, SingularMatrix, SingularMomentMatrix,
                     SizeMismatch)
from .exact import ONE, Mat, gr, solve
from .polymat import LaurentMatPoly, MatPoly


@dataclass
class QWeight:
    """Weight ``x -> W(q^x)`` with an optional decay certificate.

    ``envelope``/``envelope_const``/``envelope_ratio`` certify
    ``max_ij |W(q^x)_ij| <= envelope_const * envelope(x)`` and
    ``envelope(x+1) <= envelope_ratio(K) * envelope(x)`` for all ``x >= K``.
    """

    size: int
    rule: Callable[[int], Mat]
    q: object
    scale: CertifiedReal | None = None
    envelope: Callable[[int], Fraction] | None = None
    envelope_const: Fraction | None = None
    envelope_ratio: Callable[[int], Fraction] | None = None

    def __call__(self, x: int) -> Mat:
        return self.rule(x)

    def is_positive_definite_up_to(self, x_max: int) -> bool:
        return all(self.rule(x).is_positive_definite() for x in range(x_max + 1))


class MomentProvider:
    """Memoized ``n -> <z^n I, I> / scale``, safe for concurrent readers."""

    def __init__(self, rule: Callable[[int], Mat], size: int):
        self._rule = rule
        self.size = size
        self._cache: dict[int, Mat] = {}
        self._lock = threading.Lock()

    def __call__(self, n: int) -> Mat:
        m = self._cache.get(n)
        if m is None:
            m = self._rule(n)
            with self._lock:
                self._cache.setdefault(n, m)
        return m


def inner_product_exact(p: MatPoly, q: MatPoly, moments: MomentProvider) -> Mat:
    """``sum_{j,k} P_j M_{j+k} Q_k^*``."""
    if p.size != q.size or p.size != moments.size:
        raise SizeMismatch("inner product sizes differ")
    acc = Mat.zeros(p.size)
    qh = [c.H for c in q.coeffs]
    for j, pj in enumerate(p.coeffs):
        if pj.is_zero():
            continue
        for k, qk in enumerate(qh):
            if qk.is_zero():
                continue
            acc = acc + pj @ moments(j + k) @ qk
    return acc


def _coeff_norm(p: MatPoly) -> Fraction:
    """Bound on every entry of ``P(z)`` for ``|z| <= 1``."""
    return sum((c.max_abs_bound() for c in p.coeffs), Fraction(0))


def inner_product_series(p: MatPoly, q: MatPoly, w: QWeight, tol,
                         max_terms: int = 5000) -> list[list[CertifiedComplex]]:
    """Entrywise enclosures of ``sum_x q^x P(q^x) W(q^x) Q(q^x)^*``.

    After summing ``x = 0..K`` the remaining terms satisfy, entrywise,
    ``|term_x| <= N^2 |P| |Q| C q^x e(x)`` and ``q e(x+1) <= q r(K) e(x)``,
    so the tail is at most ``N^2 |P| |Q| C q^K e(K) s/(1-s)`` with
    ``s = q r(K) < 1``.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise InvalidTolerance("tolerance must be positive")
    if w.envelope is None:
        raise NonConvergent("weight carries no decay certificate")
    n = w.size
    qq = gr(w.q).real_value()
    pn, qn = _coeff_norm(p), _coeff_norm(q)
    acc = Mat.zeros(n)
    qh = q.adjoint()
    for x in range(max_terms):
        z = qq ** x
        if not p.is_zero() and not q.is_zero():
            acc = acc + p(z) @ w(x) @ qh(z) * z
        s = qq * w.envelope_ratio(x)
        if s < 1:
            tail = n * n * pn * qn * w.envelope_const * z * w.envelope(x) * s / (1 - s)
            if tail <= tol / 2:
                return [[CertifiedComplex(CertifiedReal.from_exact(e.re, tail),
                                          CertifiedReal.from_exact(e.im, tail))
                         for e in row] for row in acc]
    raise NonConvergent(f"series not certified within {max_terms} terms")


def block_hankel(moments: MomentProvider, n: int, shift: int = 0) -> Mat:
    """``[M_{j+k+shift}]_{j,k<n}`` as an ``nN x nN`` matrix."""
    size = moments.size
    rows = []
    for j in range(n):
        for r in range(size):
            row = []
            for k in range(n):
                row.extend(moments(j + k + shift).rows[r])
            rows.append(row)
    return Mat(rows)


def _monic_of_degree(n: int, moments: MomentProvider, reverse: bool = False) -> MatPoly:
    size = moments.size
    if n == 0:
        return MatPoly.identity(size)
    # unknowns X_0..X_{n-1}: sum_k X_k M_{k+j} = -M_{n+j}, j < n
    order = list(range(n))[::-1] if reverse else list(range(n))
    rows = []
    for k in order:
        for r in range(size):
            row = []
            for j in range(n):
                row.extend(moments(k + j).rows[r])
            rows.append(row)
    h = Mat(rows)
    rhs = Mat([[-e for j in range(n) for e in moments(n + j).rows[r]] for r in range(size)])
    try:
        sol_t = solve(h.T, rhs.T)
    except SingularMatrix:
        raise SingularMomentMatrix(f"block moment matrix of order {n} is singular") from None
    sol = sol_t.T
    blocks = {}
    for idx, k in enumerate(order):
        blocks[k] = Mat([[sol[r, idx * size + c] for c in range(size)] for r in range(size)])
    coeffs = [blocks[k] for k in range(n)] + [Mat.identity(size)]
    return MatPoly(coeffs, size)


def gram_schmidt_monic(n_max: int, moments: MomentProvider, reverse: bool = False) -> list[MatPoly]:
    """Monic orthogonal ``P_0..P_{n_max}``; one exact block solve per degree.

    ``reverse`` permutes the order of the unknowns, which must not change the
    result.
    """
    return [_monic_of_degree(n, moments, reverse) for n in range(n_max + 1)]


@dataclass
class ReducibilityVerdict:
    reducible_candidate: bool
    witness: tuple[int, int] | None = None
    commutator: Mat | None = None


def reducibility_check(w: QWeight | Callable[[int], Mat], x_max: int) -> ReducibilityVerdict:
    """Search for lattice points whose (normalized) weight values do not commute.

    With ``W(1) = L L^*`` the normalized weight is ``L^{-1} W L^{-*}``; its
    values commute iff ``W(x) W(1)^{-1} W(y) = W(y) W(1)^{-1} W(x)``, which is
    checked without square roots and reduces to ``[W(x), W(y)] = 0`` when
    ``W(1) = I``.
    """
    rule = w.rule if isinstance(w, QWeight) else w
    w0_inv = rule(0).inv()
    for y in range(1, x_max + 1):
        for x in range(1, y):
            wx, wy = rule(x), rule(y)
            c = wx @ w0_inv @ wy - wy @ w0_inv @ wx
            if not c.is_zero():
                return ReducibilityVerdict(False, (x, y), c)
    return ReducibilityVerdict(True)


def construct_weight_from_symmetry(f_plus: LaurentMatPoly, f_minus: LaurentMatPoly,
                                   s_squared: Callable[[int], object], x_max: int,
                                   q) -> QWeight:
    """Tabulate ``W`` from ``W(1) = I`` and
    ``W(q^x) = q^{-1} F_1(q^{x-1}) W(q^{x-1}) (F_{-1}(q^x)^*)^{-1}``.

    Requires ``F_1(q^{x-1}) F_{-1}(q^x) = q s^2(q^x) I`` for ``x = 1..x_max``.
    """
    q = gr(q)
    size = f_plus.size
    eye = Mat.identity(size)
    table = [eye]
    for x in range(1, x_max + 1):
        prod = f_plus(q ** (x - 1)) @ f_minus(q ** x)
        if prod != eye * (q * gr(s_squared(x))):
            raise CompatibilityViolated(f"F_1 F_-1 != q s^2 I at x={x}")
        wx = f_plus(q ** (x - 1)) @ table[-1] @ f_minus(q ** x).H.inv() * (ONE / q)
        if not wx.is_positive_definite():
            raise NotPositiveDefinite(f"constructed W(q^{x}) is not positive definite")
        table.append(wx)

    def rule(x: int) -> Mat:
        if not 0 <= x <= x_max:
            raise IndexError(f"weight tabulated only for 0 <= x <= {x_max}")
        return table[x]

    return QWeight(size, rule, q)
