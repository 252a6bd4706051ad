"""Matrix-valued basic hypergeometric series ``2eta1`` and its q-difference equation.

``(A, B; C; q)_k = prod_{i=1..k} (I - q^{i-1} A - q^{2i-2} B)(I - q^i C)^{-1}``
(ordered product, left to right) and

``2eta1(A, B; C; q; z) = sum_k (A, B; C; q)_k z^k / (q;q)_k``.

For a row vector ``F0`` the function ``F(z) = F0 2eta1(A, B; C; q; qz)``
solves ``F(z/q)(1 - z) + F(z)(-I - C + zA) + F(qz)(C + zB) = 0``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .certified import CertifiedComplex, CertifiedReal
from .errors import DomainError, NonConvergent, SingularFactor, SingularMatrix, SizeMismatch
from .exact import ONE, GaussRat, Mat, gr, nullspace, solve
from .qcalc import qpoch


class MatrixQPochState:
    """Cache of the ordered products ``(A, B; C; q)_k``; append is lock-protected."""

    def __init__(self, a: Mat, b: Mat, c: Mat, q):
        if not (a.shape == b.shape == c.shape) or not a.is_square():
            raise SizeMismatch("A, B, C must be square of equal size")
        self.a, self.b, self.c = a, b, c
        self.q = gr(q)
        self._products = [Mat.identity(a.nrows)]
        self._lock = threading.Lock()

    def factor(self, i: int) -> Mat:
        """``(I - q^{i-1} A - q^{2i-2} B)(I - q^i C)^{-1}``."""
        n = self.a.nrows
        q = self.q
        eye = Mat.identity(n)
        left = eye - self.a * q ** (i - 1) - self.b * q ** (2 * i - 2)
        right = eye - self.c * q ** i
        try:
            return left @ right.inv()
        except SingularMatrix:
            raise SingularFactor(i) from None

    def __getitem__(self, k: int) -> Mat:
        with self._lock:
            while len(self._products) <= k:
                i = len(self._products)
                self._products.append(self._products[-1] @ self.factor(i))
            return self._products[k]


def matrix_qpoch(a: Mat, b: Mat, c: Mat, k: int, q) -> Mat:
    return MatrixQPochState(a, b, c, q)[k]


def eta21(a: Mat, b: Mat, c: Mat, z, q, k_max: int) -> Mat:
    """Exact partial sum ``sum_{k <= k_max} (A,B;C;q)_k z^k / (q;q)_k``."""
    state = MatrixQPochState(a, b, c, q)
    z, q = gr(z), gr(q)
    acc = Mat.zeros(a.nrows)
    zk = ONE
    for k in range(k_max + 1):
        acc = acc + state[k] * (zk / qpoch(q, k, q))
        zk = zk * z
    return acc


def _norm_inf(m: Mat) -> Fraction:
    return max(sum((e.abs_bound() for e in row), Fraction(0)) for row in m)


def _sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    scale = 1 << bits
    r = math.isqrt(x.numerator * scale * scale // x.denominator)
    return Fraction(r + 1, scale)


def eta21_enclosure(a: Mat, b: Mat, c: Mat, z, q, tol, k_limit: int = 5000
                    ) -> list[list[CertifiedComplex]]:
    """Entrywise enclosure of the full series for ``|z| < 1``.

    For ``k >= K`` the term ratio in the max-row-sum norm is bounded by
    ``rho_K = (1 + q^K |A| + q^{2K} |B|) |z| / ((1 - q^{K+1}|C|)(1 - q^{K+1}))``
    (Neumann bound on the inverse, decreasing in ``K``), so the tail after
    term ``K`` is at most ``|t_K| rho_K / (1 - rho_K)``.
    """
    z, q = gr(z), gr(q)
    if z.abs2() >= 1:
        raise NonConvergent("series needs |z| < 1")
    tol = Fraction(tol)
    zb = min(z.abs_bound(), _sqrt_upper(z.abs2()))
    na, nb, nc = _norm_inf(a), _norm_inf(b), _norm_inf(c)
    qf = q.real_value()
    state = MatrixQPochState(a, b, c, q)
    acc = Mat.zeros(a.nrows)
    zk = ONE
    for k in range(k_limit):
        term = state[k] * (zk / qpoch(q, k, q))
        acc = acc + term
        zk = zk * z
        qk = qf ** k
        denom = (1 - qk * qf * nc) * (1 - qk * qf)
        if denom > 0:
            rho = (1 + qk * na + qk * qk * nb) * zb / denom
            if rho < 1:
                tail = _norm_inf(term) * rho / (1 - rho)
                if tail <= tol / 2:
                    return [[CertifiedComplex(CertifiedReal.from_exact(e.re, tail),
                                              CertifiedReal.from_exact(e.im, tail))
                             for e in row] for row in acc]
    raise NonConvergent("series tail not certified")


# -- row-vector polynomials ---------------------------------------------------

def _row_eval(coeffs: list[Mat], z) -> Mat:
    z = gr(z)
    acc = Mat.zeros(1, coeffs[0].ncols)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def series_coefficients(f0: Mat, a: Mat, b: Mat, c: Mat, q, k_max: int) -> list[Mat]:
    """Row coefficients ``G^k = F0 (A,B;C;q)_k q^k / (q;q)_k`` of ``F0 2eta1(..; qz)``."""
    state = MatrixQPochState(a, b, c, q)
    q = gr(q)
    return [f0 @ state[k] * (q ** k / qpoch(q, k, q)) for k in range(k_max + 1)]


def terminating_row_polynomial(f0: Mat, a: Mat, b: Mat, c: Mat, q, k_max: int = 200
                               ) -> list[Mat] | None:
    """Coefficients of ``F0 2eta1(A,B;C;q;qz)`` if they vanish from some ``k`` on."""
    state = MatrixQPochState(a, b, c, q)
    q = gr(q)
    out = []
    for k in range(k_max + 1):
        g = f0 @ state[k]
        if g.is_zero():
            return out
        out.append(g * (q ** k / qpoch(q, k, q)))
    return None


def qdiff_residual(coeffs: list[Mat], a: Mat, b: Mat, c: Mat, q) -> list[Mat]:
    """Coefficients of ``F(z/q)(1-z) + F(z)(-I-C+zA) + F(qz)(C+zB)`` for ``F = sum G^k z^k``."""
    q = gr(q)
    n = a.nrows
    eye = Mat.identity(n)
    size = len(coeffs) + 1
    out = [Mat.zeros(1, n) for _ in range(size)]
    for k, g in enumerate(coeffs):
        qk, qmk = q ** k, q ** (-k)
        out[k] = out[k] + g * qmk + g @ (-eye - c) + (g @ c) * qk
        out[k + 1] = out[k + 1] - g * qmk + g @ a + (g @ b) * qk
    return out


@dataclass
class QDiffVerdict:
    passed: bool
    terminating: bool
    failures: list = field(default_factory=list)


def verify_qdiff_solution(f0: Mat, a: Mat, b: Mat, c: Mat, z_samples, q,
                          k_max: int = 40, equation: tuple[Mat, Mat, Mat] | None = None
                          ) -> QDiffVerdict:
    """Check that ``F(z) = F0 2eta1(A,B;C;q;qz)`` solves the matrix q-difference equation.

    The equation uses ``(A, B, C)`` unless ``equation`` supplies other
    matrices. Terminating series are checked exactly at every sample point
    ``z``. Otherwise the residual coefficients of ``z^0..z^{k_max}`` of the
    truncated series are checked (the ``z^{k_max+1}`` coefficient only sees
    the truncation).
    """
    q = gr(q)
    series = (a, b, c)
    poly = terminating_row_polynomial(f0, a, b, c, q, k_max)
    if equation is not None:
        a, b, c = equation
    failures = []
    if poly is not None:
        if not poly:
            return QDiffVerdict(True, True)
        eye = Mat.identity(a.nrows)
        for z in z_samples:
            z = gr(z)
            res = (_row_eval(poly, z / q) * (ONE - z)
                   + _row_eval(poly, z) @ (-eye - c + a * z)
                   + _row_eval(poly, q * z) @ (c + b * z))
            if not res.is_zero():
                failures.append(("point", z))
        return QDiffVerdict(not failures, True, failures)
    coeffs = series_coefficients(f0, *series, q, k_max)
    res = qdiff_residual(coeffs, a, b, c, q)
    for k in range(k_max + 1):
        if not res[k].is_zero():
            failures.append(("coefficient", k))
    return QDiffVerdict(not failures, False, failures)


# -- indicial equation -------------------------------------------------------

@dataclass
class IndicialRoot:
    w: GaussRat           # w = q^mu
    algebraic: int        # multiplicity as a root of the indicial polynomial
    kernel_dim: int       # d_mu


@dataclass
class IndicialResult:
    roots: list[IndicialRoot]
    residual: list[list[GaussRat]]   # ascending coefficients of irrational factors
    polynomial: list[GaussRat]       # ascending coefficients of det(R1 + w S1 + w^2 T1)


def _pencil(r1: Mat, s1: Mat, t1: Mat, w: GaussRat) -> Mat:
    return r1 * (ONE / w) + s1 + t1 * w


def _to_sympy(x: GaussRat):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(
        x.im.numerator, x.im.denominator)


def _from_sympy(x) -> GaussRat:
    re, im = sympy.re(x), sympy.im(x)
    return GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def indicial_exponents(r1: Mat, s1: Mat, t1: Mat,
                       require_maximal_zero: bool = False) -> IndicialResult:
    """Roots ``w = q^mu`` of ``det(w^{-1} R1 + S1 + w T1) = 0``.

    The determinant is cleared to ``det(R1 + w S1 + w^2 T1)`` (degree
    ``<= 2N``), recovered exactly by interpolation, and factored over the
    Gaussian rationals. Linear factors give exact roots; other factors are
    returned unsolved in ``residual``. ``w = 0`` is not an exponent.

    With ``require_maximal_zero`` the exponent ``0`` (``w = 1``) must have
    kernel dimension ``N``; otherwise :class:`DomainError` is raised, since
    the power-series ansatz does not cover that case.
    """
    n = r1.nrows
    deg = 2 * n
    nodes = [GaussRat(j + 1) for j in range(deg + 1)]
    vander = Mat([[w ** k for k in range(deg + 1)] for w in nodes])
    rhs = Mat([[(r1 + s1 * w + t1 * w * w).det()] for w in nodes])
    coeffs = [row[0] for row in solve(vander, rhs)]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("indicial determinant vanishes identically")
    x = sympy.Symbol("w")
    expr = sum(_to_sympy(c) * x ** k for k, c in enumerate(coeffs))
    poly = sympy.Poly(expr, x, extension=True) if any(c.im for c in coeffs) else sympy.Poly(expr, x)
    _, factors = sympy.factor_list(poly, gaussian=True)
    roots: list[IndicialRoot] = []
    residual = []
    for fac, mult in factors:
        fac = sympy.Poly(fac, x)
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            root = _from_sympy(sympy.nsimplify(-c0 / c1))
            if not root:
                continue
            kdim = len(nullspace(_pencil(r1, s1, t1, root).H))
            roots.append(IndicialRoot(root, mult, kdim))
        elif fac.degree() > 1:
            residual.append([_from_sympy(c) for c in reversed(fac.all_coeffs())])
    roots.sort(key=lambda r: (r.w.re, r.w.im))
    if require_maximal_zero:
        zero = next((r for r in roots if r.w == ONE), None)
        if zero is None or zero.kernel_dim < n:
            raise DomainError("exponent 0 does not have full multiplicity")
    return IndicialResult(roots, residual, coeffs)


def termination_kernel(a: Mat, b: Mat, c: Mat, n: int, q) -> list[Mat]:
    """Row vectors ``G`` with ``G (I - q^n A - q^{2n} B) = 0``.

    Since ``G^{n+1}`` is ``G^n`` times this factor times the invertible
    ``(I - q^{n+1} C)^{-1}``, these are exactly the ``G^n`` for which the
    series stops after degree ``n``.
    """
    q = gr(q)
    MatrixQPochState(a, b, c, q).factor(n + 1)  # raises SingularFactor
    factor = Mat.identity(a.nrows) - a * q ** n - b * q ** (2 * n)
    return [v.T for v in nullspace(factor.T)]
