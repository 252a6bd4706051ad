"""The 2x2 matrix-valued little q-Jacobi polynomials.

All quantities are exact. Norms and moments are normalized by the scalar
``m_0(a, b)``; :meth:`Family.weight` carries that factor as a certified
``scale`` for the series cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import (DomainError, InconsistentSamples, InterpolationDegreeMismatch, SingularMatrix, SingularP0,
                     TerminationFailure)
from .exact import ONE, ZERO, GaussRat, Mat, gr
from .lqjacobi import (ScalarParams, lqj_m0, lqj_moment_ratio, lqj_norm_ratio, lqj_poly)
from .meta import MatrixQPochState, terminating_row_polynomial
from .polymat import LaurentMatPoly, MatPoly, interpolate_from_lattice
from .qcalc import as_base, qderiv_lattice_n, qpoch
from .qdiffop import QDiffOp, frobenius2, symmetry_check
from .weights import MomentProvider, QWeight, inner_product_exact


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class FamilyParams:
    q: GaussRat
    a: GaussRat
    b: GaussRat
    v: GaussRat

    def __init__(self, q, a, b, v):
        q, a, b, v = gr(q), gr(a), gr(b), gr(v)
        as_base(q)
        if not (a.is_real and b.is_real):
            raise DomainError("a and b must be real")
        if not (0 < a < ONE / q):
            raise DomainError(f"need 0 < a < 1/q, got a={a}")
        if not b < ONE / q:
            raise DomainError(f"need b < 1/q, got b={b}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "v", v)

    def scalar(self, a_shift: int = 0) -> ScalarParams:
        """Scalar parameters ``(q, a q^{a_shift}, b)``."""
        return ScalarParams(self.q, self.a * self.q ** a_shift, self.b)


P1 = FamilyParams(Fraction(1, 2), Fraction(1, 4), Fraction(1, 2), 1)
P2 = FamilyParams(Fraction(2, 3), Fraction(1, 3), -1, GaussRat(0, 1))


@dataclass(frozen=True)
class KappaSet:
    k11: GaussRat
    k12: GaussRat
    k21: GaussRat
    k22: GaussRat
    xi: GaussRat
    alpha: GaussRat


@dataclass
class RodriguesResult:
    polynomial: MatPoly
    leading: Mat


@dataclass
class EtaRepresentation:
    a: Mat
    b: Mat
    c: Mat
    f0: Mat
    coefficients: list[Mat]
    row: MatPoly      # reconstructed row as the single row of a 2x2 polynomial
    next_coefficient: Mat


class Family:
    """Every construction of the 2x2 family for one parameter set."""

    def __init__(self, params: FamilyParams):
        self.p = params
        q, a, b, v = params.q, params.a, params.b, params.v
        self.q, self.a, self.b, self.v = q, a, b, v
        self.K = Mat([[0, v * (ONE - q) * (ONE / q - a)], [0, 0]])
        self.M = Mat([[1, v], [0, 0]])
        self.A = Mat([[q, -v * (ONE - q)], [0, 1]])
        self.A_inv = self.A.inv()
        self.V = self.K - self.A * a - self.A_inv
        self.I = Mat.identity(2)
        self._kappa = lru_cache(maxsize=None)(self._kappa_uncached)
        self._tilde = lru_cache(maxsize=None)(self._tilde_uncached)

    # -- weight ------------------------------------------------------------
    def a_power(self, x: int) -> Mat:
        """``A^x = [[q^x, -v(1-q^x)], [0, 1]]`` for any integer ``x``."""
        q, v = self.q, self.v
        return Mat([[q ** x, -v * (ONE - q ** x)], [0, 1]])

    def weight_scalar(self, x: int) -> GaussRat:
        q = self.q
        return self.a ** x * qpoch(self.b * q, x, q) / qpoch(q, x, q)

    def weight_profile(self, x: int) -> Mat:
        """``W(q^x) = a^x (bq;q)_x/(q;q)_x A^x (A^x)^*`` by matrix multiplication."""
        ax = self.a_power(x)
        return (ax @ ax.H) * self.weight_scalar(x)

    def displayed_weight_profile(self, x: int) -> Mat:
        """Entrywise closed form ``[[q^{2x}, -v(1-q^x)], [-conj(v)(1-q^x), 1]]`` times the scalar.

        Kept for the weight diagnosis only; it drops ``|v|^2 (1-q^x)^2`` from
        the ``(1,1)`` entry of the true product.
        """
        q, v = self.q, self.v
        t = ONE - q ** x
        m = Mat([[q ** (2 * x), -v * t], [-v.conj() * t, 1]])
        return m * self.weight_scalar(x)

    def weight(self, m0_tol=Fraction(1, 10 ** 40)) -> QWeight:
        q, a, b, v = self.q.re, self.a.re, self.b.re, self.v

        def envelope(x):
            return abs(self.weight_scalar(x).re)

        def ratio(x):
            # e(x+1)/e(x) = a |1 - b q^{x+1}| / (1 - q^{x+1}), decreasing in x
            qx = q ** (x + 1)
            return a * (1 + abs(b) * qx) / (1 - qx)

        # entries of A^x (A^x)^* are bounded by 1 + |v|^2 (0 < q^x <= 1)
        const = 1 + v.abs2() + v.abs_bound()
        return QWeight(2, self.weight_profile, self.q,
                       scale=lqj_m0(self.p.scalar(), m0_tol),
                       envelope=envelope, envelope_const=const, envelope_ratio=ratio)

    def moment_matrix(self, n: int) -> Mat:
        """Normalized ``<z^n I, I>_W / m_0(a,b)`` from the true ``A^x (A^x)^*``.

        With ``mu_k = m_k(a,b)/m_0(a,b)``:
        ``[[mu_{n+2} + |v|^2 (mu_n - 2 mu_{n+1} + mu_{n+2}), -v (mu_n - mu_{n+1})],
        [-conj(v) (mu_n - mu_{n+1}), mu_n]]``.
        """
        sp = self.p.scalar()
        mu0, mu1, mu2 = (lqj_moment_ratio(n + j, sp) for j in range(3))
        v = self.v
        d = mu0 - mu1
        return Mat([[mu2 + v.abs2() * (mu0 - 2 * mu1 + mu2), -v * d],
                    [-v.conj() * d, mu0]])

    def displayed_moment_matrix(self, n: int) -> Mat:
        """Moments implied by the entrywise display (no ``|v|^2`` correction)."""
        sp = self.p.scalar()
        mu0, mu1, mu2 = (lqj_moment_ratio(n + j, sp) for j in range(3))
        v = self.v
        return Mat([[mu2, -v * (mu0 - mu1)], [-v.conj() * (mu0 - mu1), mu0]])

    @cached_property
    def moments(self) -> MomentProvider:
        return MomentProvider(self.moment_matrix, 2)

    # -- operator ----------------------------------------------------------
    def operator(self) -> QDiffOp:
        """``F_{-1} = (z^{-1}-1)A^{-1}``, ``F_0 = K - z^{-1}(A^{-1}+aA)``,
        ``F_1 = (a z^{-1} - abq) A``."""
        q, a, b = self.q, self.a, self.b
        A, Ai = self.A, self.A_inv
        return QDiffOp({
            -1: LaurentMatPoly([-Ai, Ai]),
            0: LaurentMatPoly([self.K, -(Ai + A * a)]),
            1: LaurentMatPoly([A * (-a * b * q), A * a]),
        }, q)

    def s_squared(self, x: int) -> GaussRat:
        """``s(q^x)^2 = q^{-2x} a (1-q^x)(1-bq^x)``."""
        q = self.q
        return q ** (-2 * x) * self.a * (ONE - q ** x) * (ONE - self.b * q ** x)

    def eigenvalue(self, n: int) -> Mat:
        """``Lambda_n = -q^{-n} A^{-1} + K - abq^{n+1} A``."""
        q = self.q
        return self.K - self.A_inv * q ** (-n) - self.A * (self.a * self.b * q ** (n + 1))

    def tilde_eigenvalues(self, n: int) -> tuple[GaussRat, GaussRat]:
        q, ab = self.q, self.a * self.b
        return (-q ** (-n - 1) - ab * q ** (n + 2), -q ** (-n) - ab * q ** (n + 1))

    # -- explicit polynomials ---------------------------------------------
    def kappa(self, n: int) -> KappaSet:
        return self._kappa(n)

    def _kappa_uncached(self, n: int) -> KappaSet:
        q, a, b, v = self.q, self.a, self.b, self.v
        ab = a * b
        k11 = _sign(n) * q ** _binom2(n) * qpoch(a * q ** 3, n, q) / qpoch(ab * q ** (n + 3), n, q)
        k12 = (_sign(n + 1) * v * q ** _binom2(n + 1) * qpoch(a * q, n + 1, q)
               / qpoch(ab * q ** (n + 2), n + 1, q))
        xi = ONE / (ONE + a * q * v.abs2() * (ONE - q ** n) * (ONE - b * q ** n)
                    / ((ONE - ab * q ** (n + 1)) * (ONE - a * q ** (n + 1))))
        base = qpoch(a * q, n, q) / qpoch(ab * q ** (n + 1), n, q)
        k21 = (_sign(n) * xi * a * v.conj() * q ** (_binom2(n) - n + 2)
               * (ONE - q ** n) * (ONE - b * q ** n) / ((ONE - a * q) * (ONE - a * q * q)) * base)
        k22 = _sign(n) * xi * q ** _binom2(n) * base
        alpha = v * (ONE + q ** n * (a * q - ONE) / (ONE - ab * q ** (2 * n + 2)))
        return KappaSet(k11, k12, k21, k22, xi, alpha)

    def n_matrix(self, n: int) -> Mat:
        return Mat([[1, self.kappa(n).alpha], [0, 1]])

    def tilde_polys(self, n: int) -> tuple[MatPoly, Mat]:
        """``(P~_n, N_n)`` with ``P~_n = N_n P_n`` built from scalar polynomials."""
        return self._tilde(n), self.n_matrix(n)

    def _tilde_uncached(self, n: int) -> MatPoly:
        k = self.kappa(n)
        v = self.v
        sp_shift, sp = self.p.scalar(2), self.p.scalar()
        one_minus_z = MatPoly.scalar([1, -1])
        pn_s = lqj_poly(n, sp_shift)
        pnm1_s = lqj_poly(n - 1, sp_shift) if n >= 1 else MatPoly.zero(1)
        e11 = pn_s * k.k11
        e12 = lqj_poly(n + 1, sp) * k.k12 + one_minus_z * pn_s * (k.k11 * v)
        e21 = pnm1_s * k.k21
        e22 = lqj_poly(n, sp) * k.k22 + one_minus_z * pnm1_s * (k.k21 * v)
        return MatPoly.from_entries([[e11, e12], [e21, e22]])

    def explicit_monic(self, n: int) -> MatPoly:
        tilde, nn = self.tilde_polys(n)
        return nn.inv() * tilde

    def norm_matrix(self, n: int) -> Mat:
        """Normalized ``H_n / m_0(a,b)`` for the tilde family (diagonal)."""
        k = self.kappa(n)
        sp_shift, sp = self.p.scalar(2), self.p.scalar()
        rho = lqj_moment_ratio(2, sp)
        h_s = lambda m: lqj_norm_ratio(m, sp_shift) * rho if m >= 0 else ZERO  # noqa: E731
        h = lambda m: lqj_norm_ratio(m, sp)  # noqa: E731
        d1 = k.k11.abs2() * h_s(n) + k.k12.abs2() * h(n + 1)
        d2 = k.k21.abs2() * h_s(n - 1) + k.k22.abs2() * h(n)
        return Mat.diag([d1, d2])

    def displayed_norm_matrix(self, n: int) -> Mat:
        """Diagonal entries with the scalar norm indices as printed (``h_n`` throughout)."""
        k = self.kappa(n)
        sp_shift, sp = self.p.scalar(2), self.p.scalar()
        rho = lqj_moment_ratio(2, sp)
        hs = lqj_norm_ratio(n, sp_shift) * rho
        h = lqj_norm_ratio(n, sp)
        return Mat.diag([k.k11.abs2() * hs + k.k12.abs2() * h,
                         k.k21.abs2() * hs + k.k22.abs2() * h])

    # -- three-term recurrence ----------------------------------------------
    def recurrence_coeffs(self, n: int) -> tuple[Mat, Mat, Mat]:
        """``(A_n, B_n, C_n)`` with ``z P~_n = A_n P~_{n+1} + B_n P~_n + C_n P~_{n-1}``."""
        a_n = self.n_matrix(n) @ self.n_matrix(n + 1).inv()
        if n == 0:
            c_n = Mat.zeros(2)
        else:
            a_prev = self.n_matrix(n - 1) @ self.n_matrix(n).inv()
            c_n = self.norm_matrix(n) @ a_prev.H @ self.norm_matrix(n - 1).inv()
        p0 = self._tilde(n)(ZERO)
        try:
            p0_inv = p0.inv()
        except SingularMatrix:
            raise SingularP0(f"P~_{n}(0) is singular") from None
        b_n = -(a_n @ self._tilde(n + 1)(ZERO) @ p0_inv)
        if n > 0:
            b_n = b_n - c_n @ self._tilde(n - 1)(ZERO) @ p0_inv
        return a_n, b_n, c_n

    def recurrence_a_closed_form(self, n: int) -> Mat:
        q, a, b, v = self.q, self.a, self.b, self.v
        ab = a * b
        e = -(q ** n * (ONE - q) * (ONE - a * q) * (ONE + ab * q ** (2 * n + 3)) * v
              / ((ONE - ab * q ** (2 * n + 2)) * (ONE - ab * q ** (2 * n + 4))))
        return Mat([[1, e], [0, 1]])

    # -- Rodrigues formula --------------------------------------------------
    # Two forms are offered.  "printed" is the expression
    #   q^{-x} D_q^n[a^x q^{(n+1)x} (bq;q)_x/(q;q)_{x-n} A^x R(n) (A^x)^*] W(q^x)^{-1}
    # with R(n) taken literally; it reproduces the monic family at (aq, b, v).
    # "corrected" is the same expression at a/q (with |v|^2, conj(v) in R), which
    # reproduces the family at (a, b, v) itself.
    def rodrigues_r(self, n: int, form: str = "corrected") -> Mat:
        q, b, v = self.q, self.b, self.v
        if form == "printed":
            a, vv, lv = self.a, v * v, v
        elif form == "corrected":
            a, vv, lv = self.a / q, v.abs2(), v.conj()
        else:
            raise ValueError(f"unknown Rodrigues form {form!r}")
        r11 = ((ONE - a * q ** (n + 2)) * (ONE - a * b * q ** (n + 3))
               + a * vv * q * q * (ONE - q ** n) * (ONE - b * q ** (n + 1))) / (
            ONE - a * b * q ** (2 * n + 3))
        return Mat([[r11, 0], [-(ONE - q ** n) * a * lv * q * q, ONE - a * q ** (n + 2)]])

    def rodrigues_bracket(self, n: int, x: int, form: str = "corrected") -> Mat:
        """``a^x q^{kx} (bq;q)_x (q^{x-n+1};q)_n / (q;q)_x  A^x R(n) (A^x)^*``.

        ``k = n`` for the corrected form and ``n + 1`` for the printed one.
        """
        q = self.q
        k = n + 1 if form == "printed" else n
        scal = (self.a ** x * q ** (k * x) * qpoch(self.b * q, x, q)
                * qpoch(q ** (x - n + 1), n, q) / qpoch(q, x, q))
        if not scal:
            return Mat.zeros(2)
        ax = self.a_power(x)
        return (ax @ self.rodrigues_r(n, form) @ ax.H) * scal

    def rodrigues_lattice_value(self, n: int, x: int, form: str = "corrected") -> Mat:
        dn = qderiv_lattice_n(lambda y: self.rodrigues_bracket(n, y, form), n, x, self.q)
        out = dn @ self.weight_profile(x).inv()
        return out * self.q ** (-x) if form == "printed" else out

    def rodrigues(self, n: int, form: str = "corrected", extra: int = 2) -> RodriguesResult:
        """Fit the Rodrigues expression on ``x = 0..n+extra`` and return it with its leading coefficient."""
        samples = [(x, self.rodrigues_lattice_value(n, x, form)) for x in range(n + 1 + extra)]
        try:
            poly = interpolate_from_lattice(samples, n, self.q)
        except InconsistentSamples as exc:
            raise InterpolationDegreeMismatch(str(exc)) from exc
        if poly.degree != n:
            raise InterpolationDegreeMismatch(f"fitted degree {poly.degree}, expected {n}")
        return RodriguesResult(poly, poly.leading)

    # -- 2eta1 representation ----------------------------------------------
    def eta_parameters(self, n: int, row: int) -> tuple[Mat, Mat, Mat]:
        lam = self.tilde_eigenvalues(n)[row - 1]
        A = self.A
        a_eta = self.K @ A - A * lam
        b_eta = (A @ A) * (-self.a * self.b * self.q)
        c_eta = (A @ A) * self.a
        return a_eta, b_eta, c_eta

    def eta_representation(self, n: int, row: int) -> EtaRepresentation:
        if row not in (1, 2):
            raise ValueError("row must be 1 or 2")
        a_eta, b_eta, c_eta = self.eta_parameters(n, row)
        tilde = self._tilde(n)
        f0 = Mat([tilde(ZERO).rows[row - 1]])
        coeffs = terminating_row_polynomial(f0, a_eta, b_eta, c_eta, self.q, k_max=n + 1)
        if coeffs is None or len(coeffs) > n + 1:
            raise TerminationFailure(f"series for row {row}, n={n} does not stop at degree {n}")
        state = MatrixQPochState(a_eta, b_eta, c_eta, self.q)
        nxt = f0 @ state[n + 1] * (self.q ** (n + 1) / qpoch(self.q, n + 1, self.q))
        zero_row = Mat.zeros(1, 2)
        padded = [Mat([c.rows[0], zero_row.rows[0]]) if row == 1 else Mat([zero_row.rows[0], c.rows[0]])
                  for c in coeffs]
        row_poly = MatPoly(padded, 2)
        expected = MatPoly([Mat([cf.rows[row - 1], zero_row.rows[0]]) if row == 1
                            else Mat([zero_row.rows[0], cf.rows[row - 1]])
                            for cf in tilde.coeffs], 2)
        if row_poly != expected:
            raise TerminationFailure(f"series for row {row}, n={n} differs from P~_{n}")
        return EtaRepresentation(a_eta, b_eta, c_eta, f0, coeffs, row_poly, nxt)

    def rodrigues_boundary(self, n: int, k: int, m: int, x_max: int,
                           form: str = "corrected") -> tuple[Mat, list[Fraction]]:
        """Boundary term ``D_q^{n-k}[g(. + k - 1)](q^x) D_q^k(q^{xm})`` of the orthogonality proof.

        Returns its value at ``x = 0`` and the squared-norm ratios between
        consecutive ``x`` in ``0..x_max``.
        """
        q = self.q
        dk = qderiv_lattice_n(lambda y: q ** (y * m), k, 0, q)  # D_q^k z^m = dk * z^{m-k}

        def term(x):
            inner = qderiv_lattice_n(lambda y: self.rodrigues_bracket(n, y + k - 1, form),
                                     n - k, x, q)
            return inner * (dk * q ** (x * (m - k)))

        values = [frobenius2(term(x)) for x in range(x_max + 1)]
        ratios = [b / a_ for a_, b in zip(values, values[1:]) if a_]
        return term(0), ratios

    # -- structure identities ----------------------------------------------
    def structure_identities(self) -> dict[str, bool]:
        """Exact relations between ``K``, ``M``, ``A`` and ``V``.

        ``[M, K] = K`` and ``[M, V] = K`` hold; together with
        ``A^{-1} K A = q^{-1} K`` they give ``A^{-x} F_0(q^x) A^x = q^{-x} V``.
        """
        K, M, V, q = self.K, self.M, self.V, self.q
        f0 = self.operator().coefficient(0)
        return {
            "A-closed-form": self.A == Mat([[q, -self.v * (ONE - q)], [0, 1]]),
            "V-diagonal-real": V.is_diagonal() and all(V[i, i].is_real for i in range(2)),
            "[M,K]=K": M.commutator(K) == K,
            "[M,V]=K": M.commutator(V) == K,
            "[M,V]=V": M.commutator(V) == V,
            "A^-x F0 A^x = q^-x V": all(
                self.a_power(-x) @ f0(q ** x) @ self.a_power(x) == V * q ** (-x)
                for x in range(6)),
        }

    def compatibility_check(self, x_max: int = 20) -> list[int]:
        """Lattice points where ``F_1(q^{x-1}) F_{-1}(q^x) != q s^2(q^x) I``."""
        op = self.operator()
        fp, fm = op.coefficient(1), op.coefficient(-1)
        q = self.q
        return [x for x in range(1, x_max + 1)
                if fp(q ** (x - 1)) @ fm(q ** x) != self.I * (q * self.s_squared(x))]

    def diagnose_weight(self, x_max: int = 20, n_max: int = 3) -> dict:
        """Compare the product weight with the entrywise display.

        Each candidate goes through the pointwise symmetry check and, via its
        moments, the orthogonality of the explicit tilde family.
        """
        op = self.operator()
        out = {}
        candidates = (("product", self.weight_profile, self.moment_matrix),
                      ("displayed", self.displayed_weight_profile, self.displayed_moment_matrix))
        for name, rule, mom in candidates:
            rep = symmetry_check(op, rule, x_max)
            provider = MomentProvider(mom, 2)
            orth = all(
                inner_product_exact(self._tilde(i), self._tilde(j), provider).is_zero()
                for i in range(n_max + 1) for j in range(n_max + 1) if i != j)
            out[name] = {"symmetric": rep.passed, "failures": len(rep.failures()),
                         "orthogonal": orth}
        q, v = self.q, self.v
        gap = (self.a_power(1) @ self.a_power(1).H)[0, 0] - q * q
        out["discrepancy-11-x1"] = gap
        out["discrepancy-matches"] = gap == v.abs2() * (ONE - q) ** 2
        out["verdict"] = ("product" if out["product"]["symmetric"]
                          and not out["displayed"]["symmetric"] else "inconclusive")
        return out
