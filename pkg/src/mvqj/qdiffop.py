"""q-difference operators ``D = sum_l E_l F_l`` with coefficients acting on the right.

``(D P)(z) = sum_l P(q^l z) F_l(z)`` where each ``F_l`` is a matrix
polynomial in ``z^{-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import NotAnEigenfunction, NotPolynomial, SingularMatrix, SizeMismatch
from .exact import ONE, Mat, gr
from .polymat import LaurentMatPoly, MatPoly


class QDiffOp:
    """Finite sum of shift terms ``E_l F_l``."""

    def __init__(self, terms: Mapping[int, LaurentMatPoly], q):
        if not terms:
            raise ValueError("operator needs at least one shift term")
        sizes = {f.size for f in terms.values()}
        if len(sizes) != 1:
            raise SizeMismatch(f"coefficient sizes {sizes}")
        self.size = sizes.pop()
        self.q = gr(q)
        self.terms = dict(sorted(terms.items()))

    @property
    def shifts(self) -> tuple[int, int]:
        ks = list(self.terms)
        return ks[0], ks[-1]

    def coefficient(self, shift: int) -> LaurentMatPoly:
        return self.terms.get(shift, LaurentMatPoly([], self.size))

    def __repr__(self):
        return f"QDiffOp(shifts={list(self.terms)}, size={self.size})"

    def apply(self, p: MatPoly) -> MatPoly:
        return apply(self, p)


def apply(d: QDiffOp, p: MatPoly) -> MatPoly:
    """Expand ``sum_l P(q^l z) F_l(z)`` and return it as a polynomial in ``z``.

    Raises :class:`NotPolynomial` if a negative power of ``z`` survives.
    """
    if p.size != d.size:
        raise SizeMismatch(f"polynomial size {p.size}, operator size {d.size}")
    out: dict[int, Mat] = {}
    for shift, f in d.terms.items():
        shifted = p.dilate(d.q ** shift)
        for i, pc in enumerate(shifted.coeffs):
            if pc.is_zero():
                continue
            for k, fc in enumerate(f.coeffs):
                if fc.is_zero():
                    continue
                e = i - k
                term = pc @ fc
                out[e] = out[e] + term if e in out else term
    bad = sorted(e for e, m in out.items() if e < 0 and not m.is_zero())
    if bad:
        raise NotPolynomial(f"z^{bad[0]} survives in D P")
    top = max((e for e in out if e >= 0), default=-1)
    return MatPoly([out.get(e, Mat.zeros(d.size)) for e in range(top + 1)], d.size)


@dataclass
class PreservationVerdict:
    passed: bool
    failing_k: int | None = None
    reason: str = ""


def preserves_polynomials_check(d: QDiffOp) -> PreservationVerdict:
    """Degree criterion for ``D`` to map ``P_n[z]`` into itself for every ``n``.

    Every ``F_l`` must have ``z^{-1}``-degree at most ``r - s``, and
    ``G_k = sum_l q^{l k} F_l`` must have ``z^{-1}``-degree at most ``k`` for
    ``k = 0..r-s``.
    """
    s, r = d.shifts
    width = r - s
    for shift, f in d.terms.items():
        if f.degree > width:
            return PreservationVerdict(
                False, None, f"F_{shift} has z^-1 degree {f.degree} > {width}")
    for k in range(width + 1):
        g = LaurentMatPoly([], d.size)
        for shift, f in d.terms.items():
            g = g + f * (d.q ** (shift * k))
        if g.degree > k:
            return PreservationVerdict(
                False, k, f"sum_l q^(l*{k}) F_l has z^-1 degree {g.degree} > {k}")
    return PreservationVerdict(True)


def extract_eigenvalue(d: QDiffOp, p: MatPoly) -> Mat:
    """The unique ``L`` with ``D P = L P``, solved from the leading coefficient."""
    image = apply(d, p)
    if p.is_zero():
        raise NotAnEigenfunction("zero polynomial")
    try:
        lam = image.coeff(p.degree) @ p.leading.inv()
    except SingularMatrix:
        raise NotAnEigenfunction("leading coefficient is singular") from None
    if lam * p != image:
        raise NotAnEigenfunction("D P is not a left multiple of P")
    return lam


def frobenius2(m: Mat) -> Fraction:
    """Squared Frobenius norm, exact."""
    return sum((e.abs2() for row in m for e in row), Fraction(0))


@dataclass
class CheckResult:
    equation: str
    x: int | None
    passed: bool
    residual2: Fraction  # squared Frobenius norm of the residual

    def as_dict(self) -> dict:
        if self.residual2 == 0:
            res = "0"
        else:
            res = f"{float(self.residual2) ** 0.5:.6e}"
        return {"equation": self.equation, "x": self.x, "pass": self.passed,
                "residual-norm": res}


@dataclass
class SymmetryReport:
    checks: list[CheckResult] = field(default_factory=list)
    decay: dict[str, list[Fraction]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_list(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]


def symmetry_check(d: QDiffOp, weight, x_max: int, decay_window: int = 4) -> SymmetryReport:
    """Pointwise symmetry and boundary equations for a three-term operator.

    Checks, exactly,

    * ``F_0(q^x) W(q^x) = W(q^x) F_0(q^x)^*`` for ``x = 0..x_max``,
    * ``F_1(q^{x-1}) W(q^{x-1}) = q W(q^x) F_{-1}(q^x)^*`` for ``x = 1..x_max``,
    * ``W(1) F_{-1}(1)^* = 0``.

    The two limits at ``x -> oo`` (``q^{2x} F_1 W`` and
    ``q^x (F_1 W - W F_1^*)``) are certified by the squared norm ratios
    ``|B(x+1)|^2 / |B(x)|^2`` on the last ``decay_window`` points, which must
    all be below one.
    """
    if set(d.terms) - {-1, 0, 1}:
        raise ValueError("symmetry_check needs shifts within {-1, 0, 1}")
    q = d.q
    f_m, f_0, f_p = d.coefficient(-1), d.coefficient(0), d.coefficient(1)
    w = weight.rule if hasattr(weight, "rule") else weight
    report = SymmetryReport()
    for x in range(x_max + 1):
        z = q ** x
        wx = w(x)
        f0 = f_0(z)
        res = f0 @ wx - wx @ f0.H
        report.checks.append(CheckResult("F0", x, res.is_zero(), frobenius2(res)))
    for x in range(1, x_max + 1):
        res = f_p(q ** (x - 1)) @ w(x - 1) - (w(x) @ f_m(q ** x).H) * q
        report.checks.append(CheckResult("F1-F-1", x, res.is_zero(), frobenius2(res)))
    res = w(0) @ f_m(ONE).H
    report.checks.append(CheckResult("boundary-x0", 0, res.is_zero(), frobenius2(res)))

    def b1(x):
        z = q ** x
        return f_p(z) @ w(x) * (z * z)

    def b2(x):
        z = q ** x
        fw = f_p(z) @ w(x)
        return (fw - w(x) @ f_p(z).H) * z

    lo = max(0, x_max - decay_window)
    for name, b in (("boundary-q2xF1W", b1), ("boundary-F1W-WF1*", b2)):
        norms = [frobenius2(b(x)) for x in range(lo, x_max + 2)]
        ratios = []
        ok = True
        for n0, n1 in zip(norms, norms[1:]):
            if n0 == 0:
                ratios.append(Fraction(0))
                ok = ok and n1 == 0
            else:
                ratios.append(n1 / n0)
                ok = ok and n1 / n0 < 1
        report.decay[name] = ratios
        report.checks.append(CheckResult(name, x_max, ok, norms[-1]))
    return report
