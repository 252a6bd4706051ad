"""The exact invariant suite behind ``mvqj verify``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certified import CertifiedComplex, CertifiedReal
from .errors import MVQJError
from .exact import Mat
from .lqjacobi import (ScalarParams, lqj_eigenvalue, lqj_moment_ratio, lqj_monic, lqj_norm_ratio,
                       lqj_operator, lqj_poly, lqj_recurrence)
from .meta import verify_qdiff_solution
from .mvlqj import Family, FamilyParams
from .polymat import MatPoly
from .qdiffop import apply, preserves_polynomials_check, symmetry_check
from .weights import (MomentProvider, gram_schmidt_monic, inner_product_exact,
                      inner_product_series, reducibility_check)


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def _first_failure(items) -> str:
    bad = [str(i) for i, ok in items if not ok]
    return "" if not bad else "failed at " + ", ".join(bad)


def _outcome(name, items) -> CheckOutcome:
    items = list(items)
    return CheckOutcome(name, all(ok for _, ok in items), _first_failure(items))


def scalar_suite(sp: ScalarParams, n_max: int) -> list[CheckOutcome]:
    """Orthogonality, recurrence and eigenvalue identities of the scalar family."""
    def moment(k):
        return Mat([[lqj_moment_ratio(k, sp)]])

    mp = MomentProvider(moment, 1)
    polys = [lqj_poly(n, sp) for n in range(n_max + 2)]
    orth = []
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            ip = inner_product_exact(polys[m], polys[n], mp)[0, 0]
            want = lqj_norm_ratio(n, sp) if m == n else 0
            orth.append(((m, n), ip == want))
    rec = []
    z = MatPoly.scalar([0, 1])
    for n in range(n_max + 1):
        a_n, c_n = lqj_recurrence(n, sp)
        rhs = polys[n + 1] * a_n - polys[n] * (a_n + c_n)
        if n:
            rhs = rhs + polys[n - 1] * c_n
        rec.append((n, -(z * polys[n]) == rhs))
    op = lqj_operator(sp)
    eig = [(n, apply(op, polys[n]) == polys[n] * lqj_eigenvalue(n, sp))
           for n in range(n_max + 1)]
    mon = [(n, lqj_monic(n, sp).is_monic()) for n in range(n_max + 1)]
    return [_outcome("scalar-orthogonality", orth), _outcome("scalar-recurrence", rec),
            _outcome("scalar-eigenvalue", eig), _outcome("scalar-monic", mon)]


def run_suite(fam: Family, n_max: int, x_max: int = 20, certified: bool = False,
              tol=Fraction(1, 10 ** 12)) -> list[CheckOutcome]:
    out: list[CheckOutcome] = []
    ids = fam.structure_identities()
    for key in ("A-closed-form", "V-diagonal-real", "[M,K]=K", "[M,V]=K", "A^-x F0 A^x = q^-x V"):
        out.append(CheckOutcome(f"structure {key}", ids[key]))
    bad = fam.compatibility_check(x_max)
    out.append(CheckOutcome("compatibility", not bad, _first_failure((x, False) for x in bad)))
    op = fam.operator()
    out.append(CheckOutcome("preserves-polynomials", preserves_polynomials_check(op).passed))
    out.append(_outcome("weight-positive-definite",
                        ((x, fam.weight_profile(x).is_positive_definite())
                         for x in range(x_max + 1))))
    rep = symmetry_check(op, fam.weight_profile, x_max)
    out.append(CheckOutcome("symmetry", rep.passed,
                            ", ".join(f"{c.equation}@{c.x}" for c in rep.failures())))

    gs = gram_schmidt_monic(n_max, fam.moments)
    out.append(_outcome("explicit=gram-schmidt",
                        ((n, fam.explicit_monic(n) == gs[n]) for n in range(n_max + 1))))

    def eig_ok(n):
        p = fam.explicit_monic(n)
        lam = fam.eigenvalue(n)
        q, ab = fam.q, fam.a * fam.b
        return (apply(op, p) == lam * p
                and lam[0, 0] == -q ** (-n - 1) - ab * q ** (n + 2)
                and lam.is_upper_triangular())
    out.append(_outcome("eigenfunction", ((n, eig_ok(n)) for n in range(n_max + 1))))

    n_orth = min(n_max, 5)
    tildes = [fam.tilde_polys(n)[0] for n in range(n_orth + 1)]
    orth = []
    for m in range(n_orth + 1):
        for n in range(n_orth + 1):
            ip = inner_product_exact(tildes[m], tildes[n], fam.moments)
            orth.append(((m, n), ip == (fam.norm_matrix(n) if m == n else Mat.zeros(2))))
    out.append(_outcome("orthogonality+norms", orth))

    def rec_ok(n):
        a_n, b_n, c_n = fam.recurrence_coeffs(n)
        t = fam.tilde_polys
        lhs = t(n)[0].times_z()
        return (lhs == a_n * t(n + 1)[0] + b_n * t(n)[0] + c_n * t(n - 1)[0]
                and a_n == fam.recurrence_a_closed_form(n))
    out.append(_outcome("three-term-recurrence", ((n, rec_ok(n)) for n in range(1, n_max + 1))))

    def rod_ok(n):
        try:
            r = fam.rodrigues(n)
        except MVQJError:
            return False
        return r.polynomial == r.leading * fam.explicit_monic(n) and bool(r.leading.det())
    out.append(_outcome("rodrigues", ((n, rod_ok(n)) for n in range(min(n_max, 4) + 1))))

    def eta_ok(n, row):
        try:
            e = fam.eta_representation(n, row)
        except MVQJError:
            return False
        verdict = verify_qdiff_solution(e.f0, e.a, e.b, e.c, [fam.q ** j for j in range(3)],
                                        fam.q)
        return e.next_coefficient.is_zero() and verdict.passed
    out.append(_outcome("eta-representation",
                        (((n, row), eta_ok(n, row)) for n in range(min(n_max, 4) + 1)
                         for row in (1, 2))))

    if fam.v:
        red = reducibility_check(fam.weight_profile, 3)
        out.append(CheckOutcome("non-reducible", not red.reducible_candidate,
                                "" if red.witness is None else f"witness {red.witness}"))
    else:
        pa, pb = fam.p.scalar(2), fam.p.scalar()
        out.append(_outcome("v=0 block-scalar", (
            (n, fam.explicit_monic(n) == MatPoly.from_entries(
                [[lqj_monic(n, pa), MatPoly.zero(1)], [MatPoly.zero(1), lqj_monic(n, pb)]]))
            for n in range(n_max + 1))))

    out.extend(scalar_suite(fam.p.scalar(), n_max))

    if certified:
        w = fam.weight()
        one = MatPoly.identity(2)
        items = []
        for n in range(min(n_max, 4) + 1):
            enc = inner_product_series(MatPoly.monomial(n, Mat.identity(2)), one, w, tol)
            exact = fam.moment_matrix(n)
            ok = all(enc[i][j].overlaps(_scaled(exact[i, j], w.scale))
                     and enc[i][j].rad <= tol for i in range(2) for j in range(2))
            items.append((n, ok))
        out.append(_outcome("certified-series", items))
    return out


def _scaled(value, scale):
    return CertifiedComplex(scale * CertifiedReal.from_exact(value.re),
                            scale * CertifiedReal.from_exact(value.im))


def printed_form_findings(fam: Family, n_max: int = 3) -> dict[str, bool]:
    """Which literal printed variants hold exactly for this parameter set."""
    shifted = Family(FamilyParams(fam.q, fam.a * fam.q, fam.b, fam.v))

    def printed_rod(n, target):
        try:
            r = fam.rodrigues(n, "printed")
        except MVQJError:
            return False
        return r.polynomial == r.leading * target.explicit_monic(n)

    ns = range(n_max + 1)
    return {
        "[M,V]=V": fam.structure_identities()["[M,V]=V"],
        "norm indices h_n,h_n": all(
            inner_product_exact(fam.tilde_polys(n)[0], fam.tilde_polys(n)[0], fam.moments)
            == fam.displayed_norm_matrix(n) for n in ns),
        "entrywise weight symmetric": symmetry_check(fam.operator(),
                                                     fam.displayed_weight_profile, 5).passed,
        "printed Rodrigues gives P_n(a,b,v)": all(printed_rod(n, fam) for n in ns),
        "printed Rodrigues gives P_n(aq,b,v)": all(printed_rod(n, shifted) for n in ns),
    }
