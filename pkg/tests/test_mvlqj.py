from fractions import Fraction as F

import pytest

from mvqj.errors import DomainError
from mvqj.exact import GaussRat, Mat
from mvqj.lqjacobi import lqj_monic, lqj_recurrence
from mvqj.mvlqj import P1, Family, FamilyParams
from mvqj.polymat import MatPoly
from mvqj.qdiffop import apply
from mvqj.weights import gram_schmidt_monic, inner_product_exact

I2 = Mat.identity(2)


def test_domain():
    with pytest.raises(DomainError):
        FamilyParams(F(1, 2), 3, 0, 1)
    with pytest.raises(DomainError):
        FamilyParams(F(1, 2), F(1, 4), 2, 1)
    with pytest.raises(DomainError):
        FamilyParams(F(1, 2), GaussRat(0, 1), 0, 1)


def test_structure_matrices(fam):
    assert fam.A == Mat([[fam.q, -fam.v * (1 - fam.q)], [0, 1]])
    assert fam.A @ fam.A_inv == I2
    ids = fam.structure_identities()
    assert ids["V-diagonal-real"] and ids["[M,K]=K"] and ids["[M,V]=K"]
    assert ids["A^-x F0 A^x = q^-x V"]
    assert not ids["[M,V]=V"]


def test_a_power(fam):
    assert fam.a_power(0) == I2
    assert fam.a_power(1) == fam.A
    assert fam.a_power(-1) == fam.A_inv
    assert fam.a_power(5) == fam.A ** 5
    assert fam.a_power(-3) == fam.A_inv ** 3


def test_weight_profile(fam1, fam):
    assert fam.weight_profile(0) == I2
    assert fam1.weight_profile(1) == Mat([[F(3, 16), F(-3, 16)], [F(-3, 16), F(3, 8)]])
    assert all(fam.weight_profile(x).is_positive_definite() for x in range(21))


def test_displayed_weight_differs(fam):
    gap = fam.weight_profile(1) - fam.displayed_weight_profile(1)
    scalar = fam.weight_scalar(1)
    assert gap == Mat([[fam.v.abs2() * (1 - fam.q) ** 2 * scalar, 0], [0, 0]])


def test_operator_coefficients(fam1):
    op = fam1.operator()
    z = F(1, 3)
    assert op.coefficient(-1)(z) == fam1.A_inv * (1 / z - 1)
    assert op.coefficient(0)(z) == fam1.K - (fam1.A_inv + fam1.A * fam1.a) * (1 / z)
    assert op.coefficient(1)(z) == fam1.A * (fam1.a / z - fam1.a * fam1.b * fam1.q)


def test_eigenvalue_values(fam1, fam):
    assert fam1.eigenvalue(0) == Mat([[F(-65, 32), F(-3, 32)], [0, F(-17, 16)]])
    for n in range(1, 8):
        assert fam.tilde_eigenvalues(n - 1)[0] == fam.tilde_eigenvalues(n)[1]
        assert fam.eigenvalue(n).is_upper_triangular()


def test_kappa_invariants(fam):
    k0 = fam.kappa(0)
    assert k0.k21 == 0 and k0.xi == 1
    for n in range(8):
        k = fam.kappa(n)
        assert k.xi.is_real and 0 < k.xi <= 1
        det = k.k11 * k.k22 - k.k21 * k.k12
        assert det.is_real and det > 0


def test_alpha_zero(fam1, fam):
    a, b, q, v = fam.a, fam.b, fam.q, fam.v
    assert fam.kappa(0).alpha == v * a * q * (1 - b * q) / (1 - a * b * q * q)
    # abq^2 = 1/32 for P1
    assert fam1.kappa(0).alpha == F(3, 31)


def test_explicit_small_cases(fam1):
    assert fam1.explicit_monic(0) == MatPoly.identity(2)
    assert fam1.explicit_monic(1) == gram_schmidt_monic(1, fam1.moments)[1]
    tilde, nn = fam1.tilde_polys(3)
    assert nn.det() == 1 and nn.is_upper_triangular()
    assert tilde == nn * fam1.explicit_monic(3)
    assert fam1.explicit_monic(3).is_monic()


def test_v_zero_reduction():
    fam0 = Family(FamilyParams(F(2, 3), F(1, 3), -1, 0))
    pa, pb = fam0.p.scalar(2), fam0.p.scalar()
    zero = MatPoly.zero(1)
    for n in range(6):
        assert fam0.explicit_monic(n) == MatPoly.from_entries(
            [[lqj_monic(n, pa), zero], [zero, lqj_monic(n, pb)]])


def test_tilde_rows_decouple(fam):
    op = fam.operator()
    for n in range(5):
        tilde, _ = fam.tilde_polys(n)
        assert apply(op, tilde) == Mat.diag(list(fam.tilde_eigenvalues(n))) * tilde


def test_norms(fam):
    assert fam.norm_matrix(0)[1, 1] == 1
    for n in range(6):
        h = fam.norm_matrix(n)
        assert h.is_diagonal() and h[0, 0] > 0 and h[1, 1] > 0
        tilde = fam.tilde_polys(n)[0]
        assert inner_product_exact(tilde, tilde, fam.moments) == h
    for n in range(6, 9):
        h = fam.norm_matrix(n)
        assert h[0, 0] > 0 and h[1, 1] > 0


def test_printed_norm_indices_disagree(fam):
    tilde = fam.tilde_polys(1)[0]
    assert inner_product_exact(tilde, tilde, fam.moments) != fam.displayed_norm_matrix(1)


def test_recurrence_v_zero():
    fam0 = Family(FamilyParams(F(1, 2), F(1, 4), F(1, 2), 0))
    pa, pb = fam0.p.scalar(2), fam0.p.scalar()
    for n in range(1, 5):
        a_n, b_n, c_n = fam0.recurrence_coeffs(n)
        assert a_n == I2
        assert b_n.is_diagonal() and c_n.is_diagonal()
        # monic scalar recurrence: z p = p_{n+1} + beta_n p_n + gamma_n p_{n-1}
        for idx, sp in ((0, pa), (1, pb)):
            big_a, big_c = lqj_recurrence(n, sp)
            assert b_n[idx, idx] == big_a + big_c
            assert c_n[idx, idx] == big_a_prev(n, sp) * big_c


def big_a_prev(n, sp):
    return lqj_recurrence(n - 1, sp)[0]


def test_recurrence_identity(fam):
    for n in range(1, 6):
        a_n, b_n, c_n = fam.recurrence_coeffs(n)
        t = [fam.tilde_polys(k)[0] for k in (n - 1, n, n + 1)]
        assert t[1].times_z() == a_n * t[2] + b_n * t[1] + c_n * t[0]
        assert a_n == fam.recurrence_a_closed_form(n)


def test_moment_matrix(fam1, fam):
    assert fam.moment_matrix(0)[1, 1] == 1
    assert fam1.moment_matrix(0)[0, 1] == F(-3, 31)
    for n in range(7):
        m = fam.moment_matrix(n)
        assert m.is_hermitian()
        assert inner_product_exact(MatPoly.monomial(n, I2), MatPoly.identity(2), fam.moments) == m
    assert fam.moment_matrix(0).is_positive_definite()


def test_compatibility(fam):
    assert fam.compatibility_check(20) == []


def test_rodrigues_corrected(fam):
    r0 = fam.rodrigues(0)
    assert r0.leading == I2 * (1 - fam.a * fam.q)
    for n in range(5):
        r = fam.rodrigues(n)
        assert r.polynomial == r.leading * fam.explicit_monic(n)
        assert r.leading.det() != 0
        for m in range(n):
            ip = inner_product_exact(r.polynomial, MatPoly.monomial(m, I2), fam.moments)
            assert ip.is_zero()


def test_rodrigues_printed_reproduces_shifted_family(fam1):
    r0 = fam1.rodrigues(0, "printed")
    assert r0.leading == I2 * F(15, 16)
    shifted = Family(FamilyParams(fam1.q, fam1.a * fam1.q, fam1.b, fam1.v))
    for n in range(4):
        r = fam1.rodrigues(n, "printed")
        assert r.polynomial == r.leading * shifted.explicit_monic(n)
        if n:
            assert r.polynomial != r.leading * fam1.explicit_monic(n)


def test_rodrigues_boundary(fam):
    for n in range(2, 5):
        for k in range(2, n):
            for m in range(n):
                at_zero, ratios = fam.rodrigues_boundary(n, k, m, 14)
                assert at_zero.is_zero()
                assert all(r < 1 for r in ratios[-4:])


def test_eta_representation(fam1, fam):
    e0 = fam.eta_representation(0, 2)
    assert len(e0.coefficients) == 1 and e0.coefficients[0] == e0.f0
    e1 = fam1.eta_representation(1, 1)
    tilde = fam1.tilde_polys(1)[0]
    assert [c.rows[0] for c in e1.coefficients] == [c.rows[0] for c in tilde.coeffs]
    for n in range(5):
        for row in (1, 2):
            assert fam.eta_representation(n, row).next_coefficient.is_zero()


def test_diagnose_weight(fam):
    d = fam.diagnose_weight(10, 2)
    assert d["verdict"] == "product"
    assert d["product"]["symmetric"] and d["product"]["orthogonal"]
    assert not d["displayed"]["symmetric"]
    assert d["discrepancy-11-x1"] == fam.v.abs2() * (1 - fam.q) ** 2


def test_presets():
    assert Family(P1).a == F(1, 4)
