"""Randomized identities checked in exact arithmetic."""
import json
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from mvqj.exact import GaussRat, Mat
from mvqj.mvlqj import P1, P2, Family
from mvqj.polymat import MatPoly, polynomial_from_lattice_function
from mvqj.qcalc import qbinom, qderiv_lattice_n, qderiv_poly, qpoch
from mvqj.qdiffop import apply
from mvqj.serialize import from_jsonable, to_jsonable
from mvqj.weights import inner_product_exact

FAMS = {"P1": Family(P1), "P2": Family(P2)}

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalars = st.builds(GaussRat, small, small)
bases = st.sampled_from([F(1, 2), F(2, 3), F(1, 3), F(3, 4)])


@st.composite
def mats(draw, size=2):
    return Mat([[draw(scalars) for _ in range(size)] for _ in range(size)])


@st.composite
def polys(draw, max_deg=4, size=2):
    deg = draw(st.integers(0, max_deg))
    return MatPoly([draw(mats(size)) for _ in range(deg + 1)], size)


def dq_power(p, n, q):
    for _ in range(n):
        p = qderiv_poly(p, q)
    return p


@settings(max_examples=30, deadline=None)
@given(polys(5), polys(5), st.integers(0, 4), bases)
def test_q_leibniz(f, g, n, q):
    # D^n(fg)(z) = sum_k [n,k] (D^k f)(q^{n-k} z) (D^{n-k} g)(z)
    lhs = dq_power(f * g, n, q)
    rhs = MatPoly.zero(2)
    for k in range(n + 1):
        rhs = rhs + (dq_power(f, k, q).dilate(q ** (n - k)) * dq_power(g, n - k, q)) * qbinom(n, k, q)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(polys(5), st.integers(0, 4), st.integers(0, 6), bases)
def test_lattice_derivative_matches_coefficient_rule(f, n, x, q):
    assert qderiv_lattice_n(lambda y: f(q ** y), n, x, q) == dq_power(f, n, q)(q ** x)


@given(scalars, st.integers(0, 6), st.integers(0, 6), bases)
def test_qpoch_additivity(c, m, n, q):
    assert qpoch(c, m + n, q) == qpoch(c, m, q) * qpoch(c * q ** m, n, q)


@settings(max_examples=30, deadline=None)
@given(polys(3), polys(3), mats(), mats(), st.sampled_from(sorted(FAMS)))
def test_sesquilinearity(p, r, m1, m2, name):
    mom = FAMS[name].moments
    base = inner_product_exact(p, r, mom)
    assert inner_product_exact(m1 * p, r, mom) == m1 @ base
    assert inner_product_exact(p, m2 * r, mom) == base @ m2.H
    assert inner_product_exact(r, p, mom) == base.H


@settings(max_examples=20, deadline=None)
@given(polys(4), bases)
def test_interpolation_round_trip(p, q):
    assert polynomial_from_lattice_function(lambda x: p(q ** x), 4, q) == p


@settings(max_examples=20, deadline=None)
@given(polys(4), polys(4), st.sampled_from(sorted(FAMS)))
def test_operator_is_symmetric(p, r, name):
    fam = FAMS[name]
    op = fam.operator()
    assert inner_product_exact(apply(op, p), r, fam.moments) == \
        inner_product_exact(p, apply(op, r), fam.moments)


@settings(max_examples=30, deadline=None)
@given(polys(4), st.sampled_from(sorted(FAMS)))
def test_norm_is_positive(p, name):
    ip = inner_product_exact(p, p, FAMS[name].moments)
    if p.is_zero():
        assert ip.is_zero()
    else:
        # a nonzero polynomial with full-rank leading block has positive definite norm
        if p.leading.det() != 0:
            assert ip.is_positive_definite()
        assert ip.is_hermitian() and ip[0, 0].real_value() >= 0 and ip[1, 1].real_value() >= 0


@given(mats())
def test_serialize_round_trip(m):
    assert from_jsonable(json.loads(json.dumps(to_jsonable(m)))) == m
