from fractions import Fraction

import pytest
import sympy
from flint import fmpq
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import SX, to_sympy, sympy_equal
from strategies import T, fractions, k_elements, nonzero_ratfuncs, ratfuncs

from qcurv.algebra import (
    QQ,
    BadPlace,
    DivisionByZero,
    SingularMatrix,
    cyclotomic,
    cyclotomic_coeffs,
    cyclotomic_field,
    delta,
    det,
    ff_inverse,
    identity,
    inverse,
    kron,
    matmul,
    nonsingular,
    poly_ring,
    reduce_q,
    subst_qx,
    transpose,
)
from qcurv.algebra.cyclotomic import CycloPoly, mobius
from qcurv.algebra.poly import Poly, gcd, xgcd


# -- rationals ------------------------------------------------------------------


def test_rationals_are_reduced():
    a = QQ(Fraction(6, -4))
    assert (a.p, a.q) == (-3, 2)
    assert QQ(0) == QQ.zero and QQ(0).q == 1


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        QQ(0.5)


# -- cyclotomic polynomials -----------------------------------------------------


@pytest.mark.parametrize("k", range(1, 61))
def test_cyclotomic_matches_sympy(k):
    q = sympy.Symbol("q")
    expected = sympy.Poly(sympy.cyclotomic_poly(k, q), q).all_coeffs()[::-1]
    assert list(cyclotomic_coeffs(k)) == [int(c) for c in expected]


def test_cyclotomic_examples():
    assert str(cyclotomic(1)) == "q - 1"
    assert str(cyclotomic(4)) == "q^2 + 1"
    assert str(cyclotomic(6)) == "q^2 - q + 1"


@pytest.mark.parametrize("k", range(1, 31))
def test_cyclotomic_product_is_q_power_minus_one(k):
    prod = poly_ring(QQ, "q").one
    for d in range(1, k + 1):
        if k % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == poly_ring(QQ, "q").monomial(k) - 1


def test_cyclotomic_degree_is_totient():
    for k in range(1, 40):
        assert cyclotomic(k).degree == sympy.totient(k)


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_cyclotomic_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_coeffs(0)


def test_cyclotomic_table_under_threads():
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(8) as ex:
        got = list(ex.map(cyclotomic_coeffs, list(range(1, 80)) * 3))
    assert got == [cyclotomic_coeffs(k) for k in list(range(1, 80)) * 3]


# -- reduction at a place ---------------------------------------------------------


def test_reduce_q_examples():
    q = T.q
    assert reduce_q(q**3, 3) == 1
    assert reduce_q(q**6, 3) == 1
    with pytest.raises(BadPlace):
        reduce_q(1 / (q - 1), 1)


@given(k_elements(), k_elements(), st.integers(min_value=1, max_value=12))
def test_reduce_q_is_a_ring_map(a, b, k):
    try:
        ra, rb = reduce_q(a, k), reduce_q(b, k)
    except BadPlace:
        return
    assert reduce_q(a + b, k) == ra + rb
    assert reduce_q(a * b, k) == ra * rb
    assert reduce_q(T.K.one, k) == 1


def test_root_of_unity_has_order_k():
    for k in range(1, 25):
        z = cyclotomic_field(k, QQ).gen
        assert z**k == 1
        assert all(z**j != 1 for j in range(1, k))


@given(k_elements(nonzero=True), st.integers(min_value=1, max_value=15))
def test_cyclotomic_inverse(a, k):
    try:
        r = reduce_q(a, k)
    except BadPlace:
        return
    if r:
        assert r * r.inverse() == 1


# -- polynomials over the residue fields ------------------------------------------


def _cyclo_poly(rng_list, F):
    R = poly_ring(F, "x")
    Q = poly_ring(QQ, "q")
    return R._make([F(Q.from_coeffs(c)) for c in rng_list])


@given(
    st.integers(min_value=1, max_value=30),
    st.lists(st.lists(fractions, max_size=12), max_size=6),
    st.lists(st.lists(fractions, max_size=12), max_size=6),
)
def test_kronecker_product_matches_schoolbook(k, a, b):
    F = cyclotomic_field(k, QQ)
    pa, pb = _cyclo_poly(a, F), _cyclo_poly(b, F)
    assert isinstance(pa, CycloPoly)
    assert pa * pb == Poly.__mul__(pa, pb)


@given(
    st.integers(min_value=2, max_value=20),
    st.lists(st.lists(fractions, min_size=1, max_size=6), min_size=2, max_size=5),
    st.lists(st.lists(fractions, min_size=1, max_size=6), min_size=2, max_size=4),
)
def test_coprime_certificate_is_sound(k, a, b):
    F = cyclotomic_field(k, QQ)
    pa, pb = _cyclo_poly(a, F), _cyclo_poly(b, F)
    if pa.degree < 1 or pb.degree < 1:
        return
    if pa.certainly_coprime(pb):
        assert gcd(pa, pb).degree == 0
    common = _cyclo_poly([[0, -1], [1]], F)  # x - q
    assert not (pa * common).certainly_coprime(pb * common)


# -- polynomial and rational function arithmetic ----------------------------------


@given(st.lists(fractions, max_size=6), st.lists(fractions, max_size=6))
def test_xgcd_bezout(a, b):
    R = poly_ring(QQ, "t")
    pa, pb = R.from_coeffs(a), R.from_coeffs(b)
    g, s, t = xgcd(pa, pb)
    assert s * pa + t * pb == g
    if g:
        assert g.lc == 1 and not pa % g and not pb % g


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_laws(a, b, c):
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert not (a - a)


@given(nonzero_ratfuncs())
def test_division_and_canonical_form(a):
    assert a / a == 1
    assert a * a.inverse() == 1
    assert a.den.lc == 1
    assert gcd(a.num, a.den).degree == 0


@given(ratfuncs(), ratfuncs())
def test_arithmetic_agrees_with_sympy(a, b):
    assert sympy_equal(to_sympy(a * b - a), to_sympy(a) * to_sympy(b) - to_sympy(a))


def test_division_by_zero_is_reported():
    with pytest.raises(DivisionByZero):
        T.X.one / T.X.zero
    with pytest.raises(DivisionByZero):
        T.X.zero.inverse()


# -- the derivation and the q-shift ------------------------------------------------


def test_delta_examples():
    x = T.x
    assert delta(x**5) == 5 * x**5
    assert delta(T.X(T.q)) == 0
    assert delta(1 / (x - 1)) == -x / (x - 1) ** 2


@given(ratfuncs())
def test_delta_matches_sympy(f):
    assert sympy_equal(to_sympy(delta(f)), SX * sympy.diff(to_sympy(f), SX))


def test_delta_difference_quotient_at_rational_point():
    # d/dx of 1/(x-1) at x = 3 from symmetric difference quotients
    f = 1 / (T.x - 1)
    g = delta(f)
    x0 = Fraction(3)
    for h in (Fraction(1, 10**6), Fraction(1, 10**9)):
        dq = (1 / (x0 + h - 1) - 1 / (x0 - h - 1)) / (2 * h)
        assert abs(x0 * dq - Fraction(str(g(T.K(x0)).num.coeff(0)))) < 10 * h


@given(ratfuncs(), ratfuncs())
def test_delta_leibniz(a, b):
    assert delta(a * b) == delta(a) * b + a * delta(b)


@given(ratfuncs())
def test_delta_commutes_with_q_shift(f):
    assert delta(subst_qx(f, T.q)) == subst_qx(delta(f), T.q)


def test_subst_examples():
    x, q = T.x, T.q
    assert subst_qx(x**2, q) == T.X(q) ** 2 * x**2
    assert subst_qx(x / (x - 1), 1) == x / (x - 1)


@given(ratfuncs(), ratfuncs())
def test_subst_is_a_ring_map(a, b):
    q = T.q
    assert subst_qx(a * b, q) == subst_qx(a, q) * subst_qx(b, q)
    assert subst_qx(subst_qx(a, q), 1 / q) == a


# -- matrices --------------------------------------------------------------------------


@st.composite
def matrices(draw, n):
    return tuple(tuple(draw(ratfuncs(deg=1, den_deg=1)) for _ in range(n)) for _ in range(n))


@settings(max_examples=15)
@given(st.integers(min_value=1, max_value=3).flatmap(matrices))
def test_inverse_is_exact(m):
    n = len(m)
    if not det(m):
        with pytest.raises(SingularMatrix):
            inverse(m)
        return
    assert matmul(m, inverse(m)) == identity(n, T.X)
    assert matmul(inverse(m), m) == identity(n, T.X)


@st.composite
def small_matrices(draw, n):
    return tuple(tuple(draw(ratfuncs(deg=1, den_deg=0)) for _ in range(n)) for _ in range(n))


@settings(max_examples=25)
@given(st.integers(min_value=1, max_value=3).flatmap(matrices), st.integers(min_value=1, max_value=3).flatmap(matrices))
def test_det_multiplicative(a, b):
    if len(a) == len(b):
        assert det(matmul(a, b)) == det(a) * det(b)


@settings(max_examples=15)
@given(st.integers(min_value=1, max_value=2).flatmap(small_matrices), st.integers(min_value=1, max_value=2).flatmap(small_matrices))
def test_det_of_kron(a, b):
    k = kron(a, b)
    assert det(k) == det(a) ** len(b) * det(b) ** len(a)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_fraction_free_inverse_on_integers(rows):
    m = tuple(tuple(fmpq(v) for v in r) for r in rows)
    if not det(m):
        with pytest.raises(SingularMatrix):
            ff_inverse(m)
        return
    adj, d = ff_inverse(m)
    n = len(m)
    assert matmul(m, adj) == tuple(tuple(d if i == j else 0 for j in range(n)) for i in range(n))
    assert d in (det(m), -det(m))


@settings(max_examples=30)
@given(st.integers(min_value=1, max_value=3).flatmap(matrices))
def test_nonsingular_agrees_with_det(m):
    assert nonsingular(m) == bool(det(m))


def test_nonsingular_on_singular_inputs():
    x = T.x
    assert not nonsingular(((x, T.X.one), (x**2, x)))
    assert not nonsingular(((T.X.zero,),))
    F = cyclotomic_field(6, QQ)
    from qcurv.algebra import place_field

    P = place_field(6, QQ)
    z = P(F.gen)
    assert not nonsingular(((z, P.gen), (z * z, z * P.gen)))
    assert nonsingular(((z, P.gen), (P.one, z * P.gen)))


def test_transpose_and_kron_shapes():
    x = T.x
    m = ((x, T.X.one), (T.X.zero, x))
    assert transpose(transpose(m)) == m
    assert len(kron(m, m)) == 4 and len(kron(m, m)[0]) == 4
