import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import SX, sympy_equal, sympy_iterate, to_sympy
from strategies import T, systems
from qcurv.algebra import matrix as mx
from qcurv.algebra.tower import delta
from qcurv.parser import parse_value
from qcurv.sampling import random_gauge, random_system
from qcurv.systems import (
    QDiffSystem,
    SingularGauge,
    SingularSystem,
    dsum,
    dual,
    gauge,
    iterate,
    prolong,
    prolong_matrix,
    subst_matrix,
    tensor,
)

V = lambda s, t=T: parse_value(s, t)  # noqa: E731


def one(s, label=""):
    return QDiffSystem.from_strings([[s]], label=label)


def test_theta_iterate():
    assert iterate(one("q*x"), 3) == ((V("q^6*x^3"),),)


def test_zero_iterate_is_identity(rng):
    s = random_system(rng)
    assert iterate(s, 0) == mx.identity(2, T.X)


def test_negative_iterate():
    s = one("q*x")
    inv = iterate(s, -1)
    assert inv == ((V("1/x"),),)
    back = mx.matmul(subst_matrix(iterate(s, 1), T.q**-1), inv)
    assert mx.is_identity(back)


def test_singular_system_rejected():
    with pytest.raises(SingularSystem):
        QDiffSystem.from_strings([["x", "q*x"], ["1", "q"]])


@settings(max_examples=10)
@given(systems(), st.integers(-4, 4), st.integers(-4, 4))
def test_cocycle_law(s, j, k):
    lhs = iterate(s, j + k)
    rhs = mx.matmul(subst_matrix(iterate(s, j), s.tower.q**k), iterate(s, k))
    assert lhs == rhs


@settings(max_examples=5)
@given(systems(deg=1), st.integers(1, 3))
def test_iterate_matches_sympy(s, k):
    ours = iterate(s, k)
    ref = sympy_iterate(s.entry_strings(), k)
    for i in range(2):
        for j in range(2):
            assert sympy_equal(to_sympy(ours[i][j]), ref[i, j])


def test_identity_gauge(rng):
    s = random_system(rng)
    assert gauge(s, mx.identity(2, T.X)).matrix == s.matrix


def test_gauge_of_unit_system():
    s = gauge(one("1"), ((V("x-1"),),))
    assert s.matrix == ((V("(q*x-1)/(x-1)"),),)


def test_singular_gauge():
    with pytest.raises(SingularGauge):
        gauge(one("x"), ((T.X.zero,),))
    with pytest.raises(SingularGauge):
        gauge(QDiffSystem.from_strings([["x", "0"], ["0", "1"]]), ((T.X.one,),))


def test_gauge_second_iterate(rng):
    s = random_system(rng)
    p = random_gauge(rng, T, 2)
    g = gauge(s, p)
    expect = mx.matmul(mx.matmul(subst_matrix(p, T.q**2), iterate(s, 2)), mx.inverse(p))
    assert iterate(g, 2) == expect


@settings(max_examples=8)
@given(systems(deg=1), st.integers(-3, 3), st.integers(0, 10**6))
def test_gauge_conjugacy(s, k, seed):
    p = random_gauge(random.Random(seed), T, 2)
    expect = mx.matmul(mx.matmul(subst_matrix(p, T.q**k), iterate(s, k)), mx.inverse(p))
    assert iterate(gauge(s, p), k) == expect


def test_tensor_rank_one():
    assert tensor(one("q*x"), one("x-1")).matrix == ((V("q*x^2-q*x"),),)


def test_dual_rank_one():
    assert dual(one("q*x")).matrix == ((V("1/(q*x)"),),)


def test_dsum_is_block_diagonal():
    s = dsum(one("q*x"), one("2"))
    assert s.matrix == ((V("q*x"), T.X.zero), (T.X.zero, V("2")))


def test_tensor_unions_constants():
    a = QDiffSystem.from_strings([["l*x"]], constants=["l"])
    b = QDiffSystem.from_strings([["m+x"]], constants=["m"])
    t = tensor(a, b)
    assert t.tower.constants == ("l", "m")
    assert t.matrix[0][0] == V("l*x*(m+x)", t.tower)


@settings(max_examples=6)
@given(systems(), systems(), st.integers(-2, 4))
def test_tensor_iterate(s1, s2, k):
    assert iterate(tensor(s1, s2), k) == mx.kron(iterate(s1, k), iterate(s2, k))


@settings(max_examples=6)
@given(systems(), st.integers(-2, 4))
def test_dual_iterate(s, k):
    assert iterate(dual(s), k) == mx.transpose(mx.inverse(iterate(s, k)))


@settings(max_examples=6)
@given(systems(), systems(), st.integers(-2, 4))
def test_dsum_iterate(s1, s2, k):
    m = iterate(dsum(s1, s2), k)
    a, b = iterate(s1, k), iterate(s2, k)
    assert tuple(row[:2] for row in m[:2]) == a
    assert tuple(row[2:] for row in m[2:]) == b
    assert all(not v for row in m[:2] for v in row[2:])


@settings(max_examples=10)
@given(systems())
def test_dual_pairing_is_invariant(s):
    # Z^T Y is sigma_q-invariant when Z solves the dual: B^T A = Id
    d = dual(s)
    assert mx.is_identity(mx.matmul(mx.transpose(d.matrix), s.matrix))


def test_prolong_theta():
    p = prolong(one("q*x")).matrix
    assert p == ((V("q*x"), V("q*x")), (T.X.zero, V("q*x")))


def test_prolong_constant_system():
    s = QDiffSystem.from_strings([["2", "q"], ["1", "3"]])
    p = prolong(s).matrix
    assert p == mx.block([[s.matrix, mx.zeros(2, 2, T.X)], [mx.zeros(2, 2, T.X), s.matrix]])


def test_prolong_solution_shape():
    # Y = x^2 solves y(qx) = q^2 y(x); (dY, Y) = (2x^2, x^2) solves the prolonged system
    p = prolong(one("q^2")).matrix
    y = (T.X(2) * T.x**2, T.x**2)
    lhs = tuple(v.scale(T.q) for v in y)
    rhs = tuple(sum((p[i][j] * y[j] for j in range(2)), T.X.zero) for i in range(2))
    assert lhs == rhs


@settings(max_examples=6)
@given(systems(), st.integers(1, 4))
def test_prolong_iterate(s, k):
    ak = iterate(s, k)
    assert iterate(prolong(s), k) == prolong_matrix(ak)


def test_delta_matches_sympy_derivative():
    f = V("(q*x^2+1)/(x-q)")
    assert sympy_equal(to_sympy(delta(f)), SX * sympy.diff(to_sympy(f), SX))
    assert delta(V("q")) == T.X.zero
