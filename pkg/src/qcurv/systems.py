"""Linear q-difference systems ``Y(qx) = A(x) Y(x)`` and their constructions.

The convention is fixed once for the whole package: a system is the matrix
``A`` with ``Y(qx) = A(x) Y(x)``, and its iterates satisfy
``Y(q^k x) = A_k(x) Y(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import matrix as mx
from .algebra.fraction import FractionField, RatFunc
from .algebra.mpoly import bridge
from .algebra.tower import Tower, delta, tower as make_tower

__all__ = [
    "QDiffSystem",
    "SingularGauge",
    "SingularSystem",
    "cocycle",
    "dsum",
    "dual",
    "gauge",
    "iterate",
    "prolong",
    "prolong_matrix",
    "subst_matrix",
    "tensor",
]


class SingularSystem(ValueError):
    pass


class SingularGauge(ValueError):
    pass


@dataclass(frozen=True)
class QDiffSystem:
    """An invertible ``rank x rank`` matrix over ``K(x)``."""

    tower: Tower
    matrix: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        m = tuple(tuple(self.tower.X(a) for a in row) for row in self.matrix)
        if not m or any(len(row) != len(m) for row in m):
            raise ValueError("system matrix must be square and nonempty")
        object.__setattr__(self, "matrix", m)
        if not mx.nonsingular(m):
            raise SingularSystem("system matrix has zero determinant")

    @classmethod
    def from_strings(cls, rows, constants=(), label=""):
        from .parser import parse_value

        t = make_tower(tuple(constants))
        return cls(t, tuple(tuple(parse_value(s, t) for s in row) for row in rows), label)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def entry_strings(self):
        return [[str(a) for a in row] for row in self.matrix]

    def lift(self, target: Tower) -> "QDiffSystem":
        """The same system over a tower with more constants."""
        if target == self.tower:
            return self
        missing = set(self.tower.constants) - set(target.constants)
        if missing:
            raise ValueError(f"target tower lacks constants {sorted(missing)}")
        from .parser import parse_value

        m = tuple(tuple(parse_value(str(a), target) for a in row) for row in self.matrix)
        return QDiffSystem(target, m, self.label)


def subst_matrix(m, u):
    """Entrywise ``f(x) -> f(u x)``."""
    return tuple(tuple(a.scale(u) for a in row) for row in m)


def _poly_matmul(a, b, zero):
    n, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def _prem(a, b):
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` without inversions."""
    ring = a.ring
    lb, db = b.lc, b.degree
    r = a
    while r and r.degree >= db:
        shift = ring.monomial(r.degree - db, r.lc)
        r = r.scalar_mul(lb) - shift * b
    return r


def _factor_gcd(num, f):
    """``gcd(num, f)`` for a small factor ``f``; up to a unit, ``1`` when coprime.

    Inverting the large coefficients of ``num`` is what makes a plain
    Euclidean gcd expensive, so the coprime case is decided with a single
    division by ``f`` and a pseudo-remainder sequence on small degrees.
    """
    r = num % f
    if not r:
        return f
    if r.degree == 0:
        return None
    a, b = f, r
    while b.degree > 0:
        a, b = b, _prem(a, b)
        if not b:
            return a.monic()
    return None


def _reduce_over_factors(field: FractionField, num, factors):
    """``num / prod(factors)`` in lowest terms.

    Over ``Q(q, ...)`` this is one multivariate gcd; over a cyclotomic
    field it is one small gcd per factor.
    """
    if not num:
        return field.zero
    br = bridge(field)
    if br is not None:
        den = field.ring.one
        for f in factors:
            den = den * f
        n0, n1 = br.poly(num)
        d0, d1 = br.poly(den)
        return br.quotient(n0 * d1, n1 * d0)
    certify = getattr(num, "certainly_coprime", None)
    den = field.ring.one
    for f in factors:
        if f.degree > 0 and not (certify is not None and certify(f)):
            h = _factor_gcd(num, f)
            if h is not None:
                num, f = num // h, f // h
                certify = getattr(num, "certainly_coprime", None)
        den = den * f
    return field.coprime(num, den)


def _scaled(m, u):
    return [[a.scale(u) for a in row] for row in m]


def cocycle(m, unit, k: int):
    """Iterate ``A_k`` of a matrix of rational functions for the shift ``x -> unit*x``.

    ``A_k(x) = A(u^{k-1} x) ... A(u x) A(x)`` for ``k > 0``, the identity for
    ``k = 0`` and ``A(u^k x)^{-1} ... A(u^{-1} x)^{-1}`` for ``k < 0``.  The
    product is accumulated on the polynomial numerator matrix by binary
    splitting, with the shifted denominators kept as a factor list, so the
    only gcds are against those small factors at the end.
    """
    X: FractionField = m[0][0].field
    n = len(m)
    if k == 0:
        return mx.identity(n, X)
    unit = X.base(unit)
    if k > 0:
        num, den = mx.clear_denominators(m)
        step = unit
    else:
        step = 1 / unit
        num, d = mx.clear_denominators(subst_matrix(m, step))
        adj, dn = mx.ff_inverse(num)
        # A(x/u)^{-1} = d * adj / dn
        num = tuple(tuple(a * d for a in row) for row in adj)
        den = dn
        k = -k
    zero = X.ring.zero
    # binary chain on the cocycle rule A_{m+n}(x) = A_n(u^m x) A_m(x)
    prod, factors, m = num, [den], 1
    for bit in bin(k)[3:]:
        s = step**m
        prod = _poly_matmul(_scaled(prod, s), prod, zero)
        factors = factors + [f.scale(s) for f in factors]
        m *= 2
        if bit == "1":
            s = step**m
            prod = _poly_matmul(_scaled(num, s), prod, zero)
            factors.append(den.scale(s))
            m += 1
    return tuple(tuple(_reduce_over_factors(X, a, factors) for a in row) for row in prod)


def iterate(sys: QDiffSystem, k: int):
    """The cocycle matrix ``A_k`` with ``Y(q^k x) = A_k(x) Y(x)``."""
    return cocycle(sys.matrix, sys.tower.q, k)


def gauge(sys: QDiffSystem, p) -> QDiffSystem:
    """Change of basis ``A'(x) = P(qx) A(x) P(x)^{-1}``."""
    X = sys.tower.X
    p = tuple(tuple(X(a) for a in row) for row in p)
    if len(p) != sys.rank or not mx.nonsingular(p):
        raise SingularGauge("gauge matrix is singular or has the wrong size")
    a = mx.matmul(mx.matmul(subst_matrix(p, sys.tower.q), sys.matrix), mx.inverse(p))
    return QDiffSystem(sys.tower, a, sys.label and f"gauge({sys.label})")


def _common_tower(s1: QDiffSystem, s2: QDiffSystem):
    if s1.tower == s2.tower:
        return s1, s2
    names = s1.tower.constants + tuple(c for c in s2.tower.constants if c not in s1.tower.constants)
    t = make_tower(names)
    return s1.lift(t), s2.lift(t)


def tensor(s1: QDiffSystem, s2: QDiffSystem) -> QDiffSystem:
    s1, s2 = _common_tower(s1, s2)
    return QDiffSystem(s1.tower, mx.kron(s1.matrix, s2.matrix), _label("tensor", s1, s2))


def dsum(s1: QDiffSystem, s2: QDiffSystem) -> QDiffSystem:
    s1, s2 = _common_tower(s1, s2)
    X = s1.tower.X
    m = mx.block(
        [
            [s1.matrix, mx.zeros(s1.rank, s2.rank, X)],
            [mx.zeros(s2.rank, s1.rank, X), s2.matrix],
        ]
    )
    return QDiffSystem(s1.tower, m, _label("dsum", s1, s2))


def dual(sys: QDiffSystem) -> QDiffSystem:
    """``(A^{-1})^T``: pairs solutions with dual solutions into invariants."""
    return QDiffSystem(sys.tower, mx.transpose(mx.inverse(sys.matrix)), _label("dual", sys))


def prolong_matrix(m):
    """``[[A, dA], [0, A]]`` with ``d = x d/dx`` applied entrywise."""
    field = m[0][0].field
    dm = mx.mat_map(delta, m)
    return mx.block([[m, dm], [mx.zeros(len(m), len(m), field), m]])


def prolong(sys: QDiffSystem) -> QDiffSystem:
    """Prolongation: if ``Y`` solves ``A`` then ``(dY, Y)`` solves the result."""
    return QDiffSystem(sys.tower, prolong_matrix(sys.matrix), _label("prolong", sys))


def _label(op, *systems):
    labels = [s.label for s in systems]
    return f"{op}({', '.join(labels)})" if all(labels) else ""


def is_ratfunc_matrix(m) -> bool:
    return all(isinstance(a, RatFunc) for row in m for a in row)
