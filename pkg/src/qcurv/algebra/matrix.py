"""Exact dense matrices as tuples of row tuples.

Everything here is generic over the coefficient domain: it only needs ring
operations and an exact division for the fraction-free routines.
"""

from __future__ import annotations

import random

from flint import fmpq, nmod, nmod_mat

from .cyclotomic import CycloElem, CyclotomicField
from .fraction import DivisionByZero, FractionField, RatFunc
from .mpoly import bridge
from .poly import Poly, lcm
from .rational import QQ

__all__ = [
    "SingularMatrix",
    "block",
    "clear_denominators",
    "det",
    "dims",
    "ff_inverse",
    "identity",
    "inverse",
    "is_identity",
    "kron",
    "mat_add",
    "mat_map",
    "mat_sub",
    "matmul",
    "nonsingular",
    "scalar_matrix",
    "transpose",
    "zeros",
]


class SingularMatrix(DivisionByZero):
    pass


def dims(m):
    return len(m), len(m[0]) if m else 0


def zeros(rows: int, cols: int, domain):
    z = domain.zero
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(n: int, domain):
    z, o = domain.zero, domain.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def scalar_matrix(n: int, c, domain):
    z = domain.zero
    return tuple(tuple(c if i == j else z for j in range(n)) for i in range(n))


def mat_map(f, m):
    return tuple(tuple(f(a) for a in row) for row in m)


def transpose(m):
    return tuple(zip(*m))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matmul(a, b):
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {dims(a)} x {dims(b)}")
    cols = list(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in cols:
            acc = None
            for x, y in zip(row, col):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            new_row.append(acc if acc is not None else row[0] - row[0])
        out.append(tuple(new_row))
    return tuple(out)


def kron(a, b):
    ra, ca = dims(a)
    rb, cb = dims(b)
    return tuple(
        tuple(a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb))
        for i in range(ra * rb)
    )


def block(blocks):
    """Assemble a matrix from a 2-d list of equally shaped-per-row blocks."""
    out = []
    for brow in blocks:
        for r in range(len(brow[0])):
            out.append(tuple(x for blk in brow for x in blk[r]))
    return tuple(out)


def is_identity(m) -> bool:
    return all((x == 1) if i == j else (not x) for i, row in enumerate(m) for j, x in enumerate(row))


def _exact_div(a, b):
    return a // b if isinstance(a, Poly) else a / b


def ff_inverse(m):
    """Fraction-free Gauss-Jordan elimination.

    For a square matrix over an integral domain returns ``(adj, d)`` with
    ``m @ adj == d * I`` and ``d = +-det(m)``.  Every intermediate division
    is exact (Bareiss), so over a polynomial ring nothing leaves the ring.
    """
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    zero = m[0][0] - m[0][0]
    one = zero + 1
    work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    prev = one
    for k in range(n):
        piv = next((i for i in range(k, n) if work[i][k]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
        pk = work[k]
        akk = pk[k]
        for i in range(n):
            if i == k:
                continue
            wi = work[i]
            aik = wi[k]
            for j in range(2 * n):
                if j == k:
                    continue
                v = akk * wi[j]
                if aik and pk[j]:
                    v = v - aik * pk[j]
                wi[j] = _exact_div(v, prev) if prev != one else v
            wi[k] = zero
        prev = akk
    # every diagonal entry now equals the same (signed) determinant
    return tuple(tuple(row[n:]) for row in work), prev


def det(m):
    """Determinant by Bareiss fraction-free elimination.

    Matrices of rational functions are first written as ``N / d`` so the
    elimination runs on polynomials with exact division.
    """
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    a = m[0][0]
    if isinstance(a, RatFunc) and n > 1:
        br = bridge(a.field)
        if br is not None:
            num, d = br.matrix(m)
            return br.quotient(_bareiss(num), d**n)
        num, d = clear_denominators(m)
        return a.field.fraction(_bareiss(num), d**n)
    return _bareiss(m)


def _bareiss(m):
    n = len(m)
    zero = m[0][0] - m[0][0]
    one = zero + 1
    work = [list(row) for row in m]
    sign, prev = 1, one
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if work[i][k]), None)
        if piv is None:
            return zero
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            sign = -sign
        akk = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = akk * work[i][j] - work[i][k] * work[k][j]
                work[i][j] = _exact_div(v, prev) if prev != one else v
        prev = akk
    d = work[n - 1][n - 1]
    return d if sign == 1 else -d


def clear_denominators(m):
    """Split a matrix of rational functions as ``N / d``.

    Returns ``(N, d)`` with ``N`` a polynomial matrix and ``d`` the monic
    lcm of the entry denominators.
    """
    d = None
    for row in m:
        for a in row:
            d = a.den if d is None else lcm(d, a.den)
    return tuple(tuple(a.num * (d // a.den) for a in row) for row in m), d


def inverse(m):
    """Exact inverse.

    Matrices of rational functions are inverted through their polynomial
    numerator matrix, so elimination never forms nested fractions.
    """
    first = m[0][0]
    br = bridge(first.field) if isinstance(first, RatFunc) else None
    if br is not None:
        num, d = br.matrix(m)
        adj, dn = ff_inverse(num)
        if dn.is_zero():
            raise SingularMatrix("matrix is singular")
        return tuple(tuple(br.quotient(a * d, dn) for a in row) for row in adj)
    if isinstance(first, RatFunc):
        field: FractionField = first.field
        num, d = clear_denominators(m)
        adj, dn = ff_inverse(num)
        if not dn:
            raise SingularMatrix("matrix is singular")
        return tuple(tuple(field.fraction(a * d, dn) for a in row) for row in adj)
    adj, dn = ff_inverse(m)
    inv = 1 / dn
    return tuple(tuple(a * inv for a in row) for row in adj)


# -- invertibility by specialization -------------------------------------------

_P61 = 2**61 - 1


class _Pole(Exception):
    pass


def _structure(a):
    """Variable names along the coefficient tower of ``a`` and the cyclotomic field, if any."""
    names, cyclo = [], None
    dom = a.field if isinstance(a, RatFunc) else None
    while dom is not None:
        if isinstance(dom, FractionField):
            names.append(dom.var)
            dom = dom.base
        elif isinstance(dom, CyclotomicField):
            cyclo = dom
            names.append("q")
            dom = dom.base
        else:
            dom = None
    return names, cyclo


def _image(a, point, p):
    if isinstance(a, RatFunc):
        d = _image(a.den, point, p)
        if d == 0:
            raise _Pole
        return _image(a.num, point, p) / d
    if isinstance(a, CycloElem):
        return _image(a.rep, point, p)
    if isinstance(a, Poly):
        t = point[a.ring.var]
        acc = nmod(0, p)
        for c in reversed(a.coeffs):
            acc = acc * t + _image(c, point, p)
        return acc
    a = fmpq(a)
    if int(a.q) % p == 0:
        raise _Pole
    return nmod(int(a.p), p) / nmod(int(a.q), p)


def nonsingular(m, tries: int = 3) -> bool:
    """``det(m) != 0``, decided first at random points modulo a large prime.

    Specialization is a ring map on the entries it is defined for, so a
    nonzero image of the determinant proves the determinant is nonzero;
    only a zero image falls back to the exact determinant.
    """
    names, cyclo = _structure(m[0][0])
    if cyclo is not None and cyclo.base is QQ:
        p, root = cyclo.residue()
    elif cyclo is None:
        p, root = _P61, None
    else:
        return bool(det(m))
    rng = random.Random(len(m))
    for _ in range(tries):
        point = {v: nmod(rng.randrange(2, p - 1), p) for v in names}
        if root is not None:
            point["q"] = nmod(root, p)
        try:
            img = tuple(tuple(_image(a, point, p) for a in row) for row in m)
        except _Pole:
            continue
        if int(nmod_mat([list(r) for r in img], p).det()) != 0:
            return True
    return bool(det(m))
