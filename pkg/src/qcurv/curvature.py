"""Curvatures at cyclotomic places and the triviality test.

At the place of order ``k`` the parameter ``q`` specializes to a primitive
``k``-th root of unity ``z``.  The curvature is the iterate ``A_k`` computed
over ``(K0[q]/Phi_k)(x)``: reduce first, then multiply ``k`` shifted copies
``A(z^i x)``.  Reduction commutes with iteration because ``q -> z`` is a
ring map and the shift only touches ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import matrix as mx
from .algebra.cyclotomic import BadPlace, BadReason, phi_split, reduce_q
from .algebra.fraction import FractionField, RatFunc
from .systems import QDiffSystem, cocycle, iterate

__all__ = [
    "BadPlace",
    "BadReason",
    "CurvatureRecord",
    "Inconclusive",
    "NontrivialWitness",
    "Place",
    "TrivialUpTo",
    "curvature",
    "curvature_batch",
    "iterate_then_reduce",
    "reduce_matrix",
    "reduce_ratfunc",
    "reduce_system",
    "triviality_test",
]


@dataclass(frozen=True)
class Place:
    kappa: int

    def __post_init__(self):
        if self.kappa < 1:
            raise ValueError(f"place order must be positive, got {self.kappa}")

    @property
    def phi(self):
        from .algebra.cyclotomic import cyclotomic

        return cyclotomic(self.kappa)


def reduce_ratfunc(f: RatFunc, kappa: int, target: FractionField) -> RatFunc:
    """Reduce ``f`` in ``K(x)`` at the place of order ``kappa``.

    Uses the Gauss valuation at ``Phi_kappa``: numerator and denominator are
    rescaled by the smallest valuation of the denominator's coefficients, and
    the place is bad if the numerator has a strictly smaller one (a pole).
    """
    cyc = target.base
    phi = cyc.modulus
    if f.den.degree == 0 and all(c.den.degree == 0 for c in f.num._c):
        # polynomial in x with coefficients in K0[q]
        return target(target.ring._make([cyc(c.num) for c in f.num._c]))
    num = [phi_split(c, phi) if c else None for c in f.num._c]
    den = [phi_split(c, phi) if c else None for c in f.den._c]
    vn = min(v for v, _ in filter(None, num))
    vd = min(v for v, _ in filter(None, den))
    if vn < vd:
        raise BadPlace(kappa, BadReason.DENOMINATOR_VANISHES, f"pole of {f} at Phi_{kappa}")

    def red(parts):
        out = []
        for p in parts:
            if p is None or p[0] > vd:
                out.append(cyc.zero)
            else:
                out.append(reduce_q(p[1], kappa, cyc))
        return target.ring._make(out)

    return target.fraction(red(num), red(den))


def reduce_matrix(m, kappa: int, target: FractionField):
    return tuple(tuple(reduce_ratfunc(a, kappa, target) for a in row) for row in m)


def reduce_system(sys: QDiffSystem, kappa: int):
    """The matrix of ``sys`` over ``(K0[q]/Phi_kappa)(x)``; raises :class:`BadPlace`."""
    target = sys.tower.place_field(kappa)
    m = reduce_matrix(sys.matrix, kappa, target)
    if not mx.nonsingular(m):
        raise BadPlace(kappa, BadReason.SINGULAR_DETERMINANT)
    return m


@dataclass(frozen=True)
class CurvatureRecord:
    kappa: int
    matrix: Optional[tuple] = None
    bad: Optional[BadReason] = None
    detail: str = field(default="", compare=False)

    @property
    def good(self) -> bool:
        return self.bad is None

    def is_identity(self) -> bool:
        return self.good and mx.is_identity(self.matrix)


def curvature(sys: QDiffSystem, kappa: int) -> CurvatureRecord:
    try:
        m = reduce_system(sys, kappa)
    except BadPlace as exc:
        return CurvatureRecord(kappa, bad=exc.reason, detail=exc.detail)
    zeta = m[0][0].field.base.gen
    return CurvatureRecord(kappa, cocycle(m, zeta, kappa))


def iterate_then_reduce(sys: QDiffSystem, kappa: int) -> CurvatureRecord:
    """Slow path: full iterate over ``K(x)``, reduced afterwards.

    Agrees with :func:`curvature` wherever the reduction of ``A`` is good.
    """
    try:
        reduce_system(sys, kappa)
    except BadPlace as exc:
        return CurvatureRecord(kappa, bad=exc.reason, detail=exc.detail)
    target = sys.tower.place_field(kappa)
    return CurvatureRecord(kappa, reduce_matrix(iterate(sys, kappa), kappa, target))


def curvature_batch(sys: QDiffSystem, kappas, executor=None) -> list:
    """One record per order, in input order.

    Places are independent; pass a ``concurrent.futures`` executor to
    evaluate them concurrently.
    """
    kappas = list(kappas)
    if not kappas:
        raise ValueError("empty list of places")
    if executor is None:
        return [curvature(sys, k) for k in kappas]
    return list(executor.map(lambda k: curvature(sys, k), kappas))


@dataclass(frozen=True)
class TrivialUpTo:
    kappa_max: int
    skipped: tuple = ()


@dataclass(frozen=True)
class NontrivialWitness:
    kappa: int
    entry: tuple
    value: str = field(default="", compare=False)
    skipped: tuple = ()


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    skipped: tuple = ()


def triviality_test(sys: QDiffSystem, kappa_max: int = 20, records=None):
    """Check that every good curvature up to ``kappa_max`` is the identity.

    Bad places are skipped; at least one good place is required.
    """
    if kappa_max < 1:
        raise ValueError("kappa_max must be at least 1")
    skipped = []
    seen_good = False
    for rec in records if records is not None else (curvature(sys, k) for k in range(1, kappa_max + 1)):
        if not rec.good:
            skipped.append(rec.kappa)
            continue
        seen_good = True
        for i, row in enumerate(rec.matrix):
            for j, a in enumerate(row):
                if a != (1 if i == j else 0):
                    return NontrivialWitness(rec.kappa, (i, j), str(a), tuple(skipped))
    if not seen_good:
        return Inconclusive(f"every place up to {kappa_max} is bad", tuple(skipped))
    return TrivialUpTo(kappa_max, tuple(skipped))
