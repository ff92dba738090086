"""Bridge from nested rational function fields to FLINT multivariate polynomials.

An element of ``QQ(l_1)...(q)(x)`` is a quotient of two polynomials in all
the variables at once.  Linear algebra on such quotients is much cheaper
with ``fmpq_mpoly`` (exact division, multivariate gcd) than through the
nested univariate representation, whose intermediate coefficients are
themselves fractions.
"""

from __future__ import annotations

import functools

from flint import fmpq, fmpq_mpoly_ctx

from .fraction import FractionField, RatFunc, fraction_field
from .poly import Poly
from .rational import QQ

__all__ = ["MPolyBridge", "bridge", "poly_gcd"]


@functools.lru_cache(maxsize=None)
def bridge(field):
    """A :class:`MPolyBridge` for ``field``, or ``None`` if the tower is not pure fractions over QQ."""
    names = []
    f = field
    while isinstance(f, FractionField):
        names.append(f.var)
        f = f.base
    if f is not QQ or len(set(names)) != len(names):
        return None
    return MPolyBridge(field, tuple(names))


class MPolyBridge:
    def __init__(self, field: FractionField, names: tuple):
        self.field = field
        self.names = names
        self.ctx = fmpq_mpoly_ctx.get(names, "lex")
        self.gens = dict(zip(names, self.ctx.gens()))
        self.one = self.ctx.constant(1)

    # -- to FLINT -------------------------------------------------------------
    def fraction(self, a):
        """``(N, D)`` with ``a = N / D``."""
        if isinstance(a, RatFunc):
            n0, n1 = self.poly(a.num)
            d0, d1 = self.poly(a.den)
            return n0 * d1, n1 * d0
        return self.ctx.constant(fmpq(a)), self.one

    def poly(self, p: Poly):
        """``(N, D)`` with ``p = N / D``, ``D`` free of the variable of ``p``."""
        g = self.gens[p.ring.var]
        parts = [self.fraction(c) for c in p.coeffs]
        den = self.one
        for _, d in parts:
            if not d.is_one():
                den = den * (d / den.gcd(d))
        num = self.ctx.constant(0)
        for i, (n, d) in enumerate(parts):
            if n.is_zero():
                continue
            num = num + n * (den / d) * g**i
        return num, den

    # -- from FLINT -----------------------------------------------------------
    def element(self, num, den=None):
        """The field element ``num / den``; the two must be coprime."""
        field = self.field
        n = self._from_terms(dict(num.terms()), field)
        if den is None:
            return RatFunc(field, n, field.ring.one)
        return field.coprime(n, self._from_terms(dict(den.terms()), field))

    def _from_terms(self, terms: dict, field) -> Poly:
        i = self.names.index(field.var)
        groups = {}
        for e, c in terms.items():
            groups.setdefault(e[i], {})[e] = c
        base = field.base
        ring = field.ring
        if not groups:
            return ring.zero
        coeffs = [base.zero] * (max(groups) + 1)
        for k, sub in groups.items():
            if base is QQ:
                coeffs[k] = sum(sub.values(), fmpq(0))
            else:
                coeffs[k] = RatFunc(base, self._from_terms(sub, base), base.ring.one)
        return ring._make(coeffs)

    # -- matrices -------------------------------------------------------------
    def matrix(self, m):
        """``(N, D)``: a polynomial matrix and a common denominator with ``m = N / D``."""
        fr = [[self.fraction(a) for a in row] for row in m]
        den = self.one
        for row in fr:
            for _, d in row:
                den = den * (d / den.gcd(d))
        return [[n * (den / d) for n, d in row] for row in fr], den

    def quotient(self, num, den):
        """``num / den`` in lowest terms as a field element."""
        if num.is_zero():
            return self.field.zero
        g = num.gcd(den)
        if not g.is_one():
            num, den = num / g, den / g
        return self.element(num, den)


def poly_gcd(a: Poly, b: Poly):
    """Monic gcd in ``K[x]`` via ``Q[x, q, ...]``, or ``None`` when ``K`` has no bridge.

    The content in ``x`` of a multivariate gcd is a unit of ``K``, so making
    it monic in ``x`` gives the gcd over ``K``.
    """
    ring = a.ring
    if not isinstance(ring.base, FractionField):
        return None
    br = bridge(fraction_field(ring.base, ring.var))
    if br is None:
        return None
    g = br.poly(a)[0].gcd(br.poly(b)[0])
    return br._from_terms(dict(g.terms()), br.field).monic()
