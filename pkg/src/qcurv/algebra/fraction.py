"""Fields of rational functions ``F(t)`` over an exact field ``F``.

A :class:`RatFunc` is kept in canonical form: monic denominator and
numerator/denominator coprime.  Canonical forms make ``==`` structural.
"""

from __future__ import annotations

import functools

from ._fmt import fraction_str
from .poly import Poly, PolyRing, gcd, poly_ring

__all__ = ["DivisionByZero", "FractionField", "RatFunc", "fraction_field"]


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by an element that normalizes to zero."""


@functools.lru_cache(maxsize=None)
def fraction_field(base, var: str) -> "FractionField":
    return FractionField(poly_ring(base, var))


class FractionField:
    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.base = ring.base
        self.var = ring.var
        self.zero = RatFunc(self, ring.zero, ring.one)
        self.one = RatFunc(self, ring.one, ring.one)
        self.gen = RatFunc(self, ring.gen, ring.one)

    def __call__(self, value, den=None):
        if den is not None:
            return self.fraction(self.ring(value), self.ring(den))
        if isinstance(value, RatFunc):
            if value.field is self or value.field == self:
                return value
        # anything else must come from a subfield of the coefficients
        return RatFunc(self, self.ring(value), self.ring.one)

    def fraction(self, num: Poly, den: Poly) -> "RatFunc":
        if not den:
            raise DivisionByZero(f"denominator is zero in {self}")
        if not num:
            return self.zero
        if den.degree > 0:
            certify = getattr(num, "certainly_coprime", None)
            if certify is None or not certify(den):
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
        return self.coprime(num, den)

    def coprime(self, num: Poly, den: Poly) -> "RatFunc":
        """Build from a coprime pair, only normalizing the leading coefficient."""
        lc = den.lc
        if lc != 1:
            inv = self.base.one / lc
            num, den = num.scalar_mul(inv), den.scalar_mul(inv)
        return RatFunc(self, num, den)

    def __eq__(self, other):
        return isinstance(other, FractionField) and self.ring == other.ring

    def __hash__(self):
        return hash(("FractionField", self.ring))

    def __repr__(self):
        return f"Frac({self.ring!r})"

    def __reduce__(self):
        return (fraction_field, (self.base, self.var))


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: FractionField, num: Poly, den: Poly):
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RatFunc) and other.field is self.field:
            return other
        try:
            return self.field(other)
        except TypeError:
            return None

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree == 0:
            return hash(self.num)
        return hash((self.num, self.den))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self):
        """The base-field value of a constant element."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.degree == 0 and d.degree == 0:
            return RatFunc(self.field, a + c, b)
        g = gcd(b, d)
        if g.degree == 0:
            return self.field.coprime(a * d + c * b, b * d)
        bg, dg = b // g, d // g
        t = a * dg + c * bg
        if not t:
            return self.field.zero
        h = gcd(t, g)
        if h.degree > 0:
            t, g = t // h, g // h
        return self.field.coprime(t, bg * dg * g)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        a, b, c, d = self.num, self.den, o.num, o.den
        if d.degree > 0:
            g = gcd(a, d)
            if g.degree > 0:
                a, d = a // g, d // g
        if b.degree > 0:
            g = gcd(c, b)
            if g.degree > 0:
                c, b = c // g, b // g
        return self.field.coprime(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return self.field.coprime(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.field, self.num**n, self.den**n)

    # -- operations on the variable -------------------------------------
    def euler(self):
        """The derivation ``t * d/dt``."""
        if self.den.degree == 0:
            return RatFunc(self.field, self.num.euler(), self.den)
        n, d = self.num, self.den
        return self.field.fraction(n.euler() * d - n * d.euler(), d * d)

    def derivative(self):
        """``d/dt``."""
        if self.den.degree == 0:
            return RatFunc(self.field, self.num.derivative(), self.den)
        n, d = self.num, self.den
        return self.field.fraction(n.derivative() * d - n * d.derivative(), d * d)

    def scale(self, u):
        """``f(u * t)`` for a unit ``u`` of the base field."""
        if self.den.degree == 0:
            return RatFunc(self.field, self.num.scale(u), self.den)
        return self.field.coprime(self.num.scale(u), self.den.scale(u))

    def map_coeffs(self, f, field: "FractionField"):
        return field.fraction(self.num.map_coeffs(f, field.ring), self.den.map_coeffs(f, field.ring))

    def __call__(self, value):
        d = self.den(value)
        if not d:
            raise DivisionByZero(f"pole of {self} at {value}")
        return self.num(value) / d

    def __str__(self):
        return fraction_str(str(self.num), str(self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __reduce__(self):
        return (_rebuild, (self.field, self.num, self.den))


def _rebuild(field, num, den):
    return RatFunc(field, num, den)
