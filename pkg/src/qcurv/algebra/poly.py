"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first and the leading coefficient is
never zero, so structural equality is polynomial equality.  Two
implementations share one interface:

* :class:`Poly` works over any field whose elements support ``+ - * /``
  and truthiness (rational function fields, cyclotomic fields, ...).
* :class:`QPoly` is the special case of rational coefficients, delegated
  to FLINT's ``fmpq_poly``.

Rings are built through :func:`poly_ring`, which picks the implementation
and caches one ring object per ``(base, var)``.
"""

from __future__ import annotations

import functools

from flint import fmpq, fmpq_poly

from ._fmt import poly_str
from .rational import QQ

__all__ = ["Poly", "PolyRing", "QPoly", "QPolyRing", "poly_ring", "gcd", "xgcd", "lcm"]


@functools.lru_cache(maxsize=None)
def poly_ring(base, var: str) -> "PolyRing":
    if base is QQ:
        return QPolyRing(var)
    special = getattr(base, "poly_ring_class", None)
    if special is not None:
        return special(base, var)
    return PolyRing(base, var)


class PolyRing:
    """The ring ``base[var]``."""

    element = None  # set below to Poly

    def __init__(self, base, var: str):
        self.base = base
        self.var = var
        self.zero = self._make([])
        self.one = self._make([base.one])
        self.gen = self._make([base.zero, base.one])

    def _make(self, coeffs) -> "Poly":
        # coeffs must already be base elements; strips trailing zeros
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return self.element(self, coeffs)

    def from_coeffs(self, coeffs) -> "Poly":
        base = self.base
        return self._make([base(c) for c in coeffs])

    def __call__(self, value):
        if isinstance(value, (Poly, QPoly)):
            if value.ring is self or value.ring == self:
                return value
            raise TypeError(f"polynomial over {value.ring} is not in {self}")
        return self._make([self.base(value)])

    def monomial(self, n: int, c=None):
        base = self.base
        c = base.one if c is None else base(c)
        return self._make([base.zero] * n + [c])

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.var == other.var
            and self.base == other.base
        )

    def __hash__(self):
        return hash(("PolyRing", self.var, self.base))

    def __repr__(self):
        return f"{self.base!r}[{self.var}]"

    def __reduce__(self):
        return (poly_ring, (self.base, self.var))


class Poly:
    __slots__ = ("ring", "_c")

    def __init__(self, ring: PolyRing, coeffs: list):
        self.ring = ring
        self._c = coeffs

    # -- structure -------------------------------------------------------
    @property
    def coeffs(self) -> list:
        return list(self._c)

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self):
        return self._c[-1] if self._c else self.ring.base.zero

    def coeff(self, i: int):
        return self._c[i] if 0 <= i < len(self._c) else self.ring.base.zero

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self):
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            return other
        try:
            return self.ring(other)
        except TypeError:
            return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if len(self._c) <= 1:
            return hash(self._c[0]) if self._c else 0
        return hash((self.ring.var, tuple(self._c)))

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        return type(self)(self.ring, [-c for c in self._c])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self.ring._make(out)

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
        a, b = self._c, o._c
        if not a or not b:
            return self.ring.zero
        if len(b) == 1:
            return self.scalar_mul(b[0])
        if len(a) == 1:
            return o.scalar_mul(a[0])
        out = [self.ring.base.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return self.ring._make(out)

    __rmul__ = __mul__

    def scalar_mul(self, c):
        if not c:
            return self.ring.zero
        return type(self)(self.ring, [a * c for a in self._c])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        ring = self.ring
        a, b = list(self._c), o._c
        db = len(b) - 1
        if len(a) <= db:
            return ring.zero, self
        lead = b[-1]
        inv = None if lead == 1 else ring.base.one / lead
        quo = [ring.base.zero] * (len(a) - db)
        for i in range(len(a) - 1 - db, -1, -1):
            c = a[i + db]
            if not c:
                continue
            if inv is not None:
                c = c * inv
            quo[i] = c
            for j in range(db):
                if b[j]:
                    a[i + j] = a[i + j] - c * b[j]
            a[i + db] = ring.base.zero
        return ring._make(quo), ring._make(a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self._c or self._c[-1] == 1:
            return self
        return self.scalar_mul(self.ring.base.one / self._c[-1])

    # -- calculus and substitution --------------------------------------
    def derivative(self):
        """d/dvar."""
        return self.ring._make([c * i for i, c in enumerate(self._c)][1:])

    def euler(self):
        """var * d/dvar."""
        return self.ring._make([c * i for i, c in enumerate(self._c)])

    def scale(self, u):
        """The polynomial ``p(u * var)``."""
        if not self._c:
            return self
        out, pw = [self._c[0]], u
        for c in self._c[1:]:
            out.append(c * pw)
            pw = pw * u
        return self.ring._make(out)

    def __call__(self, value):
        acc = self.ring.base.zero
        for c in reversed(self._c):
            acc = acc * value + c
        return acc

    def map_coeffs(self, f, ring: PolyRing):
        return ring._make([f(c) for c in self._c])

    def __str__(self):
        return poly_str(self._c, self.ring.var)

    def __repr__(self):
        return f"Poly({self})"

    def __reduce__(self):
        return (_rebuild, (self.ring, self.coeffs))


PolyRing.element = Poly


def _rebuild(ring, coeffs):
    return ring.from_coeffs(coeffs)


class QPolyRing(PolyRing):
    """``QQ[var]`` backed by ``fmpq_poly``."""

    def __init__(self, var: str):
        self.base = QQ
        self.var = var
        self.zero = QPoly(self, fmpq_poly())
        self.one = QPoly(self, fmpq_poly([1]))
        self.gen = QPoly(self, fmpq_poly([0, 1]))

    def _make(self, coeffs):
        return QPoly(self, fmpq_poly(coeffs))

    def __call__(self, value):
        if isinstance(value, QPoly):
            if value.ring is self or value.ring == self:
                return value
            raise TypeError(f"polynomial over {value.ring} is not in {self}")
        if isinstance(value, Poly):
            raise TypeError(f"polynomial over {value.ring} is not in {self}")
        return QPoly(self, fmpq_poly([QQ(value)]))

    def __reduce__(self):
        return (poly_ring, (QQ, self.var))


class QPoly(Poly):
    __slots__ = ("_p",)

    def __init__(self, ring: QPolyRing, p: fmpq_poly):
        self.ring = ring
        self._p = p

    @property
    def _c(self):
        return self._p.coeffs()

    @property
    def coeffs(self) -> list:
        return self._p.coeffs()

    @property
    def degree(self) -> int:
        return self._p.degree()

    @property
    def lc(self):
        return self._p.leading_coefficient() if self._p else fmpq(0)

    def coeff(self, i: int):
        return self._p[i] if i >= 0 else fmpq(0)

    def is_constant(self) -> bool:
        return self._p.degree() <= 0

    def __bool__(self):
        return not self._p.is_zero()

    def _coerce(self, other):
        if isinstance(other, QPoly) and other.ring is self.ring:
            return other
        try:
            return self.ring(other)
        except TypeError:
            return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p

    def __hash__(self):
        if self._p.degree() <= 0:
            return hash(self._p[0])
        return hash((self.ring.var, tuple(self._p.coeffs())))

    def __neg__(self):
        return QPoly(self.ring, -self._p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QPoly(self.ring, self._p + o._p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QPoly(self.ring, self._p - o._p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QPoly(self.ring, o._p - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QPoly(self.ring, self._p * o._p)

    __rmul__ = __mul__

    def scalar_mul(self, c):
        return QPoly(self.ring, self._p * c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return QPoly(self.ring, self._p ** n)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._p.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quo, rem = divmod(self._p, o._p)
        return QPoly(self.ring, quo), QPoly(self.ring, rem)

    def __floordiv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._p.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return QPoly(self.ring, self._p // o._p)

    def __mod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._p.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return QPoly(self.ring, self._p % o._p)

    def monic(self):
        if self._p.is_zero():
            return self
        lc = self._p.leading_coefficient()
        return self if lc == 1 else QPoly(self.ring, self._p / lc)

    def derivative(self):
        return QPoly(self.ring, self._p.derivative())

    def euler(self):
        return QPoly(self.ring, fmpq_poly([c * i for i, c in enumerate(self._p.coeffs())]))

    def scale(self, u):
        if u == 1:
            return self
        return Poly.scale(self, QQ(u))

    def __call__(self, value):
        if isinstance(value, (int, fmpq)):
            return self._p(value)
        return Poly.__call__(self, value)

    def map_coeffs(self, f, ring):
        return ring._make([f(c) for c in self._p.coeffs()])

    def __str__(self):
        return poly_str(self._p.coeffs(), self.ring.var)

    def __repr__(self):
        return f"QPoly({self})"


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    if isinstance(a, QPoly):
        b = a._coerce(b)
        return QPoly(a.ring, a._p.gcd(b._p))
    if a.degree > 1 and b.degree > 1:
        from .mpoly import poly_gcd

        g = poly_gcd(a, b)
        if g is not None:
            return g
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` monic."""
    ring = a.ring
    if isinstance(a, QPoly):
        b = a._coerce(b)
        if a._p.is_zero() and b._p.is_zero():
            return ring.zero, ring.zero, ring.zero
        g, s, t = a._p.xgcd(b._p)
        return QPoly(ring, g), QPoly(ring, s), QPoly(ring, t)
    r0, r1 = a, b
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = ring.base.one / r0.lc
    return r0.scalar_mul(inv), s0.scalar_mul(inv), t0.scalar_mul(inv)


def lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return a.ring.zero
    return (a * (b // gcd(a, b))).monic()
