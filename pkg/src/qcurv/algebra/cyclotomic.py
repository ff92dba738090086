"""Cyclotomic polynomials and the residue fields ``K0[q]/(Phi_k(q))``.

Reducing at the place of order ``k`` sends ``q`` to a formal primitive
``k``-th root of unity; :func:`reduce_q` is that specialization on
rational functions of ``q``.
"""

from __future__ import annotations

import enum
import functools
import threading

from flint import fmpq_poly, fmpz, nmod, nmod_poly

from .fraction import DivisionByZero, RatFunc
from .poly import Poly, PolyRing, QPoly, poly_ring, xgcd
from .rational import QQ

__all__ = [
    "BadPlace",
    "BadReason",
    "CycloElem",
    "CycloPoly",
    "CycloPolyRing",
    "CyclotomicField",
    "cyclotomic",
    "cyclotomic_coeffs",
    "cyclotomic_field",
    "mobius",
    "reduce_q",
    "phi_split",
]


class BadReason(enum.Enum):
    DENOMINATOR_VANISHES = "denominator_vanishes"
    SINGULAR_DETERMINANT = "singular_determinant"


class BadPlace(ArithmeticError):
    def __init__(self, kappa: int, reason: BadReason, detail: str = ""):
        self.kappa = kappa
        self.reason = reason
        self.detail = detail
        super().__init__(f"bad place kappa={kappa}: {reason.value}" + (f" ({detail})" if detail else ""))


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_exact_div(a, b):
    # b monic up to sign +-1
    a = list(a)
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] // b[-1]
        quo[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact division in cyclotomic product")
    return quo


_phi_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def _cyclotomic_cached(k: int) -> tuple:
    num, den = [1], [1]
    for d in range(1, k + 1):
        if k % d:
            continue
        mu = mobius(k // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]  # q^d - 1
        if mu == 1:
            num = _int_mul(num, factor)
        else:
            den = _int_mul(den, factor)
    return tuple(_int_exact_div(num, den))


def cyclotomic_coeffs(k: int) -> tuple:
    """Integer coefficients of ``Phi_k``, low degree first."""
    if k < 1:
        raise ValueError(f"cyclotomic order must be positive, got {k}")
    with _phi_lock:
        return _cyclotomic_cached(k)


def cyclotomic(k: int, base=None, var: str = "q") -> Poly:
    ring = poly_ring(QQ if base is None else base, var)
    return ring.from_coeffs(cyclotomic_coeffs(k))


@functools.lru_cache(maxsize=None)
def cyclotomic_field(k: int, base) -> "CyclotomicField":
    return CyclotomicField(k, base)


class CyclotomicField:
    """``base[q]/(Phi_k(q))``; a field because ``Phi_k`` stays irreducible
    over ``QQ`` and over purely transcendental extensions of it."""

    def __init__(self, order: int, base):
        self.order = order
        self.base = base
        self.ring = poly_ring(base, "q")
        self.modulus = cyclotomic(order, base)
        self.dimension = self.modulus.degree
        self.zero = CycloElem(self, self.ring.zero)
        self.one = CycloElem(self, self.ring.one)
        self.gen = CycloElem(self, self.ring.gen % self.modulus)
        self._residue = None

    @property
    def poly_ring_class(self):
        return CycloPolyRing if self.base is QQ else None

    def residue(self):
        """A word-size prime ``p = 1 mod k`` and a primitive ``k``-th root ``r`` mod ``p``.

        ``q -> r`` is the residue map at a prime above ``p``; only defined
        over ``QQ``.
        """
        if self._residue is None:
            k = self.order
            p = (2**62 // k) * k + 1
            while not fmpz(p).is_prime():
                p += k
            phi = nmod_poly(list(cyclotomic_coeffs(k)), p)
            a = 2
            while True:
                r = int(nmod(a, p) ** ((p - 1) // k))
                if int(phi(r)) == 0:
                    break
                a += 1
            self._residue = (p, r)
        return self._residue

    def __call__(self, value):
        if isinstance(value, CycloElem):
            if value.field is self or value.field == self:
                return value
            raise TypeError(f"{value.field} element is not in {self}")
        if isinstance(value, Poly):
            if value.ring == self.ring:
                return CycloElem(self, value % self.modulus)
            raise TypeError(f"polynomial over {value.ring} is not in {self}")
        return CycloElem(self, self.ring(value))

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicField)
            and self.order == other.order
            and self.base == other.base
        )

    def __hash__(self):
        return hash(("CyclotomicField", self.order, self.base))

    def __repr__(self):
        return f"Cyclo({self.order}, {self.base!r})"

    def __reduce__(self):
        return (cyclotomic_field, (self.order, self.base))


class CycloElem:
    __slots__ = ("field", "rep")

    def __init__(self, field: CyclotomicField, rep: Poly):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, CycloElem) and other.field is self.field:
            return other
        try:
            return self.field(other)
        except TypeError:
            return None

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash(self.rep)

    def __neg__(self):
        return CycloElem(self.field, -self.rep)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, o.rep - self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.rep, o.rep
        if a.degree <= 0 or b.degree <= 0:
            return CycloElem(self.field, a * b)
        return CycloElem(self.field, (a * b) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self):
        if not self.rep:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        g, s, _ = xgcd(self.rep, self.field.modulus)
        if g.degree != 0:
            raise ArithmeticError(f"{self} is not invertible in {self.field}")
        return CycloElem(self.field, s)

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
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"CycloElem({self.rep} mod Phi_{self.field.order})"

    def __reduce__(self):
        return (CycloElem, (self.field, self.rep))


def _pack(coeffs, width):
    flat = []
    for c in coeffs:
        cl = c.rep._p.coeffs()
        flat.extend(cl)
        flat.extend([0] * (width - len(cl)))
    return fmpq_poly(flat)


class CycloPoly(Poly):
    """Polynomial over ``QQ[q]/Phi_k``; products go through one Kronecker
    substitution ``x -> q^w`` with ``w`` wider than any product in ``q``."""

    __slots__ = ("_img",)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) * len(b) < 4:
            return Poly.__mul__(self, o)
        F = self.ring.base
        w = 2 * F.dimension - 1
        flat = (_pack(a, w) * _pack(b, w)).coeffs()
        mod, rep_ring = F.modulus._p, F.ring
        out = []
        for i in range(len(a) + len(b) - 1):
            chunk = flat[i * w : (i + 1) * w]
            out.append(CycloElem(F, QPoly(rep_ring, fmpq_poly(chunk) % mod)))
        return self.ring._make(out)

    __rmul__ = __mul__

    def residue_image(self):
        """Image in ``GF(p)[x]`` under :meth:`CyclotomicField.residue`, or
        ``None`` if a coefficient is not integral at ``p``."""
        try:
            return self._img
        except AttributeError:
            pass
        self._img = img = self._residue_image()
        return img

    def _residue_image(self):
        p, r = self.ring.base.residue()
        out = []
        for c in self._c:
            rep = c.rep._p
            den = int(rep.denom())
            if den % p == 0:
                return None
            v = nmod_poly([int(t) for t in rep.numer().coeffs()], p)(r)
            out.append(v / nmod(den, p))
        return nmod_poly(out, p)

    def certainly_coprime(self, other) -> bool:
        """True only if ``gcd(self, other) = 1`` is certified by a residue image.

        A monic common factor of ``self`` and ``other`` has integral
        coefficients when ``other``'s leading coefficient is a unit at the
        prime, so it survives reduction with its degree; a trivial gcd of
        the images therefore rules it out.  ``False`` means "unknown".
        """
        a, b = self.residue_image(), other.residue_image()
        if a is None or b is None or b.degree() != other.degree:
            return False
        return a.gcd(b).degree() == 0


class CycloPolyRing(PolyRing):
    element = CycloPoly


def phi_split(f: RatFunc, modulus: Poly):
    """Write ``f = modulus**v * u`` with ``u`` a unit at ``modulus``; return ``(v, u)``."""
    num, den = f.num, f.den
    if not num:
        raise ValueError("valuation of zero")
    v = 0
    while True:
        quo, rem = divmod(num, modulus)
        if rem:
            break
        num, v = quo, v + 1
    while True:
        quo, rem = divmod(den, modulus)
        if rem:
            break
        den, v = quo, v - 1
    return v, f.field.coprime(num, den)


def reduce_q(f, k: int, target: CyclotomicField = None) -> CycloElem:
    """Image of ``f`` (a rational function of ``q``) at the place of order ``k``."""
    if target is None:
        base = f.field.base if isinstance(f, RatFunc) else f.ring.base
        target = cyclotomic_field(k, base)
    if isinstance(f, (Poly, QPoly)):
        return target(f)
    den = f.den % target.modulus
    if not den:
        raise BadPlace(k, BadReason.DENOMINATOR_VANISHES, f"{f.den} vanishes at Phi_{k}")
    num = target(f.num)
    if f.den.degree == 0:
        return num
    return num / CycloElem(target, den)
