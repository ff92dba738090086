"""The coefficient tower ``QQ -> K0 -> K -> K(x)``.

``K0 = QQ(l_1, ..., l_r)`` holds the declared formal constants.  It is
built as nested univariate fraction fields ``QQ(l_1)(l_2)...``, which gives
a canonical form without multivariate gcds.  ``K = K0(q)`` and the entries
of every system live in ``K(x)``.  At a cyclotomic place the same shape is
rebuilt over ``K0[q]/(Phi_k)`` instead of ``K``.
"""

from __future__ import annotations

import functools
import re

from .cyclotomic import cyclotomic_field
from .fraction import FractionField, RatFunc, fraction_field
from .rational import QQ

__all__ = ["RESERVED", "Tower", "delta", "place_field", "subst_qx", "tower"]

RESERVED = ("x", "q")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Tower:
    """Fields for one set of declared constants.

    Attributes: ``K0`` (constants), ``K`` (``K0(q)``), ``X`` (``K(x)``),
    plus the generators ``q`` (in ``K``) and ``x`` (in ``X``).
    """

    def __init__(self, constants: tuple):
        for name in constants:
            if not _IDENT.match(name) or name in RESERVED:
                raise ValueError(f"invalid constant name {name!r}")
        if len(set(constants)) != len(constants):
            raise ValueError(f"duplicate constant names in {constants}")
        self.constants = tuple(constants)
        K0 = QQ
        self._constant_gens = {}
        for name in constants:
            K0 = fraction_field(K0, name)
            self._constant_gens[name] = K0.gen
        self.K0 = K0
        self.K: FractionField = fraction_field(K0, "q")
        self.X: FractionField = fraction_field(self.K, "x")
        self.q = self.K.gen
        self.x = self.X.gen

    def symbol(self, name: str) -> RatFunc:
        """The element of ``K(x)`` named by ``name``."""
        if name == "x":
            return self.x
        if name == "q":
            return self.X(self.q)
        gen = self._constant_gens.get(name)
        if gen is None:
            raise KeyError(name)
        # lift through the remaining layers of K0, then K and X
        return self.X(self.K(self._lift_constant(gen)))

    def _lift_constant(self, c):
        field = self.K0
        if c.field is field:
            return c
        # build the chain of layers between c's field and K0
        chain = []
        while field is not c.field:
            chain.append(field)
            field = field.base
        for layer in reversed(chain):
            c = layer(c)
        return c

    def place_field(self, kappa: int) -> FractionField:
        """``(K0[q]/Phi_kappa)(x)``."""
        return place_field(kappa, self.K0)

    def __eq__(self, other):
        return isinstance(other, Tower) and self.constants == other.constants

    def __hash__(self):
        return hash(("Tower", self.constants))

    def __repr__(self):
        return f"Tower({', '.join(self.constants) or 'no constants'})"

    def __reduce__(self):
        return (tower, (self.constants,))


@functools.lru_cache(maxsize=None)
def tower(constants=()) -> Tower:
    return Tower(tuple(constants))


@functools.lru_cache(maxsize=None)
def place_field(kappa: int, K0) -> FractionField:
    return fraction_field(cyclotomic_field(kappa, K0), "x")


def delta(f: RatFunc) -> RatFunc:
    """The derivation ``x d/dx``; kills every coefficient."""
    return f.euler()


def subst_qx(f: RatFunc, u) -> RatFunc:
    """``f(u x)`` for a unit ``u`` of the coefficient field."""
    return f.scale(f.field.base(u))
