"""Jet equations of the groupoids Lin and Trv, evaluated on explicit germs.

A germ is a map ``(x, X) -> (xbar, Xbar)`` with ``X = (X_1, ..., X_n)``.
Components are stored as polynomials of degree at most 2 in ``X`` with
rational-function coefficients in ``x``: a dict from exponent tuples to
coefficients.  Generators of Lin are differential expressions of order at
most 2 in these components, so they can be evaluated exactly.

Lin is cut out by

* ``d xbar / d X_j``                                   (one per ``j``)
* ``x * d xbar / d x - xbar``
* ``d^2 xbar / d x^2``
* ``sum_j X_j d Xbar_i / d X_j - Xbar_i``              (one per ``i``)
* ``d^2 Xbar_i / d X_j d X_k``, ``j <= k``             (one per ``i, j, k``)

and its solutions are the germs ``(a x, b(x) X)``.  Trv is cut out by
``xbar - x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import matrix as mx
from .algebra.fraction import FractionField
from .algebra.tower import delta
from .classifier import GroupTemplate, NoGoodPlace, classify, template as template_by_id
from .curvature import curvature_batch
from .systems import QDiffSystem, iterate

__all__ = [
    "GeneralGerm",
    "Generator",
    "LinCheck",
    "LinearGerm",
    "check_lin",
    "check_transversal_group",
    "check_trv",
    "compose",
    "dyn_element",
    "identity_germ",
    "lin_generators",
]

MAX_DEGREE = 2


# -- polynomials in X ---------------------------------------------------------


def _clean(p: dict) -> dict:
    return {e: c for e, c in p.items() if c}


def _unit(n: int, j: int) -> tuple:
    return tuple(1 if i == j else 0 for i in range(n))


def _d_dX(p: dict, j: int) -> dict:
    out = {}
    for e, c in p.items():
        if e[j]:
            f = list(e)
            f[j] -= 1
            out[tuple(f)] = c * e[j]
    return out


def _map(p: dict, f) -> dict:
    return _clean({e: f(c) for e, c in p.items()})


def _sub(p: dict, r: dict) -> dict:
    out = dict(p)
    for e, c in r.items():
        out[e] = out[e] - c if e in out else -c
    return _clean(out)


def _poly_str(p: dict) -> str:
    if not p:
        return "0"
    terms = []
    for e in sorted(p, reverse=True):
        mono = "*".join(f"X{j + 1}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
        c = str(p[e])
        terms.append(f"({c})*{mono}" if mono else c)
    return " + ".join(terms)


# -- germs --------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralGerm:
    """``(x, X) -> (xbar, Xbar)`` with components polynomial in ``X``."""

    field: FractionField
    rank: int
    xbar: dict
    Xbar: tuple

    def __post_init__(self):
        comps = [self.xbar, *self.Xbar]
        if len(self.Xbar) != self.rank:
            raise ValueError("need one Xbar component per coordinate")
        for p in comps:
            for e in p:
                if len(e) != self.rank or min(e) < 0 or sum(e) > MAX_DEGREE:
                    raise ValueError(f"bad exponent {e} for a germ of rank {self.rank}")
        object.__setattr__(self, "xbar", _clean({e: self.field(c) for e, c in self.xbar.items()}))
        object.__setattr__(self, "Xbar", tuple(_clean({e: self.field(c) for e, c in p.items()}) for p in self.Xbar))


@dataclass(frozen=True)
class LinearGerm:
    """``(x, X) -> (alpha x, beta(x) X)``."""

    alpha: object
    beta: tuple

    def __post_init__(self):
        if not self.alpha:
            raise ValueError("alpha must be nonzero")
        if not mx.nonsingular(self.beta):
            raise ValueError("beta must be invertible")

    @property
    def field(self) -> FractionField:
        return self.beta[0][0].field

    @property
    def rank(self) -> int:
        return len(self.beta)

    def general(self) -> GeneralGerm:
        n, F = self.rank, self.field
        zero = (0,) * n
        Xbar = tuple({_unit(n, j): a for j, a in enumerate(row)} for row in self.beta)
        return GeneralGerm(F, n, {zero: F(self.alpha) * F.gen}, Xbar)


def identity_germ(rank: int, field: FractionField) -> LinearGerm:
    return LinearGerm(field.base.one, mx.identity(rank, field))


def dyn_element(sys: QDiffSystem, k: int) -> LinearGerm:
    """``(x, X) -> (q^k x, A_k(x) X)``."""
    return LinearGerm(sys.tower.q**k, iterate(sys, k))


def compose(g: LinearGerm, h: LinearGerm) -> LinearGerm:
    """``g o h = (alpha gamma, beta(gamma x) delta(x))`` for ``g = (alpha, beta)``, ``h = (gamma, delta)``."""
    shifted = tuple(tuple(a.scale(h.alpha) for a in row) for row in g.beta)
    return LinearGerm(g.alpha * h.alpha, mx.matmul(shifted, h.beta))


# -- generators of Lin --------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    family: int
    label: str
    evaluate: Callable = field(compare=False, repr=False)


def lin_generators(rank: int) -> list:
    """The generators of Lin for ``rank`` fibre coordinates, by family."""
    if rank < 1:
        raise ValueError("rank must be positive")
    gens = []
    for j in range(rank):
        gens.append(Generator(1, f"d xbar/d X{j + 1}", lambda g, j=j: _d_dX(g.xbar, j)))
    gens.append(Generator(2, "x d xbar/d x - xbar", lambda g: _sub(_map(g.xbar, delta), g.xbar)))
    gens.append(Generator(3, "d^2 xbar/d x^2", lambda g: _map(g.xbar, lambda c: c.derivative().derivative())))
    for i in range(rank):
        gens.append(Generator(4, f"sum_j X_j d Xbar{i + 1}/d X_j - Xbar{i + 1}", lambda g, i=i: _euler_X(g.Xbar[i])))
    for i in range(rank):
        for j in range(rank):
            for k in range(j, rank):
                gens.append(
                    Generator(
                        5,
                        f"d^2 Xbar{i + 1}/d X{j + 1} d X{k + 1}",
                        lambda g, i=i, j=j, k=k: _clean(_d_dX(_d_dX(g.Xbar[i], j), k)),
                    )
                )
    return gens


def _euler_X(p: dict) -> dict:
    # sum_j X_j d/dX_j multiplies a monomial by its total degree
    return _clean({e: c * (sum(e) - 1) for e, c in p.items()})


@dataclass(frozen=True)
class LinCheck:
    ok: bool
    residues: tuple  # (label, residue string) for every nonzero residue

    def __bool__(self):
        return self.ok


def check_lin(germ) -> LinCheck:
    """Evaluate every generator of Lin on ``germ``."""
    g = germ.general() if isinstance(germ, LinearGerm) else germ
    bad = []
    for gen in lin_generators(g.rank):
        r = gen.evaluate(g)
        if r:
            bad.append((gen.label, _poly_str(r)))
    return LinCheck(not bad, tuple(bad))


def check_trv(germ) -> bool:
    """Whether ``xbar = x``."""
    g = germ.general() if isinstance(germ, LinearGerm) else germ
    zero = (0,) * g.rank
    return g.xbar == {zero: g.field.gen}


def check_transversal_group(sys: QDiffSystem, kappas, template: Optional[GroupTemplate] = None, records=None) -> bool:
    """Every good curvature ``C`` gives a germ ``(x, C(x) X)`` in Lin and Trv with ``C`` in the template.

    Without ``template`` the classifier's answer on the same places is used.
    """
    if records is None:
        records = curvature_batch(sys, kappas)
    if template is None:
        template = classify(sys, kappas, records=records)
    elif isinstance(template, str):
        template = template_by_id(template, sys.rank)
    good = [r for r in records if r.good]
    if not good:
        raise NoGoodPlace("no good place")
    for rec in good:
        germ = LinearGerm(rec.matrix[0][0].field.base.one, rec.matrix)
        if not (template.member(rec.matrix) and check_lin(germ) and check_trv(germ)):
            return False
    return True
