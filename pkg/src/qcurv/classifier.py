"""Smallest catalog template containing the good curvatures of a system.

The catalog is a finite list of membership predicates on curvature
matrices, listed in an order that extends inclusion, and any two
templates have a least common upper bound in the list.  So the first
template accepting every curvature is the smallest one.  This is an upper bound for the group the curvatures
generate, not a computation of its defining equations.

Rank 1 (differential)::

    identity < mu_m (c^m = 1) < dconstant (dc = 0)
             < logderiv_constant (d(dc/c) = 0) < full_gm

Rank >= 2 adds scalar versions of the rank-1 templates and the shapes
unipotent_dconstant, unipotent, diagonal, upper_triangular, full_gl.  The
algebraic catalog drops every template that involves ``d = x d/dx``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra.fraction import RatFunc
from .algebra.tower import Tower, delta
from .curvature import curvature_batch
from .systems import QDiffSystem

__all__ = [
    "DIFFERENTIAL",
    "ALGEBRAIC",
    "M_MAX",
    "FactoredRatFunc",
    "GroupTemplate",
    "NoGoodPlace",
    "catalog",
    "classify",
    "contained_in",
    "mu_order",
    "rank1_triviality_oracle",
    "relax",
    "template",
]

DIFFERENTIAL = "differential"
ALGEBRAIC = "algebraic"
M_MAX = 24


class NoGoodPlace(ValueError):
    pass


# -- scalar predicates ----------------------------------------------------


def mu_order(c, m_max: int = M_MAX) -> Optional[int]:
    """Order of ``c`` as a root of unity if it is a constant of order ``<= m_max``."""
    if not c or not c.is_constant():
        return None
    p = c
    for m in range(1, m_max + 1):
        if p == 1:
            return m
        p = p * c
    return None


def _is_dconstant(c) -> bool:
    return bool(c) and not delta(c)


def _is_logderiv_constant(c) -> bool:
    return bool(c) and not delta(delta(c) / c)


# scalar kinds are ("mu", m), ("dconstant",), ("logderiv_constant",), ("full_gm",)
_KIND_RANK = {"mu": 0, "dconstant": 1, "logderiv_constant": 2, "full_gm": 3}


def _kind_member(kind, c) -> bool:
    tag = kind[0]
    if tag == "mu":
        return c.is_constant() and bool(c) and c ** kind[1] == 1
    if tag == "dconstant":
        return _is_dconstant(c)
    if tag == "logderiv_constant":
        return _is_logderiv_constant(c)
    return bool(c)


def _kind_leq(a, b) -> bool:
    if a[0] == "mu" and b[0] == "mu":
        return b[1] % a[1] == 0
    return _KIND_RANK[a[0]] <= _KIND_RANK[b[0]]


def _kind_id(kind) -> str:
    if kind[0] == "mu":
        return "identity" if kind[1] == 1 else f"mu_{kind[1]}"
    return kind[0]


# -- matrix shapes ----------------------------------------------------------


def _entries(m):
    return ((i, j, a) for i, row in enumerate(m) for j, a in enumerate(row))


def _is_diagonal(m) -> bool:
    return all(not a for i, j, a in _entries(m) if i != j)


def _is_upper(m) -> bool:
    return all(not a for i, j, a in _entries(m) if i > j)


def _is_unipotent(m) -> bool:
    return _is_upper(m) and all(m[i][i] == 1 for i in range(len(m)))


def _is_unipotent_dconstant(m) -> bool:
    return _is_unipotent(m) and all(not delta(a) for i, j, a in _entries(m) if i < j)


def _scalar(m):
    """The scalar ``c`` if ``m = c * Id``, else ``None``."""
    if not _is_diagonal(m):
        return None
    c = m[0][0]
    return c if all(m[i][i] == c for i in range(len(m))) else None


@dataclass(frozen=True)
class GroupTemplate:
    """A named membership predicate on curvature matrices.

    ``shape`` is one of ``"scalar"`` (with a rank-1 ``kind``),
    ``"unipotent_dconstant"``, ``"unipotent"``, ``"diagonal"``,
    ``"upper_triangular"`` or ``"full_gl"``.  In rank 1 every template is
    scalar.
    """

    id: str
    rank: int
    shape: str
    kind: tuple = ()
    differential: bool = False
    predicate: Callable = field(default=None, compare=False, repr=False)

    def member(self, m) -> bool:
        if len(m) != self.rank:
            raise ValueError(f"template {self.id} is for rank {self.rank}, got {len(m)}")
        return self.predicate(m)

    def applies_to(self, rank: int) -> bool:
        return rank == self.rank


def _scalar_template(rank: int, kind) -> GroupTemplate:
    base = _kind_id(kind)
    tid = base if rank == 1 or base == "identity" else f"scalar_{base}"

    def pred(m):
        c = _scalar(m)
        return c is not None and _kind_member(kind, c)

    return GroupTemplate(tid, rank, "scalar", kind, kind[0] in ("dconstant", "logderiv_constant"), pred)


_SHAPES = {
    "unipotent_dconstant": (_is_unipotent_dconstant, True),
    "unipotent": (_is_unipotent, False),
    "diagonal": (_is_diagonal, False),
    "upper_triangular": (_is_upper, False),
    "full_gl": (lambda m: True, False),
}


def _shape_template(rank: int, shape: str) -> GroupTemplate:
    pred, diff = _SHAPES[shape]
    return GroupTemplate(shape, rank, shape, (), diff, pred)


def catalog(rank: int, mode: str = DIFFERENTIAL) -> list:
    """Templates for ``rank`` in a fixed order extending inclusion."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if mode not in (DIFFERENTIAL, ALGEBRAIC):
        raise ValueError(f"unknown mode {mode!r}")
    mus = [("mu", m) for m in range(1, M_MAX + 1)]
    if rank == 1:
        kinds = mus + [("dconstant",), ("logderiv_constant",), ("full_gm",)]
        out = [_scalar_template(1, k) for k in kinds]
    else:
        out = [_scalar_template(rank, k) for k in mus]
        out.append(_shape_template(rank, "unipotent_dconstant"))
        out += [_scalar_template(rank, k) for k in [("dconstant",), ("logderiv_constant",), ("full_gm",)]]
        out += [_shape_template(rank, s) for s in ("unipotent", "diagonal", "upper_triangular", "full_gl")]
    if mode == ALGEBRAIC:
        out = [t for t in out if not t.differential]
    return out


def template(tid: str, rank: int) -> GroupTemplate:
    for t in catalog(rank, DIFFERENTIAL):
        if t.id == tid:
            return t
    raise KeyError(f"no template {tid!r} in rank {rank}")


def contained_in(a: GroupTemplate, b: GroupTemplate) -> bool:
    """Inclusion of the sets cut out by two templates of the same rank."""
    if a.rank != b.rank:
        raise ValueError("templates of different rank")
    if a.id == "identity" or b.id == "full_gl" or a.id == b.id:
        return True
    if b.id == "identity" or a.id == "full_gl":
        return False
    if a.shape == "scalar":
        if b.shape == "scalar":
            return _kind_leq(a.kind, b.kind)
        return b.shape in ("diagonal", "upper_triangular")
    if b.shape == "scalar":
        return False
    up = {
        "unipotent_dconstant": {"unipotent", "upper_triangular"},
        "unipotent": {"upper_triangular"},
        "diagonal": {"upper_triangular"},
        "upper_triangular": set(),
    }
    return b.shape in up[a.shape]


_RELAX = {
    "dconstant": "full_gm",
    "logderiv_constant": "full_gm",
    "scalar_dconstant": "scalar_full_gm",
    "scalar_logderiv_constant": "scalar_full_gm",
    "unipotent_dconstant": "unipotent",
}


def relax(t: GroupTemplate) -> GroupTemplate:
    """The algebraic template obtained by dropping the conditions on ``d``."""
    return template(_RELAX.get(t.id, t.id), t.rank)


def classify(sys: QDiffSystem, kappas, mode: str = DIFFERENTIAL, records=None, executor=None) -> GroupTemplate:
    """First template in :func:`catalog` containing every good curvature."""
    if records is None:
        records = curvature_batch(sys, kappas, executor)
    good = [r.matrix for r in records if r.good]
    if not good:
        raise NoGoodPlace("no good place among " + ", ".join(str(r.kappa) for r in records))
    for t in catalog(sys.rank, mode):
        if all(t.member(m) for m in good):
            return t
    raise AssertionError("full template rejected a curvature")  # unreachable


# -- rank-1 triviality oracle ----------------------------------------------


@dataclass(frozen=True)
class FactoredRatFunc:
    """``c * x^n * prod (x - alpha)^e`` with ``c`` and the roots in ``K``."""

    constant: RatFunc
    x_exponent: int = 0
    factors: tuple = ()

    def __post_init__(self):
        roots = [a for a, _ in self.factors]
        if not self.constant:
            raise ValueError("constant must be nonzero")
        if any(not a for a in roots):
            raise ValueError("roots must be nonzero")
        if len(set(roots)) != len(roots):
            raise ValueError("roots must be pairwise distinct")

    def to_ratfunc(self, tower: Tower) -> RatFunc:
        X, x = tower.X, tower.x
        f = X(self.constant) * x**self.x_exponent
        for alpha, e in self.factors:
            f = f * (x - X(alpha)) ** e
        return f

    def to_system(self, tower: Tower, label: str = "") -> QDiffSystem:
        return QDiffSystem(tower, ((self.to_ratfunc(tower),),), label)


def _q_power(r: RatFunc) -> Optional[int]:
    """``j`` if ``r = q^j`` exactly, else ``None``."""
    num, den = r.num, r.den
    if num.degree < 0 or any(num.coeff(i) for i in range(num.degree)) or num.lc != 1:
        return None
    if any(den.coeff(i) for i in range(den.degree)):
        return None
    return num.degree - den.degree


def rank1_triviality_oracle(f: FactoredRatFunc) -> bool:
    """Whether ``f = g(qx)/g(x)`` for some rational ``g``.

    Since ``g(qx)/g(x)`` for ``g = d x^m prod (x - b)^k`` equals
    ``q^(m + sum k) prod (x - b/q)^k (x - b)^(-k)``, this holds iff there is
    no power of ``x``, the exponents along every ``q``-orbit of roots sum to
    zero and the constant is an integer power of ``q``.
    """
    if f.x_exponent != 0:
        return False
    orbit_sums = []
    reps = []
    for alpha, e in f.factors:
        for i, beta in enumerate(reps):
            if _q_power(alpha / beta) is not None:
                orbit_sums[i] += e
                break
        else:
            reps.append(alpha)
            orbit_sums.append(e)
    if any(orbit_sums):
        return False
    return _q_power(f.constant) is not None
