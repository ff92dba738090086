"""Random inputs for property tests, benchmarks and the acceptance suite.

Everything takes an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import matrix as mx
from .algebra.tower import Tower, tower as make_tower
from .classifier import FactoredRatFunc, _q_power
from .systems import QDiffSystem

__all__ = [
    "BENCHMARK_ENTRIES",
    "BREAKABLE",
    "benchmark_system",
    "break_condition",
    "random_coboundary_data",
    "random_gauge",
    "random_germ",
    "random_k",
    "random_ratfunc",
    "random_system",
]

# which condition of the rank-1 criterion a perturbation breaks
BREAKABLE = ("x_exponent", "orbit_sum", "constant")


# a rank-2 system whose entries all have numerator and denominator degree <= 2
BENCHMARK_ENTRIES = (
    ("(x^2 + q*x + 1)/(x - 2)", "x + q"),
    ("q^2*x - 1", "(x^2 - q)/(x + 1)"),
)


def benchmark_system() -> QDiffSystem:
    """Fixed input for timing the curvature engine."""
    return QDiffSystem.from_strings(BENCHMARK_ENTRIES, label="benchmark")


def random_k(rng: random.Random, t: Tower, qdeg: int = 1, bound: int = 3):
    """A small nonzero element of ``K0[q]``."""
    while True:
        c = sum((rng.randint(-bound, bound) * t.q**i for i in range(qdeg + 1)), t.K.zero)
        if c:
            return c


def random_ratfunc(rng: random.Random, t: Tower, deg: int = 2, den_deg: int = 1, qdeg: int = 1):
    """``num / den`` with ``deg num <= deg`` and monic ``den`` of degree ``<= den_deg``."""
    X, x = t.X, t.x
    num = X.zero
    while not num:
        num = sum((X(random_k(rng, t, qdeg)) * x**i for i in range(rng.randint(0, deg) + 1) if rng.random() < 0.8), X.zero)
    d = rng.randint(0, den_deg)
    den = x**d + sum((X(random_k(rng, t, qdeg)) * x**i for i in range(d)), X.zero)
    if not den:
        den = X.one
    return num / den


def random_system(
    rng: random.Random,
    rank: int = 2,
    deg: int = 2,
    den_deg: int = 1,
    constants=(),
    label: str = "",
) -> QDiffSystem:
    """Random invertible system with entries of numerator degree ``<= deg``."""
    t = make_tower(tuple(constants))
    while True:
        m = tuple(tuple(random_ratfunc(rng, t, deg, den_deg) for _ in range(rank)) for _ in range(rank))
        if mx.nonsingular(m):
            return QDiffSystem(t, m, label)


def random_gauge(rng: random.Random, t: Tower, rank: int, deg: int = 1):
    """Random invertible matrix with polynomial entries of degree ``<= deg``."""
    while True:
        p = tuple(tuple(random_ratfunc(rng, t, deg, 0) for _ in range(rank)) for _ in range(rank))
        if mx.nonsingular(p):
            return p


def random_germ(rng: random.Random, t: Tower, rank: int = 2):
    """A random linear germ over ``K(x)``."""
    from .jets import LinearGerm

    alpha = random_k(rng, t) * t.q ** rng.randint(-2, 2)
    return LinearGerm(alpha, random_gauge(rng, t, rank, 1))


def _random_root(rng: random.Random, t: Tower):
    r = Fraction(rng.choice([1, -1]) * rng.randint(1, 5), rng.randint(1, 3))
    return t.K(r) * t.q ** rng.randint(-1, 2)


def random_coboundary_data(rng: random.Random, t: Tower = None) -> FactoredRatFunc:
    """Factored form of ``g(qx)/g(x)`` for a random ``g = x^m prod (x - b)^f``."""
    t = t or make_tower(())
    roots, n = {}, rng.randint(1, 3)
    while len(roots) < n:
        b = _random_root(rng, t)
        roots[b] = rng.choice([-2, -1, 1, 2])
    m = rng.randint(-2, 2)
    exps = {}
    for b, f in roots.items():
        for root, e in ((b / t.q, f), (b, -f)):
            exps[root] = exps.get(root, 0) + e
    factors = tuple((a, e) for a, e in exps.items() if e)
    c = t.q ** (m + sum(roots.values()))
    return FactoredRatFunc(c, 0, factors)


def break_condition(rng: random.Random, f: FactoredRatFunc, which: str, t: Tower = None) -> FactoredRatFunc:
    """Perturb coboundary data so that exactly the named condition fails."""
    t = t or make_tower(())
    if which == "x_exponent":
        return FactoredRatFunc(f.constant, rng.choice([-2, -1, 1, 2]), f.factors)
    if which == "orbit_sum":
        while True:
            r = t.K(rng.choice([7, 11, 13, -17, Fraction(19, 2)]))
            if all(_q_power(r / a) is None for a, _ in f.factors):
                return FactoredRatFunc(f.constant, 0, f.factors + ((r, rng.choice([-1, 1])),))
    if which == "constant":
        return FactoredRatFunc(f.constant * t.K(rng.choice([-1, 2, 3, Fraction(1, 2), Fraction(-3, 2)])), 0, f.factors)
    raise ValueError(f"unknown condition {which!r}")
