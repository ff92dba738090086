"""Cross-check the engine against its independent oracles on random inputs.

* rank 1: ``rank1_triviality_oracle`` against ``triviality_test``
* rank 2: curvatures against a floating-point product at ``exp(2 pi i / k)``

    python scripts/oracle_crosscheck.py --rank1 50 --numeric 20
"""

import argparse
import random
from dataclasses import dataclass

import mpmath

from qcurv.classifier import rank1_triviality_oracle
from qcurv.curvature import TrivialUpTo, curvature, triviality_test
from qcurv.algebra.tower import tower
from qcurv.parser import Add, Mul, Neg, Num, Pow, Sub, Sym, parse
from qcurv.sampling import BREAKABLE, break_condition, random_coboundary_data, random_system


@dataclass(frozen=True)
class Config:
    rank1: int = 50
    numeric: int = 20
    kappa_max: int = 20
    seed: int = 1


def _eval(src: str, x, z):
    # evaluate a printed entry with mpmath, via the package's own grammar
    def go(e):
        if isinstance(e, Num):
            return mpmath.mpf(e.value)
        if isinstance(e, Sym):
            return {"x": x, "q": z}[e.name]
        if isinstance(e, Neg):
            return -go(e.arg)
        if isinstance(e, Pow):
            return go(e.base) ** e.exponent
        a, b = go(e.left), go(e.right)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        return a / b

    return go(parse(src))


def numeric_check(s, k: int, x0) -> float:
    z = mpmath.exp(2j * mpmath.pi / k)
    entries = s.entry_strings()
    prod = mpmath.eye(s.rank)
    for i in range(k):
        a = mpmath.matrix([[_eval(e, z**i * x0, z) for e in row] for row in entries])
        prod = a * prod
    rec = curvature(s, k)
    got = mpmath.matrix([[_eval(str(a), x0, z) for a in row] for row in rec.matrix])
    return float(mpmath.mnorm(got - prod, 1) / max(1, mpmath.mnorm(prod, 1)))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rank1", type=int, default=Config.rank1)
    p.add_argument("--numeric", type=int, default=Config.numeric)
    p.add_argument("--kappa-max", type=int, default=Config.kappa_max)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    mpmath.mp.dps = 40

    T = tower(())
    agree = 0
    for i in range(cfg.rank1):
        f = random_coboundary_data(rng)
        if i % 2:
            f = break_condition(rng, f, BREAKABLE[(i // 2) % 3])
        v = triviality_test(f.to_system(T), cfg.kappa_max)
        agree += rank1_triviality_oracle(f) == isinstance(v, TrivialUpTo)
    print(f"rank-1 oracle agreement: {agree}/{cfg.rank1}")

    worst = 0.0
    for _ in range(cfg.numeric):
        s = random_system(rng, deg=2)
        k = rng.randint(2, 12)
        if curvature(s, k).good:
            worst = max(worst, numeric_check(s, k, mpmath.mpf(rng.randint(3, 9)) / 7 + 0.25j))
    print(f"numeric curvature check: worst relative error {worst:.2e} over {cfg.numeric} systems")


if __name__ == "__main__":
    main()
