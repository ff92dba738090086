"""Time reduce-first curvatures against iterate-then-reduce.

    python scripts/bench_curvature.py --places 6,12,25,50 --baseline-max 12

The baseline is only run for orders up to ``--baseline-max``; beyond that it
takes minutes.
"""

import argparse
import random
import time
from dataclasses import dataclass

from qcurv.curvature import curvature, iterate_then_reduce
from qcurv.sampling import benchmark_system, random_system


@dataclass(frozen=True)
class Config:
    places: tuple = (6, 12, 25, 47, 50)
    baseline_max: int = 12
    random_systems: int = 3
    seed: int = 0


def timed(f, *args):
    t = time.perf_counter()
    out = f(*args)
    return out, time.perf_counter() - t


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--places", type=lambda s: tuple(int(k) for k in s.split(",")), default=Config.places)
    p.add_argument("--baseline-max", type=int, default=Config.baseline_max)
    p.add_argument("--random-systems", type=int, default=Config.random_systems)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))

    rng = random.Random(cfg.seed)
    systems = [benchmark_system()] + [random_system(rng, deg=2) for _ in range(cfg.random_systems)]
    print(f"{'system':>10} {'kappa':>5} {'reduce-first':>13} {'iterate-then-reduce':>20} {'speedup':>8}")
    for i, s in enumerate(systems):
        name = s.label or f"random{i}"
        for k in cfg.places:
            fast, t_fast = timed(curvature, s, k)
            if k <= cfg.baseline_max:
                slow, t_slow = timed(iterate_then_reduce, s, k)
                assert slow == fast, f"paths disagree at kappa={k}"
                extra = f"{t_slow:>19.3f}s {t_slow / t_fast:>7.1f}x"
            else:
                extra = f"{'skipped':>20} {'':>8}"
            print(f"{name:>10} {k:>5} {t_fast:>12.3f}s {extra}")


if __name__ == "__main__":
    main()
