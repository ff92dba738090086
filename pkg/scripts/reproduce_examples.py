"""Print the worked examples: Theta and log curvatures, templates and jet checks.

    python scripts/reproduce_examples.py [--kmax 12]
"""

import argparse
from dataclasses import dataclass

from qcurv.classifier import ALGEBRAIC, DIFFERENTIAL, classify
from qcurv.curvature import curvature_batch, triviality_test
from qcurv.jets import check_lin, check_transversal_group, dyn_element
from qcurv.systems import QDiffSystem, iterate, prolong


@dataclass(frozen=True)
class Config:
    kmax: int = 12
    dyn: int = 3


def show_system(s: QDiffSystem, cfg: Config) -> None:
    print(f"== {s.label}: {s.entry_strings()}")
    for r in curvature_batch(s, range(1, cfg.kmax + 1)):
        body = "; ".join(", ".join(str(a) for a in row) for row in r.matrix) if r.good else f"bad ({r.bad.value})"
        print(f"  kappa={r.kappa:>2}: [{body}]")
    places = range(1, cfg.kmax + 1)
    print(f"  template (differential): {classify(s, places, DIFFERENTIAL).id}")
    print(f"  template (algebraic):    {classify(s, places, ALGEBRAIC).id}")
    lin = all(check_lin(dyn_element(s, k)) for k in range(-cfg.dyn, cfg.dyn + 1))
    print(f"  Dyn elements |k| <= {cfg.dyn} in Lin: {lin}")
    print(f"  curvature germs transversal: {check_transversal_group(s, places)}")
    print(f"  triviality: {triviality_test(s, cfg.kmax)}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kmax", type=int, default=Config.kmax)
    p.add_argument("--dyn", type=int, default=Config.dyn)
    cfg = Config(**vars(p.parse_args()))

    theta = QDiffSystem.from_strings([["q*x"]], label="theta")
    log = QDiffSystem.from_strings([["1", "l"], ["0", "1"]], constants=["l"], label="log")
    print("iterate(theta, 3) =", iterate(theta, 3)[0][0])
    print("iterate(theta, -1) =", iterate(theta, -1)[0][0])
    print("prolong(theta) =", prolong(theta).entry_strings())
    for s in (theta, log):
        show_system(s, cfg)


if __name__ == "__main__":
    main()
