"""Acceptance criteria, one test each.

Every test prints a ``[criterion N] PASS|FAIL`` line with its timing, so
``pytest tests/test_acceptance.py`` doubles as the acceptance report.
"""

import io
import json
import random
import subprocess
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

from qcurv.algebra import matrix as mx
from qcurv.algebra.tower import tower
from qcurv.classifier import rank1_triviality_oracle
from qcurv.cli import main
from qcurv.curvature import (
    BadPlace,
    NontrivialWitness,
    TrivialUpTo,
    curvature,
    iterate_then_reduce,
    reduce_matrix,
    triviality_test,
)
from qcurv.jets import check_lin, check_transversal_group, check_trv, compose, dyn_element
from qcurv.sampling import (
    BREAKABLE,
    benchmark_system,
    break_condition,
    random_coboundary_data,
    random_gauge,
    random_germ,
    random_system,
)
from qcurv.systems import QDiffSystem, gauge, iterate, prolong, prolong_matrix, subst_matrix, tensor

DATA = Path(__file__).resolve().parents[1] / "data"
T = tower(())
TL = tower(("l",))


def verdict(capsys, n, title, ok, elapsed, limit, detail=""):
    passed = bool(ok) and elapsed < limit
    line = f"[criterion {n}] {'PASS' if passed else 'FAIL'} {title}: {elapsed:.2f}s (limit {limit}s)"
    if detail:
        line += f"; {detail}"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert elapsed < limit, line


def cli_json(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv] + ["--format", "json"])
    return code, json.loads(buf.getvalue())


def test_criterion_1_theta(capsys):
    start = time.perf_counter()
    theta = QDiffSystem.from_strings([["q*x"]])
    exact, odd = [], []
    for k in range(1, 13):
        F = T.place_field(k)
        zeta = F(F.base.gen)
        c = curvature(theta, k).matrix
        exact.append(c == ((zeta ** (k * (k + 1) // 2) * F.gen**k,),))
        if k % 2:
            odd.append(c == ((F.gen**k,),))
    _, diff = cli_json("classify", DATA / "theta.json", "--kmax", 12)
    _, alg = cli_json("classify", DATA / "theta.json", "--kmax", 12, "--mode", "algebraic")
    elapsed = time.perf_counter() - start
    ids = (diff["template"]["id"], alg["template"]["id"])
    ok = all(exact) and all(odd) and ids == ("logderiv_constant", "full_gm")
    verdict(capsys, 1, "Theta curvatures and templates", ok, elapsed, 1.0, f"templates {ids}")


def test_criterion_2_log(capsys):
    start = time.perf_counter()
    logsys = QDiffSystem.from_strings([["1", "l"], ["0", "1"]], constants=["l"])
    exact = []
    for k in range(1, 9):
        F = TL.place_field(k)
        lam = F(F.base(TL.K0.gen))
        exact.append(curvature(logsys, k).matrix == ((F.one, F(k) * lam), (F.zero, F.one)))
    _, rep = cli_json("classify", DATA / "log.json", "--kmax", 8)
    elapsed = time.perf_counter() - start
    tid = rep["template"]["id"]
    ok = all(exact) and tid == "unipotent_dconstant"
    verdict(capsys, 2, "log curvatures and template", ok, elapsed, 1.0, f"template {tid}")


def test_criterion_3_triviality(capsys):
    rng = random.Random(3)
    start = time.perf_counter()
    cases = [(random_coboundary_data(rng), True) for _ in range(25)]
    for i in range(25):
        cases.append((break_condition(rng, random_coboundary_data(rng), BREAKABLE[i % 3]), False))
    engine_ok = agree = 0
    for f, trivial in cases:
        v = triviality_test(f.to_system(T), 20)
        if trivial:
            engine_ok += isinstance(v, TrivialUpTo) and v.kappa_max == 20
        else:
            engine_ok += isinstance(v, NontrivialWitness) and v.kappa <= 20
        agree += rank1_triviality_oracle(f) == isinstance(v, TrivialUpTo)
    elapsed = time.perf_counter() - start
    ok = engine_ok == 50 and agree == 50
    verdict(capsys, 3, "triviality test vs rank-1 oracle", ok, elapsed, 60.0, f"engine {engine_ok}/50, oracle {agree}/50")


def test_criterion_4_functoriality(capsys):
    rng = random.Random(4)
    start = time.perf_counter()
    checked = skipped = failed = 0
    for _ in range(20):
        s1, s2 = random_system(rng, deg=2), random_system(rng, deg=2)
        p = random_gauge(rng, T, 2)
        ts, ps, gs = tensor(s1, s2), prolong(s1), gauge(s1, p)
        for k in (2, 3, 4, 6):
            c1, c2 = curvature(s1, k), curvature(s2, k)
            identities = []
            if c1.good and c2.good:
                identities.append(curvature(ts, k).matrix == mx.kron(c1.matrix, c2.matrix))
            if c1.good:
                identities.append(curvature(ps, k).matrix == prolong_matrix(c1.matrix))
                try:
                    pbar = reduce_matrix(p, k, T.place_field(k))
                except BadPlace:
                    pbar = None
                if pbar is not None and mx.nonsingular(pbar):
                    expect = mx.matmul(mx.matmul(pbar, c1.matrix), mx.inverse(pbar))
                    identities.append(curvature(gs, k).matrix == expect)
            skipped += 3 - len(identities)
            checked += len(identities)
            failed += identities.count(False)
    elapsed = time.perf_counter() - start
    ok = failed == 0 and checked > 0
    verdict(capsys, 4, "tensor, prolong, gauge at places", ok, elapsed, 120.0, f"{checked} identities, {failed} failed, {skipped} skipped at bad places")


def test_criterion_5_cocycle_and_commutation(capsys):
    rng = random.Random(5)
    start = time.perf_counter()
    cocycle = commute = 0
    for _ in range(50):
        s = random_system(rng, deg=2)
        j, k = rng.randint(-4, 4), rng.randint(-4, 4)
        rhs = mx.matmul(subst_matrix(iterate(s, j), T.q**k), iterate(s, k))
        cocycle += iterate(s, j + k) == rhs
    for _ in range(50):
        s = random_system(rng, deg=2)
        k = rng.randint(1, 8)
        commute += curvature(s, k) == iterate_then_reduce(s, k)
    elapsed = time.perf_counter() - start
    ok = cocycle == 50 and commute == 50
    verdict(capsys, 5, "cocycle law and reduce/iterate commutation", ok, elapsed, 60.0, f"cocycle {cocycle}/50, commutation {commute}/50")


def test_criterion_6_jets(capsys):
    rng = random.Random(6)
    start = time.perf_counter()
    lin = trv = total = 0
    for _ in range(10):
        s = random_system(rng)
        for k in range(-5, 6):
            g = dyn_element(s, k)
            total += 1
            lin += bool(check_lin(g))
            trv += check_trv(g) == (k == 0)
    theta = QDiffSystem.from_strings([["q*x"]])
    logsys = QDiffSystem.from_strings([["1", "l"], ["0", "1"]], constants=["l"])
    transversal = check_transversal_group(theta, range(1, 7)) and check_transversal_group(logsys, range(1, 9))
    closed = 0
    for _ in range(20):
        g, h = random_germ(rng, T), random_germ(rng, T)
        closed += bool(check_lin(g) and check_lin(h) and check_lin(compose(g, h)))
    elapsed = time.perf_counter() - start
    ok = lin == total and trv == total and transversal and closed == 20
    detail = f"Dyn in Lin {lin}/{total}, Trv only at k=0 {trv}/{total}, transversal {transversal}, closure {closed}/20"
    verdict(capsys, 6, "jet suite", ok, elapsed, 30.0, detail)


_BASELINE = """
import time
from qcurv.curvature import iterate_then_reduce
from qcurv.sampling import benchmark_system
s = benchmark_system()
print("ready", flush=True)
t = time.perf_counter()
iterate_then_reduce(s, 50)
print(time.perf_counter() - t, flush=True)
"""


def test_criterion_7_performance(capsys):
    s = benchmark_system()
    start = time.perf_counter()
    fast = curvature(s, 50)
    t_fast = time.perf_counter() - start
    # the baseline runs in a child process so it can be stopped once it is
    # clearly slower than the required factor
    cap = 10 * t_fast
    proc = subprocess.Popen([sys.executable, "-c", _BASELINE], stdout=subprocess.PIPE, text=True)
    try:
        assert proc.stdout.readline().strip() == "ready"
        t0 = time.perf_counter()
        try:
            out, _ = proc.communicate(timeout=cap)
            t_slow = float(out.strip())
            ratio, bound = t_slow / t_fast, "="
        except subprocess.TimeoutExpired:
            t_slow, ratio, bound = time.perf_counter() - t0, cap / t_fast, ">"
    finally:
        proc.kill()
        proc.wait()
    ok = fast.good and ratio >= 5
    detail = f"reduce-first {t_fast:.2f}s, iterate-then-reduce {bound}{t_slow:.2f}s, speedup {bound}{ratio:.1f}x"
    verdict(capsys, 7, "curvature at kappa=50", ok, t_fast, 5.0, detail)
