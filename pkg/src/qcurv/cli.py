"""Command-line front end.

    qcurv curvatures FILE [--kmax N | --places 1,2,5]
    qcurv triviality FILE [--kmax N]
    qcurv classify   FILE [--kmax N] [--mode differential|algebraic]
    qcurv construct  FILE [FILE2] --op tensor|dual|dsum|prolong [--out PATH]
    qcurv jets       FILE [--kmax N] [--dyn K]

Reports go to stdout (``--format json`` for machine use), diagnostics to
stderr.  Exit codes: 0 success (for ``triviality``: trivial up to the
bound), 1 nontrivial witness, 2 inconclusive (no good place), 3 input error.
The default place bound is 20, or ``$QCURV_KMAX`` when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .classifier import ALGEBRAIC, DIFFERENTIAL, NoGoodPlace, classify
from .curvature import NontrivialWitness, TrivialUpTo, curvature_batch, triviality_test
from .io import InputError, dump_system, load_system, record_json, system_json, template_json, verdict_json, write_system
from .jets import check_lin, check_transversal_group, check_trv, dyn_element
from .systems import dsum, dual, prolong, tensor

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_NONTRIVIAL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_KMAX = 20
ENV_KMAX = "QCURV_KMAX"


def _default_kmax() -> int:
    raw = os.environ.get(ENV_KMAX)
    if raw is None:
        return DEFAULT_KMAX
    try:
        k = int(raw)
    except ValueError:
        raise InputError(f"{ENV_KMAX}={raw!r} is not an integer", "<environment>") from None
    if k < 1:
        raise InputError(f"{ENV_KMAX} must be at least 1", "<environment>")
    return k


def _places(text: str) -> list:
    try:
        ks = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("places must be positive integers")
    return ks


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcurv", description="Curvatures of q-difference systems at cyclotomic places.")
    p.add_argument("--version", action="version", version=f"qcurv {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, places=False):
        sp.add_argument("file")
        if places:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--kmax", type=_positive)
            g.add_argument("--places", type=_places, help="comma-separated place orders")
        else:
            sp.add_argument("--kmax", type=_positive)
        sp.add_argument("--format", choices=("human", "json"), default="human")
        sp.add_argument("--jobs", type=_positive, default=1, help="threads for independent places")

    common(sub.add_parser("curvatures", help="curvature at each place"), places=True)
    common(sub.add_parser("triviality", help="are all good curvatures the identity"))
    c = sub.add_parser("classify", help="smallest catalog template containing the curvatures")
    common(c)
    c.add_argument("--mode", choices=(DIFFERENTIAL, ALGEBRAIC), default=DIFFERENTIAL)
    j = sub.add_parser("jets", help="Lin/Trv checks on the dynamics and the curvatures")
    common(j)
    j.add_argument("--dyn", type=int, default=3, help="check Dyn elements with |k| <= DYN")
    k = sub.add_parser("construct", help="build a new system file")
    k.add_argument("file")
    k.add_argument("file2", nargs="?")
    k.add_argument("--op", choices=("tensor", "dual", "dsum", "prolong"), required=True)
    k.add_argument("--out")
    return p


def _records(system, kappas, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            return curvature_batch(system, kappas, ex)
    return curvature_batch(system, kappas)


def _header(args, system) -> dict:
    echo = {k: v for k, v in vars(args).items() if k not in ("format", "jobs")}
    return {"command": echo, "system": system_json(system)}


def _human_records(records) -> list:
    out = []
    for r in records:
        if r.good:
            rows = "; ".join(", ".join(str(a) for a in row) for row in r.matrix)
            out.append(f"  kappa={r.kappa}: [{rows}]")
        else:
            out.append(f"  kappa={r.kappa}: bad ({r.bad.value})")
    return out


def _run(args) -> tuple:
    """Return ``(exit code, report dict, human lines)``."""
    if args.command == "construct":
        return _construct(args)
    system = load_system(args.file)
    kmax = args.kmax if args.kmax is not None else _default_kmax()
    kappas = getattr(args, "places", None) or list(range(1, kmax + 1))
    report = _header(args, system)
    report["command"]["kmax"] = kmax
    lines = [f"system {system.label or args.file}: rank {system.rank}"]
    records = _records(system, kappas, args.jobs)
    report["records"] = [record_json(r) for r in records]
    code = EXIT_OK

    if args.command == "curvatures":
        lines += _human_records(records)
    elif args.command == "triviality":
        v = triviality_test(system, kmax, records=records)
        report["verdict"] = verdict_json(v)
        if isinstance(v, TrivialUpTo):
            lines.append(f"trivial up to kappa={kmax}" + (f" (skipped {list(v.skipped)})" if v.skipped else ""))
        elif isinstance(v, NontrivialWitness):
            code = EXIT_NONTRIVIAL
            lines.append(f"nontrivial: curvature at kappa={v.kappa} has entry {v.entry} = {v.value}")
        else:
            code = EXIT_INCONCLUSIVE
            lines.append(f"inconclusive: {v.reason}")
    elif args.command == "classify":
        try:
            t = classify(system, kappas, args.mode, records=records)
        except NoGoodPlace as exc:
            report["template"] = None
            lines.append(f"inconclusive: {exc}")
            return EXIT_INCONCLUSIVE, report, lines
        report["template"] = template_json(t)
        lines.append(f"template ({args.mode}): {t.id}")
    elif args.command == "jets":
        dyn = []
        for k in range(-abs(args.dyn), abs(args.dyn) + 1):
            g = dyn_element(system, k)
            lin = check_lin(g)
            dyn.append({"k": k, "lin": lin.ok, "trv": check_trv(g), "residues": [list(r) for r in lin.residues]})
        report["dyn"] = dyn
        lines.append("Dyn elements in Lin: " + ("all" if all(d["lin"] for d in dyn) else "NOT all"))
        lines.append("Dyn elements in Trv: k = " + ", ".join(str(d["k"]) for d in dyn if d["trv"]))
        try:
            t = classify(system, kappas, records=records)
            ok = check_transversal_group(system, kappas, t, records=records)
        except NoGoodPlace as exc:
            report["transversal"] = None
            lines.append(f"inconclusive: {exc}")
            return EXIT_INCONCLUSIVE, report, lines
        report["template"] = template_json(t)
        report["transversal"] = ok
        lines.append(f"curvature germs in Lin, Trv and {t.id}: {'yes' if ok else 'no'}")
        if not all(d["lin"] for d in dyn) or not ok:
            code = EXIT_NONTRIVIAL
    return code, report, lines


def _construct(args) -> tuple:
    s1 = load_system(args.file)
    binary = args.op in ("tensor", "dsum")
    if binary != (args.file2 is not None):
        raise InputError(f"--op {args.op} takes {'two files' if binary else 'one file'}", args.file)
    if binary:
        s2 = load_system(args.file2)
        out = (tensor if args.op == "tensor" else dsum)(s1, s2)
    else:
        out = (dual if args.op == "dual" else prolong)(s1)
    if args.out:
        write_system(out, args.out)
    text = dump_system(out)
    return EXIT_OK, json.loads(text), [text.rstrip("\n")]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code, report, lines = _run(args)
    except InputError as exc:
        print(f"qcurv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "construct":
        if not args.out:
            print(lines[0])
        return code
    report["elapsed_seconds"] = round(time.perf_counter() - start, 6)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
