"""System files and reports.

A system file is JSON::

    {"label": "theta", "constants": [], "rank": 1, "matrix": [["q*x"]]}

Entries use the expression grammar, and printed entries parse back to the
same value, so constructed systems can be written out and read again.
"""

from __future__ import annotations

import json
import json.scanner
from json.decoder import scanstring
from pathlib import Path

from .algebra.fraction import DivisionByZero
from .algebra.tower import tower as make_tower
from .classifier import GroupTemplate
from .curvature import CurvatureRecord, Inconclusive, NontrivialWitness, TrivialUpTo
from .parser import ParseError, parse_value
from .systems import QDiffSystem, SingularSystem

__all__ = [
    "InputError",
    "dump_system",
    "load_system",
    "loads_system",
    "record_json",
    "system_json",
    "template_json",
    "verdict_json",
    "write_system",
]


class InputError(ValueError):
    """A problem with a system file, located by file, line and entry."""

    def __init__(self, message: str, file: str = "<string>", line: int = None, entry: tuple = None):
        self.message = message
        self.file = file
        self.line = line
        self.entry = entry
        where = file + (f":{line}" if line is not None else "")
        if entry is not None:
            where += f": entry [{entry[0]}][{entry[1]}]"
        super().__init__(f"{where}: {message}")


class _Str(str):
    """A JSON string that remembers its offset in the source."""

    pos = 0


def _decoder():
    dec = json.JSONDecoder()

    def parse_string(s, end, strict):
        value, stop = scanstring(s, end, strict)
        out = _Str(value)
        out.pos = end - 1
        return out, stop

    dec.parse_string = parse_string
    dec.scan_once = json.scanner.py_make_scanner(dec)
    return dec


def _line(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def loads_system(text: str, file: str = "<string>") -> QDiffSystem:
    try:
        data = _decoder().decode(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", file, exc.lineno) from None
    if not isinstance(data, dict):
        raise InputError("top level must be an object", file, 1)
    unknown = set(data) - {"label", "constants", "rank", "matrix"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}", file)
    label = data.get("label", "")
    constants = data.get("constants", [])
    if not isinstance(label, str):
        raise InputError("label must be a string", file)
    if not isinstance(constants, list) or not all(isinstance(c, str) for c in constants):
        raise InputError("constants must be a list of names", file)
    try:
        t = make_tower(tuple(constants))
    except ValueError as exc:
        raise InputError(str(exc), file) from None
    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a nonempty list of rows", file)
    rank = data.get("rank", len(rows))
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise InputError("rank must be a positive integer", file)
    if len(rows) != rank or any(len(r) != rank for r in rows):
        raise InputError(f"matrix must be {rank} x {rank}", file)
    entries = []
    for i, row in enumerate(rows):
        out = []
        for j, s in enumerate(row):
            line = _line(text, s.pos) if isinstance(s, _Str) else None
            if not isinstance(s, str):
                raise InputError("entries must be strings", file, line, (i, j))
            try:
                out.append(parse_value(s, t))
            except ParseError as exc:
                raise InputError(f"{exc.message} (column {exc.position + 1} of {s!r})", file, line, (i, j)) from None
            except DivisionByZero as exc:
                raise InputError(str(exc), file, line, (i, j)) from None
        entries.append(tuple(out))
    try:
        return QDiffSystem(t, tuple(entries), label)
    except SingularSystem as exc:
        raise InputError(str(exc), file) from None


def load_system(path) -> QDiffSystem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), str(path)) from None
    return loads_system(text, str(path))


def system_json(sys: QDiffSystem) -> dict:
    return {
        "label": sys.label,
        "constants": list(sys.tower.constants),
        "rank": sys.rank,
        "matrix": sys.entry_strings(),
    }


def dump_system(sys: QDiffSystem) -> str:
    return json.dumps(system_json(sys), indent=2) + "\n"


def write_system(sys: QDiffSystem, path) -> None:
    Path(path).write_text(dump_system(sys))


def record_json(rec: CurvatureRecord) -> dict:
    if rec.good:
        return {"kappa": rec.kappa, "status": "good", "matrix": [[str(a) for a in row] for row in rec.matrix]}
    return {"kappa": rec.kappa, "status": "bad", "reason": rec.bad.value}


def verdict_json(v) -> dict:
    if isinstance(v, TrivialUpTo):
        return {"kind": "trivial_up_to", "kappa_max": v.kappa_max, "skipped": list(v.skipped)}
    if isinstance(v, NontrivialWitness):
        return {
            "kind": "nontrivial_witness",
            "kappa": v.kappa,
            "entry": list(v.entry),
            "value": v.value,
            "skipped": list(v.skipped),
        }
    if isinstance(v, Inconclusive):
        return {"kind": "inconclusive", "reason": v.reason, "skipped": list(v.skipped)}
    raise TypeError(v)


def template_json(t: GroupTemplate) -> dict:
    return {"id": t.id, "rank": t.rank, "differential": t.differential}
