"""Printing helpers shared by the polynomial and fraction types.

Every element prints in the input grammar of :mod:`qcurv.parser`, so any
printed value parses back to an equal value.
"""


def has_top_level_sum(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-" and s[i - 1] != "^":
            return True
    return False


def is_atom(s: str) -> bool:
    """True for a bare integer, symbol or power of one (safe after ``/``)."""
    if s.startswith("(") and _closes_at_end(s):
        return True
    return all(ch.isalnum() or ch in "_^" for ch in s)


def _closes_at_end(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def coeff_str(c) -> str:
    s = str(c)
    return f"({s})" if has_top_level_sum(s) else s


def poly_str(coeffs, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        cs = coeff_str(c)
        if i == 0:
            terms.append(cs)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def fraction_str(num: str, den: str) -> str:
    if den == "1":
        return num
    if has_top_level_sum(num):
        num = f"({num})"
    if not is_atom(den):
        den = f"({den})"
    return f"{num}/{den}"
