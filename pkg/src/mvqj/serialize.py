"""Exact, deterministic serialization of the values the CLI reports.

* rationals: ``"p/q"`` strings (``"3/8"``, ``"-2"``)
* non-real Gaussian rationals: ``{"re": "p/q", "im": "p/q"}`` with explicit denominators
* certified reals: ``{"mid": "...", "rad": "..."}``; certified complex: ``{"re": {...}, "im": {...}}``
* matrices: row-major nested lists
* matrix polynomials: ``{"n": size, "coeffs": [matrix, ...]}`` ascending
"""
from __future__ import annotations

import csv
import io
import json
from decimal import Decimal
from fractions import Fraction

from .certified import CertifiedComplex, CertifiedReal
from .exact import GaussRat, Mat
from .polymat import MatPoly


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussRat):
        if x.is_real:
            return str(x.re)
        return {"re": _frac(x.re), "im": _frac(x.im)}
    if isinstance(x, CertifiedReal):
        return {"mid": str(x.mid), "rad": str(x.rad)}
    if isinstance(x, CertifiedComplex):
        return {"re": to_jsonable(x.re), "im": to_jsonable(x.im)}
    if isinstance(x, Mat):
        return [[to_jsonable(e) for e in row] for row in x]
    if isinstance(x, MatPoly):
        return {"n": x.size, "coeffs": [to_jsonable(c) for c in x.coeffs]}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_jsonable(x):
    """Inverse of :func:`to_jsonable` for scalars, matrices and polynomials."""
    if isinstance(x, str):
        return GaussRat(Fraction(x))
    if isinstance(x, dict):
        keys = set(x)
        if keys == {"mid", "rad"}:
            return CertifiedReal(Decimal(x["mid"]), Decimal(x["rad"]))
        if keys == {"re", "im"}:
            if isinstance(x["re"], dict):
                return CertifiedComplex(from_jsonable(x["re"]), from_jsonable(x["im"]))
            return GaussRat(Fraction(x["re"]), Fraction(x["im"]))
        if keys == {"n", "coeffs"}:
            return MatPoly([from_jsonable(c) for c in x["coeffs"]], int(x["n"]))
        return {k: from_jsonable(v) for k, v in x.items()}
    if isinstance(x, list):
        if x and all(isinstance(r, list) for r in x) and all(
                not isinstance(e, list) for r in x for e in r) and len({len(r) for r in x}) == 1 and x[0]:
            return Mat([[from_jsonable(e) for e in r] for r in x])
        return [from_jsonable(v) for v in x]
    return x


def emit_json(doc) -> str:
    return json.dumps(to_jsonable(doc), indent=2) + "\n"


def parse_json(text: str):
    return from_jsonable(json.loads(text))


def _cell(x) -> str:
    if isinstance(x, (GaussRat, Fraction, int)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, CertifiedReal):
        return f"{x.mid}+-{x.rad}"
    if isinstance(x, CertifiedComplex):
        return f"{_cell(x.re)};{_cell(x.im)}"
    if isinstance(x, (dict, list, Mat, MatPoly)):
        return json.dumps(to_jsonable(x), separators=(",", ":"))
    return str(x)


def emit_csv(rows) -> str:
    """Header-free CSV; a matrix becomes one line per row."""
    if isinstance(rows, Mat):
        rows = list(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_cell(c) for c in row])
    return buf.getvalue()


def emit_pretty(doc, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(doc, Mat):
        cells = [[str(e) for e in row] for row in doc]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(pad + "[ " + "  ".join(c.rjust(width) for c in row) + " ]"
                         for row in cells)
    if isinstance(doc, MatPoly):
        parts = []
        for k, c in enumerate(doc.coeffs):
            parts.append(f"{pad}z^{k}:\n{emit_pretty(c, indent + 2)}")
        return "\n".join(parts) if parts else pad + "0"
    if isinstance(doc, dict):
        lines = []
        for k, v in doc.items():
            if isinstance(v, (dict, list, Mat, MatPoly)):
                lines.append(f"{pad}{k}:")
                lines.append(emit_pretty(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_cell(v)}")
        return "\n".join(lines)
    if isinstance(doc, (list, tuple)):
        return "\n".join(emit_pretty(v, indent) if isinstance(v, (dict, list, Mat, MatPoly))
                         else pad + _cell(v) for v in doc)
    return pad + _cell(doc)
