"""Command line interface: ``mvqj <subcommand> [flags]``.

Exit status is 0 on success, 1 when a verification fails and 2 for invalid
parameters.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import MVQJError
from .exact import GaussRat, Mat
from .lqjacobi import (ScalarParams, lqj_eigenvalue, lqj_moment_ratio, lqj_monic,
                       lqj_norm_ratio, lqj_operator, lqj_poly, lqj_recurrence)
from .mvlqj import Family, FamilyParams
from .polymat import MatPoly
from .qdiffop import extract_eigenvalue, preserves_polynomials_check, symmetry_check
from .serialize import emit_csv, emit_json, emit_pretty
from .verify import printed_form_findings, run_suite
from .weights import gram_schmidt_monic, inner_product_series

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

PRESETS = {
    "P1": ("1/2", "1/4", "1/2", "1"),
    "P2": ("2/3", "1/3", "-1", "i"),
}


@dataclass
class RunConfig:
    params: FamilyParams
    n_max: int
    n: int | None
    mode: str
    tol: Fraction
    fmt: str
    out: str | None
    x_max: int
    form: str


@dataclass
class Report:
    document: object
    table: list | Mat
    ok: bool = True


def _rational(text: str) -> GaussRat:
    try:
        return GaussRat.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact scalar: {text!r}") from exc


def _params_doc(p: FamilyParams) -> dict:
    return {"q": p.q, "a": p.a, "b": p.b, "v": p.v}


def _ns(cfg: RunConfig) -> range:
    return range(cfg.n, cfg.n + 1) if cfg.n is not None else range(cfg.n_max + 1)


def _mat_rows(label, m: Mat) -> list:
    return [[label, i + 1, j + 1, e] for i, row in enumerate(m) for j, e in enumerate(row)]


def _poly_rows(label, p: MatPoly) -> list:
    return [[label, k, i + 1, j + 1, e] for k, c in enumerate(p.coeffs)
            for i, row in enumerate(c) for j, e in enumerate(row)]


# -- subcommands ---------------------------------------------------------------

def cmd_check(cfg: RunConfig, fam: Family) -> Report:
    doc = {"params": _params_doc(cfg.params), "valid": True,
           "preserves-polynomials": preserves_polynomials_check(fam.operator()).passed}
    return Report(doc, [[k, v] for k, v in doc["params"].items()])


def cmd_weight(cfg: RunConfig, fam: Family) -> Report:
    xs = range(cfg.x_max + 1)
    doc = [{"x": x, "W": fam.weight_profile(x)} for x in xs]
    table = [r for x in xs for r in _mat_rows(x, fam.weight_profile(x))]
    return Report(doc, table)


def cmd_moments(cfg: RunConfig, fam: Family) -> Report:
    doc, table = [], []
    w = fam.weight() if cfg.mode == "certified" else None
    one = MatPoly.identity(2)
    for n in _ns(cfg):
        m = fam.moment_matrix(n)
        entry = {"n": n, "normalized": m}
        if w is not None:
            zn = MatPoly.monomial(n, Mat.identity(2))
            entry["scale"] = w.scale
            entry["series"] = inner_product_series(zn, one, w, cfg.tol)
        doc.append(entry)
        table.extend(_mat_rows(n, m))
    return Report(doc, table)


def cmd_gram(cfg: RunConfig, fam: Family) -> Report:
    polys = gram_schmidt_monic(cfg.n_max, fam.moments)
    doc = [{"n": n, "P": p} for n, p in enumerate(polys)]
    return Report(doc, [r for n, p in enumerate(polys) for r in _poly_rows(n, p)])


def cmd_explicit(cfg: RunConfig, fam: Family) -> Report:
    doc, table = [], []
    for n in _ns(cfg):
        k = fam.kappa(n)
        tilde, nn = fam.tilde_polys(n)
        p = fam.explicit_monic(n)
        doc.append({"n": n, "kappa": {"11": k.k11, "12": k.k12, "21": k.k21, "22": k.k22,
                                      "xi": k.xi, "alpha": k.alpha},
                    "N": nn, "P~": tilde, "P": p, "H": fam.norm_matrix(n)})
        table.extend(_poly_rows(n, p))
    return Report(doc, table)


def cmd_eigen(cfg: RunConfig, fam: Family) -> Report:
    if cfg.n is not None:
        lam = fam.eigenvalue(cfg.n)
        return Report(lam, lam)
    doc = [{"n": n, "Lambda": fam.eigenvalue(n), "lambda~": list(fam.tilde_eigenvalues(n))}
           for n in _ns(cfg)]
    return Report(doc, [r for n in _ns(cfg) for r in _mat_rows(n, fam.eigenvalue(n))])


def cmd_recurrence(cfg: RunConfig, fam: Family) -> Report:
    ns = [cfg.n] if cfg.n is not None else range(1, cfg.n_max + 1)
    doc, table = [], []
    for n in ns:
        a_n, b_n, c_n = fam.recurrence_coeffs(n)
        doc.append({"n": n, "A": a_n, "B": b_n, "C": c_n})
        for name, m in (("A", a_n), ("B", b_n), ("C", c_n)):
            table.extend([[n, name] + r[1:] for r in _mat_rows(n, m)])
    return Report(doc, table)


def cmd_rodrigues(cfg: RunConfig, fam: Family) -> Report:
    doc, table, ok = [], [], True
    for n in _ns(cfg):
        res = fam.rodrigues(n, cfg.form)
        if cfg.form == "corrected":
            matches = res.polynomial == res.leading * fam.explicit_monic(n)
        else:
            shifted = Family(FamilyParams(fam.q, fam.a * fam.q, fam.b, fam.v))
            matches = res.polynomial == res.leading * shifted.explicit_monic(n)
        ok = ok and matches
        doc.append({"n": n, "form": cfg.form, "P_rod": res.polynomial, "L": res.leading,
                    "matches-monic": matches})
        table.extend(_mat_rows(n, res.leading))
    return Report(doc, table, ok)


def cmd_eta(cfg: RunConfig, fam: Family) -> Report:
    doc, table = [], []
    for n in _ns(cfg):
        for row in (1, 2):
            e = fam.eta_representation(n, row)
            doc.append({"n": n, "row": row, "A": e.a, "B": e.b, "C": e.c, "F0": e.f0,
                        "coefficients": e.coefficients, "G_next": e.next_coefficient})
            table.extend([[n, row, k] + list(c.rows[0]) for k, c in enumerate(e.coefficients)])
    return Report(doc, table)


def cmd_symmetry(cfg: RunConfig, fam: Family) -> Report:
    rep = symmetry_check(fam.operator(), fam.weight_profile, cfg.x_max)
    rows = rep.as_list()
    return Report(rows, [[r["equation"], r["x"], r["pass"], r["residual-norm"]] for r in rows],
                  rep.passed)


def cmd_scalar(cfg: RunConfig, fam: Family) -> Report:
    sp = ScalarParams(cfg.params.q, cfg.params.a, cfg.params.b)
    op = lqj_operator(sp)
    doc, table = [], []
    for n in _ns(cfg):
        a_n, c_n = lqj_recurrence(n, sp)
        entry = {"n": n, "p": lqj_poly(n, sp).scalar_coeffs(),
                 "monic": lqj_monic(n, sp).scalar_coeffs(),
                 "moment-ratio": lqj_moment_ratio(n, sp), "norm-ratio": lqj_norm_ratio(n, sp),
                 "A": a_n, "C": c_n, "eigenvalue": lqj_eigenvalue(n, sp),
                 "operator-eigenvalue": extract_eigenvalue(op, lqj_poly(n, sp))[0, 0]}
        doc.append(entry)
        table.append([n, entry["moment-ratio"], entry["norm-ratio"], a_n, c_n, entry["eigenvalue"]])
    return Report(doc, table)


def cmd_verify(cfg: RunConfig, fam: Family) -> Report:
    results = run_suite(fam, cfg.n_max, x_max=cfg.x_max,
                        certified=cfg.mode == "certified", tol=cfg.tol)
    doc = {"params": _params_doc(cfg.params), "n_max": cfg.n_max,
           "checks": [{"check": r.name, "pass": r.passed, "detail": r.detail} for r in results],
           "printed-forms": printed_form_findings(fam, min(cfg.n_max, 3))}
    table = [[r.name, r.passed, r.detail] for r in results]
    return Report(doc, table, all(r.passed for r in results))


def cmd_diagnose_weight(cfg: RunConfig, fam: Family) -> Report:
    diag = fam.diagnose_weight(cfg.x_max, min(cfg.n_max, 3))
    table = [[name, diag[name]["symmetric"], diag[name]["orthogonal"]]
             for name in ("product", "displayed")]
    table.append(["discrepancy-11-x1", diag["discrepancy-11-x1"], diag["discrepancy-matches"]])
    return Report(diag, table, diag["verdict"] == "product")


COMMANDS: dict[str, Callable[[RunConfig, Family], Report]] = {
    "check": cmd_check,
    "weight": cmd_weight,
    "moments": cmd_moments,
    "gram": cmd_gram,
    "explicit": cmd_explicit,
    "eigen": cmd_eigen,
    "recurrence": cmd_recurrence,
    "rodrigues": cmd_rodrigues,
    "eta": cmd_eta,
    "symmetry": cmd_symmetry,
    "scalar": cmd_scalar,
    "verify": cmd_verify,
    "diagnose-weight": cmd_diagnose_weight,
}


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report.document)
    if fmt == "csv":
        return emit_csv(report.table)
    return emit_pretty(report.document) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvqj", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--preset", choices=sorted(PRESETS), default="P1",
                        help="parameter set supplying defaults for --q/--a/--b/--v")
    parser.add_argument("--q", type=_rational)
    parser.add_argument("--a", type=_rational)
    parser.add_argument("--b", type=_rational)
    parser.add_argument("--v", type=_rational)
    parser.add_argument("--nmax", type=int, default=5)
    parser.add_argument("--n", type=int, default=None, help="single degree instead of 0..nmax")
    parser.add_argument("--xmax", type=int, default=20, help="largest lattice index probed")
    parser.add_argument("--mode", choices=("exact", "certified"), default="exact")
    parser.add_argument("--tol", type=Fraction, default=Fraction(1, 10 ** 12))
    parser.add_argument("--form", choices=("corrected", "printed"), default="corrected",
                        help="Rodrigues expression variant")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default="json")
    parser.add_argument("--out", default=None)
    return parser


def make_config(args) -> RunConfig:
    defaults = [GaussRat.parse(s) for s in PRESETS[args.preset]]
    q, a, b, v = (x if x is not None else d
                  for x, d in zip((args.q, args.a, args.b, args.v), defaults))
    if args.nmax < 0 or (args.n is not None and args.n < 0) or args.xmax < 1:
        raise ValueError("degrees must be non-negative and --xmax at least 1")
    if args.mode == "certified" and args.tol <= 0:
        raise ValueError("--tol must be positive")
    return RunConfig(FamilyParams(q, a, b, v), args.nmax, args.n, args.mode, args.tol,
                     args.fmt, args.out, args.xmax, args.form)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
    except (MVQJError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fam = Family(cfg.params)
    try:
        report = COMMANDS[args.command](cfg, fam)
    except MVQJError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
