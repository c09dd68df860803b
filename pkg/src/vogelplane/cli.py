"""Command-line front end.

    vogelplane eval dim-g -2 12 20
    vogelplane verify --suite cartan --max-rank 4
    vogelplane table e8 --what yk-beta
    vogelplane scan --beta 1..12 --gamma 1..20 --formulas dim-g --k-max 1

Every subcommand is a thin wrapper over the library, so results match direct calls.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import vogel
from .catalog import TableLookupError, catalog_grid, embeddings_of, table_entry
from .exactnum import fmt, is_integer, parse_rational
from .rootsys import AlgebraId, RootSystemError, build_root_system, fmt_weight, orthogonal_cascade, weyl_dim
from .verify import SUITES, run
from .vogel import FormulaValue, PreconditionViolation, VogelPoint

EXIT_OK, EXIT_FAIL, EXIT_INDET, EXIT_USAGE = 0, 1, 2, 64

# name -> (takes slot, takes k, takes l)
FORMULAS = {
    "dim-g": (False, False, False),
    "y2": (True, False, False),
    "y3": (True, False, False),
    "yk": (True, True, False),
    "cartan-power": (False, True, False),
    "mixed": (False, True, True),
    "yk-beta-closed": (False, True, False),
    "yl-beta-power": (False, True, True),
    "casimir": (True, True, False),
    "dim-h": (False, False, False),
}


class UsageError(Exception):
    pass


def pretty(text: str) -> str:
    """Typeset minus signs for human-facing output."""
    return text.replace("-", "−")


def evaluate(name: str, p: VogelPoint, slot="alpha", k=1, l=1) -> FormulaValue:
    if name == "dim-g":
        return vogel.dim_g(p)
    if name == "y2":
        return vogel.dim_Y2(p, slot)
    if name == "y3":
        return vogel.dim_Y3(p, slot)
    if name == "yk":
        return vogel.dim_Yk(p, slot, k)
    if name == "cartan-power":
        return vogel.cartan_power_dim(p, k)
    if name == "mixed":
        return vogel.mixed_dim(p, k, l)
    if name == "yk-beta-closed":
        return vogel.yk_beta_closed_dim(p, k)
    if name == "yl-beta-power":
        return vogel.yl_beta_power_dim(p, l, k)
    if name == "casimir":
        try:
            return FormulaValue(value=vogel.casimir_formula(p, slot, k))
        except ZeroDivisionError as e:
            return FormulaValue(indeterminate=str(e))
    if name == "dim-h":
        return vogel.dim_h_formula(p)
    raise UsageError(f"unknown formula {name!r}; choose from {', '.join(FORMULAS)}")


def eval_record(name, p, slot, k, l, fv: FormulaValue) -> dict:
    takes_slot, takes_k, takes_l = FORMULAS[name]
    rec = {"formula": name, "params": p.to_json(),
           "k": k if takes_k else None, "l": l if takes_l else None,
           "value": fmt(fv.value) if fv.determinate else None,
           "indeterminate": fv.indeterminate}
    if takes_slot:
        rec["slot"] = slot
    return rec


# -- output plumbing -----------------------------------------------------------------------


def _emit(args, text: str):
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise UsageError(f"cannot write {args.out}: {e}") from e
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _aligned(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=1) + "\n"


# -- eval ----------------------------------------------------------------------------------


def cmd_eval(args) -> int:
    try:
        p = VogelPoint.of(*(parse_rational(x) for x in (args.alpha, args.beta, args.gamma)))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e)) from e
    if args.formula not in FORMULAS:
        raise UsageError(f"unknown formula {args.formula!r}; choose from {', '.join(FORMULAS)}")
    try:
        fv = evaluate(args.formula, p, args.slot, args.k, args.l)
    except (PreconditionViolation, ValueError) as e:
        raise UsageError(str(e)) from e
    rec = eval_record(args.formula, p, args.slot, args.k, args.l, fv)
    if args.json:
        _emit(args, _dump_json(rec))
    elif args.csv:
        keys = ["formula", "alpha", "beta", "gamma", "k", "l", "value", "indeterminate"]
        row = [rec["formula"], *rec["params"].values(), rec["k"], rec["l"], rec["value"], rec["indeterminate"]]
        _emit(args, _csv_text(keys, [["" if x is None else x for x in row]]))
    else:
        _emit(args, f"{fv}\n")
    return EXIT_OK if fv.determinate else EXIT_INDET


# -- verify --------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    suites = args.suite or ["all"]
    if "all" in suites:
        suites = list(SUITES)
    algebras = None
    if args.algebra:
        try:
            algebras = [AlgebraId.parse(a) for a in args.algebra]
        except RootSystemError as e:
            raise UsageError(str(e)) from e
    if args.max_rank is None:
        grid = catalog_grid(8, sl_max=9, so_max=16, sp_max=16, algebras=algebras)
    else:
        grid = catalog_grid(args.max_rank, algebras=algebras)
    if not grid:
        raise UsageError("the selection leaves no catalog embeddings")
    report = run(grid, suites, k_max=args.k_max, l_max=args.l_max, jobs=args.jobs)
    if args.json:
        _emit(args, report.to_json() + "\n")
    elif args.csv:
        header = ["check", "embedding", "params", "expected", "actual", "status", "mode", "variant", "note"]
        rows = []
        for r in report.results:
            j = r.to_json()
            exp = j["expected"]
            rows.append([r.check, r.embedding, json.dumps(j["params"], ensure_ascii=False, sort_keys=True),
                         "" if exp is None else (exp["value"] or f"indeterminate: {exp['indeterminate']}"),
                         "" if j["actual"] is None else j["actual"], r.status, r.mode,
                         r.variant or "", r.note])
        _emit(args, _csv_text(header, rows))
    else:
        _emit(args, report.summary() + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


# -- table ---------------------------------------------------------------------------------


def _table_yk(alg, slot, k_max):
    header = ["k", "module", "dim", "formula", "note"]
    rows = []
    for emb in embeddings_of(alg):
        if emb.line == "F3":
            continue
        rs = build_root_system(alg)
        top = k_max if k_max is not None else (7 if emb.line == "EXC" else 2 * alg.rank + 4)
        for k in range(top + 1):
            try:
                entry = table_entry(emb, slot, k)
            except TableLookupError:
                break
            fv = vogel.dim_Yk(emb.point, slot, k)
            if not fv.determinate:
                fv = emb.vogel_line.evaluate(lambda: vogel.dim_Yk_product(slot, k), emb.param)
                shown = f"{fmt(fv.value)} (along {emb.tag})" if fv.determinate else str(fv)
            else:
                shown = fmt(fv.value)
            note = f"{emb.tag}; flagged: {entry.flag}" if entry.flag else emb.tag
            rows.append([k, str(entry.module), entry.module.dimension(rs), shown, note])
    if not rows:
        raise UsageError(f"no Y_k({slot}) table covers {alg.name}")
    return header, rows


def cmd_table(args) -> int:
    try:
        alg = AlgebraId.parse(args.algebra)
    except RootSystemError as e:
        raise UsageError(str(e)) from e
    embs = embeddings_of(alg)
    if not embs:
        raise UsageError(f"{alg.name} is not in the catalog")
    what = args.what
    if what in ("yk-beta", "yk-gamma"):
        header, rows = _table_yk(alg, what[3:], args.k_max)
    elif what == "vogel-point":
        header = ["point", "line", "param", "t"]
        rows = [[pretty(str(e.point)), e.tag, pretty(fmt(e.param)), pretty(fmt(e.point.t))] for e in embs]
    elif what == "cascade":
        cas = orthogonal_cascade(build_root_system(alg))
        if not (args.json or args.csv):
            _emit(args, "; ".join(fmt_weight(w) for w in cas.weights) + "\n")
            return EXIT_OK
        header = ["l", "root", "weight", "sigma"]
        rows = [[i + 1, " ".join(map(str, r)), fmt_weight(w), fmt_weight(s)]
                for i, (r, w, s) in enumerate(zip(cas.roots, cas.weights, cas.sigmas))]
    else:
        raise UsageError(f"unknown table {what!r}")
    if args.json:
        _emit(args, _dump_json([dict(zip(header, r)) for r in rows]))
    elif args.csv:
        _emit(args, _csv_text(header, rows))
    else:
        _emit(args, _aligned(header, rows))
    return EXIT_OK


# -- roots / cascade -----------------------------------------------------------------------


def cmd_roots(args) -> int:
    try:
        rs = build_root_system(AlgebraId.parse(args.algebra))
    except RootSystemError as e:
        raise UsageError(str(e)) from e
    roots = sorted(rs.positive_roots, key=lambda r: (sum(r), r))
    if args.json:
        _emit(args, _dump_json({
            "algebra": rs.algebra.name, "rank": rs.rank, "dim": rs.dim,
            "dual_coxeter": fmt(rs.dual_coxeter), "highest_root": list(rs.highest_root),
            "positive_roots": [list(r) for r in roots]}))
        return EXIT_OK
    header = ["height", "root", "long"]
    rows = [[sum(r), " ".join(map(str, r)), "yes" if rs.is_long(r) else "no"] for r in roots]
    if args.csv:
        _emit(args, _csv_text(header, rows))
    else:
        head = (f"{rs.algebra.name}: rank {rs.rank}, dim {rs.dim}, {len(roots)} positive roots, "
                f"dual Coxeter number {fmt(rs.dual_coxeter)}\n")
        _emit(args, head + _aligned(header, rows))
    return EXIT_OK


def cmd_cascade(args) -> int:
    try:
        rs = build_root_system(AlgebraId.parse(args.algebra))
    except RootSystemError as e:
        raise UsageError(str(e)) from e
    cas = orthogonal_cascade(rs)
    header = ["l", "root", "weight", "sigma", "dim V(sigma)"]
    rows = [[i + 1, " ".join(map(str, r)), fmt_weight(w), fmt_weight(s), weyl_dim(rs, s)]
            for i, (r, w, s) in enumerate(zip(cas.roots, cas.weights, cas.sigmas))]
    if args.json:
        _emit(args, _dump_json([dict(zip(header, r)) for r in rows]))
    elif args.csv:
        _emit(args, _csv_text(header, rows))
    else:
        _emit(args, _aligned(header, rows))
    return EXIT_OK


# -- scan ----------------------------------------------------------------------------------


def parse_range(text: str):
    """``"a..b"`` or a single value; endpoints are exact rationals."""
    lo, sep, hi = text.partition("..")
    try:
        a = parse_rational(lo)
        b = parse_rational(hi) if sep else a
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad range {text!r}: {e}") from e
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return a, b


def grid_values(lo: Fraction, hi: Fraction, max_den: int):
    """All rationals in [lo, hi] whose reduced denominator is at most ``max_den``."""
    vals = set()
    for q in range(1, max_den + 1):
        p = -((-lo.numerator * q) // lo.denominator)  # ceil(lo * q)
        while Fraction(p, q) <= hi:
            vals.add(Fraction(p, q))
            p += 1
    return sorted(vals)


def _scan_terms(formulas, k_max):
    terms = []
    for name in formulas:
        takes_slot, takes_k, takes_l = FORMULAS[name]
        slots = vogel.SLOTS if takes_slot else ("alpha",)
        ks = range(0, k_max + 1) if takes_k else (None,)
        ls = range(0, k_max + 1) if takes_l else (None,)
        for slot in slots:
            for k in ks:
                for l in ls:
                    terms.append((name, slot if takes_slot else None, k, l))
    return terms


def _term_label(term):
    name, slot, k, l = term
    bits = [x for x in (slot, None if k is None else f"k={k}", None if l is None else f"l={l}") if x]
    return f"{name}[{','.join(bits)}]" if bits else name


def _scan_row(job):
    beta, gammas, terms = job
    hits = []
    for gamma in gammas:
        try:
            p = VogelPoint.of(-2, beta, gamma)
        except ValueError:
            continue
        values = []
        for name, slot, k, l in terms:
            try:
                fv = evaluate(name, p, slot or "alpha", 1 if k is None else k, 1 if l is None else l)
            except PreconditionViolation:
                break
            if not fv.determinate or not is_integer(fv.value):
                break
            values.append(fv.value)
        else:
            hits.append((gamma, values))
    return beta, hits


def scan(beta_range, gamma_range, max_den: int, formulas, k_max: int, jobs: int = 1):
    """Integral points (β, γ) with α = −2, sorted by (β, γ), plus the column labels."""
    if not formulas:
        raise UsageError("scan needs at least one formula")
    for f in formulas:
        if f not in FORMULAS:
            raise UsageError(f"unknown formula {f!r}")
    if max_den < 1:
        raise UsageError("denominator bound must be at least 1")
    if k_max < 0:
        raise UsageError("k_max must be nonnegative")
    terms = _scan_terms(formulas, k_max)
    gammas = grid_values(*gamma_range, max_den)
    jobs_in = [(b, gammas, terms) for b in grid_values(*beta_range, max_den)]
    if jobs <= 1:
        rows = list(map(_scan_row, jobs_in))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_scan_row, jobs_in, chunksize=8))
    out = [(b, g, vals) for b, hits in rows for g, vals in hits]
    return [_term_label(t) for t in terms], out


def cmd_scan(args) -> int:
    formulas = [f for chunk in args.formulas for f in chunk.split(",") if f] if args.formulas else []
    labels, points = scan(parse_range(args.beta), parse_range(args.gamma), args.den, formulas,
                          args.k_max, args.jobs)
    if args.json:
        recs = [{"params": {"alpha": "-2", "beta": fmt(b), "gamma": fmt(g)},
                 "values": {lab: fmt(v) for lab, v in zip(labels, vals)}} for b, g, vals in points]
        _emit(args, _dump_json(recs))
    else:
        # CSV is the default: scans feed external tools
        rows = [["-2", fmt(b), fmt(g), *map(fmt, vals)] for b, g, vals in points]
        _emit(args, _csv_text(["alpha", "beta", "gamma", *labels], rows))
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand-level default from clobbering a value given before it
    p = argparse.ArgumentParser(add_help=False)
    fmt_group = p.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    fmt_group.add_argument("--csv", action="store_true", default=argparse.SUPPRESS, help="CSV output")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, metavar="N", help="worker processes")
    p.add_argument("--out", default=argparse.SUPPRESS, metavar="PATH", help="write output here")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="vogelplane", parents=[common],
                                 description="Universal dimension formulas on Vogel's plane, checked "
                                             "against root systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate one formula at (α, β, γ)")
    e.add_argument("formula", help=", ".join(FORMULAS))
    e.add_argument("alpha")
    e.add_argument("beta")
    e.add_argument("gamma")
    e.add_argument("--slot", default="alpha", choices=vogel.SLOTS)
    e.add_argument("-k", type=int, default=1)
    e.add_argument("-l", type=int, default=1)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", parents=[common], help="check formulas against the root-system oracle")
    v.add_argument("--suite", action="append", choices=(*SUITES, "all"),
                   help="repeatable; default all")
    v.add_argument("--max-rank", type=int, help="catalog rank bound (default: the full default grid)")
    v.add_argument("--algebra", action="append", help="restrict to these algebras (repeatable)")
    v.add_argument("--k-max", type=int, default=6)
    v.add_argument("--l-max", type=int, default=3)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common], help="print an identification or parameter table")
    t.add_argument("algebra")
    t.add_argument("--what", default="vogel-point", choices=("yk-beta", "yk-gamma", "vogel-point", "cascade"))
    t.add_argument("--k-max", type=int)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("scan", parents=[common], help="find points where the formulas are integers")
    s.add_argument("--beta", required=True, metavar="LO..HI")
    s.add_argument("--gamma", required=True, metavar="LO..HI")
    s.add_argument("--den", type=int, default=1, help="largest denominator on the grid")
    s.add_argument("--formulas", action="append", metavar="F[,F...]")
    s.add_argument("--k-max", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("roots", parents=[common], help="dump the positive roots of an algebra")
    r.add_argument("algebra")
    r.set_defaults(func=cmd_roots)

    c = sub.add_parser("cascade", parents=[common], help="show the orthogonal cascade of an algebra")
    c.add_argument("algebra")
    c.set_defaults(func=cmd_cascade)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("json", False), ("csv", False), ("jobs", 1), ("out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.json and args.csv:
        ap.error("--json and --csv are exclusive")
    if args.jobs < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"vogelplane {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
