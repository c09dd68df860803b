"""Cross-check the universal formulas against the root-system oracle.

Each check produces one :class:`CheckResult`.  When a formula is indeterminate
at the catalog point we retry along the embedding's own line (``mode="line"``);
if that also fails the result is ``skipped-indeterminate``.  Nothing is
dropped: skips are results too.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import vogel
from .catalog import TableLookupError, VogelEmbedding, default_grid, table_entry
from .exactnum import fmt
from .rootsys import (
    PreconditionError,
    RootSystemError,
    alpha_tilde_component,
    build_root_system,
    casimir_eigenvalue,
    fmt_weight,
    grading_diamond,
    highest_orthogonal_root_phi,
    level_bound_violations,
    orthogonal_cascade,
    phi1_string_decomposition,
    phi_level_counts,
    scale_weight,
    sum_of,
    weyl_dim,
)
from .vogel import FormulaValue, Line, VogelPoint

PASS, FAIL = "pass", "fail"
SKIP_INDET, SKIP_PRE = "skipped-indeterminate", "skipped-precondition"
STATUSES = (PASS, FAIL, SKIP_INDET, SKIP_PRE)

SUITES = ("cartan", "yk", "mixed", "yl", "casimir", "structural")


@dataclass(frozen=True)
class CheckResult:
    check: str
    embedding: str
    params: tuple = ()  # sorted (name, value) pairs
    expected: FormulaValue | None = None
    actual: object = None
    status: str = PASS
    mode: str = "point"
    note: str = ""
    variant: str | None = None  # for flagged table rows: the reading that matched

    @property
    def sort_key(self):
        return (self.check, self.embedding, tuple((k, str(v)) for k, v in self.params))

    def to_json(self):
        exp = None
        if self.expected is not None:
            exp = {"value": fmt(self.expected.value) if self.expected.determinate else None,
                   "indeterminate": self.expected.indeterminate}
        act = self.actual
        if isinstance(act, (int, Fraction)) and not isinstance(act, bool):
            act = fmt(act)
        d = {"check": self.check, "embedding": self.embedding, "params": dict(self.params),
             "expected": exp, "actual": act, "status": self.status, "mode": self.mode}
        if self.note:
            d["note"] = self.note
        if self.variant:
            d["variant"] = self.variant
        return d


def _params(**kw):
    return tuple(sorted((k, v) for k, v in kw.items() if v is not None))


def _compare(check, emb, params, expected: FormulaValue, actual, mode="point", note="", variant=None,
             explain=None):
    """Pass/fail at the point.  Along a line a mismatch is not a failure: the
    formula makes no claim at an indeterminate point, so it is reported as a
    skip with the line value (and ``explain(value)`` if given) in the note."""
    if not expected.determinate:
        status = SKIP_INDET
    elif expected.value == actual:
        status = PASS
    elif mode == "line":
        status = SKIP_INDET
        extra = explain(expected.value) if explain else ""
        note = "; ".join(x for x in (note, f"line value {fmt(expected.value)} differs from the oracle", extra) if x)
    else:
        status = FAIL
    return CheckResult(check, emb.id, params, expected, actual, status, mode, note, variant)


def _diagram_images(rs, lam, triality=False):
    """Images of a weight under the type-D diagram symmetries.

    Only the half-spin swap unless ``triality`` (so8 seen from the exceptional line).
    """
    alg = rs.algebra
    if alg.family != "D":
        return {tuple(lam)}
    n = alg.rank
    perms = [list(range(n))]
    swap = list(range(n))
    swap[n - 2], swap[n - 1] = n - 1, n - 2
    perms.append(swap)
    if n == 4 and triality:
        from itertools import permutations
        perms = []
        for a, b, c in permutations((0, 2, 3)):
            perm = [0, 1, 2, 3]
            perm[0], perm[2], perm[3] = a, b, c
            perms.append(perm)
    return {tuple(lam[perm[i]] for i in range(n)) for perm in perms}


def _orbit_note(rs, lam, triality=False):
    def explain(value):
        images = _diagram_images(rs, lam, triality)
        if len(images) > 1 and value == sum(weyl_dim(rs, w) for w in images):
            return f"equals the sum over the {len(images)} diagram-symmetry images of the weight"
        return ""
    return explain


def _skip(check, emb, params, note, status=SKIP_PRE):
    return CheckResult(check, emb.id, params, None, None, status, "point", note)


def _swap_line(line: Line) -> Line:
    b = line._base
    d = line.direction
    return Line(line.name + "(β↔γ)", (b[0], b[2], b[1]), (d[0], d[2], d[1]))


def _evaluate(point: VogelPoint, line: Line, s0, point_fn, line_product):
    """(FormulaValue, mode, note): point value, else the value along ``line``."""
    v = point_fn(point)
    if v.determinate or line_product is None:
        return v, "point", ""
    w = line.evaluate(line_product, s0)
    return w, "line", f"at the point: {v.indeterminate}"


# -- orientation ---------------------------------------------------------------------


def root_system_beta(rs) -> Fraction | None:
    """β read off the root system: v − h + 2, with h from the component of the second cascade root."""
    try:
        comp = alpha_tilde_component(rs)
    except PreconditionError:
        return None
    v = Fraction(len(rs.phi1), 2)
    return v - rs.component_dual_coxeter(comp) + 2


def oriented(emb: VogelEmbedding, rs):
    """Point and line with β matched to the cascade's second root.

    For so5 and so7 the long-root cascade lands in the sl2 factor, which
    corresponds to the γ slot; there we swap β and γ.  Returns None when
    neither parameter matches.
    """
    b = root_system_beta(rs)
    p, line = emb.point, emb.vogel_line
    if b is None or b == p.beta:
        return p, line, False
    if b == p.gamma:
        return p.swapped(1, 2), _swap_line(line), True
    return None


# -- suites ------------------------------------------------------------------------------


def check_cartan_powers(emb: VogelEmbedding, k_max: int = 6):
    rs = build_root_system(emb.algebra)
    out = []
    for k in range(k_max + 1):
        exp, mode, note = _evaluate(emb.point, emb.vogel_line, emb.param,
                                    lambda p: vogel.cartan_power_dim(p, k),
                                    lambda: vogel.cartan_power_product(k))
        out.append(_compare("cartan-power", emb, _params(k=k), exp,
                            weyl_dim(rs, scale_weight(k, rs.alpha0)), mode, note))
    exp = vogel.dim_g(emb.point)
    out.append(_compare("dim-g", emb, (), exp, weyl_dim(rs, rs.alpha0)))
    return out


def check_Yk_identifications(emb: VogelEmbedding, k_max: int | None = None):
    """Formula value of Y_k(β), Y_k(γ) against the signed oracle dimension of the table entry."""
    rs = build_root_system(emb.algebra)
    out = []
    if k_max is None:
        k_max = 2 * emb.algebra.rank + 5
    for slot in ("beta", "gamma"):
        for k in range(k_max + 1):
            params = _params(slot=slot, k=k)
            try:
                entry = table_entry(emb, slot, k)
            except TableLookupError as e:
                out.append(_skip("yk-table", emb, params, str(e)))
                break
            exp, mode, note = _evaluate(emb.point, emb.vogel_line, emb.param,
                                        lambda p: vogel.dim_Yk(p, slot, k),
                                        lambda: vogel.dim_Yk_product(slot, k))
            printed = entry.module.dimension(rs)
            variant = None
            actual = printed
            if entry.flag and exp.determinate and exp.value != printed:
                hits = [lab for lab, m in entry.variants.items() if m.dimension(rs) == exp.value]
                if len(hits) == 1:
                    variant = hits[0]
                    actual = entry.variants[variant].dimension(rs)
                    note = (note + "; " if note else "") + \
                        f"printed entry {entry.printed} gives {printed}; flagged row"
            res = _compare("yk-table", emb, params, exp, actual, mode, note, variant)
            out.append(res)
    if emb.algebra.name == "D4":
        out.extend(_so8_split(emb))
    return out


# dimensions quoted for the two lines through so8
SO8_SPLIT = {"EXC": {"beta": 105, "gamma": 0}, "SO": {"beta": 70, "gamma": 35}}


def _so8_split(emb: VogelEmbedding):
    out = []
    for slot, want in SO8_SPLIT[emb.line].items():
        at_point = vogel.dim_Y2(emb.point, slot)
        exp = vogel.along_line(emb.vogel_line, emb.param, "y2", slot)
        out.append(_compare("so8-split", emb, _params(slot=slot), exp, want, "line",
                            f"at the point: {at_point}"))
    return out


def _sigma2(rs):
    cas = orthogonal_cascade(rs, 2)
    return cas.sigmas[1] if len(cas) >= 2 else None


def check_mixed(emb: VogelEmbedding, k_max: int = 3, l_max: int = 3):
    """Mixed Cartan-product dimensions against Weyl on k·α0 + l·(α0 + ᾱ)."""
    rs = build_root_system(emb.algebra)
    out = []
    all_params = [(k, l) for k in range(k_max + 1) for l in range(l_max + 1)]
    if emb.point.gamma.denominator != 1:
        return [_skip("mixed", emb, _params(k=k, l=l), "non-integer γ") for k, l in all_params]
    sig2 = _sigma2(rs)
    ori = oriented(emb, rs)
    for k, l in all_params:
        params = _params(k=k, l=l)
        if l > 0 and sig2 is None:
            out.append(_skip("mixed", emb, params, "cascade shorter than 2"))
            continue
        if ori is None:
            out.append(_skip("mixed", emb, params, "β not matched by the root system"))
            continue
        p, line, swapped = ori
        weight = sum_of(scale_weight(k, rs.alpha0), scale_weight(l, sig2)) if l else scale_weight(k, rs.alpha0)
        exp, mode, note = _evaluate(p, line, emb.param, lambda q: vogel.mixed_dim(q, k, l),
                                    lambda: vogel.mixed_product(k, l))
        if swapped:
            note = (note + "; " if note else "") + "β and γ swapped"
        out.append(_compare("mixed", emb, params, exp, weyl_dim(rs, weight), mode, note,
                            explain=_orbit_note(rs, weight, emb.line == "EXC")))
    return out


def check_yl_beta_powers(emb: VogelEmbedding, l_max: int = 3, k_max: int = 3):
    rs = build_root_system(emb.algebra)
    cas = orthogonal_cascade(rs, l_max)
    ori = oriented(emb, rs)
    out = []
    for l in range(1, l_max + 1):
        for k in range(k_max + 1):
            params = _params(l=l, k=k)
            if l > len(cas):
                out.append(_skip("yl-beta", emb, params, f"cascade length {len(cas)}"))
                continue
            if ori is None:
                out.append(_skip("yl-beta", emb, params, "β not matched by the root system"))
                continue
            p, line, swapped = ori
            exp, mode, note = _evaluate(p, line, emb.param, lambda q: vogel.yl_beta_power_dim(q, l, k),
                                        lambda: vogel.yl_beta_power_product(l, k))
            if swapped:
                note = (note + "; " if note else "") + "β and γ swapped"
            weight = scale_weight(k, cas.sigmas[l - 1])
            out.append(_compare("yl-beta", emb, params, exp, weyl_dim(rs, weight), mode, note,
                                explain=_orbit_note(rs, weight, emb.line == "EXC")))
    return out


def check_casimirs(emb: VogelEmbedding, k_max: int = 4):
    """2kt − k(k−1)x against (λ+2ρ, λ) rescaled so the adjoint gives 2t."""
    rs = build_root_system(emb.algebra)
    p = emb.point
    scale = 2 * p.t / casimir_eigenvalue(rs, rs.alpha0)
    out = []
    for k in range(k_max + 1):
        actual = casimir_eigenvalue(rs, scale_weight(k, rs.alpha0)) * scale
        exp = FormulaValue(value=vogel.casimir_formula(p, "alpha", k))
        out.append(_compare("casimir", emb, _params(slot="alpha", k=k), exp, actual))
    cas = orthogonal_cascade(rs, k_max)
    ori = oriented(emb, rs)
    for k in range(1, len(cas) + 1):
        params = _params(slot="beta", k=k)
        if ori is None:
            out.append(_skip("casimir", emb, params, "β not matched by the root system"))
            continue
        q, _, swapped = ori
        actual = casimir_eigenvalue(rs, cas.sigmas[k - 1]) * scale
        exp = FormulaValue(value=vogel.casimir_formula(q, "beta", k))
        out.append(_compare("casimir", emb, params, exp, actual, note="β and γ swapped" if swapped else ""))
    # the two S^2 eigenvalues in the normalization where the adjoint has eigenvalue 1
    if emb.point.alpha == -2:
        v = p.t - 2
        killing = 1 / casimir_eigenvalue(rs, rs.alpha0)
        out.append(_compare("casimir-normalized", emb, _params(module="Y2(alpha)"),
                            FormulaValue(value=2 * (v + 3) / (v + 2)),
                            casimir_eigenvalue(rs, scale_weight(2, rs.alpha0)) * killing))
        if len(cas) >= 2 and ori is not None:
            q = ori[0]
            h = q.gamma - 2
            out.append(_compare("casimir-normalized", emb, _params(module="Y2(beta)"),
                                FormulaValue(value=(v + h + 2) / (v + 2)),
                                casimir_eigenvalue(rs, cas.sigmas[1]) * killing))
    return out


def _fv(x) -> FormulaValue:
    return FormulaValue(value=Fraction(x))


def check_structural(emb: VogelEmbedding, l_max: int = 3):
    rs = build_root_system(emb.algebra)
    p = emb.point
    out = []

    def add(check, expected, actual, params=(), note=""):
        out.append(_compare(check, emb, params, expected if isinstance(expected, FormulaValue) else _fv(expected),
                            actual, note=note))

    # Phi_1 size and the dual Coxeter number
    add("phi1-count", 2 * rs.dual_coxeter - 4, len(rs.phi1), note="2ȟ−4")
    add("dual-coxeter", p.t, rs.dual_coxeter, note="t at α=−2")
    add("d(h,h')", vogel.d_of_h_hprime(p.gamma - 2, p.beta - 2), rs.dim)

    ori = oriented(emb, rs)
    cas2 = orthogonal_cascade(rs, 2)
    if len(cas2) < 2:
        for name in ("diamond", "z2-block", "cor-beta-count", "dim-h", "h-dual-coxeter"):
            out.append(_skip(name, emb, (), "cascade shorter than 2"))
    elif ori is None:
        out.append(_skip("diamond", emb, (), "β not matched by the root system"))
    else:
        q, _, swapped = ori
        note = "β and γ swapped" if swapped else ""
        b, g = q.beta, q.gamma
        # centralizer of the highest root
        orth = rs.orthogonal_to([rs.highest_root])
        comp = alpha_tilde_component(rs)
        if len(comp) == len(orth) and _subsystem_rank(comp) == rs.rank - 1:
            add("dim-h", vogel.dim_h_formula(q), 2 * len(orth) + rs.rank - 1, note=note)
        else:
            out.append(_skip("dim-h", emb, (), "centralizer of the highest root is not simple"))
        add("h-dual-coxeter", g - 2, rs.component_dual_coxeter(comp), note=note)
        # roots theta in Phi_1 with alpha~ + theta a root
        at = cas2.roots[1]
        roots = set(rs.positive_roots)
        count = sum(1 for th in rs.phi1 if tuple(x + y for x, y in zip(at, th)) in roots)
        add("cor-beta-count", b, count, note=note)
        try:
            dia = grading_diamond(rs)
        except PreconditionError as e:
            out.append(_skip("diamond", emb, (), str(e)))
        else:
            pattern = {(2, 0): 1, (-2, 0): 1, (0, 2): 1, (0, -2): 1}
            for ij in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                pattern[ij] = b
            for ij in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                pattern[ij] = 2 * g - 8
            for ij, want in sorted(pattern.items()):
                add("diamond", want, dia[ij], _params(i=ij[0], j=ij[1]), note)
            add("diamond", rs.dim, dia.total, _params(i="sum"), note)
            block = dia[(1, 0)] + dia[(-1, 0)] + dia[(0, 1)] + dia[(0, -1)]
            add("z2-block", 8 * g - 32, block, note=note)

    # three strings
    try:
        sd = phi1_string_decomposition(rs)
    except PreconditionError as e:
        out.append(_skip("strings", emb, (), str(e)))
    else:
        if p.beta < 2 or p.gamma < 2:
            out.append(_skip("strings", emb, (), "h′ < 0 at this point"))
        else:
            v, h, hp = p.t - 2, p.gamma - 2, p.beta - 2
            want = sorted(x for x in (v, h, hp) if x > 0)
            got = sorted(Fraction(s) for s in sd.sizes)
            status_val = 1 if (not sd.residual and want == got) else 0
            note = f"sizes {[fmt(x) for x in got]}; expected {[fmt(x) for x in want]}"
            add("strings", 1, status_val, note=note)

    # level counts and the level bound along the cascade
    cas = orthogonal_cascade(rs, l_max)
    for l in range(1, l_max + 1):
        params = _params(l=l)
        if l > len(cas):
            out.append(_skip("phi-levels", emb, params, f"cascade length {len(cas)}"))
            continue
        try:
            c1, c2 = phi_level_counts(rs, l)
        except RootSystemError as e:
            out.append(CheckResult("phi-levels", emb.id, params, None, None, FAIL, note=str(e)))
            continue
        bad = level_bound_violations(rs, l)
        add("level-bound", 0, len(bad), params)
        if ori is None:
            continue
        q = ori[0]
        b, g = q.beta, q.gamma
        add("phi-levels", 2 * l * (g + 2 * b - 4 - b * l), c1, _params(l=l, i=1))
        add("phi-levels", b * l * (l - 1) / 2 + l, c2, _params(l=l, i=2))
    if ori is not None:
        b = ori[0].beta
        for i in range(1, len(cas)):
            diff = tuple(x - y for x, y in zip(cas.roots[i - 1], cas.roots[i]))
            two_rho_diff = 2 * rs.root_inner(_rho_root(rs), diff)
            add("cascade-height-step", b * rs.norm(rs.highest_root), two_rho_diff, _params(i=i))

    # height of phi: only where the centralizer is simple and V fundamental
    if emb.algebra.family == "E":
        phi = highest_orthogonal_root_phi(rs)
        hp = (ori[0] if ori else p).beta - 2
        add("phi-height", (hp - 1) * rs.norm(rs.highest_root), 2 * rs.root_inner(_rho_root(rs), phi),
            note=fmt_weight(rs.root_to_weight(phi)))
    return out


def _subsystem_rank(roots) -> int:
    """Number of simple roots of a closed positive subsystem (given in simple-root coordinates)."""
    pool = set(roots)
    simple = [r for r in roots
              if not any(tuple(x - y for x, y in zip(r, b)) in pool for b in roots if b != r)]
    return len(simple)


def _rho_root(rs):
    """ρ in simple-root coordinates."""
    return tuple(sum(Fraction(r[i]) for r in rs.positive_roots) / 2 for i in range(rs.rank))


# -- running ---------------------------------------------------------------------------


_SUITE_FUNCS = {
    "cartan": lambda e, o: check_cartan_powers(e, o["k_max"]),
    "yk": lambda e, o: check_Yk_identifications(e),
    "mixed": lambda e, o: check_mixed(e, min(o["k_max"], 3), o["l_max"]),
    "yl": lambda e, o: check_yl_beta_powers(e, o["l_max"], min(o["k_max"], 3)),
    "casimir": lambda e, o: check_casimirs(e, min(o["k_max"], 4)),
    "structural": lambda e, o: check_structural(e, o["l_max"]),
}


def _run_unit(unit):
    suite, emb, opts = unit
    return _SUITE_FUNCS[suite](emb, opts)


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def counts(self) -> Counter:
        return Counter(r.status for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps([r.to_json() for r in self.results], ensure_ascii=False, indent=1)

    def summary(self) -> str:
        by_check: dict = {}
        for r in self.results:
            by_check.setdefault(r.check, Counter())[r.status] += 1
        width = max([len(c) for c in by_check] + [5])
        lines = [f"{'check':<{width}}  " + "  ".join(f"{s:>21}" for s in STATUSES)]
        for c in sorted(by_check):
            lines.append(f"{c:<{width}}  " + "  ".join(f"{by_check[c][s]:>21}" for s in STATUSES))
        tot = self.counts
        lines.append(f"{'total':<{width}}  " + "  ".join(f"{tot[s]:>21}" for s in STATUSES))
        line_mode = sum(1 for r in self.results if r.mode == "line" and r.status == PASS)
        flagged = sum(1 for r in self.results if r.variant)
        lines.append(f"passes via line restriction: {line_mode}; flagged table rows resolved: {flagged}")
        for r in self.failures:
            lines.append(f"FAIL {r.check} {r.embedding} {dict(r.params)}: "
                         f"expected {r.expected}, oracle {r.actual} {r.note}")
        return "\n".join(lines)


def run(grid=None, suites=SUITES, k_max: int = 6, l_max: int = 3, jobs: int = 1) -> Report:
    """Run the selected suites over ``grid``; output order does not depend on ``jobs``."""
    grid = default_grid() if grid is None else grid
    for s in suites:
        if s not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {s!r}")
    opts = {"k_max": k_max, "l_max": l_max}
    units = [(s, e, opts) for s in suites for e in grid]
    if jobs <= 1:
        chunks = map(_run_unit, units)
        results = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = [r for chunk in ex.map(_run_unit, units, chunksize=4) for r in chunk]
    results.sort(key=lambda r: r.sort_key)
    return Report(results)
