"""Where each simple Lie algebra sits in Vogel's plane, and what Y_k(beta), Y_k(gamma) are there.

The parameter rows are small enough to live in code.  The identification
tables are data (``data/tables.yaml``), interpreted here.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import yaml

from .exactnum import Q, fmt
from .rootsys import AlgebraId, RootSystem, build_root_system, fmt_weight, weyl_dim
from .vogel import Line, VogelPoint

LINE_TAGS = ("SP", "SL", "SO", "EXC", "F3")


class TableLookupError(LookupError):
    """No table entry: unsupported line, untabulated algebra, or out-of-table k."""


# -- embeddings ---------------------------------------------------------------------


@dataclass(frozen=True)
class VogelEmbedding:
    algebra: AlgebraId
    line: str
    point: VogelPoint
    param: Fraction  # position of the point on its line
    f3_r: int | None = None  # for the F3 line: the fixed r; param is a

    @property
    def tag(self) -> str:
        return f"F3_{self.f3_r}" if self.line == "F3" else self.line

    @property
    def id(self) -> str:
        return f"{self.algebra.name}@{self.tag}"

    @property
    def vogel_line(self) -> Line:
        return line_for(self.line, self.f3_r)

    def __str__(self):
        return f"{self.algebra.name} [{self.tag}] {self.point}"

    def to_json(self):
        return {"algebra": self.algebra.name, "line": self.tag, "point": self.point.to_json(),
                "param": fmt(self.param)}


def line_for(tag: str, r: int | None = None) -> Line:
    if tag == "SP":  # sp_2n at (-2, 1, n+2)
        return Line("SP", (-2, 1, 2), (0, 0, 1))
    if tag == "SL":  # sl_n at (-2, 2, n)
        return Line("SL", (-2, 2, 0), (0, 0, 1))
    if tag == "SO":  # so_n at (-2, 4, n-4)
        return Line("SO", (-2, 4, -4), (0, 0, 1))
    if tag == "EXC":  # (-2, a+4, 2a+4)
        return Line("EXC", (-2, 4, 4), (0, 1, 2))
    if tag == "F3":  # (-2, a, a(r-2)+4) for fixed r
        if r is None:
            raise ValueError("the F3 line needs r")
        return Line(f"F3_{r}", (-2, 0, 4), (0, 1, r - 2))
    raise ValueError(f"unknown line tag {tag!r}")


def _emb(alg, tag, s, r=None):
    s = Q(s)
    return VogelEmbedding(alg, tag, line_for(tag, r).point(s), s, r)


_EXC_PARAM = {"A2": Fraction(-1), "G2": Fraction(-2, 3), "D4": Fraction(0), "F4": Fraction(1),
              "E6": Fraction(2), "E7": Fraction(4), "E8": Fraction(8)}


def embeddings_of(alg: AlgebraId | str) -> list[VogelEmbedding]:
    """Every row of the parameter table that realizes ``alg``."""
    if isinstance(alg, str):
        alg = AlgebraId.parse(alg)
    f, n = alg.family, alg.rank
    out = []
    if f == "A":
        if n == 1:
            out.append(_emb(alg, "SP", 1))  # sp_2; kept off the SL line, see notes
        else:
            out.append(_emb(alg, "SL", n + 1))
            if (n + 1) % 2 == 0 and (n + 1) // 2 >= 3:
                out.append(_emb(alg, "F3", 2, (n + 1) // 2))
    elif f == "B":
        out.append(_emb(alg, "SO", 2 * n + 1))
    elif f == "C":
        out.append(_emb(alg, "SP", n))
        if n >= 3:
            out.append(_emb(alg, "F3", 1, n))
    elif f == "D":
        out.append(_emb(alg, "SO", 2 * n))
        if n % 2 == 0 and n // 2 >= 3:
            out.append(_emb(alg, "F3", 4, n // 2))
    if alg.name in _EXC_PARAM:
        out.append(_emb(alg, "EXC", _EXC_PARAM[alg.name]))
    if alg.name == "E7":
        out.append(_emb(alg, "F3", 8, 3))
    return out


def catalog_grid(max_rank: int = 8, sl_max: int | None = None, so_max: int | None = None,
                 sp_max: int | None = None, algebras=None) -> list[VogelEmbedding]:
    """All embeddings of A1..A_r, B2.., C2.., D4.., G2, F4, E6, E7, E8 with rank <= max_rank.

    The optional bounds cap sl_n, so_n and sp_2n by matrix size.
    """
    if max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    algs = []
    for n in range(1, max_rank + 1):
        algs.append(AlgebraId("A", n))
    for n in range(2, max_rank + 1):
        algs.append(AlgebraId("B", n))
    for n in range(2, max_rank + 1):
        algs.append(AlgebraId("C", n))
    for n in range(4, max_rank + 1):
        algs.append(AlgebraId("D", n))
    for fam, n in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if n <= max_rank:
            algs.append(AlgebraId(fam, n))

    def keep(a):
        if sl_max is not None and a.family == "A" and a.rank + 1 > sl_max:
            return False
        if so_max is not None and a.family == "B" and 2 * a.rank + 1 > so_max:
            return False
        if so_max is not None and a.family == "D" and 2 * a.rank > so_max:
            return False
        if sp_max is not None and a.family == "C" and 2 * a.rank > sp_max:
            return False
        return algebras is None or a in algebras

    return [e for a in algs if keep(a) for e in embeddings_of(a)]


def default_grid() -> list[VogelEmbedding]:
    return catalog_grid(8, sl_max=9, so_max=16, sp_max=16)


# -- modules ------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedModule:
    """sign * V_weight; ``extra`` holds further summands of a direct sum."""

    weight: tuple | None
    sign: int
    extra: tuple = ()

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if (self.sign == 0) != (self.weight is None):
            raise ValueError("sign 0 goes with the zero module and only with it")
        if self.weight is not None and any(c < 0 for c in self.weight):
            raise ValueError("weight must be dominant")

    @staticmethod
    def zero() -> "SignedModule":
        return SignedModule(None, 0)

    @property
    def summands(self):
        return () if self.weight is None else (self.weight,) + self.extra

    def dimension(self, rs: RootSystem) -> int:
        return self.sign * sum(weyl_dim(rs, w) for w in self.summands)

    def __str__(self):
        if self.sign == 0:
            return "0"
        body = " ⊕ ".join("ℂ" if not any(w) else fmt_weight(w) for w in self.summands)
        if self.sign < 0:
            return f"−({body})" if len(self.summands) > 1 or "+" in body else f"−{body}"
        return body


@dataclass(frozen=True)
class TableEntry:
    table: str
    k: int
    module: SignedModule
    printed: str
    flag: str | None = None
    variants: dict = field(default_factory=dict)  # label -> SignedModule


# -- expression and module parsing ------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.FloorDiv: operator.floordiv}
_CMP = {ast.GtE: operator.ge, ast.LtE: operator.le, ast.Gt: operator.gt, ast.Lt: operator.lt,
        ast.Eq: operator.eq}


def eval_expr(text: str, env: dict) -> int:
    """Integer arithmetic on k, l, m only; anything else is rejected."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMP:
            return _CMP[type(node.ops[0])](ev(node.left), ev(node.comparators[0]))
        raise ValueError(f"unsupported expression {text!r}")

    return ev(ast.parse(text, mode="eval"))


def k_matches(pattern: str, k: int, env: dict) -> bool:
    pattern = pattern.strip()
    if pattern.startswith(">="):
        return k >= eval_expr(pattern[2:], env)
    if ".." in pattern:
        lo, hi = pattern.split("..")
        return eval_expr(lo, env) <= k <= eval_expr(hi, env)
    return k == eval_expr(pattern, env)


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?w\[(.+)\]$")


def _split_top(text: str, sep: str):
    """Split on ``sep`` outside square brackets."""
    out, depth, cur = [], 0, ""
    for ch in text:
        depth += (ch == "[") - (ch == "]")
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def parse_module(text: str, env: dict, rs: RootSystem) -> SignedModule:
    s = text.strip()
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:].strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1].strip()
    if s == "0":
        return SignedModule.zero()
    weights = []
    for part in s.split("(+)"):
        part = part.strip()
        if part == "C":
            weights.append((0,) * rs.rank)
            continue
        if part == "g":
            weights.append(rs.alpha0)
            continue
        lam = [0] * rs.rank
        for term in _split_top(part, "+"):
            m = _TERM.match(term.strip())
            if not m:
                raise ValueError(f"bad module term {term!r} in {text!r}")
            coef = int(m.group(1) or 1)
            i = eval_expr(m.group(2), env)
            if i == 0:
                continue
            if not 1 <= i <= rs.rank:
                raise TableLookupError(f"ω{i} does not exist for {rs.algebra}")
            lam[i - 1] += coef
        weights.append(tuple(lam))
    return SignedModule(weights[0], sign, tuple(weights[1:]))


# -- table lookup ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def load_tables() -> dict:
    text = resources.files("vogelplane").joinpath("data/tables.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)["tables"]


def _applies(rule, emb: VogelEmbedding) -> bool:
    a = emb.algebra
    return emb.line == rule["line"] and (a.family in rule["types"] or a.name in rule["types"])


def _env(emb: VogelEmbedding, k: int) -> dict:
    l = emb.algebra.rank
    return {"k": k, "l": l, "m": (l + 1) // 2}


def _from_rules(table_id, rules, emb, k, rs) -> TableEntry:
    env = _env(emb, k)
    for rule in rules:
        if "when" in rule and not eval_expr(rule["when"], env):
            continue
        if k_matches(str(rule["k"]), k, env):
            variants = {label: parse_module(txt, env, rs) for label, txt in rule.get("variants", {}).items()}
            return TableEntry(table_id, k, parse_module(rule["module"], env, rs), rule["module"],
                              rule.get("flag"), variants)
    raise TableLookupError(f"table {table_id}: no rule for k={k}")


def _trivial_or_adjoint(k, rs, table_id) -> TableEntry:
    if k == 0:
        return TableEntry(table_id, 0, SignedModule((0,) * rs.rank, 1), "C")
    return TableEntry(table_id, 1, SignedModule(rs.alpha0, 1), "g")


def table_entry(emb: VogelEmbedding, slot: str, k: int) -> TableEntry:
    """The transcribed table entry for Y_k(slot) at ``emb`` (slot beta or gamma)."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if emb.line == "F3":
        raise TableLookupError("the identification tables do not cover the F3 line")
    rs = build_root_system(emb.algebra)
    tables = load_tables()
    if slot == "beta":
        for tid in ("a", "b", "c", "d", "e"):
            t = tables[tid]
            if not _applies(t["applies"], emb):
                continue
            if k <= 1:
                return _trivial_or_adjoint(k, rs, tid)
            if "by_algebra" in t:
                row = t["by_algebra"][emb.algebra.name]
                text = row[k] if k < len(row) else t["beyond"]
                return TableEntry(tid, k, parse_module(text, {}, rs), text)
            if "parity" in t:
                rules = t["parity"]["odd" if emb.algebra.rank % 2 else "even"]
            else:
                rules = t["rules"]
            return _from_rules(tid, rules, emb, k, rs)
        raise TableLookupError(f"no Y_k(β) table lists {emb.algebra.name} on the {emb.tag} line")
    if slot == "gamma":
        t = tables["f"]
        for row in t["rows"]:
            if _applies(row["applies"], emb):
                if k < t["start"]:
                    return _trivial_or_adjoint(k, rs, "f")
                return _from_rules("f", row["rules"], emb, k, rs)
        raise TableLookupError(f"no Y_k(γ) row for {emb.algebra.name} on the {emb.tag} line")
    raise ValueError(f"slot must be beta or gamma, got {slot!r}")


def identify_Yk_beta(emb: VogelEmbedding, k: int) -> SignedModule:
    return table_entry(emb, "beta", k).module


def identify_Yk_gamma(emb: VogelEmbedding, k: int) -> SignedModule:
    return table_entry(emb, "gamma", k).module
