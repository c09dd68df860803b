"""Root systems of the simple Lie algebras with exact coordinates.

This is the independent side of every check in the package: nothing here
knows about Vogel parameters.  Conventions:

* Bourbaki numbering of simple roots and fundamental weights.
* The invariant form is normalized so that long roots have squared length 2.
* Roots are stored as integer coefficient tuples over the simple roots,
  weights as Dynkin labels (coefficients over the fundamental weights).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

_RANK_MIN = {"A": 1, "B": 2, "C": 2, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class RootSystemError(ValueError):
    pass


class PreconditionError(RootSystemError):
    """A structural operation was asked for on an algebra where it is undefined."""


@dataclass(frozen=True, order=True)
class AlgebraId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family in _RANK_MIN:
            if self.rank < _RANK_MIN[self.family]:
                raise RootSystemError(f"rank {self.rank} out of range for type {self.family}")
        elif self.family in _EXCEPTIONAL:
            if self.rank not in _EXCEPTIONAL[self.family]:
                raise RootSystemError(f"no exceptional algebra {self.family}{self.rank}")
        else:
            raise RootSystemError(f"unknown type tag {self.family!r}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name

    @property
    def classical_name(self) -> str:
        n = self.rank
        return {
            "A": f"sl{n + 1}",
            "B": f"so{2 * n + 1}",
            "C": f"sp{2 * n}",
            "D": f"so{2 * n}",
        }.get(self.family, self.name.lower())

    @property
    def sort_key(self):
        order = "ABCDGFE"
        return (order.index(self.family), self.rank)

    @classmethod
    def parse(cls, text: str) -> "AlgebraId":
        """Accept ``E8``, ``e8``, ``A3``, ``sl4``, ``so8``, ``so7``, ``sp8``, ``g2``..."""
        s = text.strip().replace("_", "").replace("𝔰", "s").lower()
        m = re.fullmatch(r"([abcdefg])(\d+)", s)
        if m:
            return cls(m.group(1).upper(), int(m.group(2)))
        m = re.fullmatch(r"(sl|so|sp)(\d+)", s)
        if not m:
            raise RootSystemError(f"cannot parse algebra name {text!r}")
        kind, n = m.group(1), int(m.group(2))
        if kind == "sl":
            return cls("A", n - 1)
        if kind == "sp":
            if n % 2:
                raise RootSystemError(f"sp{n}: odd size")
            return cls("A", 1) if n == 2 else cls("C", n // 2)
        if n % 2:
            return cls("B", (n - 1) // 2)
        if n == 6:
            return cls("A", 3)
        return cls("D", n // 2)


def _e8_simple():
    h = Fraction(1, 2)
    a1 = [h, -h, -h, -h, -h, -h, -h, h]
    a2 = [1, 1, 0, 0, 0, 0, 0, 0]
    rest = []
    for i in range(1, 7):
        v = [0] * 8
        v[i] = 1
        v[i - 1] = -1
        rest.append(v)
    return [a1, a2] + rest


def _simple_roots_ambient(alg: AlgebraId):
    """Simple roots in an orthonormal ambient basis, plus the form's scale factor."""
    n, f = alg.rank, alg.family

    def e(i, dim):
        v = [0] * dim
        v[i] = 1
        return v

    def diff(i, j, dim):
        v = [0] * dim
        v[i] += 1
        v[j] -= 1
        return v

    if f == "A":
        return [diff(i, i + 1, n + 1) for i in range(n)], Fraction(1)
    if f == "B":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)], Fraction(1)
    if f == "C":
        last = e(n - 1, n)
        last[n - 1] = 2
        return [diff(i, i + 1, n) for i in range(n - 1)] + [last], Fraction(1, 2)
    if f == "D":
        last = [0] * n
        last[n - 2] = last[n - 1] = 1
        return [diff(i, i + 1, n) for i in range(n - 1)] + [last], Fraction(1)
    if f == "G":
        return [[1, -1, 0], [-2, 1, 1]], Fraction(1, 3)
    if f == "F":
        h = Fraction(1, 2)
        return [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]], Fraction(1)
    if f == "E":
        return _e8_simple()[:n], Fraction(1)
    raise RootSystemError(f"unknown family {f}")


def _inverse(mat):
    """Gauss-Jordan inverse over the rationals."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def fmt_weight(labels) -> str:
    """Render Dynkin labels as ``2ω₇−ω₆`` (positive terms first)."""
    sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
    pos, neg = [], []
    for i, c in enumerate(labels, start=1):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else (str(mag) if Fraction(mag).denominator == 1 else f"({mag})")
        term = f"{coef}ω{str(i).translate(sub)}"
        (pos if c > 0 else neg).append(term)
    if not pos and not neg:
        return "0"
    out = "+".join(pos)
    for t in neg:
        out += "−" + t
    return out


@dataclass(frozen=True)
class Cascade:
    """Pairwise orthogonal long roots beta_1 = highest root, beta_2, ...

    ``roots`` are simple-root coefficient tuples; ``weights`` and ``sigmas``
    are Dynkin labels of each beta_i and of the partial sums.
    """

    roots: tuple
    weights: tuple
    sigmas: tuple

    def __len__(self):
        return len(self.roots)


@dataclass(frozen=True)
class GradingDiamond:
    entries: dict  # (i, j) -> dimension, i, j in -2..2
    phi1: tuple
    levels: dict  # (i, j) -> tuple of roots

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class StringDecomposition:
    """Half-integer strings p/2, p/2-1, ..., -p/2 recovered from the Phi_1 values.

    ``sizes`` lists the string lengths (p+1) in peeling order; ``expected``
    holds (v, h, h') read off the root system.
    """

    values: tuple
    sizes: tuple
    expected: tuple
    residual: bool


@dataclass(frozen=True, eq=False)
class RootSystem:
    algebra: AlgebraId
    simple_ambient: tuple
    scale: Fraction
    gram: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_ambient[0])

    # -- basic linear algebra -------------------------------------------------

    @cached_property
    def half_norms(self):
        return tuple(self.gram[i][i] / 2 for i in range(self.rank))

    @cached_property
    def cartan(self):
        n = self.rank
        return tuple(
            tuple(int(2 * self.gram[i][j] / self.gram[j][j]) for j in range(n)) for i in range(n)
        )

    @cached_property
    def weight_gram(self):
        """Gram matrix of the fundamental weights."""
        inv = _inverse(self.cartan)
        d = self.half_norms
        n = self.rank
        return tuple(tuple(inv[i][j] * d[j] for j in range(n)) for i in range(n))

    def root_inner(self, a, b) -> Fraction:
        g = self.gram
        return sum((a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)
                    if a[i] and b[j]), Fraction(0))

    def weight_inner(self, lam, mu) -> Fraction:
        g = self.weight_gram
        n = self.rank
        return sum((lam[i] * g[i][j] * mu[j] for i in range(n) for j in range(n)
                    if lam[i] and mu[j]), Fraction(0))

    def root_to_weight(self, root):
        a = self.cartan
        return tuple(sum(root[i] * a[i][j] for i in range(self.rank)) for j in range(self.rank))

    def ambient(self, root):
        out = [Fraction(0)] * self.ambient_dim
        for c, s in zip(root, self.simple_ambient):
            if c:
                for k, x in enumerate(s):
                    out[k] += c * x
        return tuple(out)

    def norm(self, root) -> Fraction:
        return self.root_inner(root, root)

    def is_long(self, root) -> bool:
        return self.norm(root) == 2

    @staticmethod
    def height(root) -> int:
        return sum(root)

    def coroot_coeffs(self, root):
        """k with (lam, root^vee) = sum_i lam_i k_i for Dynkin labels lam."""
        nr = self.norm(root)
        return tuple(int(root[i] * self.gram[i][i] / nr) for i in range(self.rank))

    def pair(self, lam, root):
        """(lam, root^vee) for a weight given by Dynkin labels."""
        return sum(l * k for l, k in zip(lam, self._coroots[root]))

    def root_pair(self, a, b):
        """a(H_b) = 2(a, b)/(b, b) for two roots."""
        return 2 * self.root_inner(a, b) / self.norm(b)

    # -- roots ----------------------------------------------------------------

    @cached_property
    def positive_roots(self):
        n = self.rank
        a = self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = set()
            for r in layer:
                for j in range(n):
                    p = 0
                    s = list(r)
                    s[j] -= 1
                    while tuple(s) in found:
                        p += 1
                        s[j] -= 1
                    q = p - sum(r[i] * a[i][j] for i in range(n))
                    if q > 0:
                        up = list(r)
                        up[j] += 1
                        up = tuple(up)
                        if up not in found:
                            nxt.add(up)
            found |= nxt
            layer = sorted(nxt)
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    @cached_property
    def _coroots(self):
        return {r: self.coroot_coeffs(r) for r in self.positive_roots}

    @property
    def dim(self) -> int:
        return 2 * len(self.positive_roots) + self.rank

    @cached_property
    def highest_root(self):
        return self.positive_roots[-1]

    @cached_property
    def alpha0(self):
        """Dynkin labels of the highest root."""
        return self.root_to_weight(self.highest_root)

    @cached_property
    def rho(self):
        return (1,) * self.rank

    @cached_property
    def dual_coxeter(self) -> Fraction:
        a0 = self.alpha0
        two_rho = tuple(2 * x for x in self.rho)
        return self.weight_inner(tuple(x + y for x, y in zip(a0, two_rho)), a0) / self.weight_inner(a0, a0)

    def orthogonal_to(self, roots):
        return [r for r in self.positive_roots if all(self.root_inner(r, b) == 0 for b in roots)]

    def components(self, roots):
        """Split a set of positive roots into irreducible (mutually orthogonal) pieces."""
        left = list(roots)
        comps = []
        while left:
            comp = [left.pop(0)]
            grew = True
            while grew:
                grew = False
                for r in list(left):
                    if any(self.root_inner(r, c) != 0 for c in comp):
                        comp.append(r)
                        left.remove(r)
                        grew = True
            comps.append(sorted(comp, key=lambda r: (sum(r), r)))
        return comps

    def component_dual_coxeter(self, comp) -> Fraction:
        """Dual Coxeter number 1 + (rho_comp, theta^vee) of an irreducible subsystem."""
        theta = comp[-1]
        rho_theta = sum((self.root_inner(r, theta) for r in comp), Fraction(0)) / 2
        return 1 + 2 * rho_theta / self.norm(theta)

    @cached_property
    def phi1(self):
        """Positive roots taking the value 1 on the coroot of the highest root."""
        a0 = self.highest_root
        return tuple(r for r in self.positive_roots if self.root_pair(r, a0) == 1)


@lru_cache(maxsize=None)
def build_root_system(alg: AlgebraId) -> RootSystem:
    if isinstance(alg, str):
        alg = AlgebraId.parse(alg)
    simple, scale = _simple_roots_ambient(alg)
    simple = tuple(tuple(Fraction(x) for x in v) for v in simple)
    n = len(simple)
    gram = tuple(
        tuple(scale * sum(x * y for x, y in zip(simple[i], simple[j])) for j in range(n))
        for i in range(n)
    )
    rs = RootSystem(alg, simple, scale, gram)
    if max(gram[i][i] for i in range(n)) != 2:
        raise RootSystemError(f"{alg}: long roots not normalized to length 2")
    return rs


# -- representation-theoretic oracles -------------------------------------------


def _check_weight(rs: RootSystem, lam):
    if len(lam) != rs.rank:
        raise RootSystemError(f"weight {lam} has wrong length for {rs.algebra}")
    for c in lam:
        if Fraction(c).denominator != 1 or c < 0:
            raise RootSystemError(f"weight {fmt_weight(lam)} is not dominant integral")


def weyl_dim(rs: RootSystem, lam) -> int:
    """Weyl dimension formula: product over all positive roots."""
    _check_weight(rs, lam)
    lam = [int(c) for c in lam]
    num, den = 1, 1
    for r in rs.positive_roots:
        k = rs._coroots[r]
        s = sum(k)
        num *= s + sum(l * x for l, x in zip(lam, k))
        den *= s
    d, rem = divmod(num, den)
    if rem:
        raise RootSystemError("Weyl product is not an integer")
    return d


def casimir_eigenvalue(rs: RootSystem, lam) -> Fraction:
    """(lam + 2 rho, lam) in the long-roots-have-length-2 normalization."""
    shifted = tuple(c + 2 * r for c, r in zip(lam, rs.rho))
    return rs.weight_inner(shifted, lam)


def _cascade_candidates(rs: RootSystem, chosen):
    cands = []
    for comp in rs.components(rs.orthogonal_to(chosen)):
        top = comp[-1]
        if rs.is_long(top):
            cands.append(top)
    # higher first; equal heights prefer weight on later Dynkin nodes
    cands.sort(key=lambda r: (sum(r), tuple(reversed(r))), reverse=True)
    return cands


@lru_cache(maxsize=None)
def _cascade(rs: RootSystem, max_l):
    first = rs.highest_root
    best = [(first,)]

    def dfs(chosen, sigma):
        if len(chosen) > len(best[0]):
            best[0] = chosen
        if max_l is not None and len(chosen) >= max_l:
            return
        if len(best[0]) == rs.rank or (max_l is not None and len(best[0]) >= max_l):
            return
        for c in _cascade_candidates(rs, chosen):
            s2 = tuple(x + y for x, y in zip(sigma, rs.root_to_weight(c)))
            if all(x >= 0 for x in s2):
                dfs(chosen + (c,), s2)

    dfs((first,), rs.root_to_weight(first))
    roots = best[0]
    weights = tuple(rs.root_to_weight(r) for r in roots)
    sigmas, acc = [], (0,) * rs.rank
    for w in weights:
        acc = tuple(x + y for x, y in zip(acc, w))
        sigmas.append(acc)
    return Cascade(roots, weights, tuple(sigmas))


def orthogonal_cascade(rs: RootSystem, max_l: int | None = None) -> Cascade:
    """Longest chain of orthogonal long roots with dominant partial sums.

    At each step the candidates are the highest roots of the irreducible
    pieces of the subsystem orthogonal to the roots chosen so far.  Higher
    candidates are tried first and the search backtracks when a partial sum
    stops being dominant; the first chain of maximal length wins.
    """
    if max_l is not None and max_l < 1:
        return Cascade((), (), ())
    return _cascade(rs, max_l)


def grading_diamond(rs: RootSystem) -> GradingDiamond:
    """Double grading by the coroots of the first two cascade roots."""
    if rs.rank < 3:
        raise PreconditionError(f"{rs.algebra}: rank < 3")
    cas = orthogonal_cascade(rs, 2)
    if len(cas) < 2:
        raise PreconditionError(f"{rs.algebra}: cascade too short")
    b1, b2 = cas.roots
    entries: dict = {(0, 0): rs.rank}
    levels: dict = {}
    for r in rs.positive_roots:
        for sgn in (1, -1):
            root = tuple(sgn * x for x in r)
            i, j = rs.root_pair(root, b1), rs.root_pair(root, b2)
            if abs(i) > 2 or abs(j) > 2:
                raise RootSystemError(f"{rs.algebra}: grading degree out of range")
            key = (int(i), int(j))
            entries[key] = entries.get(key, 0) + 1
            levels.setdefault(key, []).append(root)
    return GradingDiamond(entries, rs.phi1, {k: tuple(v) for k, v in levels.items()})


def alpha_tilde_component(rs: RootSystem):
    """Irreducible piece of the centralizer subsystem that contains the second cascade root."""
    cas = orthogonal_cascade(rs, 2)
    if len(cas) < 2:
        raise PreconditionError(f"{rs.algebra}: cascade too short")
    b2 = cas.roots[1]
    for comp in rs.components(rs.orthogonal_to([rs.highest_root])):
        if b2 in comp:
            return comp
    raise RootSystemError("second cascade root not in the centralizer")  # pragma: no cover


def phi1_string_decomposition(rs: RootSystem) -> StringDecomposition:
    """Peel the values (rho, b) - (1+v)/2, b in Phi_1, into centred strings of step 1.

    With long roots of length 2 these are the heights of Phi_1 shifted to be
    symmetric about zero.  The string lengths should be v, h and h'.
    """
    v = Fraction(len(rs.phi1), 2)
    h = rs.component_dual_coxeter(alpha_tilde_component(rs))
    hp = v - h
    if hp < 0:
        raise PreconditionError(f"{rs.algebra}: h' = {hp} < 0, not literally decomposable")
    rho = rs.rho
    values = sorted(
        (Fraction(rs.pair(rho, r) * rs.norm(r), 2) - (1 + v) / 2 for r in rs.phi1),
        reverse=True,
    )
    pool = list(values)
    sizes = []
    residual = False
    while pool:
        top = pool[0]
        p = 2 * top
        if p.denominator != 1 or p < 0:
            residual = True
            break
        string = [top - x for x in range(int(p) + 1)]
        try:
            for s in string:
                pool.remove(s)
        except ValueError:
            residual = True
            break
        sizes.append(int(p) + 1)
    return StringDecomposition(tuple(values), tuple(sizes), (v, h, hp), residual)


def phi_level_counts(rs: RootSystem, l: int):
    """(#{g > 0 : sum_i g(H_i) = 1}, #{... = 2}), H_i the coroots of the first l cascade roots."""
    cas = orthogonal_cascade(rs, l)
    if len(cas) < l:
        raise PreconditionError(f"{rs.algebra}: cascade shorter than {l}")
    c1 = c2 = 0
    for r in rs.positive_roots:
        x = sum(rs.root_pair(r, b) for b in cas.roots[:l])
        if x > 2:
            raise RootSystemError(f"{rs.algebra}: level {x} > 2 for the first {l} cascade roots")
        c1 += x == 1
        c2 += x == 2
    return c1, c2


def level_bound_violations(rs: RootSystem, l: int):
    """Positive roots with all cascade degrees >= 0 but total degree > 2."""
    cas = orthogonal_cascade(rs, l)
    if len(cas) < l:
        raise PreconditionError(f"{rs.algebra}: cascade shorter than {l}")
    bad = []
    for r in rs.positive_roots:
        degs = [rs.root_pair(r, b) for b in cas.roots[:l]]
        if all(d >= 0 for d in degs) and sum(degs) > 2:
            bad.append(r)
    return bad


def highest_orthogonal_root_phi(rs: RootSystem):
    """Highest long root orthogonal to the first two cascade roots."""
    cas = orthogonal_cascade(rs, 2)
    if len(cas) < 2:
        raise PreconditionError(f"{rs.algebra}: no root orthogonal to the highest root")
    cands = [r for r in rs.orthogonal_to(cas.roots) if rs.is_long(r)]
    if not cands:
        raise PreconditionError(f"{rs.algebra}: no long root orthogonal to both")
    return max(cands, key=lambda r: (sum(r), tuple(reversed(r))))


def sum_of(*weights):
    return tuple(sum(c) for c in zip(*weights))


def scale_weight(k, lam):
    return tuple(k * c for c in lam)

