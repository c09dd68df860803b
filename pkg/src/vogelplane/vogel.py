"""Universal dimension and Casimir formulas as exact functions of Vogel parameters.

Every formula is assembled as ``constant * prod(num) / prod(den)`` where each
factor is an affine form in the parameters.  Keeping the factors separate is
what lets us (a) name the factor responsible when a denominator vanishes and
(b) take exact one-sided values along a line through a bad point by counting
vanishing orders, instead of guessing a limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Q, fmt, gen_binomial

VARS = ("α", "β", "γ")
SLOTS = ("alpha", "beta", "gamma")
_SLOT_INDEX = {"alpha": 0, "beta": 1, "gamma": 2, "α": 0, "β": 1, "γ": 2, "a": 0, "b": 1, "g": 2}


class Indeterminate(ArithmeticError):
    """Raised internally when a denominator factor vanishes."""


class PreconditionViolation(ValueError):
    pass


# -- affine forms ----------------------------------------------------------------


@dataclass(frozen=True)
class Lin:
    """Affine form sum(c_v * v) + const over named variables."""

    coeffs: tuple  # ((name, Fraction), ...) in canonical variable order
    const: Fraction = Fraction(0)

    @staticmethod
    def var(name) -> "Lin":
        return Lin(((name, Fraction(1)),))

    @staticmethod
    def num(c) -> "Lin":
        return Lin((), Q(c))

    def _as_dict(self):
        return dict(self.coeffs)

    @staticmethod
    def _build(d, const):
        order = {v: i for i, v in enumerate(VARS + ("h", "h′"))}
        items = tuple(sorted(((k, v) for k, v in d.items() if v != 0), key=lambda kv: order.get(kv[0], 99)))
        return Lin(items, Fraction(const))

    def __add__(self, other):
        if not isinstance(other, Lin):
            other = Lin.num(other)
        d = self._as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return Lin._build(d, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return Lin._build({k: -v for k, v in self.coeffs}, -self.const)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Lin) else Lin.num(-Q(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = Q(c)
        return Lin._build({k: v * c for k, v in self.coeffs}, self.const * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Q(c))

    def __call__(self, env) -> Fraction:
        return sum((v * env[k] for k, v in self.coeffs), self.const)

    def linear_part(self, env) -> Fraction:
        return sum((v * env[k] for k, v in self.coeffs), Fraction(0))

    def __str__(self):
        parts = []
        for k, v in self.coeffs:
            mag = abs(v)
            if mag == 1:
                s = k
            elif mag.numerator == 1:
                s = f"{k}/{mag.denominator}"
            elif mag.denominator == 1:
                s = f"{mag.numerator}{k}"
            else:
                s = f"{mag.numerator}{k}/{mag.denominator}"
            parts.append(("−" if v < 0 else "+") + s)
        if self.const != 0 or not parts:
            parts.append(("−" if self.const < 0 else "+") + fmt(abs(self.const)))
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


@dataclass
class Product:
    """``const * prod(num) / prod(den)`` with affine factors."""

    const: Fraction
    num: list
    den: list

    @staticmethod
    def one():
        return Product(Fraction(1), [], [])

    def mul(self, *factors):
        self.num.extend(factors)
        return self

    def div(self, *factors):
        self.den.extend(factors)
        return self

    def scale(self, c):
        self.const *= Q(c)
        return self

    def times(self, other: "Product"):
        self.const *= other.const
        self.num.extend(other.num)
        self.den.extend(other.den)
        return self

    def over(self, other: "Product"):
        self.const /= other.const
        self.num.extend(other.den)
        self.den.extend(other.num)
        return self

    def evaluate(self, env) -> Fraction:
        dens = []
        for f in self.den:
            x = f(env)
            if x == 0:
                raise Indeterminate(f"({f})=0")
            dens.append(x)
        value = self.const
        for f in self.num:
            value *= f(env)
            if value == 0:
                return Fraction(0)
        for x in dens:
            value /= x
        return value

    def along_line(self, base, direction, s0) -> Fraction:
        """Value at parameter s0 of the restriction to base + s * direction.

        Factors that vanish at s0 contribute their slope; the net vanishing
        order decides between a zero, a finite value and a pole.
        """
        env0 = {k: base[k] + s0 * direction[k] for k in base}
        order = 0
        value = self.const
        for sign, factors in ((1, self.num), (-1, self.den)):
            for f in factors:
                v = f(env0)
                slope = f.linear_part(direction)
                if v != 0:
                    lead = v
                elif slope != 0:
                    lead = slope
                    order += sign
                elif sign > 0:
                    return Fraction(0) if all(g(env0) != 0 or g.linear_part(direction) != 0 for g in self.den) \
                        else _raise(f"({f}) vanishes identically on the line")
                else:
                    raise Indeterminate(f"({f}) vanishes identically on the line")
                value = value * lead if sign > 0 else value / lead
        if order > 0:
            return Fraction(0)
        if order < 0:
            raise Indeterminate("pole along the line")
        return value


def _raise(msg):
    raise Indeterminate(msg)


def binom(x: Lin, y: int, over: Lin | None = None) -> Product:
    """binom(y + x/over, y) = prod_{j=1..y} (j + x/over) / y!, as affine factors."""
    p = Product(Fraction(1, math.factorial(y)), [], [])
    for j in range(1, y + 1):
        if over is None:
            p.num.append(x + j)
        else:
            p.num.append(over * j + x)
            p.den.append(over)
    return p


# -- points and values -----------------------------------------------------------


@dataclass(frozen=True)
class VogelPoint:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.alpha == self.beta == self.gamma == 0:
            raise ValueError("the origin is not a point of Vogel's plane")

    @classmethod
    def of(cls, a, b, c) -> "VogelPoint":
        return cls(Q(a), Q(b), Q(c))

    @property
    def t(self) -> Fraction:
        return self.alpha + self.beta + self.gamma

    @property
    def env(self):
        return {"α": self.alpha, "β": self.beta, "γ": self.gamma}

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)

    def scaled(self, lam) -> "VogelPoint":
        lam = Q(lam)
        return VogelPoint(self.alpha * lam, self.beta * lam, self.gamma * lam)

    def swapped(self, i: int, j: int) -> "VogelPoint":
        v = list(self.as_tuple())
        v[i], v[j] = v[j], v[i]
        return VogelPoint(*v)

    def __str__(self):
        return "(" + ", ".join(fmt(x) for x in self.as_tuple()) + ")"

    def to_json(self):
        return {"alpha": fmt(self.alpha), "beta": fmt(self.beta), "gamma": fmt(self.gamma)}


@dataclass(frozen=True)
class DerivedParams:
    h: Fraction
    hprime: Fraction
    v: Fraction

    @classmethod
    def from_point(cls, p: VogelPoint) -> "DerivedParams":
        if p.alpha != -2:
            raise PreconditionViolation("h, h′, v are defined in the α = −2 normalization")
        return cls(p.gamma - 2, p.beta - 2, p.t - 2)

    @property
    def dual_coxeter(self) -> Fraction:
        return self.v + 2


@dataclass(frozen=True)
class FormulaValue:
    value: Fraction | None = None
    indeterminate: str | None = None

    def __post_init__(self):
        if (self.value is None) == (self.indeterminate is None):
            raise ValueError("exactly one of value / indeterminate must be set")

    @property
    def determinate(self) -> bool:
        return self.value is not None

    def __str__(self):
        return fmt(self.value) if self.determinate else f"indeterminate: {self.indeterminate}"


def _value(product_fn, env) -> FormulaValue:
    try:
        prod = product_fn()
    except Indeterminate as e:
        return FormulaValue(indeterminate=str(e))
    try:
        return FormulaValue(value=prod.evaluate(env))
    except Indeterminate as e:
        return FormulaValue(indeterminate=str(e))


def slot_index(slot) -> int:
    try:
        return _SLOT_INDEX[slot]
    except KeyError:
        raise ValueError(f"unknown slot {slot!r}; expected alpha, beta or gamma") from None


def _roles(slot):
    """(x, y, z) affine forms: the slot parameter first, the other two after."""
    i = slot_index(slot)
    names = [Lin.var(v) for v in VARS]
    x = names.pop(i)
    return x, names[0], names[1]


_A, _B, _G = (Lin.var(v) for v in VARS)
_T = _A + _B + _G


def _require_normalized(p: VogelPoint):
    if p.alpha != -2:
        raise PreconditionViolation(f"formula is stated for α = −2, got α = {fmt(p.alpha)}")


def _check_k(k, name="k"):
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValueError(f"{name} must be a nonnegative integer")


# -- the formulas ------------------------------------------------------------------


def dim_g_product() -> Product:
    t = _T
    return Product.one().mul(_A - 2 * t, _B - 2 * t, _G - 2 * t).div(_A, _B, _G)


def dim_Y2_product(slot) -> Product:
    x, y, z = _roles(slot)
    t = _T
    return Product(Fraction(-1), [t, y - 2 * t, z - 2 * t, y + t, z + t, 3 * x - 2 * t],
                   [x, x, y, z, x - y, x - z])


def dim_Y3_product(slot) -> Product:
    # overall constant is -1/3: the Cartan cube check (sl3 -> 64, e8 -> 1763125) fixes it
    x, y, z = _roles(slot)
    t = _T
    return Product(
        Fraction(-1, 3),
        [t, x - 2 * t, y - 2 * t, z - 2 * t, y + t, z + t, t + y - x, t + z - x, 5 * x - 2 * t],
        [x, x, x, y, z, x - y, x - z, 2 * x - y, 2 * x - z],
    )


def dim_Yk_product(slot, k: int) -> Product:
    x, y, z = _roles(slot)
    t = _T
    p = Product.one()
    if k == 0:
        return p
    p.mul(t - (k - Fraction(1, 2)) * x).div(t + x / 2)
    p.times(binom(-2 * t - 2 * x, k, over=x))
    p.times(binom(y - 2 * t - x, k, over=x))
    p.times(binom(z - 2 * t - x, k, over=x))
    p.over(binom(-y - x, k, over=x))
    p.over(binom(-z - x, k, over=x))
    return p


def cartan_power_product(k: int) -> Product:
    b, g = _B, _G
    p = Product.one()
    if k == 0:
        return p
    p.mul(b + g - 3 + 2 * k).div(b + g - 3)
    p.times(binom(b + g / 2 - 3, k)).times(binom(g + b / 2 - 3, k)).times(binom(b + g - 4, k))
    p.over(binom(b / 2 - 1, k)).over(binom(g / 2 - 1, k))
    return p


def _c_factor(m: int) -> Product:
    b, g = _B, _G
    if m >= 0:
        return binom(b + g - 4, m).over(binom(g - 3, m))
    p = Product.one()
    for j in range(-m):
        p.mul(g - 3 - j).div(b + g - 4 - j)
    return p


def mixed_product(k: int, l: int, gamma: Fraction | None = None) -> Product:
    """F A(k+l) B(l) C(k+2l) C(k-γ+3)/C(3-γ).

    The last ratio normalizes the value at k=l=0 to 1.  For integer γ it
    telescopes to binom(β-1+k, k), which is what ``gamma=None`` uses (needed
    when γ moves along a line).
    """
    b, g = _B, _G
    p = Product.one()
    if k == 0 and l == 0:
        return p
    p.mul(b + g - 3 + 2 * k + 2 * l, g - 3 + 2 * l, b / 2 + g - 3 + k + 2 * l, b / 2 + k)
    p.div(b + g - 3, g - 3, b / 2 + g - 3, b / 2)
    m = k + l
    p.times(binom(b + g / 2 - 3, m)).times(binom(g + b / 2 - 4, m)).times(binom(g - 3, m))
    p.over(binom(b / 2, m)).over(binom(b - 1, m)).over(binom(g / 2 - 1, m))
    p.times(binom(g - b / 2 - 3, l)).times(binom(g / 2 + b / 2 - 3, l)).times(binom(g - 4, l))
    p.over(binom(b / 2 - 1, l)).over(binom(g / 2 - b / 2 - 1, l))
    p.times(_c_factor(k + 2 * l))
    if gamma is None:
        return p.times(binom(b - 1, k))
    shift = k - gamma + 3
    if shift.denominator != 1:
        raise Indeterminate(f"C-factor argument k−γ+3 = {fmt(shift)} is not an integer")
    return p.times(_c_factor(int(shift))).over(_c_factor(int(shift) - k))


def yk_beta_closed_product(k: int) -> Product:
    b, g = _B, _G
    p = Product.one()
    if k == 0:
        return p
    p.mul(2 * g - (2 * k - 3) * b - 4).div(2 * g - (k - 3) * b - 4)
    for i in range(1, k + 1):
        p.mul(2 * g - (i - 3) * b - 2, 2 * g - (i - 3) * b - 4, g - (i - 3) * b - 4)
        p.div(i * b, (i - 1) * b + 2, g - (i - 1) * b)
    return p


def yl_beta_power_product(l: int, k: int) -> Product:
    b, g = _B, _G
    p = Product.one()
    if k == 0:
        return p
    half = b / 2
    for i in range(1, l + 1):
        p.times(binom(g - (i - 3) * half - 3, 2 * k))
        p.times(binom(g - (l + i - 3) * half - 3, k))
        p.times(binom(g - (l + i - 4) * half - 4, k))
        p.times(binom(g / 2 - (l - i - 2) * half - 3, k))
        p.over(binom(g - (2 * l - i - 3) * half - 4, 2 * k))
        p.over(binom(i * half - 1, k))
        p.over(binom((i - 1) * half, k))
        p.over(binom(g / 2 - (i - 1) * half - 1, k))
    return p


# -- public API ----------------------------------------------------------------------


def dim_g(p: VogelPoint) -> FormulaValue:
    return _value(dim_g_product, p.env)


def dim_Y2(p: VogelPoint, slot="alpha") -> FormulaValue:
    return _value(lambda: dim_Y2_product(slot), p.env)


def dim_Y3(p: VogelPoint, slot="alpha") -> FormulaValue:
    return _value(lambda: dim_Y3_product(slot), p.env)


def dim_Yk(p: VogelPoint, slot="alpha", k: int = 1) -> FormulaValue:
    _check_k(k)
    return _value(lambda: dim_Yk_product(slot, k), p.env)


def cartan_power_dim(p: VogelPoint, k: int) -> FormulaValue:
    _require_normalized(p)
    _check_k(k)
    return _value(lambda: cartan_power_product(k), p.env)


def mixed_dim(p: VogelPoint, k: int, l: int) -> FormulaValue:
    """Dimension of the Cartan product of g^(k) and Y_2(beta)^(l)."""
    _require_normalized(p)
    _check_k(k)
    _check_k(l, "l")
    return _value(lambda: mixed_product(k, l, p.gamma), p.env)


def yk_beta_closed_dim(p: VogelPoint, k: int) -> FormulaValue:
    _require_normalized(p)
    _check_k(k)
    return _value(lambda: yk_beta_closed_product(k), p.env)


def yl_beta_power_dim(p: VogelPoint, l: int, k: int) -> FormulaValue:
    _require_normalized(p)
    if isinstance(l, bool) or not isinstance(l, int) or l < 1:
        raise ValueError("l must be a positive integer")
    _check_k(k)
    return _value(lambda: yl_beta_power_product(l, k), p.env)


def casimir_formula(p: VogelPoint, slot="alpha", k: int = 1) -> Fraction:
    """2kt − k(k−1)·x where x is the parameter in the chosen slot."""
    x = p.as_tuple()[slot_index(slot)]
    return 2 * k * p.t - k * (k - 1) * x


def dim_h_formula(p: VogelPoint) -> FormulaValue:
    """v(2v+1)/(h′+2): the dimension of the centralizer subalgebra."""
    _require_normalized(p)
    v = _T - 2
    return _value(lambda: Product.one().mul(v, 2 * v + 1).div(_B), p.env)


def d_of_h_hprime(h, hprime) -> FormulaValue:
    """(h+h′+3)(2h+h′+2)(h+2h′+2)/((h+2)(h′+2))."""
    H, P = Lin.var("h"), Lin.var("h′")
    prod = Product.one().mul(H + P + 3, 2 * H + P + 2, H + 2 * P + 2).div(H + 2, P + 2)
    return _value(lambda: prod, {"h": Q(h), "h′": Q(hprime)})


def dim_Yk_extended(p: VogelPoint, slot, k: int) -> FormulaValue:
    """dim Y_k for any integer k, including negative k.

    Uses binom(x+k, k) = binom(x+k, x), a polynomial in k when x is a
    nonnegative integer; requires this for all five binomial arguments.
    """
    i = slot_index(slot)
    vals = list(p.as_tuple())
    x = vals.pop(i)
    y, z = vals
    t = p.t
    if x == 0 or t + x / 2 == 0:
        return FormulaValue(indeterminate="slot parameter or t+x/2 vanishes")
    tops = [-2 * t / x - 2, (y - 2 * t) / x - 1, (z - 2 * t) / x - 1]
    bottoms = [-y / x - 1, -z / x - 1]
    for a in tops + bottoms:
        if a.denominator != 1 or a < 0:
            return FormulaValue(indeterminate=f"binomial argument {fmt(a)} is not a nonnegative integer")
    k = Fraction(k)
    num = (t - (k - Fraction(1, 2)) * x)
    for a in tops:
        num *= gen_binomial(k, int(a))
    den = t + x / 2
    for a in bottoms:
        den *= gen_binomial(k, int(a))
    if den == 0:
        return FormulaValue(indeterminate="denominator polynomial vanishes at this k")
    return FormulaValue(value=num / den)


# -- line restriction -----------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """The points base + s * direction of Vogel's plane."""

    name: str
    base: VogelPoint | tuple
    direction: tuple

    def point(self, s) -> VogelPoint:
        s = Q(s)
        b = self._base
        return VogelPoint(*(b[i] + s * Q(self.direction[i]) for i in range(3)))

    @property
    def _base(self):
        return self.base.as_tuple() if isinstance(self.base, VogelPoint) else tuple(Q(x) for x in self.base)

    def evaluate(self, product_fn, s0) -> FormulaValue:
        b = self._base
        base = dict(zip(VARS, b))
        direction = dict(zip(VARS, (Q(x) for x in self.direction)))
        try:
            return FormulaValue(value=product_fn().along_line(base, direction, Q(s0)))
        except Indeterminate as e:
            return FormulaValue(indeterminate=str(e))


PRODUCTS = {
    "dim-g": lambda slot=None, k=None: dim_g_product(),
    "y2": lambda slot="alpha", k=None: dim_Y2_product(slot),
    "y3": lambda slot="alpha", k=None: dim_Y3_product(slot),
    "yk": lambda slot="alpha", k=1: dim_Yk_product(slot, k),
}


def along_line(line: Line, s0, formula: str, slot="alpha", k: int = 1) -> FormulaValue:
    """Evaluate one of the parameter-symmetric formulas along ``line`` at s0."""
    maker = PRODUCTS[formula]
    return line.evaluate(lambda: maker(slot=slot, k=k), s0)
