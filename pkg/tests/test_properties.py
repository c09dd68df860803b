"""Property tests: homogeneity, permutation symmetry, binomial identities."""

from fractions import Fraction
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from vogelplane import vogel
from vogelplane.catalog import default_grid
from vogelplane.exactnum import gen_binomial
from vogelplane.vogel import VogelPoint


def same(x, y):
    # indeterminacy labels name the vanishing factor, which moves under permutation
    return x.value == y.value

GRID_POINTS = sorted({e.point.as_tuple() for e in default_grid()})

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=30).filter(lambda q: q != 0)
points = st.sampled_from(GRID_POINTS)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(points, nonzero, st.integers(0, 5))
def test_scale_invariance(pt, lam, k):
    p = VogelPoint(*pt)
    q = p.scaled(lam)
    assert vogel.dim_g(q) == vogel.dim_g(p)
    for slot in vogel.SLOTS:
        assert vogel.dim_Y2(q, slot) == vogel.dim_Y2(p, slot)
        assert vogel.dim_Y3(q, slot) == vogel.dim_Y3(p, slot)
        assert vogel.dim_Yk(q, slot, k) == vogel.dim_Yk(p, slot, k)
        assert vogel.casimir_formula(q, slot, k) == lam * vogel.casimir_formula(p, slot, k)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, rationals)
def test_dim_g_permutation_symmetry(a, b, c):
    if a == b == c == 0:
        return
    base = vogel.dim_g(VogelPoint(a, b, c))
    for perm in permutations((a, b, c)):
        assert same(vogel.dim_g(VogelPoint(*perm)), base)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, rationals, st.integers(0, 4))
def test_Yk_slots_follow_parameters(a, b, c, k):
    if a == b == c == 0:
        return
    p = VogelPoint(a, b, c)
    q = p.swapped(0, 1)
    assert same(vogel.dim_Yk(p, "alpha", k), vogel.dim_Yk(q, "beta", k))
    assert same(vogel.dim_Yk(p, "gamma", k), vogel.dim_Yk(q, "gamma", k))


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(1, 12))
def test_gen_binomial_pascal(x, y):
    # binom(x+y, y) = binom(x+y-1, y-1) + binom(x+y-1, y)
    assert gen_binomial(x, y) == gen_binomial(x, y - 1) + gen_binomial(x - 1, y)


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(0, 12))
def test_gen_binomial_step(x, y):
    # binom(x+y+1, y+1) = binom(x+y, y) * (x+y+1)/(y+1)
    assert gen_binomial(x, y + 1) == gen_binomial(x, y) * (x + y + 1) / (y + 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10))
def test_gen_binomial_symmetry_at_integers(x, y):
    assert gen_binomial(Fraction(x), y) == gen_binomial(Fraction(y), x)
