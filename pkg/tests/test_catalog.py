from fractions import Fraction

import pytest

from vogelplane.catalog import (
    SignedModule,
    TableLookupError,
    catalog_grid,
    default_grid,
    embeddings_of,
    eval_expr,
    identify_Yk_beta,
    identify_Yk_gamma,
    k_matches,
    load_tables,
    table_entry,
)
from vogelplane.rootsys import AlgebraId, build_root_system, weyl_dim
from vogelplane.vogel import VogelPoint, dim_g

P = VogelPoint.of


def emb(name, tag=None):
    es = embeddings_of(name)
    return es[0] if tag is None else next(e for e in es if e.tag == tag)


def test_embeddings_of():
    (e8,) = embeddings_of("E8")
    assert (e8.tag, e8.point) == ("EXC", P(-2, 12, 20))
    so8 = embeddings_of("so8")
    assert [e.tag for e in so8] == ["SO", "EXC"]
    assert so8[0].point == so8[1].point == P(-2, 4, 4)
    for n in range(2, 9):
        sp = emb(f"sp{2 * n}", "SP")
        assert sp.point == P(-2, 1, n + 2)


def test_f3_and_exceptional_points():
    assert emb("E7", "F3_3").point == emb("E7", "EXC").point == P(-2, 8, 12)
    assert emb("G2").point == P(-2, Fraction(10, 3), Fraction(8, 3))
    assert emb("sl6", "F3_3").point == emb("sl6", "SL").point


def test_catalog_grid():
    g8 = catalog_grid(8)
    ids = [e.id for e in g8]
    assert ids.count("E8@EXC") == 1
    assert sum(1 for e in g8 if e.algebra.name == "D4") == 2
    (a1,) = catalog_grid(1)
    assert a1.id == "A1@SP" and a1.point == P(-2, 1, 3)
    assert any(e.algebra.name == "G2" and e.point == P(-2, Fraction(10, 3), Fraction(8, 3))
               for e in catalog_grid(2))
    with pytest.raises(ValueError):
        catalog_grid(0)


def test_default_grid_size_and_dims():
    grid = default_grid()
    assert len(grid) == 44
    assert len({e.id for e in grid}) == len(grid)
    for e in grid:
        rs = build_root_system(e.algebra)
        assert dim_g(e.point).value == weyl_dim(rs, rs.alpha0)


def test_identify_beta():
    e8 = emb("E8")
    m = identify_Yk_beta(e8, 4)
    assert m.sign == -1 and m.weight == (1, 0, 0, 0, 0, 0, 0, 0)
    assert m.dimension(build_root_system(e8.algebra)) == -3875
    for l in range(2, 8):
        sp = emb(f"sp{2 * l}", "SP")
        assert identify_Yk_beta(sp, l + 1) == SignedModule.zero()
        assert identify_Yk_beta(sp, l + 2) == SignedModule.zero()
    for e in default_grid():
        if e.line == "F3":
            continue
        rs = build_root_system(e.algebra)
        try:
            m1 = identify_Yk_beta(e, 1)
        except TableLookupError:
            continue
        assert m1 == SignedModule(rs.alpha0, 1)
        assert identify_Yk_beta(e, 0) == SignedModule((0,) * rs.rank, 1)


def test_identify_gamma():
    so10 = emb("so10", "SO")
    assert identify_Yk_gamma(so10, 2) == SignedModule((2, 0, 0, 0, 0), 1)
    e6 = emb("E6")
    rs = build_root_system(e6.algebra)
    assert identify_Yk_gamma(e6, 3) == SignedModule(rs.alpha0, -1)
    assert identify_Yk_gamma(emb("sp8", "SP"), 4) == SignedModule.zero()


def test_flagged_rows_carry_variants():
    entry = table_entry(emb("sl6"), "beta", 7)
    assert entry.flag and "wave ends one step earlier" in entry.variants
    entry = table_entry(emb("so8", "SO"), "beta", 2)
    assert entry.flag == "collision entry"
    rs = build_root_system(AlgebraId.parse("so8"))
    assert entry.variants["both half-spin squares"].dimension(rs) == 70


def test_lookup_errors():
    with pytest.raises(TableLookupError):
        table_entry(emb("E7", "F3_3"), "beta", 2)
    with pytest.raises(ValueError):
        table_entry(emb("E8"), "beta", -1)
    with pytest.raises(ValueError):
        table_entry(emb("E8"), "delta", 2)


def test_expression_helpers():
    assert eval_expr("2*l+3-k", {"l": 4, "k": 5}) == 6
    assert eval_expr("(l+1)//2", {"l": 5}) == 3
    with pytest.raises(ValueError):
        eval_expr("__import__('os')", {})
    env = {"l": 4}
    assert k_matches("l+1..l+2", 5, env) and not k_matches("l+1..l+2", 7, env)
    assert k_matches(">=2*l+4", 12, env)
    assert not k_matches("3..2", 2, env)


def test_tables_load():
    t = load_tables()
    assert set(t) == {"a", "b", "c", "d", "e", "f"}
