import json

import pytest

from vogelplane.catalog import catalog_grid, default_grid, embeddings_of
from vogelplane.verify import (
    FAIL,
    PASS,
    SKIP_INDET,
    SKIP_PRE,
    check_cartan_powers,
    check_casimirs,
    check_mixed,
    check_structural,
    check_yl_beta_powers,
    check_Yk_identifications,
    run,
)


def one(name, tag=None):
    es = embeddings_of(name)
    return es[0] if tag is None else next(e for e in es if e.tag == tag)


def by_params(results, check=None):
    return {tuple(sorted(dict(r.params).items())): r for r in results if check is None or r.check == check}


def test_cartan_powers():
    for name in ("E8", "G2"):
        assert all(r.status == PASS for r in check_cartan_powers(one(name), 6))
    a1 = by_params(check_cartan_powers(one("A1"), 6), "cartan-power")
    for k in range(7):
        assert a1[(("k", k),)].actual == 2 * k + 1


def test_Yk_identifications():
    e8 = by_params(check_Yk_identifications(one("E8")))
    r = e8[(("k", 4), ("slot", "beta"))]
    assert r.status == PASS and r.expected.value == -3875 == r.actual
    sp8 = by_params(check_Yk_identifications(one("sp8", "SP")))
    assert sp8[(("k", 5), ("slot", "beta"))].actual == 0
    e6 = by_params(check_Yk_identifications(one("E6")))
    assert e6[(("k", 3), ("slot", "gamma"))].actual == -78


def test_so8_split_is_reproduced():
    vals = {}
    for e in embeddings_of("so8"):
        for r in check_Yk_identifications(e):
            if r.check == "so8-split":
                assert r.status == PASS
                vals[(e.tag, dict(r.params)["slot"])] = r.actual
    assert vals == {("EXC", "beta"): 105, ("EXC", "gamma"): 0, ("SO", "beta"): 70, ("SO", "gamma"): 35}


def test_flagged_rows_report_variant():
    res = check_Yk_identifications(one("sl6"))
    flagged = [r for r in res if r.variant]
    assert flagged and all(r.status == PASS for r in flagged)
    assert {r.variant for r in flagged} == {"wave ends one step earlier"}


def test_mixed():
    assert all(r.status == PASS for r in check_mixed(one("E7", "EXC")))
    for n in (2, 3, 4):
        assert all(r.status == PASS for r in check_mixed(one(f"sp{2 * n}", "SP")))
    g2 = [r for r in check_mixed(one("G2")) if dict(r.params).get("l", 0) >= 1]
    assert g2 and all(r.status == SKIP_PRE for r in g2)


def test_so8_mixed_lands_on_orbit_sums():
    skips = [r for r in check_mixed(one("so8", "EXC")) if r.status == SKIP_INDET]
    assert skips and all("3 diagram-symmetry images" in r.note for r in skips)
    skips = [r for r in check_mixed(one("so8", "SO")) if r.status == SKIP_INDET]
    assert skips and all("2 diagram-symmetry images" in r.note for r in skips)


def test_yl_beta_powers():
    e7 = by_params(check_yl_beta_powers(one("E7", "EXC")))
    r = e7[(("k", 2), ("l", 3))]
    assert r.status == PASS and r.actual == 293930  # weight 4ω7 on E7
    for n in (5, 6, 7, 8):
        e = one(f"so{2 * n}", "SO")
        assert not [r for r in check_yl_beta_powers(e) if r.status == FAIL]


def test_casimirs():
    res = check_casimirs(one("E7", "EXC"))
    assert all(r.status != FAIL for r in res)
    beta2 = [r for r in res if r.check == "casimir" and dict(r.params) == {"slot": "beta", "k": 2}]
    assert beta2 and beta2[0].actual == 56
    e8 = [r for r in check_casimirs(one("E8")) if dict(r.params) == {"slot": "alpha", "k": 3}]
    assert e8[0].actual == 192


def test_structural():
    res = {r.check: r for r in check_structural(one("E8"))}
    assert res["strings"].status == PASS
    assert all(r.status == PASS for r in check_structural(one("E7", "EXC")) if r.check == "diamond")
    c3 = [r for r in check_structural(one("sp6", "SP")) if r.check == "strings"]
    assert c3[0].status == SKIP_PRE


def test_full_run_has_no_failures():
    rep = run(jobs=1)
    assert rep.ok, rep.summary()
    assert rep.counts[PASS] > 4000


@pytest.mark.parametrize("jobs", [2, 8])
def test_run_is_deterministic(jobs):
    grid = catalog_grid(5)
    a = run(grid, jobs=1).to_json()
    b = run(grid, jobs=jobs).to_json()
    assert a == b
    json.loads(a)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run(default_grid()[:1], suites=["nope"])
