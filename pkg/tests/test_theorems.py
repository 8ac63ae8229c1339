import json
from fractions import Fraction

import pytest

from wakeford.errors import PreconditionError
from wakeford.groups import catalog, make_group
from wakeford.pairing import mu
from wakeford.theorems import (
    FAMILIES,
    STATEMENT_IDS,
    eho_bounds,
    fmt_q,
    losonczy_instance,
    mubb_bounds,
    progression_instances,
    replay,
    summarize,
    sweep,
    verify_cf,
    verify_eho,
    verify_k1,
    verify_karolyi,
    verify_losonczy,
    verify_mcp,
    verify_mubb,
    verify_prog_example,
)

C10 = make_group("cyclic:10")


def test_registry_covers_all_statements():
    assert set(FAMILIES) == set(STATEMENT_IDS)
    assert len(STATEMENT_IDS) == 17


def test_k1_examples():
    g7 = make_group("cyclic:7")
    r = verify_k1(g7, g7.set([1, 2]), g7.set([3, 5]))
    assert r.verdict == "pass" and int(r.details["mu"]) > 0
    assert verify_k1(C10, C10.set([5, 1]), C10.set([0, 1])).verdict == "skipped"
    g5 = make_group("cyclic:5")
    r5 = verify_k1(g5, g5.set([1, 2]), g5.set([1, 2]))
    assert r5.verdict == "pass" and r5.details["mu"] == "1"


def test_karolyi_scope():
    g7 = make_group("cyclic:7")
    assert verify_karolyi(g7, g7.set([1, 2, 3]), g7.set([0, 4, 6])).verdict == "pass"
    g12 = make_group("cyclic:12")
    assert verify_karolyi(g12, g12.set([5]), g12.set([5])).verdict == "pass"
    assert verify_karolyi(g12, g12.set([1, 5]), g12.set([1, 5])).verdict == "skipped"
    q = make_group("quaternion")
    assert verify_karolyi(q, q.set([3]), q.set([6])).verdict == "pass"


def test_mcp_examples():
    r = verify_mcp(C10, C10.set([1, 2, 3]), C10.set([1, 2, 3]))
    assert r.verdict == "pass"
    assert r.details["branch_iii"]                      # A a^-1 = {0,1,2}
    g = make_group("cyclic:11")
    # a = 0 in A and A meets B in |B| - 1 points
    r2 = verify_mcp(g, g.set([1, 3, 4]), g.set([0, 1, 4]))
    assert 0 in r2.details["branch_ii"] and r2.verdict == "pass"


def test_mubb_bounds_exact():
    first, second, bound = mubb_bounds(3, 11)
    assert first == Fraction(4, 3) and second == Fraction(21, 15) and bound == Fraction(4, 3)
    assert mubb_bounds(3, 3)[1] is None or mubb_bounds(3, 3)[1] <= 0


def test_mubb_examples():
    g11 = make_group("cyclic:11")
    r = verify_mubb(g11, g11.set([1, 2, 3]))
    assert r.details["bound"] == Fraction(4, 3)
    assert r.details["first_term_reading"] == "(|B|+1)/3"
    assert r.verdict == "pass"
    g5 = make_group("cyclic:5")
    r5 = verify_mubb(g5, g5.set([1, 2]))
    assert 1 in r5.details["branch_ii"] and r5.verdict == "pass"


def test_eho_examples():
    g = make_group("cyclic:11")
    s = g.set([1, 2, 3])
    r = verify_eho(g, s, s)
    d = r.details
    assert d["q"] == 11 and r.verdict == "pass"
    assert d["bound"] == min(eho_bounds(3, 3, d["kappa2"], 11)[0], eho_bounds(3, 3, d["kappa2"], 11)[1])
    r1 = verify_eho(g, s, g.set([4]))
    assert r1.verdict == "pass" and d["pass_left"] == d["pass_right"]
    g6 = make_group("cyclic:6")
    # q - |T| - 1 <= 0: second term non-positive
    r6 = verify_eho(g6, g6.set([2]), g6.set([0, 2, 4]))
    assert r6.details["bound"] <= 0 and r6.verdict == "pass"
    assert verify_eho(g, g.set([0, 1]), s).verdict == "skipped"


def test_fmt_q():
    assert fmt_q(Fraction(4, 3)) == "4/3" and fmt_q(Fraction(2)) == "2" and fmt_q(None) == "inf"


@pytest.mark.parametrize("spec,h,a", [("cyclic:4", [0, 2], 1), ("cyclic:9", [0, 3, 6], 1)])
def test_losonczy_examples(spec, h, a):
    g = make_group(spec)
    b, aa = losonczy_instance(g, g.set(h), a)
    assert mu(g, b, aa) == 0
    assert verify_losonczy(g, g.set(h), a).verdict == "pass"


def test_losonczy_quaternion_center():
    q = make_group("quaternion")
    center = q.set([0, 1])
    for a in range(2, 8):
        r = verify_losonczy(q, center, a)
        assert r.verdict == "pass" and r.details["mu"] == "0"


def test_losonczy_preconditions():
    g = make_group("cyclic:4")
    with pytest.raises(PreconditionError):
        losonczy_instance(g, g.set([0, 2]), 2)
    with pytest.raises(PreconditionError):
        losonczy_instance(g, g.set([0, 1]), 3)


def test_progression_variant_one_examples():
    b, a = progression_instances(C10, 1, 3, "one")
    assert b.elements() == [1, 2, 3, 4] and a.elements() == [0, 1, 2, 3]
    assert mu(C10, b, a) == 1
    b0, a0 = progression_instances(C10, 3, 0, "one")
    assert b0.elements() == [3] and a0.elements() == [0] and mu(C10, b0, a0) == 1


def test_progression_variant_two_shape():
    g = make_group("cyclic:30")
    q, p = progression_instances(g, 1, 5, "two", 20)
    assert p.elements() == [0, 2, 3, 4, 5, 6] and q.elements() == [2, 3, 4, 5, 6, 20]
    with pytest.raises(PreconditionError):
        progression_instances(g, 1, 5, "two", 7)
    with pytest.raises(PreconditionError):
        progression_instances(make_group("cyclic:12"), 1, 5, "two", 9)


def test_progression_floor_override_is_exploratory():
    g = make_group("cyclic:12")
    r = verify_prog_example(g, 1, 5, "two", 9, min_order=9)
    assert r.details["exploratory"] and r.verdict in ("pass", "skipped")


def test_cf_record_skip():
    g = make_group("cyclic:8")
    assert verify_cf(g, g.set([0, 4]), g.set(range(1, 8))).verdict == "skipped"


def test_sweep_is_deterministic_and_replayable():
    specs = ["cyclic:7", "dihedral:3"]
    a = sweep("MCP", specs, max_set_size=3, sample=40, seed=5)
    b = sweep("MCP", specs, max_set_size=3, sample=40, seed=5)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
    c = sweep("MCP", specs, max_set_size=3, sample=40, seed=6)
    assert [r.to_dict() for r in a] != [r.to_dict() for r in c]
    for r in a[:10]:
        assert replay(r).to_dict() == r.to_dict()


def test_records_are_json_and_ascending():
    recs = sweep("K1", ["cyclic:5"], max_set_size=2)
    for r in recs:
        d = json.loads(json.dumps(r.to_dict()))
        assert d["instance"]["B"] == sorted(d["instance"]["B"])
        assert d["instance"]["group"] == "cyclic:5"


@pytest.mark.parametrize("sid", STATEMENT_IDS)
def test_every_statement_sweeps(sid):
    recs = sweep(sid, ["cyclic:7"], max_set_size=2, sample=5, seed=0)
    assert summarize(recs)["pass"] + summarize(recs)["fail"] + summarize(recs)["skipped"] == len(recs)
    for r in recs:
        assert replay(r).verdict == r.verdict


def test_family_records_replay():
    for sid in ("EHO", "EHOL", "CF"):
        recs = sweep(sid, ["cyclic:6"], max_set_size=2)
        for r in recs[:3]:
            assert replay(r).to_dict() == r.to_dict()


def test_small_sweeps_pass():
    assert summarize(sweep("LOSONCZY", catalog(12)))["fail"] == 0
    assert summarize(sweep("TRANS", ["cyclic:6", "symmetric:3"], max_set_size=2))["fail"] == 0
    assert summarize(sweep("DEG", ["quaternion"], max_set_size=3))["fail"] == 0
    assert summarize(sweep("KHC_FORM", ["dihedral:3"], max_set_size=3))["fail"] == 0
    assert summarize(sweep("KAROLYI", ["cyclic:7", "cyclic:11"], max_set_size=3))["fail"] == 0


def test_sweep_rejects_unknown():
    with pytest.raises(ValueError):
        sweep("NOPE", ["cyclic:5"])
    with pytest.raises(ValueError):
        sweep("K1", ["cyclic:5"], order_floor=3)
