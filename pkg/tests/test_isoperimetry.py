import pytest
from hypothesis import given, strategies as st

from wakeford.errors import LimitError, PreconditionError
from wakeford.groups import GroupSet, make_group, subgroup_generated
from wakeford.isoperimetry import (
    boundary,
    classify_connectivity,
    exterior,
    is_cauchy,
    is_vosper,
    kappa,
    verify_prop_cf,
)
from wakeford.setops import invert_set, mul_sets

from conftest import groups, subsets

C5 = make_group("cyclic:5")


def brute_kappa(g, s, k):
    h = subgroup_generated(g, s)
    q = len(h)
    helems = h.elements()
    best = None
    for m in range(1, 1 << q):
        x = g.set(helems[i] for i in range(q) if m >> i & 1)
        xs = mul_sets(g, x, s)
        if len(x) >= k and len(xs) <= q - k:
            v = len(xs) - len(x)
            if best is None or v < best[0] or (v == best[0] and (len(x), x.mask) < (len(best[1]), best[1].mask)):
                best = (v, x)
    return (q - k + 1, None) if best is None else best


def test_boundary_examples():
    s = C5.set([0, 1, 2])
    assert boundary(C5, C5.set([0]), s).elements() == [1, 2]
    assert boundary(C5, C5.empty(), s).elements() == []
    assert boundary(C5, C5.full(), s).elements() == []
    assert boundary(C5, C5.set([0]), s, "backward").elements() == [3, 4]
    with pytest.raises(PreconditionError):
        boundary(C5, C5.set([0]), C5.set([1]))


def test_exterior_examples():
    s = C5.set([0, 1, 2])
    assert exterior(C5, C5.set([0]), s).elements() == [3, 4]
    assert exterior(C5, C5.full(), s).elements() == []
    assert exterior(C5, C5.set([2]), C5.full()).elements() == []


def test_kappa_examples():
    s = C5.set([0, 1, 2])
    r1 = kappa(C5, s, 1)
    assert r1.kappa == 2 and r1.fragment.elements() == [0] and not r1.empty_range
    r2 = kappa(C5, s, 2)
    assert r2.empty_range and r2.kappa == 4 and r2.fragment is None
    g = make_group("cyclic:12")
    h = g.set([0, 4, 8])
    rh = kappa(g, h, 1)
    assert rh.empty_range and rh.kappa == 3 and rh.ambient_order == 3


def test_classification_examples():
    s = C5.set([0, 1, 2])
    assert is_cauchy(C5, s) and is_vosper(C5, s)
    g8 = make_group("cyclic:8")
    assert not is_cauchy(g8, g8.set([0, 4]))
    c = classify_connectivity(C5, C5.set([0]))
    assert c.degenerate


def test_kappa_errors():
    with pytest.raises(PreconditionError):
        kappa(C5, C5.set([1, 2]), 1)
    with pytest.raises(PreconditionError):
        kappa(C5, C5.set([0, 1]), 0)
    g = make_group("cyclic:25")
    with pytest.raises(LimitError):
        kappa(g, g.set([0, 1]), 1)


def test_kappa_at_cap():
    g = make_group("cyclic:24")
    assert kappa(g, g.set([0, 1, 5]), 1).kappa == 2


def _with_identity(g, data, max_size=4):
    s = data.draw(subsets(g, 0, max_size))
    return GroupSet(g.order, s.mask | 1)


@given(groups, st.data())
def test_kappa_matches_definition(g, data):
    s = _with_identity(g, data)
    k = data.draw(st.integers(1, 3))
    rep = kappa(g, s, k)
    val, frag = brute_kappa(g, s, k)
    assert rep.kappa == val
    if frag is None:
        assert rep.empty_range and rep.fragment is None
    else:
        x = rep.fragment
        assert len(x) == len(frag) and x.mask == frag.mask
        xs = mul_sets(g, x, s)
        assert len(x) >= k and len(xs) <= rep.ambient_order - k and len(xs) - len(x) == rep.kappa


@given(groups, st.data())
def test_partition_and_duality(g, data):
    s = _with_identity(g, data)
    t = data.draw(subsets(g))
    bd = boundary(g, t, s)
    ext = exterior(g, t, s)
    assert (t.mask | bd.mask | ext.mask) == g.full_mask
    assert t.mask & bd.mask == t.mask & ext.mask == bd.mask & ext.mask == 0
    assert boundary(g, ext, s, "backward").issubset(bd)


def _inequality_forms(g, s):
    h = subgroup_generated(g, s).elements()
    q = len(h)
    cauchy_def = vosper_def = True
    for m in range(1, 1 << q):
        x = g.set(h[i] for i in range(q) if m >> i & 1)
        size = len(mul_sets(g, x, s))
        if size < min(q, len(x) + len(s) - 1):
            cauchy_def = False
        if len(x) >= 2 and size < min(q - 1, len(x) + len(s)):
            vosper_def = False
    return cauchy_def, vosper_def


@given(groups, st.data())
def test_cauchy_and_vosper_equivalences(g, data):
    s = _with_identity(g, data)
    cauchy_def, vosper_def = _inequality_forms(g, s)
    if len(subgroup_generated(g, s)) == len(s):
        # S a subgroup: empty range gives kappa_1 = |S|, kappa_2 = |S|-1,
        # while both inequality forms hold trivially
        assert cauchy_def and vosper_def
        assert not is_cauchy(g, s) and not is_vosper(g, s)
    else:
        assert is_cauchy(g, s) == cauchy_def
        assert is_vosper(g, s) == vosper_def


@given(groups, st.data())
def test_singleton_fragment_bound(g, data):
    s = _with_identity(g, data)
    q = len(subgroup_generated(g, s))
    if len(s) <= q - 1:
        assert kappa(g, s, 1).kappa <= len(s) - 1


def test_cf_example_c7():
    g = make_group("cyclic:7")
    s = g.set([0, 1, 2])
    v = verify_prop_cf(g, s, g.set([0, 1, 2, 6]))
    assert v.boundary_size == 2 and v.clause_a
    assert v.exterior_size == 1 and v.clause_cf1
    assert not v.vosper and v.clause_cf2 is None and v.passed
    w = verify_prop_cf(g, g.set([0, 1, 3]), g.set([2, 3, 4, 6]))
    assert w.vosper and w.boundary_size == 2
    assert w.clause_cf1 and w.clause_cf2 and w.clause_cf3 and w.passed


def test_cf_preconditions():
    g = make_group("cyclic:7")
    s = g.set([0, 1, 2])
    with pytest.raises(PreconditionError):
        verify_prop_cf(g, s, g.full())
    with pytest.raises(PreconditionError):
        verify_prop_cf(g, s, g.empty())
    g8 = make_group("cyclic:8")
    with pytest.raises(PreconditionError):
        verify_prop_cf(g8, g8.set([0, 4]), g8.set(range(1, 8)))


@given(st.integers(5, 9).map(lambda n: make_group(f"cyclic:{n}")), st.data())
def test_cf_clauses_on_single_coset_instances(g, data):
    # with <S> = G the exterior lies in one coset by construction
    s = g.set([0, 1])
    k = data.draw(st.integers(1, g.order - 1))
    tbar = data.draw(st.lists(st.integers(0, g.order - 1), min_size=k, max_size=k, unique=True))
    t = g.set(x for x in range(g.order) if x not in tbar)
    v = verify_prop_cf(g, s, t)
    if v.exterior_size:
        assert v.clause_a and v.clause_cf1
        if v.clause_cf2 is not None:
            back = mul_sets(g, exterior(g, t, s), invert_set(g, s))
            assert v.clause_cf2 == (back.mask == g.full_mask & ~t.mask)
