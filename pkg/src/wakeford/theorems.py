"""Machine checks of the pairing, isoperimetric and counting statements.

Every verifier returns a :class:`VerificationRecord` whose ``instance`` is
enough to replay it: the group spec plus explicit ascending element lists.
Bounds are compared as exact :class:`fractions.Fraction` values.

Sampling sweeps draw from ``random.Random`` (MT19937) seeded with the string
``"<seed>:<statement_id>:<group spec>"``, one stream per (statement, group).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import LimitError, PreconditionError
from .groups import Group, GroupSet, _closure, enumerate_subgroups, iter_bits, make_group, p_of_group
from .isoperimetry import MAX_KAPPA_ORDER, is_cauchy, is_vosper, kappas, verify_prop_cf
from .pairing import analyze, build_graph, hall_form_check, mu
from .setops import (
    adjoin_identity,
    is_chowla,
    lam,
    left_mult_mask,
    progression_witness,
    right_mult_mask,
    translate,
)

STATEMENT_IDS = (
    "K1", "KAROLYI", "MCP", "MUBB", "EHO", "EHOL", "OLSON_XY", "OLSON_CLIQUE",
    "CCHOWLA", "VCHOWLA", "CF", "TRANS", "DEG", "KHC_FORM", "LOSONCZY",
    "PROG_EXAMPLE_1", "PROG_EXAMPLE_2",
)
MAX_SWEEP_ORDER = 256
MAX_FAMILY_ORDER = 62
MAX_KHC_SIZE = 12


@dataclass
class VerificationRecord:
    statement_id: str
    instance: dict
    verdict: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "statement_id": self.statement_id,
            "instance": _jsonable(self.instance),
            "verdict": self.verdict,
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, GroupSet):
        return obj.elements()
    if isinstance(obj, Fraction):
        return fmt_q(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def fmt_q(q: Fraction | None) -> str:
    """Exact text form of a bound; ``None`` stands for +infinity."""
    if q is None:
        return "inf"
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _q_min(*terms: Fraction | None) -> Fraction | None:
    finite = [t for t in terms if t is not None]
    return min(finite) if finite else None


def _ratio(num: int, den: int) -> Fraction | None:
    """num/den, or None (+infinity) when the denominator is not positive."""
    return Fraction(num, den) if den > 0 else None


def _rec(sid: str, g: Group, verdict: str, details: dict | None = None, **sets) -> VerificationRecord:
    inst = {"group": g.spec}
    for k, v in sets.items():
        inst[k] = v.elements() if isinstance(v, GroupSet) else v
    return VerificationRecord(sid, inst, verdict, details or {})


def _skip(sid: str, g: Group, reason: str, **sets) -> VerificationRecord:
    return _rec(sid, g, "skipped", {"reason": reason}, **sets)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- pairing existence ----------------------------------------------------

def verify_k1(g: Group, b: GroupSet, a: GroupSet) -> VerificationRecord:
    """Chowla B, |A| = |B|: at least one pairing exists."""
    if not b.mask or not is_chowla(g, b):
        return _skip("K1", g, "B is not a Chowla subset", B=b, A=a)
    if len(a) != len(b):
        return _skip("K1", g, "|A| != |B|", B=b, A=a)
    rep = analyze(build_graph(g, b, a))
    details = {"mu": str(rep.mu)}
    if not rep.exists:
        details["hall_violator"] = rep.hall_violator.elements()
    return _rec("K1", g, _verdict(rep.mu > 0), details, B=b, A=a)


def verify_karolyi(g: Group, b: GroupSet, a: GroupSet) -> VerificationRecord:
    p = p_of_group(g)
    if not b.mask or b.mask & 1:
        return _skip("KAROLYI", g, "B must be non-empty and identity-free", B=b, A=a)
    if len(a) != len(b):
        return _skip("KAROLYI", g, "|A| != |B|", B=b, A=a)
    if not len(b) < p:
        return _skip("KAROLYI", g, f"|B| >= p(G) = {p}", B=b, A=a)
    m = mu(g, b, a)
    return _rec("KAROLYI", g, _verdict(m > 0), {"mu": str(m), "p": p}, B=b, A=a)


# -- counting -------------------------------------------------------------

def _coset_hits(g: Group, a: GroupSet, b: GroupSet, want: int) -> list[int]:
    """Elements c of A with |A c^-1 intersect B| == want."""
    out = []
    for c in a:
        moved = right_mult_mask(g, a.mask, g.inv[c])
        if (moved & b.mask).bit_count() == want:
            out.append(c)
    return out


def verify_mcp(g: Group, b: GroupSet, a: GroupSet) -> VerificationRecord:
    """Trichotomy for Chowla B: many pairings, a near-translate, or a progression."""
    if not b.mask or not is_chowla(g, b):
        return _skip("MCP", g, "B is not a Chowla subset", B=b, A=a)
    if len(a) != len(b):
        return _skip("MCP", g, "|A| != |B|", B=b, A=a)
    rep = analyze(build_graph(g, b, a))
    need = max(rep.max_degree, rep.max_codegree)
    branch_i = rep.mu >= need
    branch_ii = _coset_hits(g, a, b, len(b) - 1)
    branch_iii = []
    for c in a:
        shifted = translate(g, a, g.inv[c], "right")
        w = progression_witness(g, shifted)
        if w is not None:
            branch_iii.append({"a": c, "ratio": w.ratio, "start": w.start, "side": w.side})
    # w ranges over A^-1, |Aw & B| = |B| - 1
    w_form = []
    for w in sorted({g.inv[c] for c in a}):
        moved = right_mult_mask(g, a.mask, w)
        if (moved & b.mask).bit_count() == len(b) - 1:
            w_form.append(w)
    details = {
        "mu": str(rep.mu),
        "max_degree": rep.max_degree,
        "max_codegree": rep.max_codegree,
        "branch_i": branch_i,
        "branch_ii": branch_ii,
        "branch_iii": branch_iii,
        "w_form": w_form,
        "max_lambda_left": max(lam(g, a, x, "left") for x in b),
        "max_lambda_right": max(lam(g, a, x, "right") for x in b),
    }
    ok = branch_i or bool(branch_ii) or bool(branch_iii)
    return _rec("MCP", g, _verdict(ok), details, B=b, A=a)


def mubb_bounds(size: int, q: int) -> tuple[Fraction, Fraction | None, Fraction]:
    """((|B|+1)/3, |B|(q-|B|-1)/(2q-|B|-4) or None for +inf, their minimum)."""
    first = Fraction(size + 1, 3)
    second = _ratio(size * (q - size - 1), 2 * q - size - 4)
    return first, second, _q_min(first, second)


def verify_mubb(g: Group, b: GroupSet) -> VerificationRecord:
    """mu(B, B) reaches the rational bound, or some B a^-1 is a progression.

    The first bound term is read as (|B|+1)/3.
    """
    if not b.mask or not is_chowla(g, b):
        return _skip("MUBB", g, "B is not a Chowla subset", B=b)
    q = _closure(g, b.mask).bit_count()
    first, second, bound = mubb_bounds(len(b), q)
    m = mu(g, b, b)
    branch_i = m >= bound
    branch_ii = []
    for c in b:
        w = progression_witness(g, translate(g, b, g.inv[c], "right"))
        if w is not None:
            branch_ii.append(c)
    details = {
        "mu": str(m),
        "q": q,
        "bound_first": first,
        "bound_second": second,
        "bound": bound,
        "first_term_reading": "(|B|+1)/3",
        "branch_i": branch_i,
        "branch_ii": branch_ii,
        "branch": "i" if branch_i else ("ii" if branch_ii else None),
    }
    return _rec("MUBB", g, _verdict(branch_i or bool(branch_ii)), details, B=b)


# -- Erdos-Heilbronn type bounds ------------------------------------------

def eho_bounds(s_size: int, t_size: int, k2: int, q: int) -> tuple[Fraction, Fraction | None, Fraction]:
    first = Fraction(t_size * (s_size + k2 - t_size + 1), s_size + 2 * k2)
    second = _ratio(t_size * (q - t_size - 1), 2 * q - s_size - 4)
    return first, second, _q_min(first, second)


def _eho_context(g: Group, s: GroupSet) -> tuple[int, int]:
    """(kappa_2 of S u {1}, |<S>|); raises PreconditionError."""
    if not s.mask or s.mask & 1:
        raise PreconditionError("S must be non-empty and identity-free")
    st = adjoin_identity(s)
    q = _closure(g, st.mask).bit_count()
    if q > MAX_KAPPA_ORDER:
        raise PreconditionError(f"|<S>| = {q} exceeds {MAX_KAPPA_ORDER}")
    return kappas(g, st, (2,))[2], q


def verify_eho(g: Group, s: GroupSet, t: GroupSet, side: str = "right") -> VerificationRecord:
    """Some x in S has lambda_T(x) at least the two-term minimum bound.

    Both translation sides are evaluated; ``side`` selects the verdict.
    """
    try:
        k2, q = _eho_context(g, s)
    except PreconditionError as e:
        return _skip("EHO", g, str(e), S=s, T=t, side=side)
    first, second, bound = eho_bounds(len(s), len(t), k2, q)
    maxes = {sd: max(lam(g, t, x, sd) for x in s) for sd in ("right", "left")}
    details = {
        "kappa2": k2, "q": q,
        "bound_first": first, "bound_second": second, "bound": bound,
        "max_lambda_right": maxes["right"], "max_lambda_left": maxes["left"],
        "pass_right": maxes["right"] >= bound, "pass_left": maxes["left"] >= bound,
    }
    return _rec("EHO", g, _verdict(maxes[side] >= bound), details, S=s, T=t, side=side)


def ehol_bound(size: int, q: int) -> tuple[Fraction, Fraction | None, Fraction]:
    return mubb_bounds(size, q)


def verify_ehol(g: Group, s: GroupSet, t: GroupSet, side: str = "right") -> VerificationRecord:
    """Special case kappa_2 = |S| = |T| with bound min((|S|+1)/3, ...)."""
    try:
        k2, q = _eho_context(g, s)
    except PreconditionError as e:
        return _skip("EHOL", g, str(e), S=s, T=t, side=side)
    if not k2 == len(s) == len(t):
        return _skip("EHOL", g, f"needs kappa2 = |S| = |T|, got {k2}, {len(s)}, {len(t)}",
                     S=s, T=t, side=side)
    first, second, bound = ehol_bound(len(s), q)
    maxes = {sd: max(lam(g, t, x, sd) for x in s) for sd in ("right", "left")}
    details = {
        "kappa2": k2, "q": q,
        "bound_first": first, "bound_second": second, "bound": bound,
        "max_lambda_right": maxes["right"], "max_lambda_left": maxes["left"],
        "pass_right": maxes["right"] >= bound, "pass_left": maxes["left"] >= bound,
    }
    return _rec("EHOL", g, _verdict(maxes[side] >= bound), details, S=s, T=t, side=side)


@lru_cache(maxsize=64)
def _lambda_tables(g: Group, max_t: int, min_t: int = 1):
    """Masks of every T with min_t <= |T| <= max_t and lambda_T(x) for all x.

    Returns (masks, sizes, {"right": (n, #T) array, "left": ...}).
    """
    n = g.order
    if n > MAX_FAMILY_ORDER:
        raise LimitError(f"family sweeps are capped at order {MAX_FAMILY_ORDER}")
    masks = [sum(1 << e for e in c) for k in range(min_t, max_t + 1) for c in combinations(range(n), k)]
    tm = np.array(masks, dtype=np.uint64)
    sizes = np.bitwise_count(tm).astype(np.int64)
    table = g.table
    out = {}
    for side in ("right", "left"):
        lam_arr = np.empty((n, len(masks)), dtype=np.int64)
        for x in range(n):
            moved = np.zeros_like(tm)
            for i in range(n):
                dest = table[i][x] if side == "right" else table[x][i]
                moved |= ((tm >> np.uint64(i)) & np.uint64(1)) << np.uint64(dest)
            lam_arr[x] = np.bitwise_count(moved & ~tm)
        out[side] = lam_arr
    return masks, sizes, out


def _family_check(g, s, sid, max_t, min_t, bound_for_size, extra, side):
    masks, sizes, tables = _lambda_tables(g, max_t, min_t)
    elems = s.elements()
    need = {}
    need_arr = np.zeros(max_t + 1, dtype=np.int64)
    for k in range(min_t, max_t + 1):
        first, second, bound = bound_for_size(k)
        need[k] = {"bound_first": first, "bound_second": second, "bound": bound}
        # integer lambda meets a rational bound iff it meets its ceiling
        need_arr[k] = math.ceil(bound)
    details = {**extra, "t_sizes": [min_t, max_t], "t_count": len(masks),
               "bounds": {str(k): v for k, v in need.items()}}
    ok_side = {}
    for sd in ("right", "left"):
        best = tables[sd][elems].max(axis=0)
        ok = best >= need_arr[sizes]
        ok_side[sd] = bool(ok.all())
        bad = np.flatnonzero(~ok)
        details[f"pass_{sd}"] = ok_side[sd]
        details[f"fail_count_{sd}"] = int(len(bad))
        details[f"counterexamples_{sd}"] = [list(iter_bits(masks[i])) for i in bad[:5]]
        slack = best - need_arr[sizes]
        details[f"min_slack_{sd}"] = int(slack.min())
    return _rec(sid, g, _verdict(ok_side[side]), details, S=s, T=f"all {min_t}<=|T|<={max_t}", side=side)


def verify_eho_family(g: Group, s: GroupSet, max_t: int, side: str = "right") -> VerificationRecord:
    """EHO for one S against every T with 1 <= |T| <= max_t, as one record."""
    try:
        k2, q = _eho_context(g, s)
    except PreconditionError as e:
        return _skip("EHO", g, str(e), S=s, side=side)
    return _family_check(g, s, "EHO", max_t, 1,
                         lambda k: eho_bounds(len(s), k, k2, q), {"kappa2": k2, "q": q}, side)


def verify_ehol_family(g: Group, s: GroupSet, side: str = "right") -> VerificationRecord:
    """EHOL for one S with kappa_2 = |S| against every T with |T| = |S|."""
    try:
        k2, q = _eho_context(g, s)
    except PreconditionError as e:
        return _skip("EHOL", g, str(e), S=s, side=side)
    if k2 != len(s):
        return _skip("EHOL", g, f"kappa2 = {k2} != |S| = {len(s)}", S=s, side=side)
    k = len(s)
    return _family_check(g, s, "EHOL", k, k, lambda _: ehol_bound(k, q), {"kappa2": k2, "q": q}, side)


def verify_olson_xy(g: Group, t: GroupSet, x: int, y: int, side: str = "right") -> VerificationRecord:
    """lambda_T(x) + lambda_T(y) >= lambda_T(xy), both sides recorded."""
    if not t.mask:
        return _skip("OLSON_XY", g, "T must be non-empty", T=t, x=x, y=y, side=side)
    xy = g.table[x][y]
    vals = {}
    for sd in ("right", "left"):
        lx, ly, lxy = lam(g, t, x, sd), lam(g, t, y, sd), lam(g, t, xy, sd)
        vals[sd] = {"x": lx, "y": ly, "xy": lxy, "ok": lx + ly >= lxy}
    return _rec("OLSON_XY", g, _verdict(vals[side]["ok"]), vals, T=t, x=x, y=y, side=side)


def verify_olson_clique(g: Group, b: GroupSet, c: GroupSet, side: str = "right") -> VerificationRecord:
    """sum over x in C of lambda_B(x) >= |B|(|C| - |B| + 1) for identity-free C."""
    if not b.mask or not c.mask or c.mask & 1:
        return _skip("OLSON_CLIQUE", g, "B, C non-empty and C identity-free", B=b, C=c, side=side)
    bound = len(b) * (len(c) - len(b) + 1)
    sums = {sd: sum(lam(g, b, x, sd) for x in c) for sd in ("right", "left")}
    details = {"bound": bound, "sum_right": sums["right"], "sum_left": sums["left"],
               "pass_right": sums["right"] >= bound, "pass_left": sums["left"] >= bound}
    return _rec("OLSON_CLIQUE", g, _verdict(sums[side] >= bound), details, B=b, C=c, side=side)


# -- connectivity of Chowla sets ------------------------------------------

def verify_cchowla(g: Group, s: GroupSet) -> VerificationRecord:
    """kappa_1(S u {1}) == |S| for Chowla S."""
    if not s.mask or not is_chowla(g, s):
        return _skip("CCHOWLA", g, "S is not a Chowla subset", S=s)
    k1 = kappas(g, adjoin_identity(s), (1,))[1]
    return _rec("CCHOWLA", g, _verdict(k1 == len(s)), {"kappa1": k1, "size": len(s)}, S=s)


def verify_vchowla(g: Group, s: GroupSet) -> VerificationRecord:
    """S u {1} is a Vosper subset or a progression, for Chowla S."""
    if not s.mask or not is_chowla(g, s):
        return _skip("VCHOWLA", g, "S is not a Chowla subset", S=s)
    st = adjoin_identity(s)
    k2 = kappas(g, st, (2,))[2]
    vosper = k2 >= len(st)
    w = progression_witness(g, st)
    details = {"kappa2": k2, "vosper": vosper,
               "progression": None if w is None else {"ratio": w.ratio, "start": w.start, "side": w.side}}
    return _rec("VCHOWLA", g, _verdict(vosper or w is not None), details, S=s)


def _cf_details(v) -> dict:
    return {
        "boundary_size": v.boundary_size, "bound": v.bound, "exterior_size": v.exterior_size,
        "clause_a": v.clause_a, "clause_cf1": v.clause_cf1,
        "clause_cf2": v.clause_cf2, "clause_cf3": v.clause_cf3,
        "vosper": v.vosper, "offending": v.offending,
    }


def verify_cf(g: Group, s: GroupSet, t: GroupSet) -> VerificationRecord:
    try:
        v = verify_prop_cf(g, s, t)
    except PreconditionError as e:
        return _skip("CF", g, str(e), S=s, T=t)
    return _rec("CF", g, _verdict(v.passed), _cf_details(v), S=s, T=t)


def verify_cf_family(g: Group, s: GroupSet) -> VerificationRecord:
    """Every T with 1 <= |G \\ T| <= |<S>| - 1 for one Cauchy S, as one record."""
    if not s.mask & 1:
        return _skip("CF", g, "S must contain the identity", S=s)
    if not is_cauchy(g, s):
        return _skip("CF", g, "S is not a Cauchy subset", S=s)
    q = _closure(g, s.mask).bit_count()
    vosper = is_vosper(g, s)
    counts = {"t_count": 0, "cf1_checked": 0, "cf23_checked": 0,
              "empty_exterior": 0, "empty_exterior_tight": 0}
    failures = []
    n_fail = 0
    full = g.full_mask
    for k in range(1, q):
        for c in combinations(range(g.order), k):
            tmask = full & ~sum(1 << e for e in c)
            v = verify_prop_cf(g, s, GroupSet(g.order, tmask), vosper=vosper, check_cauchy=False)
            counts["t_count"] += 1
            if v.clause_cf1 is None:
                counts["empty_exterior"] += 1
                if vosper and v.boundary_size == v.bound:
                    counts["empty_exterior_tight"] += 1
            else:
                counts["cf1_checked"] += 1
            if v.clause_cf2 is not None:
                counts["cf23_checked"] += 1
            if not v.passed:
                n_fail += 1
                if len(failures) < 5:
                    failures.append({"T_complement": list(c), **_cf_details(v)})
    details = {"q": q, "vosper": vosper, **counts, "fail_count": n_fail,
               "counterexamples": failures}
    return _rec("CF", g, _verdict(n_fail == 0), details, S=s, T=f"all 1<=|G\\T|<={q - 1}")


# -- Wakeford graph identities ---------------------------------------------

def verify_trans(g: Group, b: GroupSet, a: GroupSet, x: int) -> VerificationRecord:
    """mu(B, A) == mu(B, Ax)."""
    if len(a) != len(b) or not b.mask:
        return _skip("TRANS", g, "|A| != |B| or empty", B=b, A=a, x=x)
    ax = translate(g, a, x, "right")
    m1, m2 = mu(g, b, a), mu(g, b, ax)
    return _rec("TRANS", g, _verdict(m1 == m2), {"mu": str(m1), "mu_translated": str(m2)}, B=b, A=a, x=x)


def verify_deg(g: Group, b: GroupSet, a: GroupSet) -> VerificationRecord:
    """Row sizes of the Wakeford graph equal |xA \\ A|; right form recorded too."""
    if len(a) != len(b) or not b.mask:
        return _skip("DEG", g, "|A| != |B| or empty", B=b, A=a)
    graph = build_graph(g, b, a)
    rows = [r.bit_count() for r in graph.rows]
    left = [lam(g, a, x, "left") for x in graph.b_elems]
    right = [lam(g, a, x, "right") for x in graph.b_elems]
    details = {"degrees": rows, "lambda_left": left, "lambda_right": right,
               "left_matches": rows == left, "right_matches": rows == right}
    return _rec("DEG", g, _verdict(rows == left), details, B=b, A=a)


def verify_khc_form(g: Group, b: GroupSet, a: GroupSet) -> VerificationRecord:
    """Complement form of Hall's condition, for every X contained in B."""
    if len(a) != len(b) or not b.mask:
        return _skip("KHC_FORM", g, "|A| != |B| or empty", B=b, A=a)
    if len(b) > MAX_KHC_SIZE:
        return _skip("KHC_FORM", g, f"|B| > {MAX_KHC_SIZE}", B=b, A=a)
    elems = b.elements()
    mismatches = []
    hall_ok = True
    for k in range(len(elems) + 1):
        for xs in combinations(elems, k):
            x = g.set(xs)
            direct, formed = hall_form_check(g, b, a, x)
            if direct != formed:
                mismatches.append(list(xs))
            if formed < len(x):
                hall_ok = False
    exists = analyze(build_graph(g, b, a), "exists").exists
    details = {"subsets": 1 << len(elems), "mismatches": mismatches[:5],
               "hall_condition": hall_ok, "matchable": exists}
    return _rec("KHC_FORM", g, _verdict(not mismatches and hall_ok == exists), details, B=b, A=a)


# -- constructions ---------------------------------------------------------

def losonczy_instance(g: Group, h: GroupSet, a_elem: int) -> tuple[GroupSet, GroupSet]:
    """B = (H \\ {1}) u {a}, A = H, for a proper subgroup H and a outside H."""
    g.check(h)
    g.check_element(a_elem)
    if _closure(g, h.mask) != h.mask:
        raise PreconditionError("H is not a subgroup")
    if not 2 <= len(h) < g.order:
        raise PreconditionError("H must be a proper subgroup with |H| >= 2")
    if a_elem in h:
        raise PreconditionError("a must lie outside H")
    return GroupSet(g.order, (h.mask & ~1) | 1 << a_elem), h


def verify_losonczy(g: Group, h: GroupSet, a_elem: int) -> VerificationRecord:
    try:
        b, a = losonczy_instance(g, h, a_elem)
    except PreconditionError as e:
        return _skip("LOSONCZY", g, str(e), H=h, a=a_elem)
    rep = analyze(build_graph(g, b, a))
    viol = rep.hall_violator
    inside = viol is not None and (viol.mask & ~(h.mask & ~1)) == 0
    details = {"mu": str(rep.mu), "B": b.elements(),
               "hall_violator": None if viol is None else viol.elements(),
               "violator_in_H_minus_1": inside}
    return _rec("LOSONCZY", g, _verdict(rep.mu == 0 and inside), details, H=h, a=a_elem)


def _power(g: Group, r: int, e: int) -> int:
    out = 0
    for _ in range(e):
        out = g.table[out][r]
    return out


def progression_instances(g: Group, r: int, j: int, variant: str = "one",
                          a_elem: int | None = None, min_order: int | None = None
                          ) -> tuple[GroupSet, GroupSet]:
    """The two unique-pairing examples built from powers of r.

    variant "one": (rP, P) with P = {1, r, .., r^j}.
    variant "two": (Q, P) with P = {1, r^2, .., r^(j+1)} and
    Q = {r^2, .., r^(j+1), a}.  ``min_order`` overrides the order floor 2j+6.
    """
    g.check_element(r)
    if j < 0:
        raise PreconditionError("j must be non-negative")
    o = g.elem_order[r]
    if variant == "one":
        floor = j + 2 if min_order is None else min_order
        if o < floor:
            raise PreconditionError(f"order of r is {o} < {floor}")
        p = g.set(_power(g, r, e) for e in range(j + 1))
        return GroupSet(g.order, left_mult_mask(g, r, p.mask)), p
    if variant != "two":
        raise ValueError(f"variant must be 'one' or 'two', got {variant!r}")
    floor = 2 * j + 6 if min_order is None else min_order
    if o < floor:
        raise PreconditionError(f"order of r is {o} < {floor}")
    if a_elem is None:
        raise PreconditionError("variant two needs an element a")
    g.check_element(a_elem)
    powers = [_power(g, r, e) for e in range(2, j + 2)]
    p = g.set([0, *powers])
    banned = p.mask | 1 << _power(g, r, j + 1) | 1 << _power(g, r, j + 2)
    if banned >> a_elem & 1:
        raise PreconditionError("a must avoid P and r^(j+1), r^(j+2)")
    q = g.set([*powers, a_elem])
    if len(q) != len(p):
        raise PreconditionError("Q and P have different sizes")
    return q, p


def verify_prog_example(g: Group, r: int, j: int, variant: str = "one", a_elem: int | None = None,
                        min_order: int | None = None) -> VerificationRecord:
    """mu == 1 for the progression examples.

    With the order floor overridden, results are exploratory and a count
    other than one is recorded as skipped rather than failed.
    """
    sid = "PROG_EXAMPLE_1" if variant == "one" else "PROG_EXAMPLE_2"
    extra = {"r": r, "j": j} if a_elem is None else {"r": r, "j": j, "a": a_elem}
    default_floor = j + 2 if variant == "one" else 2 * j + 6
    exploratory = g.elem_order[r] < default_floor
    try:
        b, a = progression_instances(g, r, j, variant, a_elem, min_order)
    except PreconditionError as e:
        return _skip(sid, g, str(e), **extra)
    m = mu(g, b, a)
    details = {"mu": str(m), "B": b.elements(), "A": a.elements(), "exploratory": exploratory}
    if exploratory and m != 1:
        details["reason"] = "outside the order floor; exploratory"
        return _rec(sid, g, "skipped", details, **extra)
    return _rec(sid, g, _verdict(m == 1), details, **extra)


# -- sweeps ----------------------------------------------------------------

def _subsets(elems: list[int], lo: int, hi: int) -> Iterator[int]:
    for k in range(lo, hi + 1):
        for c in combinations(elems, k):
            yield sum(1 << e for e in c)


def chowla_masks(g: Group, max_size: int) -> list[int]:
    out = []
    for k in range(1, max_size + 1):
        cands = [x for x in range(1, g.order) if g.elem_order[x] >= k + 1]
        out += [sum(1 << e for e in c) for c in combinations(cands, k)]
    return out


def _random_subset(rng: random.Random, n: int, k: int, pool: list[int] | None = None) -> int:
    pool = list(range(n)) if pool is None else pool
    return sum(1 << e for e in rng.sample(pool, k))


@dataclass
class _Family:
    exhaustive: Callable[[Group, int], Iterator[tuple]]
    sample: Callable[[Group, int, random.Random], tuple | None]
    verify: Callable[..., VerificationRecord]


def _gs(g: Group, m: int) -> GroupSet:
    return GroupSet(g.order, m)


def _pairs_same_size(g: Group, bs: Iterable[int]):
    for bm in bs:
        for am in _subsets(list(range(g.order)), bm.bit_count(), bm.bit_count()):
            yield _gs(g, bm), _gs(g, am)


def _sample_b_a(bs: list[int], g: Group, rng: random.Random):
    if not bs:
        return None
    bm = rng.choice(bs)
    return _gs(g, bm), _gs(g, _random_subset(rng, g.order, bm.bit_count()))


@lru_cache(maxsize=256)
def _chowla_cached(g: Group, m: int) -> list[int]:
    return chowla_masks(g, m)


def _karolyi_bs(g: Group, m: int) -> list[int]:
    p = p_of_group(g)
    top = m if p == math.inf else min(m, int(p) - 1)
    return list(_subsets(list(range(1, g.order)), 1, top))


def _id_free(g: Group, m: int) -> list[int]:
    return list(_subsets(list(range(1, g.order)), 1, min(m, g.order - 1)))


def _all_sets(g: Group, m: int) -> list[int]:
    return list(_subsets(list(range(g.order)), 1, min(m, g.order)))


@lru_cache(maxsize=256)
def _cauchy_masks(g: Group, m: int) -> list[int]:
    out = []
    for sm in _subsets(list(range(1, g.order)), 0, min(m, g.order) - 1):
        s = sm | 1
        if _closure(g, s).bit_count() <= MAX_KAPPA_ORDER and is_cauchy(g, _gs(g, s)):
            out.append(s)
    return out


def _losonczy_pairs(g: Group) -> list[tuple[GroupSet, int]]:
    out = []
    for h in enumerate_subgroups(g):
        if 2 <= len(h) < g.order:
            out += [(h, a) for a in range(g.order) if a not in h]
    return out


def _prog1_pairs(g: Group, m: int) -> list[tuple[int, int]]:
    return [(r, j) for r in range(1, g.order) for j in range(0, min(g.elem_order[r] - 2, m - 1) + 1)]


def _prog2_triples(g: Group, m: int, floor: int | None = None) -> list[tuple[int, int, int]]:
    """(r, j, a) admissible for variant two; ``floor`` replaces 2j+6."""
    out = []
    for r in range(1, g.order):
        for j in range(0, m):
            if g.elem_order[r] < (2 * j + 6 if floor is None else max(floor, j + 3)):
                break
            p = 1 | sum(1 << _power(g, r, e) for e in range(2, j + 3))
            out += [(r, j, a) for a in range(g.order) if not p >> a & 1]
    return out


def _kappa_ok(g: Group, sm: int) -> bool:
    return _closure(g, sm | 1).bit_count() <= MAX_KAPPA_ORDER


FAMILIES: dict[str, _Family] = {}


def _register():
    n_all = lambda g: list(range(g.order))  # noqa: E731

    FAMILIES["K1"] = _Family(
        lambda g, m: _pairs_same_size(g, _chowla_cached(g, m)),
        lambda g, m, rng: _sample_b_a(_chowla_cached(g, m), g, rng),
        verify_k1)
    FAMILIES["KAROLYI"] = _Family(
        lambda g, m: _pairs_same_size(g, _karolyi_bs(g, m)),
        lambda g, m, rng: _sample_b_a(_karolyi_bs(g, m), g, rng),
        verify_karolyi)
    FAMILIES["MCP"] = _Family(
        lambda g, m: _pairs_same_size(g, _chowla_cached(g, m)),
        lambda g, m, rng: _sample_b_a(_chowla_cached(g, m), g, rng),
        verify_mcp)
    FAMILIES["MUBB"] = _Family(
        lambda g, m: ((_gs(g, b),) for b in _chowla_cached(g, m)),
        lambda g, m, rng: (_gs(g, rng.choice(_chowla_cached(g, m))),) if _chowla_cached(g, m) else None,
        verify_mubb)

    def eho_ex(g, m):
        for sm in _id_free(g, m):
            if _kappa_ok(g, sm):
                yield (_gs(g, sm), m)

    def eho_sample(g, m, rng):
        ss = [s for s in _id_free(g, m) if _kappa_ok(g, s)]
        if not ss:
            return None
        return _gs(g, rng.choice(ss)), _gs(g, _random_subset(rng, g.order, rng.randint(1, min(m, g.order))))

    FAMILIES["EHO"] = _Family(eho_ex, eho_sample, None)

    def ehol_ex(g, m):
        for sm in _id_free(g, m):
            if _kappa_ok(g, sm):
                yield (_gs(g, sm),)

    def ehol_sample(g, m, rng):
        ss = [s for s in _id_free(g, m) if _kappa_ok(g, s)]
        if not ss:
            return None
        sm = rng.choice(ss)
        return _gs(g, sm), _gs(g, _random_subset(rng, g.order, sm.bit_count()))

    FAMILIES["EHOL"] = _Family(ehol_ex, ehol_sample, None)

    FAMILIES["OLSON_XY"] = _Family(
        lambda g, m: ((_gs(g, t), x, y) for t in _all_sets(g, m) for x in n_all(g) for y in n_all(g)),
        lambda g, m, rng: (_gs(g, _random_subset(rng, g.order, rng.randint(1, min(m, g.order)))),
                           rng.randrange(g.order), rng.randrange(g.order)),
        verify_olson_xy)
    FAMILIES["OLSON_CLIQUE"] = _Family(
        lambda g, m: ((_gs(g, b), _gs(g, c)) for b in _all_sets(g, m) for c in _id_free(g, m)),
        lambda g, m, rng: (_gs(g, _random_subset(rng, g.order, rng.randint(1, min(m, g.order)))),
                           _gs(g, _random_subset(rng, g.order, rng.randint(1, min(m, g.order - 1)),
                                                 list(range(1, g.order))))) if g.order > 1 else None,
        verify_olson_clique)
    for sid, fn in (("CCHOWLA", verify_cchowla), ("VCHOWLA", verify_vchowla)):
        FAMILIES[sid] = _Family(
            lambda g, m: ((_gs(g, s),) for s in _chowla_cached(g, m) if _kappa_ok(g, s)),
            lambda g, m, rng: ((_gs(g, rng.choice(_chowla_cached(g, m))),)
                               if _chowla_cached(g, m) else None),
            fn)

    def cf_sample(g, m, rng):
        ss = _cauchy_masks(g, m)
        if not ss:
            return None
        sm = rng.choice(ss)
        q = _closure(g, sm).bit_count()
        k = rng.randint(1, q - 1)
        return _gs(g, sm), _gs(g, g.full_mask & ~_random_subset(rng, g.order, k))

    FAMILIES["CF"] = _Family(lambda g, m: ((_gs(g, s),) for s in _cauchy_masks(g, m)), cf_sample, None)

    def sample_pair(g, m, rng):
        k = rng.randint(1, min(m, g.order))
        return _gs(g, _random_subset(rng, g.order, k)), _gs(g, _random_subset(rng, g.order, k))

    FAMILIES["TRANS"] = _Family(
        lambda g, m: ((b, a, x) for b, a in _pairs_same_size(g, _all_sets(g, m)) for x in n_all(g)),
        lambda g, m, rng: (*sample_pair(g, m, rng), rng.randrange(g.order)),
        verify_trans)
    FAMILIES["DEG"] = _Family(
        lambda g, m: _pairs_same_size(g, _all_sets(g, m)), sample_pair, verify_deg)
    FAMILIES["KHC_FORM"] = _Family(
        lambda g, m: _pairs_same_size(g, _all_sets(g, m)), sample_pair, verify_khc_form)
    FAMILIES["LOSONCZY"] = _Family(
        lambda g, m: iter(_losonczy_pairs(g)),
        lambda g, m, rng: rng.choice(_losonczy_pairs(g)) if _losonczy_pairs(g) else None,
        verify_losonczy)
    FAMILIES["PROG_EXAMPLE_1"] = _Family(
        lambda g, m: ((r, j, "one") for r, j in _prog1_pairs(g, m)),
        lambda g, m, rng: (*rng.choice(_prog1_pairs(g, m)), "one") if _prog1_pairs(g, m) else None,
        verify_prog_example)
    FAMILIES["PROG_EXAMPLE_2"] = _Family(
        lambda g, m: ((r, j, "two", a) for r, j, a in _prog2_triples(g, m)),
        lambda g, m, rng: ((lambda t: (t[0], t[1], "two", t[2]))(rng.choice(_prog2_triples(g, m)))
                           if _prog2_triples(g, m) else None),
        verify_prog_example)


_register()


def _floor_family(floor: int) -> _Family:
    def ex(g, m):
        return ((r, j, "two", a) for r, j, a in _prog2_triples(g, m, floor))

    def smp(g, m, rng):
        cands = _prog2_triples(g, m, floor)
        return (lambda t: (t[0], t[1], "two", t[2]))(rng.choice(cands)) if cands else None

    return _Family(ex, smp, lambda g, *inst: verify_prog_example(g, *inst, min_order=floor))


def sweep(statement_id: str, groups: Iterable[str | Group], max_set_size: int = 3,
          sample: int | None = None, seed: int = 0, side: str = "right",
          order_floor: int | None = None) -> list[VerificationRecord]:
    """Run one statement's verifier over instance families of each group.

    ``sample=None`` enumerates every instance with sets of size at most
    ``max_set_size``; otherwise ``sample`` instances per group are drawn.
    In exhaustive mode EHO, EHOL and CF emit one record per S covering all T.
    ``order_floor`` replaces the 2j+6 floor of PROG_EXAMPLE_2 (exploratory).
    The full sweep always completes; failures are returned, never raised.
    """
    if statement_id not in FAMILIES:
        raise ValueError(f"unknown statement {statement_id!r}; expected one of {STATEMENT_IDS}")
    fam = FAMILIES[statement_id]
    if order_floor is not None:
        if statement_id != "PROG_EXAMPLE_2":
            raise ValueError("order_floor only applies to PROG_EXAMPLE_2")
        fam = _floor_family(order_floor)
    records: list[VerificationRecord] = []
    for spec in groups:
        g = spec if isinstance(spec, Group) else make_group(spec)
        if g.order > MAX_SWEEP_ORDER:
            raise LimitError(f"sweeps are capped at order {MAX_SWEEP_ORDER}")
        if sample is None:
            for inst in fam.exhaustive(g, max_set_size):
                records.append(_dispatch(statement_id, fam, g, inst, True, side))
        else:
            rng = random.Random(f"{seed}:{statement_id}:{g.spec}")
            for _ in range(sample):
                inst = fam.sample(g, max_set_size, rng)
                if inst is None:
                    break
                records.append(_dispatch(statement_id, fam, g, inst, False, side))
    return records


def _dispatch(sid, fam, g, inst, exhaustive, side) -> VerificationRecord:
    if sid == "EHO":
        return verify_eho_family(g, inst[0], inst[1], side) if exhaustive else verify_eho(g, *inst, side)
    if sid == "EHOL":
        return verify_ehol_family(g, inst[0], side) if exhaustive else verify_ehol(g, *inst, side)
    if sid == "CF":
        return verify_cf_family(g, *inst) if exhaustive else verify_cf(g, *inst)
    if sid in ("OLSON_XY", "OLSON_CLIQUE"):
        return fam.verify(g, *inst, side)
    return fam.verify(g, *inst)


def summarize(records: list[VerificationRecord]) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in records:
        out[r.verdict] += 1
    return out


def replay(record: VerificationRecord | dict, side: str = "right") -> VerificationRecord:
    """Re-run a single-instance record from its embedded instance."""
    d = record.to_dict() if isinstance(record, VerificationRecord) else record
    sid, inst = d["statement_id"], d["instance"]
    g = make_group(inst["group"])
    s = lambda key: g.set(inst[key])  # noqa: E731
    if sid in ("K1", "KAROLYI", "MCP", "DEG", "KHC_FORM"):
        return FAMILIES[sid].verify(g, s("B"), s("A"))
    if sid == "MUBB":
        return verify_mubb(g, s("B"))
    if sid in ("CCHOWLA", "VCHOWLA"):
        return FAMILIES[sid].verify(g, s("S"))
    if sid == "TRANS":
        return verify_trans(g, s("B"), s("A"), inst["x"])
    if sid == "LOSONCZY":
        return verify_losonczy(g, s("H"), inst["a"])
    if sid == "OLSON_XY":
        return verify_olson_xy(g, s("T"), inst["x"], inst["y"], inst.get("side", side))
    if sid == "OLSON_CLIQUE":
        return verify_olson_clique(g, s("B"), s("C"), inst.get("side", side))
    if sid in ("PROG_EXAMPLE_1", "PROG_EXAMPLE_2"):
        variant = "one" if sid == "PROG_EXAMPLE_1" else "two"
        return verify_prog_example(g, inst["r"], inst["j"], variant, inst.get("a"))
    if sid in ("EHO", "EHOL", "CF"):
        if isinstance(inst.get("T"), list):
            if sid == "CF":
                return verify_cf(g, s("S"), s("T"))
            fn = verify_eho if sid == "EHO" else verify_ehol
            return fn(g, s("S"), s("T"), inst.get("side", side))
        if sid == "CF":
            return verify_cf_family(g, s("S"))
        if sid == "EHOL":
            return verify_ehol_family(g, s("S"), inst.get("side", side))
        max_t = int(d["details"]["t_sizes"][1])
        return verify_eho_family(g, s("S"), max_t, inst.get("side", side))
    raise ValueError(f"cannot replay {sid!r}")
