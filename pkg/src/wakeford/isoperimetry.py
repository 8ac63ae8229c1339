"""Isoperimetric connectivity kappa_k(S), boundaries, and the Cauchy/Vosper tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from .errors import LimitError, PreconditionError
from .groups import Group, GroupSet, _closure, iter_bits
from .setops import complement, invert_set, left_mult_mask, mul_masks, right_mult_mask

MAX_KAPPA_ORDER = 24


@dataclass(frozen=True)
class ConnectivityReport:
    k: int
    kappa: int
    fragment: GroupSet | None
    empty_range: bool
    ambient_order: int


def _require_identity(s: GroupSet) -> None:
    if not s.mask & 1:
        raise PreconditionError("S must contain the identity")


def boundary(g: Group, t: GroupSet, s: GroupSet,
             direction: Literal["forward", "backward"] = "forward") -> GroupSet:
    """(TS) \\ T forward, (TS^-1) \\ T backward."""
    g.check(t, s)
    _require_identity(s)
    if direction == "forward":
        moved = mul_masks(g, t.mask, s.mask)
    elif direction == "backward":
        moved = mul_masks(g, t.mask, invert_set(g, s).mask)
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return GroupSet(g.order, moved & ~t.mask)


def exterior(g: Group, t: GroupSet, s: GroupSet) -> GroupSet:
    """G \\ (TS)."""
    g.check(t, s)
    _require_identity(s)
    return GroupSet(g.order, g.full_mask & ~mul_masks(g, t.mask, s.mask))


@lru_cache(maxsize=65536)
def _scan(g: Group, smask: int, ks: tuple[int, ...]) -> tuple[tuple[int, int | None], ...]:
    """Exact kappa_k for every k in ``ks``: (value, fragment mask or None).

    |XS \\ X| and the constraints on X are invariant under X -> hX for h in
    <S>, so the search fixes the identity inside X and afterwards translates
    the smallest minimizers to pick the canonical (size, mask) fragment.
    """
    hmask = _closure(g, smask)
    q = hmask.bit_count()
    if q > MAX_KAPPA_ORDER:
        raise LimitError(f"|<S>| = {q} exceeds the kappa cap {MAX_KAPPA_ORDER}")
    helems = list(iter_bits(hmask))
    others = [h for h in helems if h != 0]
    xs_of = {h: left_mult_mask(g, h, smask) for h in helems}
    kmin = min(ks)
    cap = q - kmin
    # per k: best value, size of smallest minimizers, list of those minimizers
    best = {k: (q + 1, 0, []) for k in ks}

    def visit(xmask: int, xsmask: int, size: int) -> None:
        val = xsmask.bit_count() - size
        span = xsmask.bit_count()
        for k in ks:
            if size >= k and span <= q - k:
                bv, bs, found = best[k]
                if val < bv or (val == bv and size < bs):
                    best[k] = (val, size, [xmask])
                elif val == bv and size == bs:
                    found.append(xmask)

    def dfs(start: int, xmask: int, xsmask: int, size: int) -> None:
        visit(xmask, xsmask, size)
        for idx in range(start, len(others)):
            h = others[idx]
            nxt = xsmask | xs_of[h]
            if nxt.bit_count() <= cap:
                dfs(idx + 1, xmask | 1 << h, nxt, size + 1)

    if xs_of[0].bit_count() <= cap:
        dfs(0, 1, xs_of[0], 1)

    out = []
    for k in ks:
        val, _, found = best[k]
        if not found:
            out.append((q - k + 1, None))
            continue
        frag = min(left_mult_mask(g, h, m) for m in found for h in helems)
        out.append((val, frag))
    return tuple(out)


def subgroup_order(g: Group, s: GroupSet) -> int:
    return _closure(g, s.mask).bit_count()


def kappa(g: Group, s: GroupSet, k: int) -> ConnectivityReport:
    """kappa_k(S) = min |XS \\ X| over X in <S> with |X| >= k and |XS| <= |<S>| - k.

    When no X qualifies the value is |<S>| - k + 1 and ``empty_range`` is set.
    """
    g.check(s)
    _require_identity(s)
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    (val, frag), = _scan(g, s.mask, (k,))
    q = subgroup_order(g, s)
    return ConnectivityReport(
        k=k,
        kappa=val,
        fragment=None if frag is None else GroupSet(g.order, frag),
        empty_range=frag is None,
        ambient_order=q,
    )


def kappas(g: Group, s: GroupSet, ks=(1, 2)) -> dict[int, int]:
    """Several kappa_k values from a single subset sweep."""
    g.check(s)
    _require_identity(s)
    return {k: v for k, (v, _) in zip(ks, _scan(g, s.mask, tuple(ks)))}


def is_cauchy(g: Group, s: GroupSet) -> bool:
    return kappas(g, s, (1,))[1] == len(s) - 1


def is_vosper(g: Group, s: GroupSet) -> bool:
    return kappas(g, s, (2,))[2] >= len(s)


@dataclass(frozen=True)
class Classification:
    cauchy: bool
    vosper: bool
    kappa1: int
    kappa2: int
    degenerate: bool


def classify_connectivity(g: Group, s: GroupSet) -> Classification:
    """Cauchy and Vosper flags for S (identity required); |S| = 1 is degenerate."""
    ks = kappas(g, s, (1, 2))
    return Classification(
        cauchy=ks[1] == len(s) - 1,
        vosper=ks[2] >= len(s),
        kappa1=ks[1],
        kappa2=ks[2],
        degenerate=len(s) == 1,
    )


# -- cofinite inverse statement --------------------------------------------

@dataclass
class CfVerdict:
    """Outcome of the cofinite-set checks for one (S, T).

    A clause is None when it does not apply to the instance.
    """
    boundary_size: int
    bound: int
    exterior_size: int
    clause_a: bool
    clause_cf1: bool | None
    vosper: bool
    clause_cf2: bool | None = None
    clause_cf3: bool | None = None
    offending: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c is not False for c in (self.clause_a, self.clause_cf1,
                                            self.clause_cf2, self.clause_cf3))


def verify_prop_cf(g: Group, s: GroupSet, t: GroupSet, *, vosper: bool | None = None,
                   check_cauchy: bool = True) -> CfVerdict:
    """Check the boundary bound and the coset/equality conclusions for T.

    Preconditions: identity in S, S Cauchy, and 1 <= |G \\ T| <= |<S>| - 1.
    The (cf1)-(cf3) clauses only apply when the exterior G \\ TS is non-empty.
    """
    g.check(s, t)
    _require_identity(s)
    hmask = _closure(g, s.mask)
    q = hmask.bit_count()
    tbar = complement(g, t)
    if not 1 <= len(tbar) <= q - 1:
        raise PreconditionError(f"need 1 <= |G \\ T| <= |<S>|-1 = {q - 1}, got {len(tbar)}")
    if check_cauchy and not is_cauchy(g, s):
        raise PreconditionError("S is not a Cauchy subset")
    if vosper is None:
        vosper = is_vosper(g, s)
    ts = mul_masks(g, t.mask, s.mask)
    bd = (ts & ~t.mask).bit_count()
    ext = g.full_mask & ~ts
    need = len(s) - 1
    verdict = CfVerdict(
        boundary_size=bd,
        bound=need,
        exterior_size=ext.bit_count(),
        clause_a=bd >= need,
        clause_cf1=None,
        vosper=vosper,
    )
    if not verdict.clause_a:
        verdict.offending["boundary"] = list(iter_bits(ts & ~t.mask))
    if not ext:
        return verdict
    inv = g.inv
    cf1 = True
    for a in iter_bits(ext):
        shifted = right_mult_mask(g, ext, inv[a])
        if shifted & ~hmask:
            cf1 = False
            verdict.offending["cf1_a"] = a
            break
    verdict.clause_cf1 = cf1
    if vosper and bd == need:
        back = mul_masks(g, ext, invert_set(g, s).mask)
        verdict.clause_cf2 = back == tbar.mask
        verdict.clause_cf3 = back.bit_count() == ext.bit_count() + len(s) - 1
        if not verdict.clause_cf2 or not verdict.clause_cf3:
            verdict.offending["exterior_times_s_inverse"] = list(iter_bits(back))
    return verdict
