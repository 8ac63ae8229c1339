"""Set algebra over a finite group and the set classifications built on it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import PreconditionError
from .groups import Group, GroupSet, iter_bits

Side = Literal["left", "right"]


def _check_side(side: str) -> None:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def left_mult_mask(g: Group, x: int, mask: int) -> int:
    """Mask of x.S for the set S encoded by ``mask``."""
    row = g.table[x]
    out = 0
    for s in iter_bits(mask):
        out |= 1 << row[s]
    return out


def right_mult_mask(g: Group, mask: int, x: int) -> int:
    """Mask of S.x."""
    table = g.table
    out = 0
    for s in iter_bits(mask):
        out |= 1 << table[s][x]
    return out


def mul_masks(g: Group, xm: int, sm: int) -> int:
    out = 0
    table = g.table
    selems = list(iter_bits(sm))
    for x in iter_bits(xm):
        row = table[x]
        for s in selems:
            out |= 1 << row[s]
    return out


def mul_sets(g: Group, x: GroupSet, s: GroupSet) -> GroupSet:
    """The product set XS = {x.s : x in X, s in S}."""
    g.check(x, s)
    return GroupSet(g.order, mul_masks(g, x.mask, s.mask))


def adjoin_identity(s: GroupSet) -> GroupSet:
    return GroupSet(s.group_order, s.mask | 1)


def invert_set(g: Group, s: GroupSet) -> GroupSet:
    g.check(s)
    inv = g.inv
    out = 0
    for x in s:
        out |= 1 << inv[x]
    return GroupSet(g.order, out)


def complement(g: Group, s: GroupSet) -> GroupSet:
    g.check(s)
    return GroupSet(g.order, g.full_mask & ~s.mask)


def translate(g: Group, s: GroupSet, a: int, side: Side = "right") -> GroupSet:
    """``Sa`` for side='right', ``aS`` for side='left'."""
    g.check(s)
    g.check_element(a)
    _check_side(side)
    if side == "right":
        return GroupSet(g.order, right_mult_mask(g, s.mask, a))
    return GroupSet(g.order, left_mult_mask(g, a, s.mask))


def is_chowla(g: Group, s: GroupSet, min_order: int | None = None) -> bool:
    """Identity-free and every element of order >= |S|+1.

    ``min_order`` overrides the |S|+1 threshold for experiments.
    """
    g.check(s)
    if not s.mask:
        raise PreconditionError("Chowla test needs a non-empty set")
    if s.mask & 1:
        return False
    need = len(s) + 1 if min_order is None else min_order
    return all(g.elem_order[x] >= need for x in s)


@dataclass(frozen=True)
class ProgressionWitness:
    ratio: int
    start: int
    length: int
    side: Side

    def elements(self, g: Group) -> list[int]:
        out, cur = [], self.start
        for _ in range(self.length):
            out.append(cur)
            cur = g.table[cur][self.ratio] if self.side == "right" else g.table[self.ratio][cur]
        return out


def _progression_mask(g: Group, a: int, r: int, k: int, side: str) -> int:
    table = g.table
    mask, cur = 0, a
    for _ in range(k):
        bit = 1 << cur
        if mask & bit:
            return -1
        mask |= bit
        cur = table[cur][r] if side == "right" else table[r][cur]
    return mask


def progression_witness(g: Group, s: GroupSet) -> ProgressionWitness | None:
    """Find (side, ratio, start) with S = {a, ar, .., ar^(k-1)} or {a, ra, ..}.

    Right progressions are preferred, then the smallest ratio, then the
    smallest start.  A valid start lies in S and a valid ratio maps it to
    another element of S, so only |S|^2 candidates per side are tried.
    """
    g.check(s)
    if not s.mask:
        raise PreconditionError("progression test needs a non-empty set")
    k = len(s)
    if k == 1:
        return ProgressionWitness(ratio=0, start=next(iter(s)), length=1, side="right")
    elems = s.elements()
    table, inv = g.table, g.inv
    for side in ("right", "left"):
        cands = set()
        for a in elems:
            for b in elems:
                if a != b:
                    r = table[inv[a]][b] if side == "right" else table[b][inv[a]]
                    cands.add((r, a))
        for r, a in sorted(cands):
            if _progression_mask(g, a, r, k, side) == s.mask:
                return ProgressionWitness(ratio=r, start=a, length=k, side=side)
    return None


def is_progression(g: Group, s: GroupSet) -> bool:
    return progression_witness(g, s) is not None


def lam(g: Group, t: GroupSet, x: int, side: Side = "right") -> int:
    """|Tx \\ T| (right) or |xT \\ T| (left)."""
    g.check(t)
    g.check_element(x)
    _check_side(side)
    moved = right_mult_mask(g, t.mask, x) if side == "right" else left_mult_mask(g, x, t.mask)
    return (moved & ~t.mask).bit_count()

