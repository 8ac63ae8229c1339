"""Finite groups as Cayley tables, and bitmask subsets of them.

Elements are the integers ``0..n-1`` and ``0`` is always the identity.  The
multiplication table is a numpy array; pure-Python inner loops go through
:attr:`Group.table`, a list-of-lists copy built on first use.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainError, LimitError, SpecParseError

MAX_ORDER = 10_000
MAX_SUBGROUP_ORDER = 256
MAX_ASSOC_CHECK = 256

QUATERNION_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 0, 3, 2, 5, 4, 7, 6),
    (2, 3, 1, 0, 6, 7, 5, 4),
    (3, 2, 0, 1, 7, 6, 4, 5),
    (4, 5, 7, 6, 1, 0, 2, 3),
    (5, 4, 6, 7, 0, 1, 3, 2),
    (6, 7, 4, 5, 3, 2, 1, 0),
    (7, 6, 5, 4, 2, 3, 0, 1),
)
QUATERNION_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GroupSet:
    """A subset of ``{0, .., group_order-1}`` stored as an int bitmask."""

    group_order: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.group_order:
            raise DomainError(f"mask has bits outside 0..{self.group_order - 1}")

    @classmethod
    def of(cls, group_order: int, elems: Iterable[int]) -> GroupSet:
        mask = 0
        for e in elems:
            if not 0 <= e < group_order:
                raise DomainError(f"element {e} outside 0..{group_order - 1}")
            mask |= 1 << e
        return cls(group_order, mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.group_order and bool(self.mask >> x & 1)

    def elements(self) -> list[int]:
        return list(iter_bits(self.mask))

    def issubset(self, other: GroupSet) -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: GroupSet) -> GroupSet:
        return GroupSet(self.group_order, self.mask | other.mask)

    def __and__(self, other: GroupSet) -> GroupSet:
        return GroupSet(self.group_order, self.mask & other.mask)

    def __sub__(self, other: GroupSet) -> GroupSet:
        return GroupSet(self.group_order, self.mask & ~other.mask)

    def __repr__(self) -> str:
        return f"GroupSet({self.group_order}, {self.elements()})"


@dataclass(frozen=True, eq=False)
class Group:
    order: int
    mul: np.ndarray = field(repr=False)
    inv: tuple[int, ...] = field(repr=False)
    elem_order: tuple[int, ...] = field(repr=False)
    spec: str = ""

    @cached_property
    def table(self) -> list[list[int]]:
        return self.mul.tolist()

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def empty(self) -> GroupSet:
        return GroupSet(self.order, 0)

    def full(self) -> GroupSet:
        return GroupSet(self.order, self.full_mask)

    def set(self, elems: Iterable[int]) -> GroupSet:
        return GroupSet.of(self.order, elems)

    def check(self, *sets: GroupSet) -> None:
        for s in sets:
            if s.group_order != self.order:
                raise DomainError(
                    f"set over a group of order {s.group_order} used with {self.spec!r}"
                )

    def check_element(self, x: int) -> None:
        if not 0 <= x < self.order:
            raise DomainError(f"element {x} outside 0..{self.order - 1} of {self.spec!r}")

    def __repr__(self) -> str:
        return f"Group({self.spec!r}, order={self.order})"


# -- construction ----------------------------------------------------------

def _index_dtype(n: int):
    return np.uint16 if n <= np.iinfo(np.uint16).max else np.int32


def _cyclic(n: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, n), dtype=_index_dtype(n))
    for a in range(n):
        out[a] = (idx + a) % n
    return out


def _dihedral(n: int) -> np.ndarray:
    # i < n is r^i, i >= n is s.r^(i-n); r^a s = s r^-a
    idx = np.arange(2 * n, dtype=np.int64)
    refl = idx >= n
    e = idx % n
    a, b = e[:, None], e[None, :]
    exp = np.where(refl[None, :], b - a, a + b) % n
    out = np.where(refl[:, None] ^ refl[None, :], exp + n, exp)
    return out.astype(_index_dtype(2 * n))


def _symmetric(n: int) -> np.ndarray:
    perms = list(permutations(range(n)))
    rank = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    out = np.empty((m, m), dtype=_index_dtype(m))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            out[i, j] = rank[tuple(p[q[k]] for k in range(n))]
    return out


def _product(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    # (i1, i2) is stored at index i1 * n2 + i2
    n1, n2 = len(m1), len(m2)
    n = n1 * n2
    out = np.empty((n, n), dtype=_index_dtype(n))
    m1 = m1.astype(np.int64)
    m2 = m2.astype(np.int64)
    for i1 in range(n1):
        block = m1[i1][None, :, None] * n2 + m2[:, None, :]
        out[i1 * n2:(i1 + 1) * n2] = block.reshape(n2, n)
    return out


_ATOM = re.compile(r"(cyclic|dihedral|symmetric):([0-9]+)")


def _parse(text: str, pos: int) -> tuple[np.ndarray, str, int]:
    """Recursive-descent parser; returns (table, canonical spec, next position)."""
    if text.startswith("quaternion", pos):
        return np.array(QUATERNION_TABLE, dtype=np.uint16), "quaternion", pos + 10
    if text.startswith("product:(", pos):
        left, lspec, pos = _parse(text, pos + 9)
        if not text.startswith(",", pos):
            raise SpecParseError(f"expected ',' at position {pos} in {text!r}")
        right, rspec, pos = _parse(text, pos + 1)
        if not text.startswith(")", pos):
            raise SpecParseError(f"expected ')' at position {pos} in {text!r}")
        if len(left) * len(right) > MAX_ORDER:
            raise LimitError(f"order {len(left) * len(right)} exceeds cap {MAX_ORDER}")
        return _product(left, right), f"product:({lspec},{rspec})", pos + 1
    m = _ATOM.match(text, pos)
    if m is None:
        raise SpecParseError(f"cannot parse group spec {text!r} at position {pos}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise SpecParseError(f"{kind} needs a positive integer, got {n}")
    spec = f"{kind}:{n}"
    if kind == "cyclic":
        if n > MAX_ORDER:
            raise LimitError(f"order {n} exceeds cap {MAX_ORDER}")
        table = _cyclic(n)
    elif kind == "dihedral":
        if n < 2:
            raise SpecParseError("dihedral:n requires n >= 2")
        if 2 * n > MAX_ORDER:
            raise LimitError(f"order {2 * n} exceeds cap {MAX_ORDER}")
        table = _dihedral(n)
    else:
        if not 2 <= n <= 5:
            raise SpecParseError("symmetric:n requires 2 <= n <= 5")
        table = _symmetric(n)
    return table, spec, m.end()


def _element_orders(mul: np.ndarray) -> tuple[int, ...]:
    n = len(mul)
    idx = np.arange(n)
    power = idx.copy()
    order = np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        hit = (power == 0) & (order == 0)
        order[hit] = k
        if (order > 0).all():
            return tuple(int(v) for v in order)
        power = mul[power, idx].astype(np.int64)
        k += 1
        if k > n:
            raise ValueError("table is not a group: some element has no finite order")


def _check_group_axioms(mul: np.ndarray) -> None:
    n = len(mul)
    idx = np.arange(n)
    if not ((mul[0] == idx).all() and (mul[:, 0] == idx).all()):
        raise ValueError("element 0 is not a two-sided identity")
    if n <= MAX_ASSOC_CHECK:
        for row in (mul, mul.T):
            if not all(len(np.unique(r)) == n for r in row):
                raise ValueError("table is not a Latin square")
        m = mul.astype(np.int32)
        for a in range(n):
            # (a.b).c == a.(b.c) for all b, c
            if not (m[m[a]] == m[a][m]).all():
                raise ValueError(f"associativity fails for a={a}")


def group_from_table(mul, spec: str = "custom") -> Group:
    mul = np.asarray(mul)
    n = len(mul)
    if mul.shape != (n, n) or n < 1:
        raise ValueError("multiplication table must be a non-empty square")
    mul = mul.astype(_index_dtype(n))
    _check_group_axioms(mul)
    inv_arr = np.argmin(mul, axis=1)
    idx = np.arange(n)
    if not ((mul[idx, inv_arr] == 0).all() and (mul[inv_arr, idx] == 0).all()):
        raise ValueError("some element has no two-sided inverse")
    inv = tuple(int(v) for v in inv_arr)
    return Group(n, mul, inv, _element_orders(mul), spec)


def make_group(spec: str) -> Group:
    """Build a group from a descriptor such as ``"product:(cyclic:2,dihedral:3)"``.

    Grammar::

        spec := "cyclic:" INT | "dihedral:" INT | "symmetric:" INT
              | "quaternion" | "product:(" spec "," spec ")"
    """
    text = spec.strip()
    table, canon, end = _parse(text, 0)
    if end != len(text):
        raise SpecParseError(f"trailing characters in group spec {spec!r}")
    if len(table) > MAX_ORDER:
        raise LimitError(f"order {len(table)} exceeds cap {MAX_ORDER}")
    return group_from_table(table, canon)


def catalog(max_order: int) -> list[str]:
    """Group specs of order <= max_order used by sweeps.

    Base groups are cyclic:n (n >= 1), dihedral:n (n >= 2), symmetric:3..5 and
    quaternion; products are taken of two non-trivial base groups, listed once
    per unordered pair.
    """
    base: list[tuple[str, int]] = []
    base += [(f"cyclic:{n}", n) for n in range(1, max_order + 1)]
    base += [(f"dihedral:{n}", 2 * n) for n in range(2, max_order // 2 + 1)]
    base += [(f"symmetric:{n}", math.factorial(n)) for n in (3, 4, 5) if math.factorial(n) <= max_order]
    if max_order >= 8:
        base.append(("quaternion", 8))
    out = [s for s, _ in base]
    nontrivial = [(s, n) for s, n in base if n >= 2]
    for i, (s1, n1) in enumerate(nontrivial):
        for s2, n2 in nontrivial[i:]:
            if n1 * n2 <= max_order:
                out.append(f"product:({s1},{s2})")
    return out


# -- element and subgroup primitives ---------------------------------------

def element_order(g: Group, x: int) -> int:
    g.check_element(x)
    return g.elem_order[x]


def _closure(g: Group, mask: int) -> int:
    """Smallest subgroup containing the elements of ``mask``."""
    table = g.table
    gens = list(iter_bits(mask))
    seen = 1
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            row = table[h]
            for s in gens:
                y = row[s]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def subgroup_generated(g: Group, xs: GroupSet) -> GroupSet:
    g.check(xs)
    return GroupSet(g.order, _closure(g, xs.mask))


def enumerate_subgroups(g: Group) -> list[GroupSet]:
    """All subgroups sorted by (size, mask); joins of cyclic subgroups."""
    if g.order > MAX_SUBGROUP_ORDER:
        raise LimitError(f"subgroup enumeration is capped at order {MAX_SUBGROUP_ORDER}")
    cyclic = sorted({_closure(g, 1 << x) for x in range(g.order)})
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c & ~h:
                    j = _closure(g, h | c)
                    if j not in found:
                        found.add(j)
                        nxt.append(j)
        frontier = nxt
    return [GroupSet(g.order, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def p_of_group(g: Group) -> int | float:
    """Smallest order of a subgroup M with 2 <= |M| < |G|, or ``math.inf``.

    Minimal non-trivial subgroups are cyclic of prime order, so only cyclic
    subgroups are inspected.
    """
    if g.order > MAX_SUBGROUP_ORDER:
        raise LimitError(f"p(G) is capped at order {MAX_SUBGROUP_ORDER}")
    best = math.inf
    for o in set(g.elem_order):
        if o >= 2:
            best = min(best, _smallest_prime_factor(o))
    return best if best < g.order else math.inf


def _smallest_prime_factor(n: int) -> int:
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return d
    return n
