"""Wakeford graphs: existence of pairings, Hall certificates, exact counts.

A Wakeford pairing from B onto A is a bijection phi with b.phi(b) not in A.
The relation {(b, a) : ba not in A} is stored as one bitmask per b over the
positions of A's sorted element list, so perfect matchings of it are exactly
the pairings and their number is the permanent of the 0/1 biadjacency matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Literal

from .errors import LimitError, PreconditionError
from .groups import Group, GroupSet, iter_bits
from .setops import adjoin_identity, complement, invert_set, mul_masks

MAX_EXACT = 20
MAX_NAIVE = 8


@dataclass(frozen=True, eq=False)
class WakefordGraph:
    group: Group
    b_elems: tuple[int, ...]
    a_elems: tuple[int, ...]
    rows: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.b_elems)

    def neighbours(self, i: int) -> list[int]:
        return [self.a_elems[j] for j in iter_bits(self.rows[i])]

    def row_set(self, b: int) -> GroupSet:
        """R(b) as a subset of the group."""
        i = self.b_elems.index(b)
        return self.group.set(self.neighbours(i))

    def image(self, x: GroupSet) -> GroupSet:
        """R(X) for X a subset of B."""
        cols = 0
        for b in x:
            cols |= self.rows[self.b_elems.index(b)]
        return self.group.set(self.a_elems[j] for j in iter_bits(cols))

    def column_degrees(self) -> list[int]:
        return [sum(r >> j & 1 for r in self.rows) for j in range(self.size)]


@dataclass(frozen=True)
class MatchingReport:
    exists: bool
    witness: tuple[tuple[int, int], ...] | None
    mu: int
    mu_exact: bool
    hall_violator: GroupSet | None
    max_degree: int
    max_codegree: int


def build_graph(g: Group, b: GroupSet, a: GroupSet) -> WakefordGraph:
    g.check(b, a)
    if len(b) != len(a):
        raise PreconditionError(f"|B|={len(b)} differs from |A|={len(a)}")
    if not b.mask:
        raise PreconditionError("B and A must be non-empty")
    b_elems = tuple(b.elements())
    a_elems = tuple(a.elements())
    table = g.table
    rows = []
    for x in b_elems:
        row = table[x]
        bits = 0
        for j, y in enumerate(a_elems):
            if not a.mask >> row[y] & 1:
                bits |= 1 << j
        rows.append(bits)
    return WakefordGraph(g, b_elems, a_elems, tuple(rows))


# -- maximum matching ------------------------------------------------------

def max_matching(rows: tuple[int, ...] | list[int], n_cols: int) -> list[int]:
    """Kuhn's augmenting-path matching; returns match_col[row] (or -1).

    Rows and columns are scanned in ascending order, so the result is a
    deterministic function of the input.
    """
    match_row = [-1] * n_cols

    def augment(i: int, seen: list[bool]) -> bool:
        for j in iter_bits(rows[i]):
            if seen[j]:
                continue
            seen[j] = True
            if match_row[j] < 0 or augment(match_row[j], seen):
                match_row[j] = i
                return True
        return False

    for i in range(len(rows)):
        augment(i, [False] * n_cols)
    match_col = [-1] * len(rows)
    for j, i in enumerate(match_row):
        if i >= 0:
            match_col[i] = j
    return match_col


def hall_violator_rows(rows, match_col: list[int], n_cols: int) -> int:
    """Rows reachable from unmatched rows along alternating paths, as a mask.

    With a maximum matching, this set Z satisfies |N(Z)| = |Z| - #unmatched.
    """
    match_row = [-1] * n_cols
    for i, j in enumerate(match_col):
        if j >= 0:
            match_row[j] = i
    reached = 0
    seen_cols = 0
    stack = [i for i, j in enumerate(match_col) if j < 0]
    for i in stack:
        reached |= 1 << i
    while stack:
        i = stack.pop()
        for j in iter_bits(rows[i] & ~seen_cols):
            seen_cols |= 1 << j
            k = match_row[j]
            if k >= 0 and not reached >> k & 1:
                reached |= 1 << k
                stack.append(k)
    return reached


# -- permanent -------------------------------------------------------------

def _ryser(rows: list[int], n: int) -> int:
    """Permanent of an n x n 0/1 matrix by inclusion-exclusion over column
    subsets, visited in Gray-code order so each step moves one column."""
    col_rows = [[i for i in range(n) if rows[i] >> j & 1] for j in range(n)]
    sums = [0] * n
    zeros = n
    subset = 0
    total = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        bit = 1 << j
        subset ^= bit
        if subset & bit:
            for i in col_rows[j]:
                if sums[i] == 0:
                    zeros -= 1
                sums[i] += 1
        else:
            for i in col_rows[j]:
                sums[i] -= 1
                if sums[i] == 0:
                    zeros += 1
        if zeros == 0:
            prod = 1
            for v in sums:
                prod *= v
            if subset.bit_count() & 1:
                total -= prod
            else:
                total += prod
    return -total if n & 1 else total


def _peel_forced(rows: dict[int, int]) -> dict[int, int] | None:
    """Remove rows or columns with a single possible partner.

    Returns the reduced row map, or None when some row or column has no
    partner left (permanent zero).  Forced pairs contribute a factor of one.
    """
    rows = dict(rows)
    while True:
        if any(r == 0 for r in rows.values()):
            return None
        cols = 0
        counts: dict[int, int] = {}
        owner: dict[int, int] = {}
        for i, r in rows.items():
            cols |= r
            for j in iter_bits(r):
                counts[j] = counts.get(j, 0) + 1
                owner[j] = i
        if cols.bit_count() < len(rows):
            return None
        forced = None
        for i, r in rows.items():
            if r & (r - 1) == 0:
                forced = (i, r)
                break
        if forced is None:
            for j, c in counts.items():
                if c == 1:
                    forced = (owner[j], 1 << j)
                    break
        if forced is None:
            return rows
        i, bit = forced
        del rows[i]
        for k in rows:
            rows[k] &= ~bit


def _components(rows: dict[int, int]) -> list[dict[int, int]]:
    remaining = dict(rows)
    out = []
    while remaining:
        i0 = min(remaining)
        comp = {i0: remaining.pop(i0)}
        cols = comp[i0]
        grew = True
        while grew:
            grew = False
            for i in [i for i, r in remaining.items() if r & cols]:
                comp[i] = remaining.pop(i)
                cols |= comp[i]
                grew = True
        out.append(comp)
    return out


def permanent01(rows, n_cols: int | None = None) -> int:
    """Exact permanent of a square 0/1 matrix given as row bitmasks.

    Forced pairs are peeled off and the remainder split into connected
    components; each component must be at most ``MAX_EXACT`` wide.
    """
    rows = list(rows)
    if not rows:
        return 1
    reduced = _peel_forced(dict(enumerate(rows)))
    if reduced is None:
        return 0
    total = 1
    for comp in _components(reduced):
        cols = 0
        for r in comp.values():
            cols |= r
        col_list = list(iter_bits(cols))
        if len(col_list) != len(comp):
            return 0
        if len(comp) > MAX_EXACT:
            raise LimitError(
                f"exact counting needs an irreducible block of size {len(comp)} > {MAX_EXACT}"
            )
        index = {c: k for k, c in enumerate(col_list)}
        packed = []
        for r in comp.values():
            p = 0
            for j in iter_bits(r):
                p |= 1 << index[j]
            packed.append(p)
        total *= _ryser(packed, len(packed))
        if total == 0:
            return 0
    return total


# -- public operations -----------------------------------------------------

def analyze(graph: WakefordGraph, count_mode: Literal["exact", "exists"] = "exact") -> MatchingReport:
    """Decide matchability with a witness or Hall violator, and count pairings.

    In ``"exists"`` mode ``mu`` is a 0/1 placeholder and ``mu_exact`` is False.
    """
    if count_mode not in ("exact", "exists"):
        raise ValueError(f"count_mode must be 'exact' or 'exists', got {count_mode!r}")
    n = graph.size
    rows = graph.rows
    match_col = max_matching(rows, n)
    exists = all(j >= 0 for j in match_col)
    degrees = [r.bit_count() for r in rows]
    codegrees = graph.column_degrees()
    witness = violator = None
    if exists:
        witness = tuple((graph.b_elems[i], graph.a_elems[j]) for i, j in enumerate(match_col))
    else:
        z = hall_violator_rows(rows, match_col, n)
        violator = graph.group.set(graph.b_elems[i] for i in iter_bits(z))
    if count_mode == "exact":
        mu = permanent01(rows, n) if exists else 0
        mu_exact = True
    else:
        mu, mu_exact = int(exists), False
    return MatchingReport(
        exists=exists,
        witness=witness,
        mu=mu,
        mu_exact=mu_exact,
        hall_violator=violator,
        max_degree=max(degrees),
        max_codegree=max(codegrees),
    )


def mu(g: Group, b: GroupSet, a: GroupSet) -> int:
    """Number of Wakeford pairings from B onto A."""
    return analyze(build_graph(g, b, a), "exact").mu


def mu_naive(g: Group, b: GroupSet, a: GroupSet) -> int:
    """Count pairings by trying all |B|! bijections against the Cayley table."""
    g.check(b, a)
    if len(b) != len(a):
        raise PreconditionError(f"|B|={len(b)} differs from |A|={len(a)}")
    if len(b) > MAX_NAIVE:
        raise LimitError(f"naive counting is capped at |B| <= {MAX_NAIVE}")
    bs, amask, table = b.elements(), a.mask, g.table
    count = 0
    for image in permutations(a.elements()):
        if all(not amask >> table[x][y] & 1 for x, y in zip(bs, image)):
            count += 1
    return count


def hall_form_check(g: Group, b: GroupSet, a: GroupSet, x: GroupSet) -> tuple[int, int]:
    """(|R(X)|, |(C X~) \\ C|) with C the complement of A^-1 and X~ = X u {1}."""
    g.check(b, a, x)
    if not x.issubset(b):
        raise PreconditionError("X must be a subset of B")
    graph = build_graph(g, b, a)
    direct = len(graph.image(x))
    c = complement(g, invert_set(g, a))
    moved = mul_masks(g, c.mask, adjoin_identity(x).mask)
    return direct, (moved & ~c.mask).bit_count()

