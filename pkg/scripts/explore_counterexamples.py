"""Tabulate the counterexample families found by the sweeps.

Prints, for each family, how many instances break the literal statement and
the simplest instance of each kind.

    python3 scripts/explore_counterexamples.py --max-n 16
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from wakeford.groups import _closure, catalog, make_group
from wakeford.isoperimetry import is_cauchy, verify_prop_cf
from wakeford.pairing import mu
from wakeford.theorems import progression_instances, sweep


@dataclass
class ExploreConfig:
    max_n: int = 16
    catalog_order: int = 12


def unique_pairing_variant_two(cfg: ExploreConfig) -> None:
    counts: Counter = Counter()
    for n in range(6, cfg.max_n + 1):
        g = make_group(f"cyclic:{n}")
        for r in (r for r in range(1, n) if gcd(r, n) == 1):
            for j in range(0, (n - 6) // 2 + 1):
                banned = {0} | {r * e % n for e in range(2, j + 3)} | {r * (j + 1) % n}
                for a in (x for x in range(n) if x not in banned):
                    q, p = progression_instances(g, r, j, "two", a)
                    counts[(j, mu(g, q, p))] += 1
    print("variant two: (j, mu) -> instances")
    for (j, m), c in sorted(counts.items()):
        print(f"  j={j:2d} mu={m:5d}  x{c}")


def chowla_connectivity(cfg: ExploreConfig) -> None:
    specs = catalog(cfg.catalog_order)
    for sid in ("CCHOWLA", "VCHOWLA"):
        recs = sweep(sid, specs, max_set_size=4)
        bad = [r for r in recs if r.verdict == "fail"]
        print(f"{sid}: {len(bad)} of {len(recs)} fail")
        by_q: Counter = Counter()
        for r in bad:
            g = make_group(r.instance["group"])
            s = g.set(r.instance["S"])
            by_q[(len(s), _closure(g, s.mask | 1).bit_count())] += 1
        for (k, q), c in sorted(by_q.items()):
            print(f"  |S|={k} |<S>|={q}: {c}")


def cofinite(cfg: ExploreConfig) -> None:
    kinds: Counter = Counter()
    for n in range(5, min(cfg.max_n, 12) + 1):
        g = make_group(f"cyclic:{n}")
        for k in range(0, 4):
            for rest in combinations(range(1, n), k):
                s = g.set((0,) + rest)
                if not is_cauchy(g, s):
                    continue
                q = _closure(g, s.mask).bit_count()
                for size in range(1, q):
                    for tbar in combinations(range(n), size):
                        t = g.set(x for x in range(n) if x not in tbar)
                        v = verify_prop_cf(g, s, t, check_cauchy=False)
                        if not v.clause_a:
                            kinds["boundary bound, exterior empty"] += 1
                        if v.clause_cf1 is False:
                            kinds["single coset, <S> proper"] += 1
                        kinds["checked"] += 1
    print("cofinite boundary checks:", dict(kinds))


def eho(cfg: ExploreConfig) -> None:
    recs = sweep("EHO", [f"cyclic:{n}" for n in range(5, cfg.max_n + 1)], max_set_size=4)
    for r in recs:
        if r.verdict == "fail":
            print("EHO fail:", r.instance["group"], "S =", r.instance["S"],
                  "examples:", r.details.get("counterexamples_right", [])[:2])


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--catalog-order", type=int, default=12)
    a = p.parse_args()
    cfg = ExploreConfig(a.max_n, a.catalog_order)
    unique_pairing_variant_two(cfg)
    chowla_connectivity(cfg)
    cofinite(cfg)
    eho(cfg)


if __name__ == "__main__":
    main()
