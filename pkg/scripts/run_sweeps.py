"""Run every statement's sweep over a group catalog and write a summary table.

    python3 scripts/run_sweeps.py --max-order 12 --max-set-size 3 --out results/
"""
from __future__ import annotations

import argparse
import csv
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from wakeford import __version__
from wakeford.groups import catalog
from wakeford.theorems import STATEMENT_IDS, summarize, sweep


@dataclass
class SweepConfig:
    max_order: int = 12
    max_set_size: int = 3
    sample: int | None = None
    seed: int = 0
    side: str = "right"
    statements: tuple[str, ...] = STATEMENT_IDS


def run(cfg: SweepConfig, out: Path) -> list[dict]:
    out.mkdir(parents=True, exist_ok=True)
    specs = catalog(cfg.max_order)
    rows = []
    for sid in cfg.statements:
        t0 = time.perf_counter()
        recs = sweep(sid, specs, max_set_size=cfg.max_set_size, sample=cfg.sample,
                     seed=cfg.seed, side=cfg.side)
        counts = summarize(recs)
        rows.append({"statement_id": sid, **counts, "seconds": round(time.perf_counter() - t0, 2)})
        fails = [r.to_dict() for r in recs if r.verdict == "fail"]
        with open(out / f"{sid}_fails.json", "w") as fh:
            json.dump({"version": __version__, "config": asdict(cfg), "fails": fails}, fh, indent=1)
        print(f"{sid:15s} pass={counts['pass']:7d} fail={counts['fail']:6d} "
              f"skipped={counts['skipped']:7d}  {rows[-1]['seconds']}s", flush=True)
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--max-set-size", type=int, default=3)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--only", nargs="*", choices=STATEMENT_IDS)
    p.add_argument("--out", type=Path, default=Path("results"))
    a = p.parse_args()
    cfg = SweepConfig(a.max_order, a.max_set_size, a.sample, a.seed, a.side,
                      tuple(a.only) if a.only else STATEMENT_IDS)
    run(cfg, a.out)


if __name__ == "__main__":
    main()
