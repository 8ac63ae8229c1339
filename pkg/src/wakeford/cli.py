"""Command-line front end.

    python -m wakeford mu --group cyclic:10 --b 1..4 --a 0..3
    python -m wakeford classify --group cyclic:10 --s 1,3
    python -m wakeford verify LOSONCZY --max-order 24

Reports are JSON (CSV for sweep summaries).  Exit status: 0 success,
1 when a verification record fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .errors import DomainError, SpecParseError, WakefordError
from .groups import Group, GroupSet, catalog, make_group
from .isoperimetry import MAX_KAPPA_ORDER, classify_connectivity, kappa, subgroup_order
from .pairing import analyze, build_graph
from .setops import adjoin_identity, is_chowla, progression_witness
from .theorems import STATEMENT_IDS, summarize, sweep

COMMANDS = ("mu", "matchable", "kappa", "classify", "verify", "counterexample")
COUNTEREXAMPLES = ("losonczy",)

_ITEM = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str | None = None
    groups: tuple[str, ...] = ()
    b: str | None = None
    a: str | None = None
    s: str | None = None
    t: str | None = None
    k: int = 1
    side: str = "right"
    mode: str = "exact"
    max_order: int | None = None
    max_set_size: int = 3
    sample: int | None = None
    seed: int = 0
    order_floor: int | None = None
    format: str = "json"
    out: str | None = field(default=None, compare=False)

    def echo(self) -> dict:
        """Everything that determines the report; the output path is excluded."""
        d = asdict(self)
        d.pop("out")
        d["groups"] = list(self.groups)
        return d


def parse_set_literal(g: Group, text: str) -> GroupSet:
    """Comma-separated element indices or inclusive ranges "i..j"."""
    if text is None:
        raise SpecParseError("missing set literal")
    if not text.strip():
        return g.empty()
    mask = 0
    for item in text.split(","):
        m = _ITEM.match(item)
        if m is None:
            raise SpecParseError(f"bad set item {item.strip()!r}; expected INT or INT..INT")
        lo = int(m.group(1))
        hi = lo if m.group(2) is None else int(m.group(2))
        if hi < lo:
            raise SpecParseError(f"empty range {item.strip()!r}")
        if hi >= g.order:
            raise DomainError(
                f"set item {item.strip()!r} is out of range for a group of order {g.order}")
        for x in range(lo, hi + 1):
            mask |= 1 << x
    return GroupSet(g.order, mask)


def _group_info(g: Group) -> dict:
    return {"spec": g.spec, "order": g.order, "abelian": g.is_abelian}


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _single_group(cfg: RunConfig) -> Group:
    if len(cfg.groups) != 1:
        raise UsageError(f"{cfg.command} needs exactly one --group")
    return make_group(cfg.groups[0])


def _sweep_groups(cfg: RunConfig) -> list[str]:
    if cfg.groups and cfg.max_order is not None:
        raise UsageError("give either --group or --max-order, not both")
    if cfg.groups:
        return list(cfg.groups)
    if cfg.max_order is None:
        raise UsageError("sweeps need --group or --max-order")
    return catalog(cfg.max_order)


def _matching(cfg: RunConfig, mode: str) -> tuple[dict, dict, dict, int]:
    g = _single_group(cfg)
    b = parse_set_literal(g, _need(cfg.b, "--b"))
    a = parse_set_literal(g, _need(cfg.a, "--a"))
    rep = analyze(build_graph(g, b, a), mode)
    result = {
        "exists": rep.exists,
        "mu": str(rep.mu),
        "mu_exact": rep.mu_exact,
        "witness": None if rep.witness is None else [list(p) for p in rep.witness],
        "hall_violator": None if rep.hall_violator is None else rep.hall_violator.elements(),
        "max_degree": rep.max_degree,
        "max_codegree": rep.max_codegree,
    }
    return _group_info(g), {"B": b.elements(), "A": a.elements()}, result, 0


def _kappa(cfg: RunConfig):
    g = _single_group(cfg)
    s = parse_set_literal(g, _need(cfg.s, "--s"))
    rep = kappa(g, s, cfg.k)
    result = {
        "k": rep.k,
        "kappa": rep.kappa,
        "fragment": None if rep.fragment is None else rep.fragment.elements(),
        "empty_range": rep.empty_range,
        "ambient_order": rep.ambient_order,
    }
    return _group_info(g), {"S": s.elements(), "k": cfg.k}, result, 0


def _classify(cfg: RunConfig):
    g = _single_group(cfg)
    s = parse_set_literal(g, _need(cfg.s, "--s"))
    if not s.mask:
        raise UsageError("--s must be non-empty")
    wit = progression_witness(g, s)
    st = adjoin_identity(s)
    result = {
        "chowla": is_chowla(g, s),
        "progression": wit is not None,
        "progression_witness": None if wit is None else {
            "ratio": wit.ratio, "start": wit.start, "length": wit.length, "side": wit.side},
        "S_tilde": st.elements(),
        "subgroup_order": subgroup_order(g, st),
    }
    if result["subgroup_order"] <= MAX_KAPPA_ORDER:
        c = classify_connectivity(g, st)
        result.update(cauchy=c.cauchy, vosper=c.vosper, kappa1=c.kappa1, kappa2=c.kappa2,
                      degenerate=c.degenerate)
    else:
        result.update(cauchy=None, vosper=None, kappa1=None, kappa2=None, degenerate=None,
                      note=f"|<S~>| exceeds {MAX_KAPPA_ORDER}; connectivity not computed")
    return _group_info(g), {"S": s.elements()}, result, 0


def _verify(cfg: RunConfig, statement_id: str):
    specs = _sweep_groups(cfg)
    records = sweep(statement_id, specs, max_set_size=cfg.max_set_size, sample=cfg.sample,
                    seed=cfg.seed, side=cfg.side, order_floor=cfg.order_floor)
    per_group = {}
    for r in records:
        per_group.setdefault(r.instance["group"], []).append(r)
    result = {
        "statement_id": statement_id,
        "totals": summarize(records),
        "per_group": {spec: summarize(rs) for spec, rs in per_group.items()},
        "generator": "random.Random (MT19937) seeded with '<seed>:<statement_id>:<group spec>'",
    }
    status = 1 if result["totals"]["fail"] else 0
    return specs, {}, result, status, records


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, report text)."""
    if cfg.format not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    records = []
    if cfg.command in ("mu", "matchable"):
        if cfg.command == "matchable":
            mode = "exists"
        else:
            mode = cfg.mode
        group, inputs, result, status = _matching(cfg, mode)
    elif cfg.command == "kappa":
        group, inputs, result, status = _kappa(cfg)
    elif cfg.command == "classify":
        group, inputs, result, status = _classify(cfg)
    elif cfg.command == "verify":
        if cfg.target not in STATEMENT_IDS:
            raise UsageError(f"unknown statement {cfg.target!r}; choose from {', '.join(STATEMENT_IDS)}")
        group, inputs, result, status, records = _verify(cfg, cfg.target)
    elif cfg.command == "counterexample":
        if cfg.target not in COUNTEREXAMPLES:
            raise UsageError(f"unknown counterexample {cfg.target!r}")
        if not cfg.groups and cfg.max_order is None:
            cfg = RunConfig(**{**asdict(cfg), "max_order": 24})
        group, inputs, result, status, records = _verify(cfg, "LOSONCZY")
        result["all_mu_zero"] = all(r.details.get("mu") == "0" for r in records)
    else:
        raise UsageError(f"unknown command {cfg.command!r}")

    if cfg.format == "csv":
        if cfg.command not in ("verify", "counterexample"):
            raise UsageError("CSV output is only available for sweep summaries")
        return status, _csv_summary(result)
    report = {
        "version": __version__,
        "command": cfg.command,
        "config": cfg.echo(),
        "group": group,
        "inputs": inputs,
        "result": result,
        "records": [r.to_dict() for r in records],
    }
    return status, json.dumps(report, indent=2) + "\n"


def _csv_summary(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statement_id", "group", "pass", "fail", "skipped"])
    sid = result["statement_id"]
    for spec, c in result["per_group"].items():
        w.writerow([sid, spec, c["pass"], c["fail"], c["skipped"]])
    t = result["totals"]
    w.writerow([sid, "TOTAL", t["pass"], t["fail"], t["skipped"]])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wakeford", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?", help="statement id for verify, name for counterexample")
    p.add_argument("--group", action="append", default=[],
                   help="group spec; repeatable for sweeps")
    p.add_argument("--b")
    p.add_argument("--a")
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--mode", choices=("exact", "exists"), default="exact")
    p.add_argument("--max-order", type=int)
    p.add_argument("--max-set-size", type=int, default=3)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order-floor", type=int,
                   help="override the variant-two order floor (results are exploratory)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    for name in ("sample", "seed", "max_set_size", "max_order"):
        v = getattr(ns, name)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    return RunConfig(
        command=ns.command, target=ns.target, groups=tuple(ns.group), b=ns.b, a=ns.a, s=ns.s,
        t=ns.t, k=ns.k, side=ns.side, mode=ns.mode, max_order=ns.max_order,
        max_set_size=ns.max_set_size, sample=ns.sample, seed=ns.seed,
        order_floor=ns.order_floor, format=ns.format, out=ns.out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, text = run(cfg)
    except (UsageError, WakefordError, ValueError) as e:
        print(f"wakeford {ns.command}: error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
