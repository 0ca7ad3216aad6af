"""Exhaustive hom-set bijection check over small posets and small bands."""
import argparse
import time
from dataclasses import dataclass

from rrbkit.adjunction import FCache, verify_adjunction
from rrbkit.fixtures import poset_fixtures, rrb_fixtures


@dataclass
class SweepConfig:
    max_poset: int = 3
    max_band: int = 3
    variety: str = "rrb"


def run(cfg: SweepConfig) -> dict:
    posets = poset_fixtures(cfg.max_poset)
    bands = rrb_fixtures(cfg.max_band)
    if cfg.variety == "semilattice":
        bands = [a for a in bands
                 if all(a.apply("mul", (x, y)) == a.apply("mul", (y, x))
                        for x in a.universe for y in a.universe)]
    cache = FCache(cfg.variety)
    totals = {"pairs": 0, "failed": 0, "unit_squares": 0, "naturality_checks": 0}
    t0 = time.perf_counter()
    for p in posets:
        for a in bands:
            report = verify_adjunction(p, a, cfg.variety, probe_structures=posets,
                                       probe_algebras=bands, cache=cache)
            totals["pairs"] += 1
            totals["failed"] += not report.passed
            totals["unit_squares"] += report.unit_squares
            totals["naturality_checks"] += report.naturality_checks
    totals["seconds"] = round(time.perf_counter() - t0, 2)
    return totals


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-poset", type=int, default=SweepConfig.max_poset)
    ap.add_argument("--max-band", type=int, default=SweepConfig.max_band)
    ap.add_argument("--variety", choices=["rrb", "semilattice"], default=SweepConfig.variety)
    ns = ap.parse_args()
    totals = run(SweepConfig(ns.max_poset, ns.max_band, ns.variety))
    for k, v in totals.items():
        print(f"{k:18s} {v}")
    raise SystemExit(1 if totals["failed"] else 0)


if __name__ == "__main__":
    main()
