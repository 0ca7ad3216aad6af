"""Look for a lattice whose complement graph has a 5-cycle component.

A negative answer only covers lattices up to the chosen size.
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from rrbkit.constructions import MAX_SEARCH_SIZE, graph_from_edges, search_complement_graph
from rrbkit.formats import render_table


@dataclass
class SearchConfig:
    max_size: int = 8
    mode: str = "components"
    cycle_length: int = 5


def run(cfg: SearchConfig) -> dict:
    k = cfg.cycle_length
    target = graph_from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    t0 = time.perf_counter()
    res = search_complement_graph(target, cfg.max_size, cfg.mode)
    out = {**asdict(cfg), "found": res.found, "lattices_checked": res.lattices_checked,
           "seconds": round(time.perf_counter() - t0, 2)}
    if res.found:
        out["lattice"] = render_table(res.lattice)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=SearchConfig.max_size,
                    help=f"largest lattice to try (at most {MAX_SEARCH_SIZE})")
    ap.add_argument("--mode", choices=["components", "exact"], default=SearchConfig.mode)
    ap.add_argument("--cycle-length", type=int, default=SearchConfig.cycle_length)
    ns = ap.parse_args()
    result = run(SearchConfig(ns.max_size, ns.mode, ns.cycle_length))
    table = result.pop("lattice", None)
    print(json.dumps(result, indent=2))
    if table:
        print(table)


if __name__ == "__main__":
    main()
