"""Time canonicalize and the multipartite measure on random states and fit the scaling exponent.

    python scripts/benchmark_scaling.py --sizes 250 500 1000 2000 --repeats 3
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from stabsplit import Partition, canonicalize, e_multi
from stabsplit.clifford import random_stabilizer_state


@dataclass
class BenchmarkConfig:
    sizes: list[int] = field(default_factory=lambda: [250, 500, 1000, 2000])
    repeats: int = 3
    blocks: int = 4  # for the multipartite timing
    seed: int = 0


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(cfg: BenchmarkConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in cfg.sizes:
        s = random_stabilizer_state(n, rng)
        bip = Partition.bipartition(n, range(n // 2))
        blocks = tuple(tuple(int(q) for q in chunk) for chunk in np.array_split(np.arange(n), cfg.blocks))
        multi = Partition(n, blocks)
        rows.append({
            "n": n,
            "canonicalize_s": best_of(lambda: canonicalize(s, bip), cfg.repeats),
            "e_multi_s": best_of(lambda: e_multi(s, multi), cfg.repeats),
        })
        print(f"n={n:5d}  canonicalize {rows[-1]['canonicalize_s']:.3f} s  e_multi(k={cfg.blocks}) {rows[-1]['e_multi_s']:.3f} s")
    logn = np.log([r["n"] for r in rows])
    fits = {
        key: float(np.polyfit(logn, np.log([r[key] for r in rows]), 1)[0])
        for key in ("canonicalize_s", "e_multi_s")
    }
    print("fitted exponents: " + ", ".join(f"{k} {v:.2f}" for k, v in fits.items()))
    return {"config": asdict(cfg), "rows": rows, "exponents": fits}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=BenchmarkConfig().sizes)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--blocks", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="write results to this file")
    args = ap.parse_args()
    result = run(BenchmarkConfig(args.sizes, args.repeats, args.blocks, args.seed))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2)


if __name__ == "__main__":
    main()
