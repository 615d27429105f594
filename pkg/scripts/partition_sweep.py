"""Classify small graph states by the multipartite measure over every partition.

Prints, for each graph, the value of ``e`` on all set partitions of its
vertices grouped by block count, and cross-checks each value against the
brute-force local-subgroup rank.

    python scripts/partition_sweep.py --max-n 5
"""
from __future__ import annotations

import argparse
from collections import defaultdict
from dataclasses import dataclass

from stabsplit import GraphAdjacency, all_partitions, e_multi, from_graph
from stabsplit.oracle import brute_force_local_rank, enumerate_group


def path(n):
    return [(i, i + 1) for i in range(n - 1)]


def ring(n):
    return path(n) + [(n - 1, 0)]


def star(n):
    return [(0, i) for i in range(1, n)]


def complete(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


FAMILIES = {"path": path, "ring": ring, "star": star, "complete": complete}


@dataclass
class SweepConfig:
    min_n: int = 3
    max_n: int = 5
    families: tuple[str, ...] = ("path", "ring", "star", "complete")
    check_oracle: bool = True


def sweep(cfg: SweepConfig) -> list[dict]:
    out = []
    for fam in cfg.families:
        for n in range(cfg.min_n, cfg.max_n + 1):
            if fam == "ring" and n < 3:
                continue
            s = from_graph(GraphAdjacency.from_edges(n, FAMILIES[fam](n)))
            elements = list(enumerate_group(s)) if cfg.check_oracle else None
            by_k = defaultdict(list)
            for part in all_partitions(n):
                e = e_multi(s, part).value
                if cfg.check_oracle:
                    brute = n - brute_force_local_rank(s, part, elements)
                    if brute != e:
                        raise AssertionError(f"{fam}{n} {part}: fast {e} != brute {brute}")
                by_k[part.k].append((str(part), e))
            out.append({"graph": f"{fam}{n}", "n": n, "by_k": dict(by_k)})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--families", nargs="+", default=list(FAMILIES), choices=list(FAMILIES))
    ap.add_argument("--no-oracle", action="store_true")
    ap.add_argument("--full", action="store_true", help="list every partition, not just per-k ranges")
    args = ap.parse_args()
    cfg = SweepConfig(args.min_n, args.max_n, tuple(args.families), not args.no_oracle)
    for row in sweep(cfg):
        print(f"{row['graph']}")
        for k in sorted(row["by_k"], reverse=True):
            vals = row["by_k"][k]
            es = sorted({e for _, e in vals})
            print(f"  k={k}: {len(vals):3d} partitions, e in {es}")
            if args.full:
                for part, e in vals:
                    print(f"      {part:<20} {e}")


if __name__ == "__main__":
    main()
