"""Regenerate the bundled regression corpus under tests/data/.

    python scripts/make_corpus.py [--seed 2024] [--out tests/data]
"""
import argparse
from pathlib import Path

import numpy as np

from stabsplit.clifford import random_stabilizer_state
from stabsplit.io import format_graph, format_stabilizer
from stabsplit.stabilizer import GraphAdjacency, StabilizerGroup

NAMED = {
    "epr": ["XX", "ZZ"],
    "ghz3": ["XXX", "ZZI", "IZZ"],
    "cluster4": ["XZII", "ZXZI", "IZXZ", "IIZX"],
    "zero2": ["ZI", "IZ"],
    "minus_plus": ["-ZI", "IX"],
}

GRAPHS = {
    "edge2": (2, [(0, 1)]),
    "path3": (3, [(0, 1), (1, 2)]),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "path4": (4, [(0, 1), (1, 2), (2, 3)]),
    "star4": (4, [(0, 1), (0, 2), (0, 3)]),
    "ring5": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--out", default="tests/data")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, labels in NAMED.items():
        s = StabilizerGroup.from_labels(labels)
        (out / f"{name}.stab").write_text(format_stabilizer(s, name))
    for name, (n, edges) in GRAPHS.items():
        (out / f"{name}.graph").write_text(format_graph(GraphAdjacency.from_edges(n, edges)))
    rng = np.random.default_rng(args.seed)
    for n in range(2, 9):
        for rep in range(2):
            s = random_stabilizer_state(n, rng)
            comment = f"random Clifford conjugation of <Z...Z>, n={n}, seed={args.seed}"
            (out / f"random{n}_{rep}.stab").write_text(format_stabilizer(s, comment))


if __name__ == "__main__":
    main()
