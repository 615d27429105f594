"""``stabsplit`` command-line tool.

Exit status: 0 success, 1 input or validation error, 2 oracle size limit,
3 ``verify`` found a mismatch between the fast path and the oracle.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import clifford, oracle
from .canonical import canonicalize, extract_epr
from .entanglement import (
    MAX_PARTITION_QUBITS,
    all_partitions,
    e_multi,
    entropy_bipartite,
    graph_bipartite_rank,
)
from .io import InputError, Report, format_stabilizer, parse_inline_generators, read_graph, read_stabilizer
from .pauli import PauliParseError, parse
from .stabilizer import Partition, PartitionError, StabilizerError, from_graph, measure_pauli

MODES = ("entropy", "multi", "canonical", "extract-epr", "graph-rank", "measure", "verify", "partitions")

EXIT_INPUT, EXIT_SIZE, EXIT_MISMATCH = 1, 2, 3


class VerifyMismatch(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabsplit",
        description="Entanglement of stabilizer states from their generators.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--stab", help="stabilizer file ('n <count>' then one Pauli per line)")
        src.add_argument("--graph", help="graph file ('graph <n>' then 'u v' edges)")
        src.add_argument("--gens", help="inline generators, comma separated, e.g. XX,ZZ")
        p.add_argument("--partition", help="blocks separated by '|', e.g. '0,1|2'")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=None)
        if mode == "entropy":
            p.add_argument("--fast", action="store_true", help="kernel-rank route, no witnesses")
        if mode == "measure":
            p.add_argument("--pauli", required=True, help="Pauli to measure, e.g. ZII or -XZ")
            p.add_argument("--outcome", choices=("+1", "-1", "random"), default="random")
        if mode == "partitions":
            p.add_argument("--max-blocks", type=int, default=None)
            p.add_argument("--max-qubits", type=int, default=MAX_PARTITION_QUBITS)
            p.add_argument("--jobs", type=int, default=1)
    return parser


def _load(args):
    if args.stab:
        return read_stabilizer(args.stab), None
    if args.graph:
        g = read_graph(args.graph)
        return from_graph(g), g
    return parse_inline_generators(args.gens), None


def _partition(args, n: int, required: bool = True, k: int | None = None) -> Partition | None:
    if args.partition is None:
        if required:
            raise InputError("--partition is required for this mode", source="--partition")
        return None
    try:
        part = Partition.parse(args.partition, n)
    except PartitionError as exc:
        raise InputError(str(exc), source="--partition") from None
    if k is not None and part.k != k:
        raise InputError(f"expected {k} blocks, got {part.k}", source="--partition")
    return part


def run(args) -> tuple[Report, str]:
    """Execute one request; returns the structured report and its text rendering."""
    s, graph = _load(args)
    n = s.n
    mode = args.mode

    if mode == "entropy":
        part = _partition(args, n, k=2)
        rep = entropy_bipartite(s, part, witnesses=not args.fast)
        report = Report(n, str(part), mode, rep.value, rep.method.value, witnesses=rep.witnesses())
        text = f"E = {rep.value}"
        if rep.canonical is not None:
            text += "\n" + rep.canonical.table()
        return report, text

    if mode == "multi":
        part = _partition(args, n)
        rep = e_multi(s, part)
        ranks = rep.extra["block_ranks"]
        report = Report(
            n, str(part), mode, rep.value, rep.method.value, witnesses=rep.witnesses(),
            extra={"block_ranks": ranks, "local_rank": rep.extra["local_rank"]},
        )
        lines = [f"e_A = {rep.value}", f"|S_loc| = {rep.extra['local_rank']}"]
        lines += [f"|S_{j}| = {r}  (identity on {','.join(map(str, blk))})" for j, (r, blk) in enumerate(zip(ranks, part.blocks))]
        return report, "\n".join(lines)

    if mode == "canonical":
        part = _partition(args, n, k=2)
        cf = canonicalize(s, part)
        wit = {
            "S_A": [str(g) for g in cf.local_a],
            "S_B": [str(g) for g in cf.local_b],
            "pairs": [[str(g), str(gb)] for g, gb in cf.pairs],
        }
        return Report(n, str(part), mode, cf.p, "canonical_pairs", witnesses=wit), cf.table()

    if mode == "extract-epr":
        part = _partition(args, n, k=2)
        ex = extract_epr(canonicalize(s, part))
        circuits = {
            "A": clifford.circuit_to_json(ex.circuit_a),
            "B": clifford.circuit_to_json(ex.circuit_b),
        }
        report = Report(
            n, str(part), mode, len(ex.pair_sites), "canonical_pairs", circuits=circuits,
            extra={"pair_sites": [list(p) for p in ex.pair_sites], "product_sites": ex.product_sites},
        )
        text = "\n".join(
            [f"pairs = {len(ex.pair_sites)}", "pair sites: " + " ".join(f"({a},{b})" for a, b in ex.pair_sites),
             "circuit A:"] + [f"  {g}" for g in ex.circuit_a] + ["circuit B:"] + [f"  {g}" for g in ex.circuit_b]
        )
        return report, text

    if mode == "graph-rank":
        if graph is None:
            raise InputError("graph-rank needs --graph", source="--graph")
        part = _partition(args, n, k=2)
        r = graph_bipartite_rank(graph, part)
        return Report(n, str(part), mode, r, "graph_rank"), f"rank = {r}"

    if mode == "measure":
        try:
            m = parse(args.pauli, n)
        except PauliParseError as exc:
            raise InputError(str(exc), source="--pauli") from None
        forced = None if args.outcome == "random" else int(args.outcome)
        res = measure_pauli(s, m, forced_outcome=forced, rng=np.random.default_rng(args.seed))
        report = Report(
            n, None, mode, res.outcome, None, witnesses={"generators": res.state.labels()},
            extra={"deterministic": res.deterministic, "measured": str(m)},
        )
        text = (
            f"outcome = {res.outcome:+d} ({'deterministic' if res.deterministic else 'random'})\n"
            + format_stabilizer(res.state).rstrip()
        )
        return report, text

    if mode == "verify":
        return _verify(args, s)

    if mode == "partitions":
        return _sweep(args, s)

    raise InputError(f"unknown mode {mode}")


def _verify(args, s) -> tuple[Report, str]:
    n = s.n
    part = _partition(args, n)
    loc = e_multi(s, part)
    oracle_rank = oracle.brute_force_local_rank(s, part)
    checks = {"local_rank": (loc.extra["local_rank"], oracle_rank)}
    if part.k == 2:
        fast = entropy_bipartite(s, part).value
        dense = oracle.entanglement_entropy_dense(oracle.statevector(s), part)
        checks["entropy"] = (fast, dense)
        value, oracle_value = fast, dense
    else:
        value, oracle_value = loc.value, n - oracle_rank
    ok = all(abs(a - b) <= 1e-9 for a, b in checks.values())
    shown = int(round(oracle_value)) if abs(oracle_value - round(oracle_value)) <= 1e-9 else oracle_value
    text = f"fast={value} oracle={shown} {'OK' if ok else 'MISMATCH'}"
    for name, (a, b) in checks.items():
        text += f"\n  {name}: fast={a} oracle={b:.12g}"
    report = Report(
        n, str(part), "verify", value, "brute_force",
        extra={"ok": ok, "checks": {k: [a, float(b)] for k, (a, b) in checks.items()}},
    )
    if not ok:
        raise VerifyMismatch((report, text))
    return report, text


def _sweep(args, s) -> tuple[Report, str]:
    n = s.n
    parts = list(all_partitions(n, args.max_blocks, limit=args.max_qubits))
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        values = list(pool.map(lambda p: e_multi(s, p).value, parts))
    # finer partitions (more blocks) first; enumeration order breaks ties
    order = sorted(range(len(parts)), key=lambda i: (-parts[i].k, i))
    rows = [{"partition": str(parts[i]), "k": parts[i].k, "e": values[i]} for i in order]
    width = max(len(r["partition"]) for r in rows)
    lines = [f"{'partition':<{width}}  k  e_A"]
    lines += [f"{r['partition']:<{width}}  {r['k']}  {r['e']}" for r in rows]
    return Report(n, None, "partitions", None, "kernel_rank", extra={"table": rows}), "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, text = run(args)
        status = 0
    except VerifyMismatch as exc:
        (report, text), status = exc.args[0], EXIT_MISMATCH
    except oracle.OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (InputError, StabilizerError, PartitionError, PauliParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.to_json() if args.format == "json" else text)
    return status


if __name__ == "__main__":
    sys.exit(main())
