"""Command line interface.

Exit codes: 0 ok, 1 usage, 2 input/parse error, 3 size cap exceeded,
4 failed check.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from itertools import combinations

from . import config
from .blocks import all_blocks, blocks_intersect
from .cuts import is_cut_vertex
from .exceptions import BunemanError, CapExceeded, InternalInconsistency
from .graph import STRATEGIES, enumerate_vertices
from .io import graph_dot, graph_json, load_split_file, split_name, tree_dot, xtree_newick
from .suite import random_compatible_system, random_system, run_checks
from .trees import block_cut_tree, reduce_to_xtree

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_CHECK = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(parser, defaults):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--verify", action="store_true", default=d(False), help="check every postcondition exhaustively")
    parser.add_argument("--strategy", choices=STRATEGIES, default=d("incremental"), help="vertex enumeration strategy")
    parser.add_argument("--max-splits", type=int, default=d(None), help="refuse systems with more splits")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks and random systems")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="buneman-blocks", description="Buneman graphs, their cut vertices, blocks and X-trees.")
    _global_flags(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("graph", parents=[common], help="build the Buneman graph")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH", help="write DOT ('-' for stdout)")
    p.add_argument("--json", metavar="PATH", help="write JSON adjacency ('-' for stdout)")

    p = sub.add_parser("cuts", parents=[common], help="list cut vertices")
    p.add_argument("file")

    p = sub.add_parser("blocks", parents=[common], help="list blocks and their intersections")
    p.add_argument("file")

    p = sub.add_parser("tree", parents=[common], help="block-cut tree as DOT")
    p.add_argument("file")

    p = sub.add_parser("xtree", parents=[common], help="X-tree as Newick")
    p.add_argument("file")

    p = sub.add_parser("check", parents=[common], help="run all self-checks")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="N", help="check N random systems instead of a file")
    p.add_argument("--n-max", type=int, default=7, help="largest ground set for --random")
    p.add_argument("--m-max", type=int, default=6, help="most splits for --random")

    p = sub.add_parser("bench", parents=[common], help="time brute force against incremental enumeration")
    p.add_argument("file", nargs="?")
    p.add_argument("--m", type=int, default=12, help="number of splits of the generated systems")
    p.add_argument("--n", type=int, default=14, help="ground set size of the generated systems")
    p.add_argument("--systems", type=int, default=5)
    return parser


def _write(text, path, out):
    if path == "-":
        out.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _names(system, indices):
    return "{" + ",".join(split_name(system, i) for i in indices) + "}"


def _labels(system, xs):
    return "{" + ",".join(system.ground.elements[x] for x in xs) + "}"


def _vertex_name(G, phi):
    labs = G.labels_at(phi)
    tag = f" [{','.join(G.system.ground.elements[x] for x in labs)}]" if labs else ""
    return f"v{G.position[phi]}{tag}"


def cmd_graph(args, out):
    G = enumerate_vertices(load_split_file(args.file), args.strategy)
    out.write(f"vertices: {len(G)}\nedges: {len(G.edges)}\n")
    if args.dot:
        _write(graph_dot(G), args.dot, out)
    if args.json:
        _write(graph_json(G), args.json, out)
    return EXIT_OK


def cmd_cuts(args, out):
    system = load_split_file(args.file)
    G = enumerate_vertices(system, args.strategy)
    n = 0
    for phi in G.vertices:
        a = is_cut_vertex(G, phi)
        if not a.is_cut:
            continue
        n += 1
        verdicts = " ".join(f"{k}={'T' if v else 'F'}" for k, v in a.verdicts.items())
        out.write(f"{_vertex_name(G, phi)} sigma_phi={_names(system, a.sigma_phi)} components={a.counts['i']} {verdicts}\n")
        for key in ("ii", "iv"):
            first, rest = a.witnesses[key]
            out.write(f"  witness {key}: {_names(system, first)} | {_names(system, rest)}\n")
        first, rest = a.witnesses["v"]
        out.write(f"  witness v: {_labels(system, first)} | {_labels(system, rest)}\n")
        first, rest = a.witnesses["vi"]
        out.write(f"  witness vi: {{{','.join(f'v{G.position[p]}' for p in first)}}} | {{{','.join(f'v{G.position[p]}' for p in rest)}}}\n")
        (s1, s2), _ = a.paired["sigma_v"]
        (m1, m2), (x1, x2) = a.paired["sigma_min_x"]
        out.write(f"  paired sigma/V: {_names(system, s1)} | {_names(system, s2)}\n")
        out.write(f"  paired sigma_min/X: {_names(system, m1)} with {_labels(system, x2)} ; {_names(system, m2)} with {_labels(system, x1)}\n")
    out.write(f"cut vertices: {n}\n")
    return EXIT_OK


def cmd_blocks(args, out):
    system = load_split_file(args.file)
    G = enumerate_vertices(system, args.strategy)
    blocks = all_blocks(G)
    out.write("component -> block size\n")
    for cid, comp, size in blocks.psi_table():
        out.write(f"  {_names(system, comp)} -> {size}\n")
    for b in blocks:
        members = ",".join(_vertex_name(G, phi) for phi in b.vertices)
        out.write(f"block {_names(system, b.component)}: {members}\n")
    out.write("intersections\n")
    for b0, b1 in combinations(blocks, 2):
        shared = blocks_intersect(G, b0.component_id, b1.component_id)
        if shared is not None:
            out.write(f"  {_names(system, b0.component)} & {_names(system, b1.component)} = {_vertex_name(G, shared)}\n")
    return EXIT_OK


def cmd_tree(args, out):
    G = enumerate_vertices(load_split_file(args.file), args.strategy)
    out.write(tree_dot(block_cut_tree(G)))
    return EXIT_OK


def cmd_xtree(args, out):
    G = enumerate_vertices(load_split_file(args.file), args.strategy)
    out.write(xtree_newick(reduce_to_xtree(block_cut_tree(G))))
    return EXIT_OK


def cmd_check(args, out):
    if args.random is None and args.file is None:
        raise _UsageError("check needs a file or --random N")
    if args.random is not None:
        rng = random.Random(args.seed)
        systems = [random_system(rng, args.n_max, args.m_max) for _ in range(args.random)]
    else:
        systems = [load_split_file(args.file)]
    failed = 0
    for k, system in enumerate(systems):
        results = run_checks(system, args.strategy, seed=args.seed)
        bad = [r for r in results if not r.ok]
        if args.random is None:
            for r in results:
                out.write(f"{'PASS' if r.ok else 'FAIL'} {r.name} {r.detail}".rstrip() + "\n")
        elif bad:
            for r in bad:
                out.write(f"FAIL system {k} {r.name}: {r.detail}\n")
        failed += bool(bad)
    out.write(f"systems: {len(systems)} failed: {failed}\n")
    return EXIT_CHECK if failed else EXIT_OK


def _time(system, strategy):
    start = time.perf_counter()
    G = enumerate_vertices(system, strategy)
    return time.perf_counter() - start, G


def cmd_bench(args, out):
    if args.file:
        systems = [load_split_file(args.file)]
    else:
        rng = random.Random(args.seed)
        systems = [random_compatible_system(rng, args.n, args.m, n_min=args.n) for _ in range(args.systems)]
    out.write("splits vertices brute_s incremental_s\n")
    for system in systems:
        tb, gb = _time(system, "brute")
        ti, gi = _time(system, "incremental")
        if gb.vertices != gi.vertices:
            raise InternalInconsistency("strategies disagree")
        out.write(f"{len(system)} {len(gi)} {tb:.6f} {ti:.6f}\n")
    return EXIT_OK


class _UsageError(Exception):
    pass


COMMANDS = {
    "graph": cmd_graph,
    "cuts": cmd_cuts,
    "blocks": cmd_blocks,
    "tree": cmd_tree,
    "xtree": cmd_xtree,
    "check": cmd_check,
    "bench": cmd_bench,
}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    settings = {"verify": args.verify, "seed": args.seed}
    if args.max_splits is not None:
        settings["max_splits"] = args.max_splits
        settings["max_splits_brute"] = min(args.max_splits, config.get_config()["max_splits_brute"])
    try:
        with config.config_context(**settings):
            return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(f"buneman-blocks: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        err.write(f"buneman-blocks: {exc}\n")
        return EXIT_CAP
    except (InternalInconsistency, AssertionError) as exc:
        err.write(f"buneman-blocks: check failed: {exc}\n")
        return EXIT_CHECK
    except (BunemanError, OSError) as exc:
        err.write(f"buneman-blocks: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
