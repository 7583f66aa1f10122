"""``kdist`` command line: analyse, construct, bound, search, verify, enumerate.

Exit status is 0 on success, 2 when a verification or search finished but
reported mismatches, and 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from ._version import __version__
from .bounds import evaluate_bounds
from .enumeration import connected_graphs, free_trees, read_graph6_stream, write_graph6
from .families import BroomSpec, cycle, double_broom, glued_cliques, path, star, t_broom
from .graph import Graph, all_pairs_distances, canonical_form, clique_number, distance_k_graph
from .graph6 import Graph6Error
from .structure import interior_vertices, unaffiliated_counts
from .search import (
    SearchTask,
    max_k_distances,
    search_csv,
    summary_csv,
    verify_k2_bound,
    verify_proved_bounds,
    verify_spanning_tree_lemma,
    verify_star_proposition,
    verify_tree_theorem,
    verify_triangle_free_conjecture,
)

THREADS_ENV = "KDIST_THREADS"
EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2
FAMILIES = ("double-broom", "t-broom", "glued-cliques", "star", "path", "cycle")
SUITES = ("k2-bound", "triangle-free", "tree-theorem", "star", "lemma8", "bounds")


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    input: str | None = None
    output: str | None = None
    shard: tuple[int, int] = (0, 1)
    threads: int = 1
    checkpoint: str | None = None
    format: str = "json"

    def __post_init__(self):
        index, total = self.shard
        if total < 1 or not 0 <= index < total:
            raise ValueError(f"shard index must be below the shard total, got {index}/{total}")
        if self.threads < 1:
            raise ValueError("threads must be positive")


def parse_range(text: str) -> list[int]:
    """``"6..9"`` -> [6, 7, 8, 9]; also accepts ``"7"`` and ``"5,7,9"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            a, b = int(lo), int(hi)
            if b < a:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(a, b + 1))
        else:
            out.append(int(part))
    return out


def parse_shard(text: str) -> tuple[int, int]:
    """``"3/8"`` -> (3, 8)."""
    try:
        i, t = text.split("/")
        return int(i), int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like INDEX/TOTAL, got {text!r}")


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _read_graphs(args) -> list[Graph]:
    if args.graph:
        return [Graph.from_graph6(args.graph.encode())]
    src = args.input if args.input and args.input != "-" else sys.stdin.buffer
    return list(read_graph6_stream(src))


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(config: RunConfig, body: dict) -> dict:
    return {"tool_version": __version__, "config": asdict(config), **body}


def analyse(g: Graph, k: int) -> dict:
    dm = all_pairs_distances(g)
    gk = distance_k_graph(g, k, dm)
    counts = unaffiliated_counts(dm.d, k)
    return {
        "graph": canonical_form(g).decode(),
        "input": g.to_graph6().decode(),
        "n": g.n,
        "k": k,
        "e_gk": gk.num_edges(),
        "k_degrees": [gk.degree(v) for v in range(g.n)],
        "clique_number_gk": clique_number(gk),
        "interior": sorted(interior_vertices(g, k, dm)),
        "p": int(counts.min()) if counts.size else None,
        "bounds": evaluate_bounds(g, k, dm).to_dict(),
    }


def cmd_gk(args, config) -> int:
    lines = [json.dumps(_envelope(config, analyse(g, args.k)), sort_keys=True)
             for g in _read_graphs(args)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_family(name: str, n: int | None, k: int | None, leaves: str | None) -> Graph:
    need = {"double-broom": ("n", "k"), "t-broom": ("k", "leaves"), "glued-cliques": ("n",),
            "star": ("n",), "path": ("n",), "cycle": ("n",)}[name]
    given = {"n": n, "k": k, "leaves": leaves}
    missing = [p for p in need if given[p] is None]
    if missing:
        raise ValueError(f"{name} needs --{' --'.join(missing)}")
    if name == "double-broom":
        return double_broom(n, k)
    if name == "t-broom":
        return t_broom(BroomSpec(k, tuple(int(a) for a in leaves.split(","))))
    return {"glued-cliques": glued_cliques, "star": star, "path": path, "cycle": cycle}[name](n)


def cmd_construct(args, config) -> int:
    g = build_family(args.family, args.n, args.k, args.leaves)
    if args.format == "dot":
        _emit(g.to_dot(), args.output)
    else:
        _emit(g.to_graph6().decode() + "\n", args.output)
    return EXIT_OK


def cmd_bounds(args, config) -> int:
    out = []
    for g in _read_graphs(args):
        ks = [args.k] if args.k else range(2, g.n)
        for k in ks:
            out.append(json.dumps(_envelope(config, evaluate_bounds(g, k).to_dict()), sort_keys=True))
    _emit("\n".join(out) + ("\n" if out else ""), args.output)
    return EXIT_OK


def cmd_search(args, config) -> int:
    index, total = args.shard if args.shard else (None, args.shards)
    task = SearchTask(
        n=args.n, k=args.k, clique_cap=args.cap, scope=args.scope,
        source=args.source, shards=total, shard_index=index,
        checkpoint=args.checkpoint, threads=config.threads,
    )
    report = max_k_distances(task)
    if args.format == "csv":
        _emit(search_csv(report), args.output)
    else:
        _emit(json.dumps(_envelope(config, {"report": report.to_dict()}), indent=1, sort_keys=True) + "\n",
              args.output)
    return EXIT_OK


def run_suite(suite: str, n_range: list[int] | None, k_range: list[int] | None):
    if suite == "k2-bound":
        return verify_k2_bound(n_range or range(5, 10))
    if suite == "triangle-free":
        if not k_range or len(k_range) != 1:
            raise ValueError("triangle-free needs a single --k")
        return verify_triangle_free_conjecture(k_range[0], n_range or range(k_range[0] + 1, 10))
    if suite == "tree-theorem":
        return verify_tree_theorem(n_range or range(5, 15), k_range or range(3, 8))
    if suite == "star":
        return verify_star_proposition(n_range or range(3, 9))
    if suite == "lemma8":
        return verify_spanning_tree_lemma(n_range or range(3, 8))
    return verify_proved_bounds(n_range or range(2, 9))


def cmd_verify(args, config) -> int:
    n_range = parse_range(args.n) if args.n else None
    k_range = parse_range(args.k) if args.k else None
    report = run_suite(args.suite, n_range, k_range)
    if args.format == "csv":
        _emit(summary_csv(report), args.output)
    else:
        _emit(json.dumps(_envelope(config, {"report": report.to_dict()}), indent=1, sort_keys=True) + "\n",
              args.output)
    return EXIT_OK if report.verdict == "consistent" else EXIT_MISMATCH


def cmd_enumerate(args, config) -> int:
    stream = free_trees(args.n) if args.kind == "trees" else connected_graphs(args.n, config.shard)
    if args.output:
        with open(args.output, "wb") as fh:
            write_graph6(stream, fh, header=args.header)
    else:
        write_graph6(stream, sys.stdout.buffer, header=args.header)
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kdist", description="Distance-k graph toolkit.")
    p.add_argument("--version", action="version", version=f"kdist {__version__}")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default ${THREADS_ENV} or 1)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def graph_input(sp):
        sp.add_argument("graph", nargs="?", help="graph6 string (otherwise read --input or stdin)")
        sp.add_argument("--input", help="graph6 file, '-' for stdin")
        sp.add_argument("--output")

    sp = sub.add_parser("gk", help="analyse the distance-k graph of one or more graphs")
    graph_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_gk)

    sp = sub.add_parser("construct", help="build a named family member")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--leaves", help="comma-separated leaf counts for t-broom")
    sp.add_argument("--format", choices=("graph6", "dot"), default="graph6")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("bounds", help="bound reports as JSON lines")
    graph_input(sp)
    sp.add_argument("--k", type=int, help="default: every k from 2 to n-1")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("search", help="maximum number of k-distances")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cap", type=int, help="only graphs with no cap+1 vertices pairwise at distance k")
    sp.add_argument("--scope", choices=("connected", "all"), default="connected")
    sp.add_argument("--source", default="internal",
                    help="'internal' (connected graphs), 'trees', or a graph6 file")
    sp.add_argument("--shards", type=int, default=1)
    sp.add_argument("--shard", type=parse_shard, help="run only INDEX/TOTAL")
    sp.add_argument("--checkpoint")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--n", help="range such as 6..9")
    sp.add_argument("--k", help="range such as 3..7")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="write graphs as graph6")
    sp.add_argument("kind", choices=("connected", "trees"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--shard", type=parse_shard, default=(0, 1))
    sp.add_argument("--header", action="store_true")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_enumerate)
    return p


def _config(args) -> RunConfig:
    skip = {"func", "subcommand", "threads", "input", "output", "checkpoint", "format", "shard"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    shard = args.shard if getattr(args, "shard", None) else (0, getattr(args, "shards", 1))
    return RunConfig(
        subcommand=args.subcommand,
        params=params,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        shard=tuple(shard),
        threads=args.threads if args.threads is not None else _default_threads(),
        checkpoint=getattr(args, "checkpoint", None),
        format=getattr(args, "format", "json"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        return args.func(args, config)
    except (ValueError, OSError, Graph6Error) as exc:
        print(f"kdist: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
