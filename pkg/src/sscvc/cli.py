"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 the step cap was hit,
3 an input could not be read or parsed, 4 the exhaustive oracle refused
a graph above its size cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cmcp import DEFAULT_VARIANT, VARIANTS
from .engine import DAEMON_KINDS, DaemonKind, Trace, replay
from .experiment import BenchConfig, RunSpec, execute, format_table, run_bench, summarize
from .graph import (
    GraphError,
    complete_graph,
    cycle_graph,
    dumps_graph,
    format_edge_list,
    generate_random_connected,
    parse_graph,
    path_graph,
    star_graph,
)
from .state import config_from_dict
from .verifiers import (
    OracleCapError,
    brute_force_optimal_cvc,
    check_cmcp_solution,
    check_cvc_solution,
    is_legitimate_cmcp,
    is_legitimate_cvc,
)

EXIT_OK, EXIT_CHECK, EXIT_DIVERGED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4
OUTPUT_DIR_ENV = "SSCVC_OUTPUT_DIR"

_NAMED = {"path": path_graph, "complete": complete_graph, "star": star_graph, "cycle": cycle_graph}


class InputError(Exception):
    pass


def load_graph(source: str, root: int | None = None):
    """A file path, ``-`` for stdin, or a named family such as ``path:5``,
    ``star:3`` or ``random:8:0.3:42``."""
    kind, _, rest = source.partition(":")
    try:
        if kind in _NAMED and rest and not Path(source).exists():
            g = _NAMED[kind](int(rest))
            return g.with_root(root) if root is not None else g
        if kind == "random" and rest and not Path(source).exists():
            n, p, seed = rest.split(":")
            g = generate_random_connected(int(n), float(p), int(seed))
            return g.with_root(root) if root is not None else g
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
        return parse_graph(text, root=root)
    except (OSError, ValueError, GraphError) as exc:
        raise InputError(f"cannot load graph {source!r}: {exc}") from exc


def load_initial(path: str):
    """A configuration document, or a trace whose final configuration is reused."""
    try:
        doc = json.loads(Path(path).read_text())
        if doc.get("format") == "sscvc.trace":
            doc = doc["final"]
        elif doc.get("format") == "sscvc.config":
            doc = doc["nodes"]
        return config_from_dict(doc)
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"cannot load configuration {path!r}: {exc}") from exc


def _out_path(explicit: str | None, default_name: str) -> Path | None:
    if explicit:
        return Path(explicit)
    base = os.environ.get(OUTPUT_DIR_ENV)
    return Path(base) / default_name if base else None


def _write(path: Path | None, text: str) -> None:
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _emit(args, doc: dict, table: str) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(table)


# -- subcommands ------------------------------------------------------------------


def cmd_run(args) -> int:
    g = load_graph(args.graph, args.root)
    initial = load_initial(args.initial) if args.initial else None
    if initial is not None and set(initial) != set(g.nodes):
        raise InputError("initial configuration does not match the graph's nodes")
    spec = RunSpec(
        graph=g,
        daemon=DaemonKind(args.daemon, args.seed),
        fault_seed=None if args.zeroed else args.fault_seed,
        initial=initial,
        use_bfs=args.bfs,
        max_steps=args.max_steps,
        variant=args.rules,
        oracle=args.oracle,
    )
    out = execute(spec)
    _write(_out_path(args.trace_out, "trace.json"), out.trace.dumps())
    _write(_out_path(args.report_out, "report.json"), out.dumps_report())
    r = out.report()
    cov = r["cover"]
    table = (
        f"terminal  {r['run']['terminal']}\n"
        f"steps     {r['run']['steps']}\n"
        f"moves     {r['run']['moves']} (cmcp {r['run']['cmcp_moves']})\n"
        f"rounds    {r['run']['rounds']}\n"
        f"cliques   {' '.join('{' + ','.join(map(str, c['members'])) + '}' for c in r['partition']['cliques'])}\n"
        f"partition {'ok' if out.partition.ok else 'FAILED ' + '; '.join(out.partition.problems)}\n"
        f"cover     {{{','.join(map(str, cov['cover']))}}} size {cov['size']}"
        f" valid {cov['is_vertex_cover']} connected {cov['is_connected']}\n"
    )
    if cov["optimal_size"] is not None:
        table += f"optimum   {cov['optimal_size']} ratio {cov['ratio']:.3f}\n"
    _emit(args, r, table)
    if not out.terminal:
        return EXIT_DIVERGED
    return EXIT_OK if out.ok else EXIT_CHECK


def cmd_bench(args) -> int:
    cfg = BenchConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        graphs_per_n=args.graphs_per_n,
        daemons=tuple(args.daemons),
        seeds=tuple(args.seeds),
        edge_p=args.p,
        use_bfs=args.bfs,
        oracle=args.oracle,
        variant=args.rules,
        graph_seed=args.seed,
    )
    rows = run_bench(cfg, jobs=args.jobs)
    doc = {"format": "sscvc.bench", "version": 1, "rows": rows, "summary": summarize(rows)}
    text = format_table(rows)
    _write(_out_path(args.report_out, "bench.json"), json.dumps(doc, indent=1, sort_keys=True) + "\n")
    _emit(args, doc, text)
    if not all(r["terminal"] for r in rows):
        return EXIT_DIVERGED
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_CHECK


def cmd_oracle(args) -> int:
    g = load_graph(args.graph, args.root)
    size, witness = brute_force_optimal_cvc(g)
    doc = {"format": "sscvc.oracle", "version": 1, "size": size, "witness": sorted(witness)}
    _emit(args, doc, f"{size} {{{','.join(map(str, sorted(witness)))}}}\n")
    return EXIT_OK


def cmd_generate(args) -> int:
    g = generate_random_connected(args.n, args.p, args.seed)
    if args.root is not None:
        g = g.with_root(args.root)
    text = dumps_graph(g) if args.format == "structured" else format_edge_list(g)
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Replay a trace and re-check its final configuration."""
    try:
        trace = Trace.loads(Path(args.trace).read_text())
    except (OSError, ValueError, KeyError, TypeError, GraphError) as exc:
        raise InputError(f"cannot load trace {args.trace!r}: {exc}") from exc
    try:
        replay(trace)
        replay_ok = True
    except ValueError:
        replay_ok = False
    g, c = trace.graph, trace.final
    part = check_cmcp_solution(c, g)
    cov = check_cvc_solution(c, g, with_oracle=args.oracle)
    doc = {
        "format": "sscvc.verify",
        "version": 1,
        "replay": replay_ok,
        "terminal": trace.terminal,
        "legitimate_cmcp": is_legitimate_cmcp(c, g, variant=trace.program["variant"]),
        "legitimate_cvc": is_legitimate_cvc(c, g),
        "partition": part.to_dict(),
        "cover": cov.to_dict(),
    }
    table = "".join(f"{k:16}{doc[k]}\n" for k in ("replay", "terminal", "legitimate_cmcp", "legitimate_cvc"))
    table += f"{'partition':16}{part.ok}\n{'cover':16}{cov.ok}\n"
    _emit(args, doc, table)
    if not trace.terminal:
        return EXIT_DIVERGED
    good = replay_ok and doc["legitimate_cmcp"] and doc["legitimate_cvc"] and part.ok and cov.ok
    return EXIT_OK if good else EXIT_CHECK


# -- parser -----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "structured"), default="table")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sscvc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute one run and check its outcome")
    r.add_argument("--graph", required=True, help="file, '-', or name like path:5 / random:8:0.3:1")
    r.add_argument("--root", type=int)
    r.add_argument("--daemon", choices=DAEMON_KINDS, default="distributed_random")
    r.add_argument("--seed", type=int, default=0, help="daemon seed")
    init = r.add_mutually_exclusive_group()
    init.add_argument("--fault-seed", type=int, default=0, help="seed for the random initial state")
    init.add_argument("--zeroed", action="store_true", help="start every node from the zeroed state")
    init.add_argument("--initial", help="configuration or trace document to start from")
    r.add_argument("--bfs", action=argparse.BooleanOptionalAction, default=True)
    r.add_argument("--max-steps", type=int)
    r.add_argument("--oracle", action="store_true", help="compare the cover with the exact optimum")
    r.add_argument("--rules", choices=VARIANTS, default=DEFAULT_VARIANT)
    r.add_argument("--trace-out")
    r.add_argument("--report-out")
    _common(r)
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="sweep random graphs, daemons and seeds")
    b.add_argument("--n-min", type=int, default=1)
    b.add_argument("--n-max", type=int, default=6)
    b.add_argument("--graphs-per-n", type=int, default=10)
    b.add_argument("--daemons", nargs="+", choices=DAEMON_KINDS, default=["distributed_random"])
    b.add_argument("--seeds", nargs="+", type=int, default=[0])
    b.add_argument("--seed", type=int, default=0, help="offset for graph seeds")
    b.add_argument("--p", type=float, default=0.4, help="edge probability")
    b.add_argument("--bfs", action=argparse.BooleanOptionalAction, default=True)
    b.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=True)
    b.add_argument("--rules", choices=VARIANTS, default=DEFAULT_VARIANT)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--report-out")
    _common(b)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oracle", help="exact minimum connected vertex cover")
    o.add_argument("--graph", required=True)
    o.add_argument("--root", type=int)
    _common(o)
    o.set_defaults(func=cmd_oracle)

    gen = sub.add_parser("generate", help="emit a random connected graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.4)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--root", type=int)
    gen.add_argument("--out")
    _common(gen)
    gen.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="replay a trace and check its final state")
    v.add_argument("--trace", required=True)
    v.add_argument("--oracle", action="store_true")
    _common(v)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; that code means divergence here
        return EXIT_INPUT if exc.code == 2 else (exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
