"""Command-line entry point: ``gradmine <command> ...``.

Exit codes: 0 success, 1 user or data error, 2 internal error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import graph, temporal
from .bench import load_config, report_csv, run_bench
from .dataset import load_csv
from .errors import GradMineError, InvalidParameter
from .miner import MiningConfig, default_workers, mine
from .patterns import Direction, GradualItem, GradualPattern
from .synth import generate_csv
from .thresholds import MODES, set_thresholds


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_threshold_args(p, default_mode="sd"):
    p.add_argument("--mode", choices=MODES, default=default_mode,
                   help=f"threshold formula (default: {default_mode})")
    p.add_argument("--k1", type=float, default=1.0)
    p.add_argument("--k2", type=float, default=0.0)
    p.add_argument("--user-thresholds", metavar="CSV",
                   help="attribute,sigma file for --mode user")


def _add_input(p):
    p.add_argument("input", help="CSV file with a header row ('-' for stdin)")
    p.add_argument("--delimiter", default=",")


def _load(args, temporal_flag):
    src = sys.stdin.buffer if args.input == "-" else args.input
    return load_csv(src, delimiter=args.delimiter, temporal=temporal_flag)


def _write(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_pattern(text: str, names) -> GradualPattern:
    items = []
    for tok in re.split(r"[;,\s]+", text.strip()):
        if not tok:
            continue
        m = re.fullmatch(r"(.+?)(>=|<=|≥|≤)", tok)
        if not m:
            raise InvalidParameter(f"bad item {tok!r}; write e.g. a1>= or a2<=")
        name, op = m.groups()
        op = {"≥": ">=", "≤": "<="}.get(op, op)
        if name not in names:
            raise InvalidParameter(f"unknown attribute {name!r}")
        items.append(GradualItem(names.index(name), Direction(op)))
    return GradualPattern(items)


def cmd_thresholds(args):
    d = _load(args, False)
    t = set_thresholds(d, args.mode, args.k1, args.k2, args.user_thresholds)
    lines = ["attribute,sigma"] + [f"{a},{s:.{args.digits}f}"
                                   for a, s in zip(d.attribute_names, t.sigmas)]
    _write(args, "\n".join(lines) + "\n")


def cmd_transform(args):
    d = _load(args, not args.no_temporal)
    t = set_thresholds(d, args.mode, args.k1, args.k2, args.user_thresholds)
    _write(args, temporal.num2cat(d, t).to_csv())


def cmd_matrix(args):
    d = _load(args, False)
    t = set_thresholds(d, args.mode, args.k1, args.k2, args.user_thresholds)
    g = parse_pattern(args.pattern, list(d.attribute_names))
    if len(g) == 1 and not args.prune:
        m = graph.item_matrix(d, g.items[0], t[g.items[0].attribute])
    else:
        m = graph.pattern_matrix(d, g, t)
    out = m.dump(only_alive=args.only_alive)
    out += f"# longest path: {graph.longest_path(m)}\n"
    _write(args, out)


def cmd_mine(args):
    d = _load(args, args.temporal)
    cfg = MiningConfig(
        min_supp=args.min_supp, semantics=args.semantics, mode=args.mode,
        k1=args.k1, k2=args.k2, user_file=args.user_thresholds, max_len=args.max_len,
        closed_only=args.closed_only, property1_prune=not args.no_property1,
        singletons=not args.no_singletons, workers=args.workers,
        track_memory=args.timings,
    )
    res = mine(d, cfg)
    _write(args, res.to_json() if args.format == "json" else res.to_csv())
    if args.timings:
        tm = res.timings
        print(f"wall_ms={tm['wall_ms']:.3f} peak_memory_bytes~={tm.get('peak_memory_bytes', '')}",
              file=sys.stderr)


def cmd_generate(args):
    _write(args, generate_csv(args.rows, args.attrs, args.signal_groups, args.noise, args.seed))


def cmd_bench(args):
    cfg = load_config(args.config)
    rows = run_bench(cfg, base_dir=os.path.dirname(os.path.abspath(args.config)),
                     track_memory=not args.no_memory)
    _write(args, report_csv(rows))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gradmine", description="Frequent gradual pattern mining with gradualness thresholds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("thresholds", help="print the per-attribute thresholds")
    _add_input(p)
    _add_threshold_args(p)
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("transform", help="print the +/-/o sign table of consecutive rows")
    _add_input(p)
    _add_threshold_args(p, default_mode="none")
    p.add_argument("--no-temporal", action="store_true",
                   help="declare the row order meaningless (the command then fails)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("matrix", help="dump the precedence matrix of a pattern")
    _add_input(p)
    _add_threshold_args(p, default_mode="none")
    p.add_argument("--pattern", required=True, help="items such as 'a1>=,a2>='")
    p.add_argument("--prune", action="store_true", help="prune isolated objects for single items too")
    p.add_argument("--only-alive", action="store_true", help="omit deleted objects from the grid")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("mine", help="mine frequent gradual patterns")
    _add_input(p)
    _add_threshold_args(p)
    p.add_argument("--semantics", choices=("graph", "temporal"), default="graph")
    p.add_argument("--temporal", action="store_true", help="row order is temporal")
    p.add_argument("--min-supp", default="0.5", help="minimum support, e.g. 0.3 or 5/8")
    p.add_argument("--max-len", type=int)
    p.add_argument("--closed-only", action="store_true")
    p.add_argument("--no-singletons", action="store_true")
    p.add_argument("--no-property1", action="store_true",
                   help="disable the total-variation attribute prune (temporal)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker threads (default: $GRAPGT_WORKERS or 1)")
    p.add_argument("--timings", action="store_true", help="report wall time and peak memory on stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("generate", help="write a seeded synthetic dataset")
    p.add_argument("--rows", type=int, default=100)
    p.add_argument("--attrs", type=int, default=10)
    p.add_argument("--signal-groups", type=int, default=2)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a benchmark config and print a CSV report")
    p.add_argument("config")
    p.add_argument("--no-memory", action="store_true", help="skip tracemalloc peak tracking")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        if getattr(args, "workers", None) is None and args.command == "mine":
            args.workers = default_workers()
        args.func(args)
    except GradMineError as exc:
        print(f"gradmine: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gradmine: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violation
        print(f"gradmine: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
