"""Command-line interface.

Exit codes: 0 success, 1 usage/configuration error, 2 parse error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys

from smhuim import io
from smhuim.bounds import singleton_tsmwu, singleton_twu, tsmu, tu
from smhuim.miner import ALGORITHMS, mine, top_k
from smhuim.model import ConfigurationError
from smhuim.oracle import brute_force_mine, diff_patterns
from smhuim.synth import generate_synthetic
from smhuim.utility import GRAPH_UTILITIES, UTILITIES, check_sm, make_utility

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input_args(p, threshold=False):
    p.add_argument("--db", required=True, help="transaction database file")
    p.add_argument("--graph", help="item graph edge list (needed by fcov, sumcov, ucov)")
    p.add_argument("--utility", required=True, choices=sorted(UTILITIES))
    if threshold:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--min-util", type=float, help="absolute utility threshold")
        g.add_argument("--min-util-pct", type=float,
                       help="threshold as a percentage of the summed transaction utilities")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smhuim", description="High-utility itemset mining for SM utilities")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mine", help="mine all high-utility itemsets")
    _add_input_args(p, threshold=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="smminer")
    p.add_argument("--out", help="pattern file (default: stdout)")
    p.add_argument("--stats", help="write run statistics as JSON")

    p = sub.add_parser("topk", help="mine the k highest-utility itemsets")
    _add_input_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--stats")

    p = sub.add_parser("bounds", help="dump TU/TSMU per transaction and TWU/TSMWU per item")
    _add_input_args(p)

    p = sub.add_parser("verify", help="compare SM-Miner against brute force")
    _add_input_args(p, threshold=True)

    p = sub.add_parser("verify-sm", help="randomised subadditivity/monotonicity check")
    _add_input_args(p)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate a synthetic database and graph")
    p.add_argument("--tx", type=int, required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--avg-len", type=float, required=True)
    p.add_argument("--avg-degree", type=float, required=True)
    p.add_argument("--max-qty", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-db", required=True)
    p.add_argument("--out-graph", required=True)
    return parser


def _load(args):
    db = io.parse_database(args.db)
    graph = None
    if args.graph:
        graph = io.parse_graph(args.graph, db.dictionary)
    elif args.utility in GRAPH_UTILITIES:
        raise UsageError(f"utility {args.utility!r} requires --graph")
    return db, make_utility(args.utility, graph)


def _threshold(args, db, f) -> float:
    if args.min_util is not None:
        return args.min_util
    # normalise by total whole-transaction utility; counted outside the run
    total = sum(tsmu(f.evaluate, t) for t in db.transactions)
    return args.min_util_pct / 100 * total


def _emit(path, text):
    if path:
        io.write_text_atomic(path, text)
    else:
        sys.stdout.write(text)


def cmd_mine(args):
    db, f = _load(args)
    theta = _threshold(args, db, f)
    result = mine(db, f, theta, algo=args.algo)
    _emit(args.out, io.format_patterns(result.patterns, db.dictionary))
    if args.stats:
        io.write_text_atomic(args.stats, io.format_stats(result.stats))
    return EXIT_OK


def cmd_topk(args):
    db, f = _load(args)
    result = top_k(db, f, args.k)
    if result.truncated:
        print(f"only {len(result.patterns)} itemsets have positive utility", file=sys.stderr)
    _emit(args.out, io.format_patterns(result.patterns, db.dictionary))
    if args.stats:
        io.write_text_atomic(args.stats, io.format_stats(result.stats))
    return EXIT_OK


def cmd_bounds(args):
    db, f = _load(args)
    fmt = io.format_value
    out = ["## TU", "tid\tTU"]
    out += [f"{t.tid}\t{fmt(tu(f, t))}" for t in db.transactions]
    out += ["## TSMU", "tid\tTSMU"]
    out += [f"{t.tid}\t{fmt(tsmu(f, t))}" for t in db.transactions]
    labels = db.dictionary.id_to_label
    present = db.items_present()
    twu, tsmwu = singleton_twu(f, db), singleton_tsmwu(f, db)
    out += ["## TWU", "item\tTWU"]
    out += [f"{labels[i]}\t{fmt(twu[i])}" for i in present]
    out += ["## TSMWU", "item\tTSMWU"]
    out += [f"{labels[i]}\t{fmt(tsmwu[i])}" for i in present]
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_verify(args):
    db, f = _load(args)
    theta = _threshold(args, db, f)
    got = mine(db, f, theta).as_dict()
    expected = brute_force_mine(db, f, theta)
    diff = diff_patterns(expected, got)
    for line in diff:
        print(line)
    print(f"{len(expected)} brute-force patterns, {len(got)} mined, "
          f"{len(diff)} differences (threshold {io.format_value(theta)}, {db.n_items} items)")
    return EXIT_MISMATCH if diff else EXIT_OK


def cmd_verify_sm(args):
    db, f = _load(args)
    violations = check_sm(f, [t.items for t in db.transactions], trials=args.trials,
                          rng=random.Random(args.seed), tol=0 if f.integral else 1e-9)
    for v in violations[:20]:
        print(f"{v.kind}: X={v.x} Y={v.y} lhs={v.lhs} rhs={v.rhs}")
    print(f"{args.trials} trials, {len(violations)} violations")
    return EXIT_MISMATCH if violations else EXIT_OK


def cmd_gen(args):
    db, graph = generate_synthetic(args.tx, args.items, args.avg_len, args.avg_degree,
                                   args.max_qty, args.seed)
    io.write_text_atomic(args.out_db, io.format_database(db))
    io.write_text_atomic(args.out_graph, io.format_graph(graph, db.dictionary))
    return EXIT_OK


COMMANDS = {
    "mine": cmd_mine,
    "topk": cmd_topk,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "verify-sm": cmd_verify_sm,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except io.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
