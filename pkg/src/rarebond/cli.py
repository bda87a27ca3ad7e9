"""Command-line front end: mine, derive, query, regenerate, report."""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from .db import load_database
from .errors import CapacityError, RareBondError
from .measures import MeasuredPattern
from .miner import (MiningParams, MiningStatistics, Representation,
                    RepresentationKind, collect_statistics, derive_rminmf,
                    derive_rminmmaxf, derive_rmmaxf, mine_mcr, mine_rmcr)
from .oracle import oracle_mcr, oracle_representation, oracle_sets, pattern_measures
from .represent import (approximate_query, dump_representation,
                        load_representation, query_pattern, regenerate_all)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CAPACITY = 2


class CliError(RuntimeError):
    pass


def parse_minsupp(spec: str, num_transactions: int) -> int:
    """Absolute count, or 'x%' converted as ceil(x% of |T|)."""
    spec = spec.strip()
    if spec.endswith("%"):
        try:
            share = Fraction(spec[:-1]) / 100
        except (ValueError, ZeroDivisionError):
            raise CliError(f"bad relative minsupp {spec!r}") from None
        if share <= 0:
            raise CliError("relative minsupp must be positive")
        scaled = share * num_transactions
        return -(-scaled.numerator // scaled.denominator)
    try:
        value = int(spec)
    except ValueError:
        raise CliError(f"bad minsupp {spec!r}: expected an integer or 'x%'") from None
    if value < 1:
        raise CliError("minsupp must be at least 1")
    return value


def parse_minbond(spec: str) -> Fraction:
    """Exact rational from 'p/q' or a decimal string (never via float)."""
    try:
        value = Fraction(spec.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad minbond {spec!r}: expected 'p/q' or a decimal") from None
    if not 0 < value <= 1:
        raise CliError("minbond must lie in (0, 1]")
    return value


def parse_pattern_text(text: str) -> tuple[int, ...]:
    try:
        items = tuple(int(tok) for tok in text.split())
    except ValueError:
        raise CliError(f"bad pattern {text!r}: expected space-separated integers") from None
    if not items:
        raise CliError("pattern must contain at least one item")
    return items


def thread_cap() -> int:
    """Honor the RBM_THREADS cap (the engine is sequential, so any cap holds)."""
    raw = os.environ.get("RBM_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise CliError(f"RBM_THREADS={raw!r} is not an integer") from None
    if cap < 1:
        raise CliError("RBM_THREADS must be at least 1")
    return cap


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


_KINDS = tuple(kind.value for kind in RepresentationKind)


def _mine_representation(db, params, kind: RepresentationKind) -> Representation:
    if kind is RepresentationKind.MCR:
        return mine_mcr(db, params)
    rmcr = mine_rmcr(db, params)
    if kind is RepresentationKind.RMCR:
        return rmcr
    if kind is RepresentationKind.RMMAXF:
        return derive_rmmaxf(db, rmcr)
    if kind is RepresentationKind.RMINMF:
        return derive_rminmf(db, rmcr)
    return derive_rminmmaxf(db, rmcr)


def cmd_mine(args) -> int:
    thread_cap()
    db = load_database(args.input)
    params = MiningParams(parse_minsupp(args.minsupp, db.num_transactions),
                          parse_minbond(args.minbond), db.num_transactions)
    kind = RepresentationKind(args.set)
    if args.oracle:
        rep = oracle_representation(db, params, kind)
    else:
        rep = _mine_representation(db, params, kind)
    _emit(dump_representation(rep), args.output)
    return EXIT_OK


def cmd_query(args) -> int:
    rep = load_representation(args.rep)
    pattern = parse_pattern_text(args.pattern)
    if rep.kind is RepresentationKind.RMINMMAXF:
        bounds = approximate_query(rep, pattern)
        if not bounds.member:
            line = bounds.status
        else:
            def rng(lo, hi):
                return f"[{lo},{hi}]"
            line = "\t".join([
                bounds.status,
                rng(*bounds.conj_range),
                rng(*bounds.disj_range),
                rng(*bounds.neg_range),
                rng(f"{bounds.bond_range[0].numerator}/{bounds.bond_range[0].denominator}",
                    f"{bounds.bond_range[1].numerator}/{bounds.bond_range[1].denominator}"),
            ])
    elif rep.kind is RepresentationKind.MCR:
        raise CliError("query needs a concise representation file, not a full MCR dump")
    else:
        answer = query_pattern(rep, pattern)
        if not answer.member:
            line = answer.status
        else:
            line = "\t".join([
                answer.status, str(answer.conj), str(answer.disj), str(answer.neg),
                f"{answer.bond.numerator}/{answer.bond.denominator}"])
    sys.stdout.write(line + "\n")
    return EXIT_OK


def cmd_regenerate(args) -> int:
    rep = load_representation(args.rep)
    if rep.kind is not RepresentationKind.RMCR:
        raise CliError(f"regenerate expects an rmcr file, got {rep.kind.value}")
    _emit(dump_representation(regenerate_all(rep)), args.output)
    return EXIT_OK


def _oracle_statistics(db, params) -> MiningStatistics:
    start = time.perf_counter()
    measures = pattern_measures(db)
    sets = oracle_sets(db, params, measures)
    counts = {
        "MCR": len(oracle_mcr(db, params, measures)),
        "MCF": len(sets.mcf),
        "MMCR": len(sets.mmcr),
        "MFCR": len(sets.mfcr),
        "MMCRMin": len(sets.mmcrmin),
        "MFCRMax": len(sets.mfcrmax),
        "RMCR": len(sets.mmcr | sets.mfcr),
        "RMMaxF": len(sets.mmcr | sets.mfcrmax),
        "RMinMF": len(sets.mfcr | sets.mmcrmin),
        "RMinMMaxF": len(sets.mfcrmax | sets.mmcrmin),
    }
    return MiningStatistics(params, counts, time.perf_counter() - start)


def cmd_stats(args) -> int:
    thread_cap()
    db = load_database(args.input)
    params = MiningParams(parse_minsupp(args.minsupp, db.num_transactions),
                          parse_minbond(args.minbond), db.num_transactions)
    stats = _oracle_statistics(db, params) if args.oracle \
        else collect_statistics(db, params)
    base = os.path.splitext(os.path.basename(args.input))[0]
    header = ["base", "minsupp", "minbond"] + [f"|{c}|" for c in stats.COLUMNS] + ["wall_s"]
    row = [base, str(params.minsupp),
           f"{params.minbond.numerator}/{params.minbond.denominator}"]
    row += [str(stats.cardinalities[c]) for c in stats.COLUMNS]
    row.append(f"{stats.wall_time:.3f}")
    sys.stdout.write("\t".join(header) + "\n")
    sys.stdout.write("\t".join(row) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    db = load_database(args.input)
    params = MiningParams(parse_minsupp(args.minsupp, db.num_transactions),
                          parse_minbond(args.minbond), db.num_transactions)
    rep = oracle_representation(db, params, RepresentationKind(args.set))
    _emit(dump_representation(rep), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rarebond",
        description="Mine rare correlated itemsets under the bond measure "
                    "and work with their concise representations.",
        epilog="minsupp accepts an absolute count or 'x%' (converted as "
               "ceil(x% of |T|)); minbond accepts 'p/q' or a decimal, kept "
               "exact. RBM_THREADS caps intra-level parallelism (the current "
               "engine is sequential, so any cap is honored). Exit codes: "
               "0 ok, 1 usage/parse error, 2 capacity exceeded.")
    sub = parser.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="mine a pattern set or representation")
    mine.add_argument("--input", required=True, help="FIMI transaction file")
    mine.add_argument("--minsupp", required=True)
    mine.add_argument("--minbond", required=True)
    mine.add_argument("--set", choices=_KINDS, default="rmcr")
    mine.add_argument("--output", help="output TSV path (default: stdout)")
    mine.add_argument("--oracle", action="store_true",
                      help="compute through the exhaustive oracle")
    mine.set_defaults(func=cmd_mine)

    query = sub.add_parser("query", help="answer one pattern from a representation file")
    query.add_argument("--rep", required=True, help="representation TSV path")
    query.add_argument("--pattern", required=True, help="space-separated item ids")
    query.set_defaults(func=cmd_query)

    regen = sub.add_parser("regenerate", help="expand an RMCR file into the full set")
    regen.add_argument("--rep", required=True)
    regen.add_argument("--output")
    regen.set_defaults(func=cmd_regenerate)

    stats = sub.add_parser("stats", help="print one cardinality row for a database")
    stats.add_argument("--input", required=True)
    stats.add_argument("--minsupp", required=True)
    stats.add_argument("--minbond", required=True)
    stats.add_argument("--oracle", action="store_true")
    stats.set_defaults(func=cmd_stats)

    oracle = sub.add_parser("oracle", help="derive golden values exhaustively")
    oracle.add_argument("--input", required=True)
    oracle.add_argument("--minsupp", required=True)
    oracle.add_argument("--minbond", required=True)
    oracle.add_argument("--set", choices=_KINDS, default="mcr")
    oracle.add_argument("--output")
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CliError, RareBondError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
