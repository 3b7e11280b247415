"""
bracketopt unified CLI.

Single entry point for instance generation, solving, verification and
benchmarking.  Payloads (JSON, CSV, per-game breakdowns) go to stdout,
logs go to stderr.

Usage
-----
# Generation
python cli.py generate --random general 8 --rng-seed 3       # random values in [-9, 9]
python cli.py generate --popularity 8 --values 2 --rng-seed 7
python cli.py generate --planted 8 --k 2                     # disagreement <= 2
python cli.py generate --monotone 8
python cli.py generate --tight 8 10                          # matching worst case
python cli.py generate --reduce2 phi.cnf --nonneg --layout-out layout.json

# Solving / checking
python cli.py solve inst.json --algorithm auto --out result.json
python cli.py solve inst.json --algorithm dp --target 12     # exit 3 if below 12
python cli.py verify inst.json seeding.json 31
python cli.py verify inst.json --result result.json

# Benchmarks
python cli.py bench --family tight --count 20 --algorithms matching,brute --out tight.csv

Exit codes: 0 ok, 2 usage / parse / validation / kind errors, 3 semantic
failure (verify mismatch, target not reached).
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Sequence

from src.model.errors import BracketOptError, ValidationError

if TYPE_CHECKING:
    from src.model.instance import Instance

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3

logger = logging.getLogger("bracketopt")


# ---------------------------------------------------------------------------
# Logging setup
# ---------------------------------------------------------------------------


def _setup_logging(level: str = "INFO", verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else level.upper(),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def _emit(text: str, out: Optional[str]) -> None:
    """Write *text* to --out when given, otherwise to stdout."""
    if out:
        from src.model.schema import save_text

        path = save_text(text, Path(out))
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Sub-command handlers
# ---------------------------------------------------------------------------


def _generate_reduction(args: argparse.Namespace, which: int, path: str) -> "Instance":
    from src.model.schema import LayoutModel, dumps, read_text
    from src.reductions.constructions import construct1, construct2
    from src.reductions.formula import parse_dimacs, preprocess

    pre = preprocess(parse_dimacs(read_text(Path(path))))
    target = None
    if args.clauses_target is not None:
        # clauses satisfied by the fixed variables are already counted
        target = max(args.clauses_target - pre.offset, 0)
    if which == 1:
        layout = construct1(pre.formula, clauses_target=target)
    else:
        layout = construct2(pre.formula, nonneg=args.nonneg, clauses_target=target)
    if args.layout_out:
        _emit(dumps(LayoutModel.from_domain(layout).dump()), args.layout_out)
    return layout.instance


def cmd_generate(args: argparse.Namespace) -> int:
    from src.bench import families
    from src.model.schema import InstanceModel, dumps
    from src.model.values import ValueKind

    rng = random.Random(args.rng_seed)
    if args.random:
        kind_name, n_text = args.random
        try:
            kind, n = ValueKind(kind_name), int(n_text)
        except ValueError as exc:
            raise ValidationError(f"--random expects KIND N, got {args.random}") from exc
        instance = families.random_instance(kind, n, rng, low=args.low, high=args.high, density=args.density)
    elif args.popularity is not None:
        instance = families.popularity_with_values(args.popularity, args.values, rng, high=args.high)
    elif args.planted is not None:
        instance = families.planted_disagreement(args.planted, args.k, rng, high=args.high)
    elif args.monotone is not None:
        instance = families.monotone_popularity(args.monotone, rng, high=args.high)
    elif args.tight:
        instance = families.tight_instance(*args.tight)
    elif args.reduce1:
        instance = _generate_reduction(args, 1, args.reduce1)
    else:
        instance = _generate_reduction(args, 2, args.reduce2)

    logger.info(f"Generated {instance.kind.value} instance with n={instance.n}")
    _emit(dumps(InstanceModel.from_domain(instance).dump()), args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    from src.brackets.tree import execution_tree_from_seeding
    from src.model.schema import SolveResultModel, TreeModel, dumps, load_instance
    from src.solvers.dispatch import solve

    instance = load_instance(Path(args.instance))
    result = solve(instance, args.algorithm, args.settings)
    logger.info(f"{result.algorithm.value}: value {result.value}")

    document = SolveResultModel.from_domain(result).dump()
    if args.tree:
        document["tree"] = TreeModel.from_domain(execution_tree_from_seeding(instance, result.seeding)).dump()
    _emit(dumps(document), args.out)

    if args.target is None:
        return EXIT_OK
    target = instance.target if args.target == "instance" else args.target
    if target is None:
        raise ValidationError("--target given without a value and the instance carries no target")
    if result.value >= target:
        logger.info(f"Target {target} reached")
        return EXIT_OK
    logger.warning(f"Target {target} not reached (value {result.value})")
    return EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    from src.model.instance import evaluate
    from src.model.schema import SolveResultModel, load_instance, load_json, load_seeding

    instance = load_instance(Path(args.instance))
    seeding, claimed = None, args.claimed
    if args.result:
        result = load_json(SolveResultModel, Path(args.result))
        seeding = result.to_seeding()
        claimed = result.value if claimed is None else claimed
    if args.seeding:
        seeding = load_seeding(Path(args.seeding))
    if seeding is None or claimed is None:
        raise ValidationError("verify needs a seeding and a claimed value (positionally or through --result)")

    report = evaluate(instance, seeding)
    lines = [f"round {g.round}: {g.winner} beats {g.loser}  value {g.value}" for g in report.games]
    lines.append(f"champion: {report.winner}")
    lines.append(f"total: {report.total}  claimed: {claimed}")
    sys.stdout.write("\n".join(lines) + "\n")

    if report.total != claimed:
        logger.error(f"Claimed value {claimed} does not match evaluated total {report.total}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    from src.bench.harness import BenchHarness
    from src.solvers.base import Algorithm

    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()] if args.algorithms else None
    known = {a.value for a in Algorithm}
    unknown = [a for a in algorithms or () if a not in known]
    if unknown:
        raise ValidationError(f"Unknown algorithms {unknown}; choose from {sorted(known)}")
    harness = BenchHarness(
        family=args.family,
        n=args.n,
        count=args.count,
        algorithms=algorithms,
        rng_seed=args.rng_seed,
        timing=not args.no_timing,
        settings=args.settings,
    )
    rows = harness.run()
    _emit(BenchHarness.to_csv(rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from src.bench.families import BENCH_FAMILIES
    from src.solvers.base import Algorithm

    root = argparse.ArgumentParser(
        prog="bracketopt",
        description="bracketopt knockout seeding optimizer: unified CLI",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    root.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = root.add_subparsers(dest="command", required=True)

    # ================================================================
    # generate
    # ================================================================
    gen = subparsers.add_parser("generate", help="Write an instance JSON")
    family = gen.add_mutually_exclusive_group(required=True)
    family.add_argument("--random", nargs=2, metavar=("KIND", "N"), help="Random values of one kind")
    family.add_argument("--popularity", type=int, metavar="N", help="Popularity with --values distinct values")
    family.add_argument("--planted", type=int, metavar="N", help="Monotone popularity with --k re-drawn players")
    family.add_argument("--monotone", type=int, metavar="N", help="Popularity non-decreasing in strength")
    family.add_argument("--tight", type=int, nargs=2, metavar=("N", "SCALE"), help="Matching worst case")
    family.add_argument("--reduce1", metavar="FILE", help="Round-dependent reduction of a DIMACS (2,3)-CNF")
    family.add_argument("--reduce2", metavar="FILE", help="Round-oblivious reduction of a DIMACS (2,3)-CNF")
    gen.add_argument("--values", type=int, default=2, metavar="K")
    gen.add_argument("--k", type=int, default=1, metavar="K")
    gen.add_argument("--low", type=int, default=-9)
    gen.add_argument("--high", type=int, default=9)
    gen.add_argument("--density", type=float, default=1.0)
    gen.add_argument("--nonneg", action="store_true", help="Shift reduction 2 values by +6")
    gen.add_argument("--clauses-target", type=int, default=None, metavar="K", help="Decision target: K clauses")
    gen.add_argument("--layout-out", default=None, metavar="FILE", help="Write the reduction's role layout")
    gen.add_argument("--rng-seed", type=int, default=None)
    gen.add_argument("--out", default=None, metavar="FILE")
    gen.set_defaults(func=cmd_generate)

    # ================================================================
    # solve
    # ================================================================
    sol = subparsers.add_parser("solve", help="Optimize the seeding of an instance")
    sol.add_argument("instance", help="Instance JSON")
    sol.add_argument("--algorithm", choices=[a.value for a in Algorithm], default=Algorithm.AUTO.value)
    sol.add_argument(
        "--target",
        type=int,
        nargs="?",
        const="instance",
        default=None,
        help="Exit 3 unless the value reaches V (the instance's target when V is omitted)",
    )
    sol.add_argument("--tree", action="store_true", help="Include the execution tree")
    sol.add_argument("--out", default=None, metavar="FILE")
    sol.set_defaults(func=cmd_solve)

    # ================================================================
    # verify
    # ================================================================
    ver = subparsers.add_parser("verify", help="Re-evaluate a seeding against a claimed value")
    ver.add_argument("instance", help="Instance JSON")
    ver.add_argument("seeding", nargs="?", default=None, help="Seeding or SolveResult JSON")
    ver.add_argument("claimed", nargs="?", type=int, default=None, help="Claimed tournament value")
    ver.add_argument("--result", default=None, metavar="FILE", help="SolveResult JSON (seeding and value)")
    ver.set_defaults(func=cmd_verify)

    # ================================================================
    # bench
    # ================================================================
    ben = subparsers.add_parser("bench", help="Run solvers over an instance family, write CSV")
    ben.add_argument("--family", choices=BENCH_FAMILIES, required=True)
    ben.add_argument("--n", type=int, default=8)
    ben.add_argument("--count", type=int, default=20)
    ben.add_argument("--algorithms", default=None, help="Comma separated, e.g. matching,brute")
    ben.add_argument("--rng-seed", type=int, default=None)
    ben.add_argument("--no-timing", action="store_true", help="Write wall_ms as 0 (byte-stable CSV)")
    ben.add_argument("--out", default=None, metavar="FILE")
    ben.set_defaults(func=cmd_bench)

    return root


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    from src.settings.configs import Settings

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    _setup_logging(verbose=args.verbose)
    try:
        settings = Settings.from_env()
        _setup_logging(settings.log_level, args.verbose)
        args.settings = settings
        if getattr(args, "rng_seed", None) is None:
            args.rng_seed = settings.default_rng_seed
        return args.func(args)
    except BracketOptError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
