#!/usr/bin/env python3
"""
Global alliances in trees
Command-line entry point: solvers, predicate checks, constructions,
corpora and theorem sweeps
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from config import Config, get_config
from graph_core import AllianceError, Tree, load_tree, parse_vertex_set
from alliance_predicates import PredicateKind, alliance_violations, evaluate
from exact_solvers import SolveKind, gamma_a, solve
from constructions import augment_with_report, defensive_certificate, smaller_side_offensive
from tree_corpus import CorpusMode, CorpusSpec, corpus, dump_corpus, parse_n_range
from theorem_harness import (
    check_theorem,
    create_sweep_runner,
    find_sharp,
    records_to_csv,
    report_to_json,
)

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

MODES = {
    "labeled": CorpusMode.LABELED,
    "free": CorpusMode.FREE,
    "random": CorpusMode.RANDOM,
}


class UsageError(Exception):
    """Bad flag combination that argparse cannot express"""


def setup_logging(cfg: Config, verbose: bool = False, quiet: bool = False) -> None:
    """Log to stderr (stdout carries results) and to LOG_FILE when set"""
    level = getattr(logging, cfg.log_level.upper())
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if cfg.log_file:
        Path(cfg.log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(cfg.log_file))

    logging.basicConfig(level=level, format=cfg.log_format, handlers=handlers, force=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this path instead of stdout")
    common.add_argument("--max-exact-n", type=int, help="exact-solver size cap (default from MAX_EXACT_N)")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--quiet", action="store_true", help="warnings and errors only")

    tree_input = argparse.ArgumentParser(add_help=False)
    tree_input.add_argument("--input", required=True, help="tree file, or the name of a bundled fixture")

    vertex_set = argparse.ArgumentParser(add_help=False)
    vertex_set.add_argument("--set", dest="vertex_set", help="comma-separated vertex ids, e.g. 0,3,4")

    output_format = argparse.ArgumentParser(add_help=False)
    output_format.add_argument("--format", choices=["json", "csv"], default="json")

    corpus_args = argparse.ArgumentParser(add_help=False)
    corpus_args.add_argument("--n", required=True, help="vertex count or range a..b")
    corpus_args.add_argument("--seed", type=int, help="unsigned 64-bit seed for random mode")
    corpus_args.add_argument("--samples", type=int, help="sample count for random mode")

    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Global defensive and offensive alliances in trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common, output_format, tree_input], help="exact alliance numbers")
    p.add_argument("--kind", choices=["defensive", "offensive", "both"], default="both")

    p = sub.add_parser("verify", parents=[common, output_format, tree_input, vertex_set], help="check a predicate on a set")
    p.add_argument("--kind", choices=[k.value for k in PredicateKind], default=PredicateKind.GLOBAL_DEFENSIVE.value)

    p = sub.add_parser("construct", parents=[common, output_format, tree_input, vertex_set], help="build a global offensive alliance")
    p.add_argument("--method", choices=["bipartition", "augment"], default="bipartition")

    sub.add_parser("certificate", parents=[common, output_format, tree_input, vertex_set], help="edge counting certificate")

    p = sub.add_parser("enumerate", parents=[common, corpus_args], help="print corpus dump lines")
    p.add_argument("--mode", choices=sorted(MODES), default="free")

    p = sub.add_parser("sweep", parents=[common, output_format, corpus_args], help="check the theorem over a corpus")
    p.add_argument("--mode", choices=sorted(MODES), default="free")
    p.add_argument("--workers", type=int, help="worker processes (default from SWEEP_WORKERS)")
    p.add_argument("--summary", action="store_true", help="omit per-tree records from JSON output")

    p = sub.add_parser("witness", parents=[common, output_format, corpus_args], help="list sharp trees")
    p.add_argument("--sharp", action="store_true", required=True)
    p.add_argument("--mode", choices=sorted(MODES), default="free")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("check", parents=[common, output_format, tree_input], help="theorem record for one tree")

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2)


def _flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested keys become dotted columns; lists become space-separated cells"""
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = " ".join(str(x) for x in value)
        else:
            flat[name] = value
    return flat


def _render(data: Dict[str, Any], fmt: str) -> str:
    """One result as JSON, or as a header plus one CSV row"""
    if fmt != "csv":
        return _dump(data)
    row = _flatten(data)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(row), lineterminator="\n")
    writer.writeheader()
    writer.writerow(row)
    return buffer.getvalue()


def _load_input(path: str, cfg: Config) -> Tree:
    """Load a tree file; bare fixture names resolve against FIXTURES_DIR"""
    candidate = Path(path)
    if not candidate.exists():
        fixture = Path(cfg.fixture_path(path))
        if fixture.exists():
            candidate = fixture
    tree = load_tree(candidate)
    logger.info(f"Loaded {candidate} (n={tree.n})")
    return tree


def _defensive_input(args, tree: Tree):
    """The --set value, or the first minimum global defensive alliance when omitted"""
    if args.vertex_set is not None:
        return parse_vertex_set(args.vertex_set, tree.n)
    witness = gamma_a(tree, args.max_exact_n).witness
    logger.info(f"No --set given, using the minimum global defensive alliance {witness.as_list()}")
    return witness


def _corpus_spec(args, cfg: Config) -> CorpusSpec:
    n_min, n_max = parse_n_range(args.n)
    return CorpusSpec(
        mode=MODES[args.mode],
        n_min=n_min,
        n_max=n_max,
        sample_count=cfg.default_samples if args.samples is None else args.samples,
        seed=cfg.default_seed if args.seed is None else args.seed,
    )


def cmd_solve(args, cfg: Config) -> int:
    tree = _load_input(args.input, cfg)
    if args.kind == "both":
        data = {
            "n": tree.n,
            "defensive": solve(tree, SolveKind.DEFENSIVE, args.max_exact_n).as_dict(),
            "offensive": solve(tree, SolveKind.OFFENSIVE, args.max_exact_n).as_dict(),
        }
    else:
        data = solve(tree, SolveKind(args.kind), args.max_exact_n).as_dict()
        data["n"] = tree.n
    _emit(_render(data, args.format), args.out)
    return 0


def cmd_verify(args, cfg: Config) -> int:
    if args.vertex_set is None:
        raise UsageError("verify needs --set")
    tree = _load_input(args.input, cfg)
    s = parse_vertex_set(args.vertex_set, tree.n)
    kind = PredicateKind(args.kind)
    holds = evaluate(tree, s, kind)
    data = {
        "kind": kind.value,
        "set": s.as_list(),
        "holds": holds,
        "violations": alliance_violations(tree, s, kind),
    }
    _emit(_render(data, args.format), args.out)
    return 0 if holds else 1


def cmd_construct(args, cfg: Config) -> int:
    tree = _load_input(args.input, cfg)
    if args.method == "bipartition":
        side = smaller_side_offensive(tree)
        data = {
            "result": side.as_list(),
            "size": len(side),
            "n": tree.n,
            "within_half": 2 * len(side) <= tree.n,
        }
        _emit(_render(data, args.format), args.out)
        return 0

    outcome = augment_with_report(tree, _defensive_input(args, tree))
    _emit(_render(outcome.as_dict(), args.format), args.out)
    return 0 if outcome.offensive_ok and outcome.bound_ok else 1


def cmd_certificate(args, cfg: Config) -> int:
    tree = _load_input(args.input, cfg)
    report = defensive_certificate(tree, _defensive_input(args, tree))
    _emit(_render(report.as_dict(), args.format), args.out)
    return 0 if report.all_hold else 1


def cmd_enumerate(args, cfg: Config) -> int:
    spec = _corpus_spec(args, cfg)
    lines = list(dump_corpus(corpus(spec)))
    logger.info(f"Enumerated {len(lines)} trees")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_sweep(args, cfg: Config) -> int:
    spec = _corpus_spec(args, cfg)
    runner = create_sweep_runner(workers=args.workers, max_exact_n=args.max_exact_n)
    report = runner.run(spec)
    if args.format == "csv":
        _emit(records_to_csv(report.records), args.out)
    else:
        _emit(report_to_json(report, include_records=not args.summary), args.out)
    return 0 if report.all_hold else 1


def cmd_witness(args, cfg: Config) -> int:
    spec = _corpus_spec(args, cfg)
    records = find_sharp(spec, workers=args.workers, max_exact_n=args.max_exact_n)
    if args.format == "csv":
        _emit(records_to_csv(records), args.out)
        return 0

    trees = {item.instance_id: item.tree for item in corpus(spec)}
    data = [
        {
            "instance_id": record.instance_id,
            "n": record.n,
            "edges": [list(e) for e in trees[record.instance_id].edges],
            "gamma_a": record.gamma_a,
            "gamma_o": record.gamma_o,
        }
        for record in records
    ]
    logger.info(f"{len(data)} sharp tree(s) in {spec.as_dict()}")
    _emit(_dump(data), args.out)
    return 0


def cmd_check(args, cfg: Config) -> int:
    tree = _load_input(args.input, cfg)
    record = check_theorem(tree, instance_id=Path(args.input).name, max_exact_n=args.max_exact_n)
    if args.format == "csv":
        _emit(records_to_csv([record]), args.out)
    else:
        _emit(_dump(record.as_dict()), args.out)
    return 0 if record.slack6 >= 0 and record.constructions_ok else 1


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "construct": cmd_construct,
    "certificate": cmd_certificate,
    "enumerate": cmd_enumerate,
    "sweep": cmd_sweep,
    "witness": cmd_witness,
    "check": cmd_check,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand

    Returns 0 on success, 1 when a checked property fails, 2 on usage or
    input errors. Never raises.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, usage errors exit 2
        return 0 if e.code in (0, None) else 2

    try:
        cfg = get_config()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    setup_logging(cfg, verbose=args.verbose, quiet=args.quiet)

    try:
        return COMMANDS[args.command](args, cfg)
    except AllianceError as e:
        where = f" [{e.instance_id}]" if e.instance_id else ""
        logger.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
        print(f"error{where}: {e}", file=sys.stderr)
        return 2
    except (UsageError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(cli_main(sys.argv[1:]))
