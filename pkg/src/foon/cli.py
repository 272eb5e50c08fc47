"""Command-line interface.

Subcommands::

    foon retrieve  --foon F [--foon F ...] --kitchen K --goal G [--algo ...]
    foon merge     F [F ...] --out OUT
    foon stats     --foon F ... --kitchen K --motions M --goal G [--goal G ...]
    foon manifest  [CORPUS] [--out FILE | --check FILE]
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .core import Foon, KitchenState, SubstitutionMap, normalize_key
from .dot import export_dot
from .errors import (
    AmbiguousGoal,
    CyclicDependency,
    FoonError,
    GoalNotFound,
    NoSolutionWithinDepth,
    ParseError,
    UnreachableGoal,
)
from .fixtures import CorpusTooLarge, corpus_path, generate_manifest, render_manifest
from .parser import (
    MotionSuccessTable,
    load_foon,
    load_kitchen,
    load_motions,
    load_subgraph,
    load_substitutions,
    serialize_subgraph,
)
from .retrieval import (
    ALGORITHMS,
    DEFAULT_DEPTH_CEILING,
    RetrievalStats,
    TaskTree,
    resolve_goal_name,
    retrieve,
    validate_tree,
)

log = logging.getLogger("foon")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GOAL_NOT_FOUND = 4
EXIT_UNREACHABLE = 5
EXIT_NO_SOLUTION = 6
EXIT_AMBIGUOUS_GOAL = 7
EXIT_CYCLIC = 8
EXIT_CORPUS_TOO_LARGE = 9

_EXIT_CODES: list[tuple[type[Exception], int]] = [
    (ParseError, EXIT_PARSE),
    (GoalNotFound, EXIT_GOAL_NOT_FOUND),
    (UnreachableGoal, EXIT_UNREACHABLE),
    (NoSolutionWithinDepth, EXIT_NO_SOLUTION),
    (AmbiguousGoal, EXIT_AMBIGUOUS_GOAL),
    (CyclicDependency, EXIT_CYCLIC),
    (CorpusTooLarge, EXIT_CORPUS_TOO_LARGE),
]

EXIT_CODE_HELP = """exit codes:
  0  success
  1  manifest check found differences
  2  bad command-line usage
  3  an input file is missing or malformed
  4  goal not produced by any functional unit
  5  goal unreachable (an object can be neither found nor produced)
  6  no task tree within the depth ceiling (ids)
  7  goal name matches several object states (--goal-by-name)
  8  task-tree steps cannot be ordered (circular dependency)
  9  corpus too large for exhaustive manifest generation
"""

STATS_HEADER = ("goal", "algorithm", "units_in_tree", "units_expanded")


class UsageError(Exception):
    pass


def exit_code_for(exc: Exception) -> int:
    for kind, code in _EXIT_CODES:
        if isinstance(exc, kind):
            return code
    return EXIT_FAILURE


@dataclass
class RunConfig:
    foon_paths: list[Path]
    kitchen_path: Path
    goals: list[str] = field(default_factory=list)
    algorithm: str = "ids"
    motions_path: Path | None = None
    subs_path: Path | None = None
    depth_ceiling: int = DEFAULT_DEPTH_CEILING
    goal_by_name: bool = False
    out_path: Path | None = None
    dot_path: Path | None = None
    stats_path: Path | None = None

    @property
    def algorithms(self) -> tuple[str, ...]:
        return ALGORITHMS if self.algorithm == "all" else (self.algorithm,)

    def validate(self) -> None:
        if not self.foon_paths:
            raise UsageError("at least one --foon file is required")
        if self.algorithm not in (*ALGORITHMS, "all"):
            raise UsageError(f"unknown algorithm {self.algorithm!r}")
        if "gbfs-h1" in self.algorithms and self.motions_path is None:
            raise UsageError(f"--algo {self.algorithm} needs --motions")
        if self.depth_ceiling < 1:
            raise UsageError("--depth-ceiling must be at least 1")


@dataclass
class Loaded:
    foon: Foon
    kitchen: KitchenState
    motions: MotionSuccessTable | None
    subs: SubstitutionMap | None

    def resolve(self, goal: str, by_name: bool) -> str:
        if by_name:
            return resolve_goal_name(self.foon, self.kitchen, goal)
        try:
            return normalize_key(goal)
        except ValueError as exc:
            raise UsageError(f"--goal: {exc} (use --goal-by-name for a bare object name)") from None


def load_inputs(config: RunConfig) -> Loaded:
    return Loaded(
        foon=load_foon(config.foon_paths),
        kitchen=load_kitchen(config.kitchen_path),
        motions=load_motions(config.motions_path) if config.motions_path else None,
        subs=load_substitutions(config.subs_path) if config.subs_path else None,
    )


def _run(loaded: Loaded, goal: str, algorithm: str, depth_ceiling: int) -> tuple[TaskTree, RetrievalStats]:
    return retrieve(
        algorithm, loaded.foon, goal, loaded.kitchen, loaded.subs, loaded.motions, depth_ceiling
    )


def stats_rows_csv(rows: list[tuple[str, str, int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STATS_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def _per_algorithm(path: Path, algorithm: str, fan_out: bool) -> Path:
    return path.with_name(f"{path.stem}.{algorithm}{path.suffix}") if fan_out else path


def cmd_retrieve(config: RunConfig, stdout=None) -> int:
    """Retrieve one goal with one or all algorithms; write artifacts only if every run succeeds."""
    stdout = stdout or sys.stdout
    config.validate()
    if len(config.goals) != 1:
        raise UsageError("retrieve takes exactly one --goal")
    loaded = load_inputs(config)
    goal = loaded.resolve(config.goals[0], config.goal_by_name)

    results = [(algo, *_run(loaded, goal, algo, config.depth_ceiling)) for algo in config.algorithms]

    fan_out = len(results) > 1
    rows = []
    for algo, tree, stats in results:
        rows.append((goal, algo, stats.units_in_tree, stats.units_expanded))
        if config.out_path:
            _per_algorithm(config.out_path, algo, fan_out).write_text(
                serialize_subgraph(tree.steps), encoding="utf-8"
            )
        if config.dot_path:
            _per_algorithm(config.dot_path, algo, fan_out).write_text(export_dot(tree), encoding="utf-8")
    report = stats_rows_csv(rows)
    if config.stats_path:
        config.stats_path.write_text(report, encoding="utf-8")
    stdout.write(report)
    return EXIT_OK


def cmd_merge(inputs: list[Path], output: Path, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if not inputs:
        raise UsageError("merge needs at least one input file")
    merged = Foon()
    total = 0
    for path in inputs:
        units = load_subgraph(path)
        total += len(units)
        for unit in units:
            merged.add_unit(unit)
    output.write_text(serialize_subgraph(merged.units), encoding="utf-8")
    stdout.write(f"read {total} units from {len(inputs)} file(s); wrote {len(merged)} distinct units to {output}\n")
    return EXIT_OK


def cmd_stats(config: RunConfig, stdout=None) -> int:
    """Units-in-tree per goal and algorithm; failures are reported in their cell."""
    stdout = stdout or sys.stdout
    config.validate()
    loaded = load_inputs(config)
    algorithms = config.algorithms

    table: list[list[str]] = []
    long_rows: list[tuple[str, str, int, int]] = []
    for raw_goal in config.goals:
        try:
            goal = loaded.resolve(raw_goal, config.goal_by_name)
        except (FoonError, UsageError) as exc:
            table.append([raw_goal] + [type(exc).__name__] * len(algorithms))
            continue
        cells = [goal]
        for algo in algorithms:
            try:
                tree, stats = _run(loaded, goal, algo, config.depth_ceiling)
            except FoonError as exc:
                cells.append(type(exc).__name__)
                continue
            verdict = validate_tree(tree, loaded.kitchen, loaded.subs)
            if not verdict:
                log.error("%s tree for %s failed validation at step %s (%s)", algo, goal, verdict.step, verdict.missing)
                cells.append("INVALID")
                continue
            cells.append(str(stats.units_in_tree))
            long_rows.append((goal, algo, stats.units_in_tree, stats.units_expanded))
        table.append(cells)

    header = ["goal", *algorithms]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(table)
    stdout.write(buf.getvalue())
    stdout.write("\n")
    widths = [max(len(row[i]) for row in [header, *table]) for i in range(len(header))]
    for row in [header, ["-" * w for w in widths], *table]:
        stdout.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")
    if config.stats_path:
        config.stats_path.write_text(stats_rows_csv(long_rows), encoding="utf-8")
    return EXIT_OK


def cmd_manifest(corpus: Path, out: Path | None, check: Path | None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    text = render_manifest(generate_manifest(corpus))
    if check is not None:
        if check.read_text(encoding="utf-8") != text:
            stdout.write(f"{check} is out of date with {corpus}\n")
            return EXIT_FAILURE
        stdout.write(f"{check} is up to date\n")
        return EXIT_OK
    if out is not None:
        out.write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return EXIT_OK


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--foon", action="append", type=Path, default=[], metavar="FILE",
                   help="subgraph file; repeat to merge several, in order")
    p.add_argument("--kitchen", type=Path, required=True, metavar="FILE", help="kitchen JSON file")
    p.add_argument("--motions", type=Path, metavar="FILE", help="motion success-rate table (needed by gbfs-h1)")
    p.add_argument("--subs", type=Path, metavar="FILE", help="ingredient substitution file")
    p.add_argument("--algo", default=None, choices=[*ALGORITHMS, "all"])
    p.add_argument("--depth-ceiling", type=int, default=DEFAULT_DEPTH_CEILING, metavar="N")
    p.add_argument("--goal-by-name", action="store_true",
                   help="treat --goal as an object name and resolve its unique state variant")
    p.add_argument("--stats", type=Path, metavar="FILE",
                   help="write goal,algorithm,units_in_tree,units_expanded rows here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foon",
        description="Retrieve task trees from a Functional Object-Oriented Network.",
        epilog=EXIT_CODE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("retrieve", help="build a task tree for one goal",
                       epilog=EXIT_CODE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_inputs(p)
    p.add_argument("--goal", required=True, help="goal object key (name|states|ingredients)")
    p.add_argument("--out", type=Path, metavar="FILE", help="write the task tree (subgraph format)")
    p.add_argument("--dot", type=Path, metavar="FILE", help="write a Graphviz rendering")

    p = sub.add_parser("merge", help="merge subgraph files into one deduplicated FOON",
                       epilog=EXIT_CODE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("inputs", nargs="+", type=Path)
    p.add_argument("--out", type=Path, required=True, metavar="FILE")

    p = sub.add_parser("stats", help="compare tree sizes across goals and algorithms",
                       epilog=EXIT_CODE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_inputs(p)
    p.add_argument("--goal", action="append", default=[], help="goal key; repeatable")
    p.add_argument("--goals-file", type=Path, metavar="FILE", help="one goal per line")

    p = sub.add_parser("manifest", help="regenerate the brute-force fixture manifest",
                       epilog=EXIT_CODE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("corpus", nargs="?", type=Path, default=None,
                   help="corpus directory (default: the bundled fixtures)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--out", type=Path, metavar="FILE")
    group.add_argument("--check", type=Path, metavar="FILE", help="compare against an existing manifest")
    return parser


def _config(args: argparse.Namespace, default_algo: str) -> RunConfig:
    goals = list(args.goal) if isinstance(args.goal, list) else [args.goal]
    goals_file = getattr(args, "goals_file", None)
    if goals_file is not None:
        try:
            text = goals_file.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {goals_file}: {exc.strerror or exc}") from None
        goals += [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    return RunConfig(
        foon_paths=args.foon,
        kitchen_path=args.kitchen,
        goals=goals,
        algorithm=args.algo or default_algo,
        motions_path=args.motions,
        subs_path=args.subs,
        depth_ceiling=args.depth_ceiling,
        goal_by_name=args.goal_by_name,
        out_path=getattr(args, "out", None),
        dot_path=getattr(args, "dot", None),
        stats_path=args.stats,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "retrieve":
            return cmd_retrieve(_config(args, "ids"))
        if args.command == "merge":
            return cmd_merge(args.inputs, args.out)
        if args.command == "stats":
            return cmd_stats(_config(args, "all"))
        return cmd_manifest(args.corpus or corpus_path(), args.out, args.check)
    except UsageError as exc:
        parser.error(str(exc))
    except (FoonError, CorpusTooLarge) as exc:
        print(f"foon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
