"""Exhaustive oracle for the fixture corpus.

This module intentionally imports nothing from the rest of the package: it
has its own reader for the corpus files and its own notion of object keys,
and it enumerates every combination of producing units for each goal
instead of searching.  Tests compare the library against what it writes.

Corpus layout (a directory)::

    *.foon           merged in name order into the searchable graph
    merge/*.foon     extra subgraphs used only for merge checks
    kitchen.json     inventory
    motions.txt      motion success rates
    substitutions.txt
    goals.txt        one goal key per line
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

MAX_COMBINATIONS = 100_000


class CorpusTooLarge(Exception):
    def __init__(self, count: int) -> None:
        self.count = count
        super().__init__(f"more than {MAX_COMBINATIONS} candidate combinations ({count} explored)")


def _norm(text: str) -> str:
    return " ".join(text.split()).lower()


def _key(name: str, states, ingredients) -> str:
    return "{}|{}|{}".format(
        _norm(name),
        ",".join(sorted(_norm(s) for s in states if s.strip())),
        ",".join(sorted(_norm(i) for i in ingredients if i.strip())),
    )


def _rekey(text: str) -> str:
    name, states, ingredients = text.strip().split("|")
    return _key(name, states.split(","), ingredients.split(","))


@dataclass(frozen=True)
class _Unit:
    inputs: tuple[str, ...]
    motion: str
    outputs: tuple[str, ...]

    @property
    def ident(self) -> str:
        return "{} --{}--> {}".format(
            " + ".join(sorted(self.inputs)), self.motion, " + ".join(sorted(self.outputs))
        )


def _read_units(path: Path) -> list[_Unit]:
    units, ins, outs, motion = [], [], [], None
    for raw in path.read_text(encoding="utf-8").splitlines():
        if not raw.strip():
            continue
        cols = raw.rstrip().split("\t")
        if cols[0] == "//":
            if motion is not None:
                units.append(_Unit(tuple(ins), motion, tuple(outs)))
            ins, outs, motion = [], [], None
        elif cols[0] == "M":
            motion = _norm(cols[1])
        elif cols[0] == "O":
            states = cols[2].split(",") if len(cols) > 2 else []
            ingredients = cols[3].strip()[1:-1].split(",") if len(cols) > 3 else []
            (ins if motion is None else outs).append(_key(cols[1], states, ingredients))
        else:
            raise ValueError(f"{path}: unexpected line {raw!r}")
    return units


@dataclass
class _Corpus:
    units: list[_Unit] = field(default_factory=list)
    producers: dict[str, list[int]] = field(default_factory=dict)
    kitchen: set[str] = field(default_factory=set)
    rates: dict[str, float] = field(default_factory=dict)
    subs: dict[str, list[str]] = field(default_factory=dict)

    def available(self, key: str) -> bool:
        return key in self.kitchen or any(s in self.kitchen for s in self.subs.get(key, ()))

    def needed(self, idx: int) -> list[str]:
        return [k for k in dict.fromkeys(self.units[idx].inputs) if not self.available(k)]


def _load(root: Path) -> tuple[_Corpus, dict[str, list[_Unit]]]:
    corpus = _Corpus()
    per_file: dict[str, list[_Unit]] = {}
    seen: set[str] = set()
    for path in sorted(root.glob("*.foon")):
        per_file[path.name] = _read_units(path)
        for unit in per_file[path.name]:
            if unit.ident in seen:
                continue
            seen.add(unit.ident)
            corpus.units.append(unit)
            for out in dict.fromkeys(unit.outputs):
                corpus.producers.setdefault(out, []).append(len(corpus.units) - 1)
    for path in sorted((root / "merge").glob("*.foon")):
        per_file["merge/" + path.name] = _read_units(path)

    for entry in json.loads((root / "kitchen.json").read_text(encoding="utf-8")):
        corpus.kitchen.add(_key(entry["label"], entry.get("states", []), entry.get("ingredients") or []))
    for line in (root / "motions.txt").read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            label, rate = line.rsplit(None, 1)
            corpus.rates[_norm(label)] = float(rate)
    subs_path = root / "substitutions.txt"
    if subs_path.exists():
        for line in subs_path.read_text(encoding="utf-8").splitlines():
            if line.strip() and not line.lstrip().startswith("#"):
                lhs, rhs = line.split("=")
                # stand-ins are separated by ", " followed by a new key
                corpus.subs[_rekey(lhs)] = [_rekey(k) for k in rhs.split(", ")]
    return corpus, per_file


def _enumerate_plans(corpus: _Corpus, goal: str) -> list[dict[str, int]]:
    """Every assignment of one producing unit to each object that must be made."""
    plans: list[dict[str, int]] = []
    explored = 0

    def rec(pending: list[str], assign: dict[str, int]) -> None:
        nonlocal explored
        explored += 1
        if explored > MAX_COMBINATIONS:
            raise CorpusTooLarge(explored)
        while pending and (pending[0] in assign or corpus.available(pending[0])):
            pending = pending[1:]
        if not pending:
            plans.append(dict(assign))
            return
        key = pending[0]
        for idx in corpus.producers.get(key, ()):
            assign[key] = idx
            rec(pending[1:] + corpus.needed(idx), assign)
            del assign[key]

    rec([goal], {})
    return plans


def _executes(corpus: _Corpus, goal: str, plan: dict[str, int]) -> bool:
    """Fire plan units in any order until nothing changes."""
    have = set(corpus.kitchen)
    todo = set(plan.values())

    def present(k: str) -> bool:
        return k in have or any(s in have for s in corpus.subs.get(k, ()))

    progress = True
    while todo and progress:
        progress = False
        for idx in sorted(todo):
            if all(present(k) for k in corpus.units[idx].inputs):
                have.update(corpus.units[idx].outputs)
                todo.discard(idx)
                progress = True
    return not todo and present(goal)


def _depth(corpus: _Corpus, key: str, plan: dict[str, int], path: frozenset = frozenset()) -> float:
    if corpus.available(key):
        return 0
    if key in path:
        return float("inf")
    idx = plan[key]
    children = [_depth(corpus, k, plan, path | {key}) for k in corpus.needed(idx)]
    return 1 + max(children, default=0)


def _best_by_rate(corpus: _Corpus, options: list[int]) -> int:
    best = options[0]
    for idx in options[1:]:
        if corpus.rates.get(corpus.units[idx].motion, 0.0) > corpus.rates.get(corpus.units[best].motion, 0.0):
            best = idx
    return best


def _best_by_count(corpus: _Corpus, options: list[int]) -> int:
    best = options[0]
    for idx in options[1:]:
        if len(corpus.units[idx].inputs) < len(corpus.units[best].inputs):
            best = idx
    return best


def generate_manifest(root: str | Path) -> list[tuple[str, str, str, str]]:
    """Brute-force every fixture fact the test-suite asserts.

    Rows are ``(record, subject, detail, value)``.
    """
    root = Path(root)
    corpus, per_file = _load(root)
    rows: list[tuple[str, str, str, str]] = []

    for name, units in per_file.items():
        rows.append(("file_units", name, "", str(len(units))))
        for i, unit in enumerate(units):
            rows.append(("unit", name, str(i), unit.ident))
    rows.append(("kitchen_keys", "kitchen.json", "", str(len(corpus.kitchen))))
    merge_files = sorted(n for n in per_file if n.startswith("merge/"))
    if merge_files:
        distinct = {u.ident for n in merge_files for u in per_file[n]}
        rows.append(("merge_units", "+".join(merge_files), "", str(len(distinct))))
    rows.append(("universe_units", "*.foon", "", str(len(corpus.units))))

    for key in sorted(corpus.producers):
        options = corpus.producers[key]
        rows.append(("candidates", key, "", ";".join(corpus.units[i].ident for i in options)))
        if len(options) > 1:
            rows.append(("fork_h1", key, str(len(options)), corpus.units[_best_by_rate(corpus, options)].ident))
            rows.append(("fork_h2", key, str(len(options)), corpus.units[_best_by_count(corpus, options)].ident))

    goals = [
        _rekey(line) for line in (root / "goals.txt").read_text(encoding="utf-8").splitlines() if line.strip()
    ]
    for goal in goals:
        plans = [p for p in _enumerate_plans(corpus, goal) if _executes(corpus, goal, p)]
        trees = sorted({tuple(sorted(corpus.units[i].ident for i in set(p.values()))) for p in plans})
        rows.append(("valid_trees", goal, "", str(len(trees))))
        for i, tree in enumerate(trees):
            rows.append(("valid_tree", goal, str(i), ";".join(tree)))
        if plans:
            rows.append(("min_depth", goal, "", str(min(int(_depth(corpus, goal, p)) for p in plans))))

        first = [p for p in plans if all(idx == corpus.producers[k][0] for k, idx in p.items())]
        expected = {"ids": first}
        if first:
            rows.append(("ids_depth", goal, "", str(int(_depth(corpus, goal, first[0])))))

        usable: dict[str, list[int]] = {}
        for plan in plans:
            for key, idx in plan.items():
                usable.setdefault(key, [])
                if idx not in usable[key]:
                    usable[key].append(idx)
        for key in usable:
            usable[key].sort(key=corpus.producers[key].index)
        for algo, pick in (("gbfs-h1", _best_by_rate), ("gbfs-h2", _best_by_count)):
            expected[algo] = [
                p for p in plans if all(idx == pick(corpus, usable[k]) for k, idx in p.items())
            ]

        for algo in ("ids", "gbfs-h1", "gbfs-h2"):
            matches = expected[algo]
            if len(matches) == 1:
                chosen = sorted({corpus.units[i].ident for i in matches[0].values()})
                rows.append(("tree_size", goal, algo, str(len(chosen))))
                rows.append(("tree", goal, algo, ";".join(chosen)))
            else:
                rows.append(("tree_size", goal, algo, "undetermined"))
    return rows


def render_manifest(rows: list[tuple[str, str, str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("record", "subject", "detail", "value"))
    writer.writerows(rows)
    return buf.getvalue()
