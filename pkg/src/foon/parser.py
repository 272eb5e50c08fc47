"""Readers and writers for subgraph, kitchen, motion-rate and substitution files.

Subgraph files are tab-separated, one record per line::

    O<TAB>name<TAB>state1,state2[<TAB>[ingredient1,ingredient2]]
    M<TAB>motion
    //

Object lines before the ``M`` line are the unit's inputs, those after it
are its outputs, and ``//`` closes the unit.  Every loader is
all-or-nothing: the first bad line aborts the whole file.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .core import (
    Foon,
    FunctionalUnit,
    KitchenState,
    ObjectNode,
    SubstitutionMap,
    normalize_key,
    normalize_motion,
)
from .errors import DuplicateLabel, MalformedDocument, MalformedLine, RateOutOfRange

UNIT_END = "//"


@dataclass(frozen=True)
class MotionSuccessTable:
    """Motion label -> probability that a robot executes it successfully."""

    rates: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label, rate in self.rates.items():
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"rate {rate!r} for motion {label!r} is outside [0, 1]")

    def get(self, motion: str) -> float | None:
        return self.rates.get(motion)

    def __contains__(self, motion: object) -> bool:
        return motion in self.rates

    def __len__(self) -> int:
        return len(self.rates)


def _parse_object(fields: list[str], line_no: int) -> ObjectNode:
    if len(fields) < 2 or not fields[1].strip():
        raise MalformedLine(line_no, "object line has no name")
    if len(fields) > 4:
        raise MalformedLine(line_no, f"object line has {len(fields)} fields, expected at most 4")
    states = [s for s in (fields[2].split(",") if len(fields) > 2 else []) if s.strip()]
    ingredients: list[str] = []
    if len(fields) == 4:
        raw = fields[3].strip()
        if not (raw.startswith("[") and raw.endswith("]")):
            raise MalformedLine(line_no, "ingredient list must be enclosed in brackets")
        ingredients = [i for i in raw[1:-1].split(",") if i.strip()]
    try:
        return ObjectNode(fields[1], frozenset(states), tuple(ingredients))
    except ValueError as exc:
        raise MalformedLine(line_no, str(exc)) from None


def parse_subgraph(text: str) -> list[FunctionalUnit]:
    """Parse a subgraph file into its functional units, in file order."""
    units: list[FunctionalUnit] = []
    inputs: list[ObjectNode] = []
    outputs: list[ObjectNode] = []
    motion: str | None = None
    pending = False
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        last_line = line_no
        fields = line.split("\t")
        tag = fields[0].strip()

        if tag == UNIT_END:
            if len(fields) > 1:
                raise MalformedLine(line_no, "unit terminator must stand alone")
            if not pending:
                continue
            if motion is None:
                raise MalformedLine(line_no, "functional unit has no motion line")
            if not inputs:
                raise MalformedLine(line_no, "functional unit has no input objects")
            if not outputs:
                raise MalformedLine(line_no, "functional unit has no output objects")
            units.append(FunctionalUnit(tuple(inputs), motion, tuple(outputs)))
            inputs, outputs, motion, pending = [], [], None, False
        elif tag == "O":
            node = _parse_object(fields, line_no)
            (inputs if motion is None else outputs).append(node)
            pending = True
        elif tag == "M":
            if motion is not None:
                raise MalformedLine(line_no, "functional unit has more than one motion line")
            if len(fields) != 2 or not fields[1].strip():
                raise MalformedLine(line_no, "motion line must be 'M<TAB>label'")
            try:
                motion = normalize_motion(fields[1])
            except ValueError as exc:
                raise MalformedLine(line_no, str(exc)) from None
            pending = True
        else:
            raise MalformedLine(line_no, f"unknown line tag {tag!r}")

    if pending:
        raise MalformedLine(last_line, f"unit not terminated by {UNIT_END!r}")
    return units


def _format_object(node: ObjectNode) -> str:
    fields = ["O", node.name, ",".join(sorted(node.states))]
    if node.ingredients:
        fields.append("[" + ",".join(node.ingredients) + "]")
    return "\t".join(fields).rstrip("\t")


def serialize_subgraph(units: Iterable[FunctionalUnit]) -> str:
    lines: list[str] = []
    for unit in units:
        lines.extend(_format_object(n) for n in unit.inputs)
        lines.append(f"M\t{unit.motion}")
        lines.extend(_format_object(n) for n in unit.outputs)
        lines.append(UNIT_END)
    return "".join(line + "\n" for line in lines)


def parse_kitchen(document: str | list[Any]) -> KitchenState:
    """Load a kitchen from JSON text (or an already-decoded list of entries)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"kitchen is not valid JSON: {exc}") from None
    if not isinstance(document, list):
        raise MalformedDocument("kitchen must be a list of entries")

    nodes = []
    for i, entry in enumerate(document):
        if not isinstance(entry, dict):
            raise MalformedDocument(f"entry {i} is not an object")
        label = entry.get("label")
        if not isinstance(label, str):
            raise MalformedDocument(f"entry {i} has no 'label' field")
        states = entry.get("states", [])
        if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
            raise MalformedDocument(f"entry {i} ({label!r}): 'states' must be a list of strings")
        ingredients = entry.get("ingredients") or []
        if not isinstance(ingredients, list) or not all(isinstance(s, str) for s in ingredients):
            raise MalformedDocument(f"entry {i} ({label!r}): 'ingredients' must be a list of strings")
        try:
            nodes.append(ObjectNode(label, frozenset(states), tuple(ingredients)))
        except ValueError as exc:
            raise MalformedDocument(f"entry {i}: {exc}") from None
    return KitchenState.from_nodes(nodes)


def parse_motions(text: str) -> MotionSuccessTable:
    """Parse ``label rate`` records; ``#`` starts a comment line."""
    rates: dict[str, float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.rsplit(None, 1)
        if len(parts) != 2:
            raise MalformedLine(line_no, "expected '<motion> <rate>'")
        label, rate_text = parts
        try:
            rate = float(rate_text)
        except ValueError:
            raise MalformedLine(line_no, f"rate {rate_text!r} is not a number") from None
        try:
            label = normalize_motion(label)
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
        if math.isnan(rate) or not 0.0 <= rate <= 1.0:
            raise RateOutOfRange(line_no, label, rate)
        if label in rates:
            raise DuplicateLabel(line_no, label)
        rates[label] = rate
    return MotionSuccessTable(rates)


def _split_keys(text: str) -> list[str]:
    # Keys themselves contain commas (state and ingredient lists), so a comma
    # only separates two keys once the left piece already has both pipes and
    # the right piece starts a new key.
    keys: list[str] = []
    current: str | None = None
    for piece in text.split(","):
        if current is not None and current.count("|") == 2 and "|" in piece:
            keys.append(current)
            current = None
        current = piece if current is None else current + "," + piece
    if current is not None and current.strip():
        keys.append(current)
    return keys


def parse_substitutions(text: str) -> SubstitutionMap:
    """Parse ``key = key1, key2, ...`` lines into a :class:`SubstitutionMap`."""
    equivalents: dict[str, tuple[str, ...]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count("=") != 1:
            raise MalformedLine(line_no, "expected '<key> = <key>, <key>, ...'")
        lhs, rhs = line.split("=")
        try:
            key = normalize_key(lhs.strip())
            subs = [normalize_key(k.strip()) for k in _split_keys(rhs)]
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
        if not subs:
            raise MalformedLine(line_no, f"no substitutes listed for {key!r}")
        if key in subs:
            raise MalformedLine(line_no, f"{key!r} lists itself as a substitute")
        if key in equivalents:
            raise DuplicateLabel(line_no, key)
        equivalents[key] = tuple(dict.fromkeys(subs))
    return SubstitutionMap(equivalents)


def serialize_substitutions(subs: SubstitutionMap) -> str:
    return "".join(f"{k} = {', '.join(v)}\n" for k, v in subs.equivalents.items())


# -- file helpers ------------------------------------------------------------

def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror or exc}") from None


def load_subgraph(path: str | Path) -> list[FunctionalUnit]:
    try:
        return parse_subgraph(_read(path))
    except MalformedLine as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def load_foon(paths: Iterable[str | Path]) -> Foon:
    """Parse every subgraph file and merge them, in order, into one graph."""
    foon = Foon()
    for path in paths:
        for unit in load_subgraph(path):
            foon.add_unit(unit)
    return foon


def load_kitchen(path: str | Path) -> KitchenState:
    return parse_kitchen(_read(path))


def load_motions(path: str | Path) -> MotionSuccessTable:
    return parse_motions(_read(path))


def load_substitutions(path: str | Path) -> SubstitutionMap:
    return parse_substitutions(_read(path))

