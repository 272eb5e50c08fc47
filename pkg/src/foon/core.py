"""FOON domain types and the adjacency-indexed graph store.

Object nodes are identified by a canonical text key::

    name|state1,state2|ingredient1,ingredient2

with the name lowercased and both lists sorted, so node identity ignores
case and state order.  A :class:`Foon` keeps functional units in insertion
order and maps every object key to the indices of the units producing it.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

_RESERVED = ("|", "\t", "\n")


def _clean(text: str, what: str, extra: str = "") -> str:
    cleaned = " ".join(text.split()).lower()
    if not cleaned:
        raise ValueError(f"{what} must be nonempty")
    for ch in _RESERVED + tuple(extra):
        if ch in cleaned:
            raise ValueError(f"{what} {text!r} may not contain {ch!r}")
    return cleaned


@dataclass(frozen=True, eq=False)
class ObjectNode:
    """An object in a given state, optionally holding ingredients."""

    name: str
    states: frozenset[str] = frozenset()
    ingredients: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", _clean(self.name, "object name"))
        object.__setattr__(
            self, "states", frozenset(_clean(s, "state", ",") for s in self.states)
        )
        object.__setattr__(
            self, "ingredients", tuple(_clean(i, "ingredient", ",[]") for i in self.ingredients)
        )
        object.__setattr__(self, "key", object_key(self))

    key: str = field(init=False, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObjectNode):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


def object_key(node: ObjectNode) -> str:
    """Return the canonical identity key of ``node``."""
    return "|".join(
        (
            node.name.strip().lower(),
            ",".join(sorted(node.states)),
            ",".join(sorted(node.ingredients)),
        )
    )


def split_key(key: str) -> tuple[str, list[str], list[str]]:
    """Inverse of :func:`object_key` for well-formed keys."""
    parts = key.split("|")
    if len(parts) != 3:
        raise ValueError(f"object key {key!r} must have exactly three '|'-separated fields")
    name, states, ingredients = parts
    return name, [s for s in states.split(",") if s], [i for i in ingredients.split(",") if i]


def normalize_key(key: str) -> str:
    """Canonicalise a hand-written key (case, spacing, list order)."""
    name, states, ingredients = split_key(key)
    return ObjectNode(name, frozenset(states), tuple(ingredients)).key


def normalize_motion(label: str) -> str:
    return _clean(label, "motion label")


@dataclass(frozen=True, eq=False)
class FunctionalUnit:
    """Input objects, one motion, output objects."""

    inputs: tuple[ObjectNode, ...]
    motion: str
    outputs: tuple[ObjectNode, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "motion", normalize_motion(self.motion))
        if not self.inputs:
            raise ValueError("a functional unit needs at least one input object")
        if not self.outputs:
            raise ValueError("a functional unit needs at least one output object")
        canonical = (
            tuple(sorted(n.key for n in self.inputs)),
            self.motion,
            tuple(sorted(n.key for n in self.outputs)),
        )
        object.__setattr__(self, "canonical", canonical)

    canonical: tuple[tuple[str, ...], str, tuple[str, ...]] = field(init=False, repr=False)

    @property
    def input_keys(self) -> list[str]:
        return [n.key for n in self.inputs]

    @property
    def output_keys(self) -> list[str]:
        return [n.key for n in self.outputs]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionalUnit):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __str__(self) -> str:
        ins, motion, outs = self.canonical
        return f"{' + '.join(ins)} --{motion}--> {' + '.join(outs)}"


class Foon:
    """Deduplicated functional units plus a producer index.

    ``producers[key]`` lists, in insertion order, the indices of units whose
    outputs include ``key``; looking up candidates is a single dict probe.
    """

    def __init__(self, units: Iterable[FunctionalUnit] = ()) -> None:
        self.units: list[FunctionalUnit] = []
        self.producers: dict[str, list[int]] = {}
        self._index: dict[tuple, int] = {}
        for unit in units:
            self.add_unit(unit)

    def add_unit(self, unit: FunctionalUnit) -> bool:
        """Insert ``unit`` unless an identical unit is already stored."""
        if unit.canonical in self._index:
            return False
        idx = len(self.units)
        self.units.append(unit)
        self._index[unit.canonical] = idx
        for key in dict.fromkeys(unit.output_keys):
            self.producers.setdefault(key, []).append(idx)
        return True

    def candidate_units(self, key: str) -> list[FunctionalUnit]:
        return [self.units[i] for i in self.producers.get(key, ())]

    def __contains__(self, unit: object) -> bool:
        return isinstance(unit, FunctionalUnit) and unit.canonical in self._index

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self) -> Iterator[FunctionalUnit]:
        return iter(self.units)

    def object_keys(self) -> set[str]:
        keys = set(self.producers)
        for unit in self.units:
            keys.update(unit.input_keys)
        return keys

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Foon):
            return NotImplemented
        return [u.canonical for u in self.units] == [u.canonical for u in other.units]

    def __repr__(self) -> str:
        return f"Foon({len(self.units)} units, {len(self.producers)} produced objects)"


def candidate_units(foon: Foon, key: str) -> list[FunctionalUnit]:
    return foon.candidate_units(key)


def merge(a: Foon, b: Foon) -> Foon:
    """Union of two graphs; ``a``'s units first, then ``b``'s new ones."""
    merged = Foon(a.units)
    for unit in b.units:
        merged.add_unit(unit)
    return merged


def merge_all(foons: Iterable[Foon]) -> Foon:
    merged = Foon()
    for foon in foons:
        merged = merge(merged, foon)
    return merged


@dataclass(frozen=True)
class KitchenState:
    """The object keys physically available before any step runs."""

    items: frozenset[str] = frozenset()

    @classmethod
    def from_nodes(cls, nodes: Iterable[ObjectNode]) -> KitchenState:
        return cls(frozenset(n.key for n in nodes))

    def __contains__(self, key: object) -> bool:
        return key in self.items

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.items))


@dataclass(frozen=True)
class SubstitutionMap:
    """Precomputed ingredient equivalences: key -> acceptable stand-ins, in preference order."""

    equivalents: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, subs in self.equivalents.items():
            if key in subs:
                raise ValueError(f"object {key!r} may not list itself as a substitute")

    def get(self, key: str) -> tuple[str, ...]:
        return self.equivalents.get(key, ())

    def __len__(self) -> int:
        return len(self.equivalents)
