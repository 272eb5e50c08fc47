"""Task-tree retrieval over a FOON.

All three searches run backwards from the goal object.  Iterative deepening
always commits to the first candidate unit for an object; the two greedy
best-first variants pick the candidate with the highest motion success rate
(``gbfs-h1``) or the fewest input objects (``gbfs-h2``).  Units are
collected in goal-first discovery order and then reversed so the tree can be
executed front to back starting from the kitchen.
"""

from __future__ import annotations

import heapq
import logging
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from .core import Foon, FunctionalUnit, KitchenState, SubstitutionMap
from .errors import (
    AmbiguousGoal,
    CyclicDependency,
    GoalNotFound,
    NoSolutionWithinDepth,
    UnreachableGoal,
)
from .parser import MotionSuccessTable

logger = logging.getLogger(__name__)

ALGORITHMS = ("ids", "gbfs-h1", "gbfs-h2")
DEFAULT_DEPTH_CEILING = 100


class Availability(Enum):
    DIRECT = "direct"
    VIA_SUBSTITUTE = "via-substitute"
    UNAVAILABLE = "unavailable"


@dataclass(frozen=True)
class AvailabilityVerdict:
    kind: Availability
    substitute: str | None = None

    def __bool__(self) -> bool:
        return self.kind is not Availability.UNAVAILABLE


@dataclass(frozen=True)
class Expansion:
    """One search decision: the object being produced, what could produce it, what was chosen."""

    key: str
    candidates: tuple[FunctionalUnit, ...]
    chosen: FunctionalUnit


@dataclass
class RetrievalStats:
    units_in_tree: int = 0
    units_expanded: int = 0
    max_depth_reached: int | None = None
    expansions: list[Expansion] = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class TaskTree:
    steps: tuple[FunctionalUnit, ...]
    goal: str
    algorithm: str

    def __len__(self) -> int:
        return len(self.steps)


def is_available(key: str, kitchen: KitchenState, subs: SubstitutionMap | None = None) -> AvailabilityVerdict:
    if key in kitchen:
        return AvailabilityVerdict(Availability.DIRECT)
    if subs is not None:
        for alt in subs.get(key):
            if alt in kitchen:
                return AvailabilityVerdict(Availability.VIA_SUBSTITUTE, alt)
    return AvailabilityVerdict(Availability.UNAVAILABLE)


def find_goal(foon: Foon, goal_key: str) -> list[FunctionalUnit]:
    candidates = foon.candidate_units(goal_key)
    if not candidates:
        raise GoalNotFound(goal_key)
    return candidates


def resolve_goal_name(foon: Foon, kitchen: KitchenState, name: str) -> str:
    """Map a bare object name to the single object key carrying that name."""
    wanted = " ".join(name.split()).lower()
    matches = sorted(
        key for key in foon.object_keys() | set(kitchen.items) if key.split("|", 1)[0] == wanted
    )
    if not matches:
        raise GoalNotFound(wanted)
    if len(matches) > 1:
        raise AmbiguousGoal(wanted, matches)
    return matches[0]


_warned_motions: set[str] = set()


def motion_score(unit: FunctionalUnit, table: MotionSuccessTable) -> float:
    rate = table.get(unit.motion)
    if rate is None:
        if unit.motion not in _warned_motions:
            _warned_motions.add(unit.motion)
            logger.warning("motion %r has no success rate; scoring it 0.0", unit.motion)
        return 0.0
    return rate


def select_best_h1(candidates: Sequence[FunctionalUnit], table: MotionSuccessTable) -> FunctionalUnit:
    """Highest motion success rate wins; the earliest candidate wins ties."""
    if not candidates:
        raise ValueError("no candidate units to choose from")
    best, best_rate = candidates[0], motion_score(candidates[0], table)
    for unit in candidates[1:]:
        rate = motion_score(unit, table)
        if rate > best_rate:
            best, best_rate = unit, rate
    return best


def select_best_h2(candidates: Sequence[FunctionalUnit]) -> FunctionalUnit:
    """Fewest input objects wins; the earliest candidate wins ties."""
    if not candidates:
        raise ValueError("no candidate units to choose from")
    return min(candidates, key=lambda u: len(u.inputs))


def _dedupe(units: Sequence[FunctionalUnit]) -> list[FunctionalUnit]:
    return list(dict.fromkeys(units))


def _needed_inputs(unit: FunctionalUnit, available: Callable[[str], bool]) -> list[str]:
    return [k for k in dict.fromkeys(unit.input_keys) if not available(k)]


def _made_by(unit: FunctionalUnit) -> set[str]:
    # An object that is both consumed and returned (a knife, a bowl) passes
    # through the unit; the unit does not create it.
    return set(unit.output_keys) - set(unit.input_keys)


def reverse_to_execution_order(
    discovered: Sequence[FunctionalUnit],
    available: Callable[[str], bool] | None = None,
) -> list[FunctionalUnit]:
    """Turn goal-first discovery order into an order a robot can execute.

    The discovery list is reversed; if that leaves some unit ahead of a
    producer it depends on (shared subgoals can do this), a stable
    topological sort keyed on reversed position repairs the order.
    ``available`` tells which objects need no producer at all.
    """
    order = _dedupe(discovered)[::-1]
    produced_somewhere: set[str] = set()
    for unit in order:
        produced_somewhere |= _made_by(unit)

    def external(key: str) -> bool:
        return key not in produced_somewhere or (available is not None and available(key))

    needs = [[k for k in dict.fromkeys(u.input_keys) if not external(k)] for u in order]

    made: set[str] = set()
    for unit, wanted in zip(order, needs):
        if not all(k in made for k in wanted):
            break
        made |= _made_by(unit)
    else:
        return order

    # Kahn's algorithm; the heap keeps the reversed-discovery position as tie-break.
    waiting_on = {i: {k for k in needs[i]} for i in range(len(order))}
    consumers: dict[str, list[int]] = {}
    for i, wanted in enumerate(needs):
        for k in wanted:
            consumers.setdefault(k, []).append(i)
    ready = [i for i, w in waiting_on.items() if not w]
    heapq.heapify(ready)
    made.clear()
    result: list[FunctionalUnit] = []
    placed: set[int] = set()
    while ready:
        i = heapq.heappop(ready)
        if i in placed:
            continue
        placed.add(i)
        result.append(order[i])
        for key in _made_by(order[i]) - made:
            made.add(key)
            for j in consumers.get(key, ()):
                waiting_on[j].discard(key)
                if not waiting_on[j] and j not in placed:
                    heapq.heappush(ready, j)
    if len(result) != len(order):
        raise CyclicDependency(len(order) - len(result))
    return result


def _availability(kitchen: KitchenState, subs: SubstitutionMap | None) -> Callable[[str], bool]:
    return lambda key: bool(is_available(key, kitchen, subs))


# -- iterative deepening -----------------------------------------------------

class _Cutoff(Exception):
    pass


class _DeadBranch(Exception):
    def __init__(self, key: str) -> None:
        self.key = key


def _depth_limited(
    foon: Foon,
    goal_key: str,
    available: Callable[[str], bool],
    limit: int,
    stats: RetrievalStats,
) -> tuple[list[FunctionalUnit], int]:
    """Depth-limited backward search that always takes the first candidate.

    Returns the discovered units (goal first) and the depth of the tree.
    Raises ``_Cutoff`` if the limit was hit, ``_DeadBranch`` if the first-
    candidate chain loops back on itself, and ``UnreachableGoal`` if it
    reaches an object nothing can supply.
    """
    discovered: list[FunctionalUnit] = []
    path: set[str] = set()

    def solve(key: str, remaining: int) -> int:
        if available(key):
            return 0
        if key in path:
            raise _DeadBranch(key)
        candidates = foon.candidate_units(key)
        if not candidates:
            raise UnreachableGoal(key)
        if remaining == 0:
            raise _Cutoff
        unit = candidates[0]
        stats.units_expanded += 1
        stats.expansions.append(Expansion(key, tuple(candidates), unit))
        discovered.append(unit)
        path.add(key)
        depth = 0
        for child in _needed_inputs(unit, available):
            depth = max(depth, solve(child, remaining - 1))
        path.discard(key)
        return depth + 1

    depth = solve(goal_key, limit)
    return discovered, depth


def ids_retrieve(
    foon: Foon,
    goal_key: str,
    kitchen: KitchenState,
    subs: SubstitutionMap | None = None,
    depth_ceiling: int = DEFAULT_DEPTH_CEILING,
) -> tuple[TaskTree, RetrievalStats]:
    """Iterative deepening: depth limits 1, 2, ... up to ``depth_ceiling``.

    Depth counts functional-unit layers below the goal, the goal's own unit
    being depth 1.
    """
    if depth_ceiling < 1:
        raise ValueError("depth_ceiling must be at least 1")
    available = _availability(kitchen, subs)
    stats = RetrievalStats(max_depth_reached=0)
    if available(goal_key):
        return TaskTree((), goal_key, "ids"), stats
    find_goal(foon, goal_key)

    for limit in range(1, depth_ceiling + 1):
        trace_start = len(stats.expansions)
        try:
            discovered, depth = _depth_limited(foon, goal_key, available, limit, stats)
        except _Cutoff:
            continue
        except _DeadBranch as dead:
            # The first-candidate chain is fixed, so a deeper limit walks the same loop.
            raise UnreachableGoal(dead.key) from None
        del stats.expansions[:trace_start]
        steps = reverse_to_execution_order(discovered, available)
        stats.units_in_tree = len(steps)
        stats.max_depth_reached = depth
        logger.debug("ids found %d-unit tree for %s at depth %d", len(steps), goal_key, limit)
        return TaskTree(tuple(steps), goal_key, "ids"), stats
    raise NoSolutionWithinDepth(depth_ceiling)


# -- greedy best-first -------------------------------------------------------

def gbfs_retrieve(
    foon: Foon,
    goal_key: str,
    kitchen: KitchenState,
    subs: SubstitutionMap | None = None,
    heuristic: str = "h1",
    motions: MotionSuccessTable | None = None,
) -> tuple[TaskTree, RetrievalStats]:
    """Greedy best-first search with a FIFO queue of objects still to obtain.

    Each dequeued object gets exactly one producing unit, chosen by the
    heuristic and never revisited.  Candidates whose inputs would lead back
    to the object being produced are skipped, so the result stays
    executable when the graph contains cycles.
    """
    if heuristic == "h1":
        if motions is None:
            raise ValueError("heuristic h1 needs a motion success table")
        choose: Callable[[Sequence[FunctionalUnit]], FunctionalUnit] = (
            lambda cands: select_best_h1(cands, motions)
        )
    elif heuristic == "h2":
        choose = select_best_h2
    else:
        raise ValueError(f"unknown heuristic {heuristic!r}")
    algorithm = f"gbfs-{heuristic}"

    available = _availability(kitchen, subs)
    stats = RetrievalStats()
    if available(goal_key):
        return TaskTree((), goal_key, algorithm), stats
    find_goal(foon, goal_key)

    # key -> inputs still to be obtained for the unit chosen to produce it
    depends_on: dict[str, list[str]] = {}

    def leads_back(start: str, target: str) -> bool:
        stack, seen = [start], set()
        while stack:
            key = stack.pop()
            if key == target:
                return True
            if key in seen:
                continue
            seen.add(key)
            stack.extend(depends_on.get(key, ()))
        return False

    queue = deque([goal_key])
    enqueued = {goal_key}
    discovered: list[FunctionalUnit] = []
    while queue:
        key = queue.popleft()
        if available(key):
            continue
        candidates = foon.candidate_units(key)
        eligible = [
            u for u in candidates
            if not any(leads_back(k, key) for k in _needed_inputs(u, available))
        ]
        if not eligible:
            raise UnreachableGoal(key)
        unit = choose(eligible)
        stats.units_expanded += len(eligible)
        stats.expansions.append(Expansion(key, tuple(eligible), unit))
        discovered.append(unit)
        needed = _needed_inputs(unit, available)
        depends_on[key] = needed
        for child in needed:
            if child not in enqueued:
                enqueued.add(child)
                queue.append(child)

    steps = reverse_to_execution_order(discovered, available)
    stats.units_in_tree = len(steps)
    return TaskTree(tuple(steps), goal_key, algorithm), stats


def retrieve(
    algorithm: str,
    foon: Foon,
    goal_key: str,
    kitchen: KitchenState,
    subs: SubstitutionMap | None = None,
    motions: MotionSuccessTable | None = None,
    depth_ceiling: int = DEFAULT_DEPTH_CEILING,
) -> tuple[TaskTree, RetrievalStats]:
    if algorithm == "ids":
        return ids_retrieve(foon, goal_key, kitchen, subs, depth_ceiling)
    if algorithm in ("gbfs-h1", "gbfs-h2"):
        return gbfs_retrieve(foon, goal_key, kitchen, subs, algorithm[-2:], motions)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}")


# -- independent executability check -----------------------------------------

@dataclass(frozen=True)
class Verdict:
    valid: bool
    step: int | None = None
    missing: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_tree(tree: TaskTree, kitchen: KitchenState, subs: SubstitutionMap | None = None) -> Verdict:
    """Simulate the tree step by step starting from the kitchen.

    Deliberately self-contained: it must not share logic with the searches
    it is used to check.  A repeated unit is reported with ``missing=None``;
    ``step=None`` means every step fired but the goal never appeared.
    """
    have = set(kitchen.items)
    equivalents = subs.equivalents if subs is not None else {}

    def present(key: str) -> bool:
        return key in have or any(alt in have for alt in equivalents.get(key, ()))

    seen: set[tuple] = set()
    for index, unit in enumerate(tree.steps):
        if unit.canonical in seen:
            return Verdict(False, index, None)
        seen.add(unit.canonical)
        for node in unit.inputs:
            if not present(node.key):
                return Verdict(False, index, node.key)
        have.update(node.key for node in unit.outputs)
    if not present(tree.goal):
        return Verdict(False, None, tree.goal)
    return Verdict(True)
