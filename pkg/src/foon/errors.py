"""Exception hierarchy shared by the parser, retrieval and CLI layers."""

from __future__ import annotations


class FoonError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FoonError):
    """An input file could not be loaded."""


class MalformedLine(ParseError):
    def __init__(self, line_no: int, reason: str) -> None:
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class RateOutOfRange(MalformedLine):
    def __init__(self, line_no: int, label: str, rate: float) -> None:
        self.label = label
        self.rate = rate
        super().__init__(line_no, f"rate {rate!r} for motion {label!r} is outside [0, 1]")


class DuplicateLabel(MalformedLine):
    def __init__(self, line_no: int, label: str) -> None:
        self.label = label
        super().__init__(line_no, f"duplicate entry {label!r}")


class MalformedDocument(ParseError):
    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(reason)


class RetrievalError(FoonError):
    """A task tree could not be produced."""


class GoalNotFound(RetrievalError):
    def __init__(self, goal: str) -> None:
        self.goal = goal
        super().__init__(f"no functional unit produces goal {goal!r}")


class AmbiguousGoal(RetrievalError):
    def __init__(self, name: str, keys: list[str]) -> None:
        self.name = name
        self.keys = keys
        super().__init__(f"goal name {name!r} matches several objects: {', '.join(keys)}")


class UnreachableGoal(RetrievalError):
    def __init__(self, key: str) -> None:
        self.key = key
        super().__init__(f"object {key!r} is not in the kitchen and cannot be produced")


class NoSolutionWithinDepth(RetrievalError):
    def __init__(self, ceiling: int) -> None:
        self.ceiling = ceiling
        super().__init__(f"no task tree found within depth {ceiling}")


class CyclicDependency(RetrievalError):
    def __init__(self, remaining: int) -> None:
        self.remaining = remaining
        super().__init__(f"{remaining} functional unit(s) cannot be ordered: circular dependency")
