"""Task-tree retrieval over Functional Object-Oriented Networks (FOON)."""

from .core import (
    Foon,
    FunctionalUnit,
    KitchenState,
    ObjectNode,
    SubstitutionMap,
    candidate_units,
    merge,
    object_key,
)
from .dot import export_dot
from .errors import (
    AmbiguousGoal,
    CyclicDependency,
    DuplicateLabel,
    FoonError,
    GoalNotFound,
    MalformedDocument,
    MalformedLine,
    NoSolutionWithinDepth,
    ParseError,
    RateOutOfRange,
    UnreachableGoal,
)
from .parser import (
    MotionSuccessTable,
    load_foon,
    load_kitchen,
    load_motions,
    load_substitutions,
    parse_kitchen,
    parse_motions,
    parse_subgraph,
    parse_substitutions,
    serialize_subgraph,
)
from .retrieval import (
    RetrievalStats,
    TaskTree,
    find_goal,
    gbfs_retrieve,
    ids_retrieve,
    is_available,
    retrieve,
    reverse_to_execution_order,
    select_best_h1,
    select_best_h2,
    validate_tree,
)

__version__ = "0.1.0"
