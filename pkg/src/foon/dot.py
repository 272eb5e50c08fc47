"""Graphviz rendering of task trees.

Object nodes are ellipses labelled with the name and states, motion nodes
are boxes; every unit contributes edges input -> motion -> output.  An
object that appears in several steps is drawn once.
"""

from __future__ import annotations

from .core import ObjectNode
from .retrieval import TaskTree


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _object_label(node: ObjectNode) -> str:
    label = node.name
    if node.states:
        label += "\\n(" + ", ".join(sorted(node.states)) + ")"
    if node.ingredients:
        label += "\\n{" + ", ".join(node.ingredients) + "}"
    return label


def export_dot(tree: TaskTree, name: str = "task_tree") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    object_ids: dict[str, str] = {}

    def object_id(node: ObjectNode) -> str:
        if node.key not in object_ids:
            oid = f"o{len(object_ids)}"
            object_ids[node.key] = oid
            lines.append(f"  {oid} [shape=ellipse, label={_quote(_object_label(node))}];")
        return object_ids[node.key]

    for step, unit in enumerate(tree.steps):
        mid = f"m{step}"
        lines.append(f"  {mid} [shape=box, style=filled, fillcolor=lightgreen, label={_quote(unit.motion)}];")
        for node in unit.inputs:
            lines.append(f"  {object_id(node)} -> {mid};")
        for node in unit.outputs:
            lines.append(f"  {mid} -> {object_id(node)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
