import pydot

from foon.dot import export_dot
from foon.retrieval import TaskTree, retrieve

from .test_retrieval import u


def parse(text):
    (graph,) = pydot.graph_from_dot_data(text)
    return graph


def test_empty_tree():
    graph = parse(export_dot(TaskTree((), "x||", "ids")))
    assert graph.get_type() == "digraph"
    assert graph.get_nodes() == [] and graph.get_edges() == []


def test_single_unit():
    step = u("egg, oil > mix > batter")
    graph = parse(export_dot(TaskTree((step,), "batter||", "ids")))
    names = {n.get_name() for n in graph.get_nodes()}
    assert sum(1 for n in names if n.startswith("m")) == 1
    assert sum(1 for n in names if n.startswith("o")) >= 2
    assert len(graph.get_edges()) == len(step.inputs) + len(step.outputs)


def test_whipped_cream_tree_has_unique_nodes(corpus):
    tree, _ = retrieve("gbfs-h1", corpus["foon"], "whipped cream|whipped|", corpus["kitchen"], motions=corpus["motions"])
    text = export_dot(tree)
    graph = parse(text)
    names = [n.get_name() for n in graph.get_nodes()]
    assert len(names) == len(set(names))
    # bowl with cream and sugar is shared between the two steps
    assert sum("bowl" in (n.get_label() or "") for n in graph.get_nodes()) == 2
    assert len(graph.get_edges()) == sum(len(s.inputs) + len(s.outputs) for s in tree.steps)


def test_labels_escaped():
    step = u('say "hi" > mix > out')
    parse(export_dot(TaskTree((step,), "out||", "ids")))
