"""Exit criteria for the build; each test is one criterion in the summary report."""

import io
import random
import time
import timeit

import pytest

from foon import cli
from foon.core import Foon, FunctionalUnit, ObjectNode, merge
from foon.parser import load_motions, parse_subgraph, serialize_subgraph
from foon.retrieval import gbfs_retrieve, retrieve, validate_tree

from .conftest import ALGOS, DATA, FOON_FILES, GOALS
from .strategies import MOTIONS, NAMES, STATES


def rate(unit, table):
    return table.rates.get(unit.motion, 0.0)


@pytest.mark.criterion("h1 selects mix (0.90) over stir (0.80)")
def test_h1_worked_example(corpus):
    start = time.perf_counter()
    tree, stats = gbfs_retrieve(
        corpus["foon"], "whipped cream|whipped|", corpus["kitchen"], corpus["subs"], "h1", corpus["motions"]
    )
    elapsed = time.perf_counter() - start
    (fork,) = [e for e in stats.expansions if e.key == "whipped cream|whipped|"]
    assert sorted(c.motion for c in fork.candidates) == ["mix", "stir"]
    assert fork.chosen.motion == "mix"
    assert [s.motion for s in tree.steps if "whipped cream|whipped|" in s.output_keys] == ["mix"]
    assert elapsed < 1.0


@pytest.mark.criterion("h2 selects {egg, oil, salt} over {egg, oil, cheese, onion}")
def test_h2_worked_example(corpus):
    tree, stats = gbfs_retrieve(corpus["foon"], "scrambled egg|cooked|", corpus["kitchen"], corpus["subs"], "h2")
    (fork,) = [e for e in stats.expansions if e.key == "scrambled egg|cooked|"]
    assert sorted(len(c.inputs) for c in fork.candidates) == [3, 4]
    assert sorted(n.name for n in fork.chosen.inputs) == ["egg", "oil", "salt"]
    assert fork.chosen in tree.steps


@pytest.mark.criterion("motion table loads the 7 printed rates exactly")
def test_table_two_ingestion():
    table = load_motions(DATA / "motions.txt")
    assert table.rates == {
        "chop": 0.10,
        "pour": 0.90,
        "mix": 0.90,
        "crack": 0.20,
        "pick-and-place": 0.80,
        "stir": 0.80,
        "bake": 0.40,
    }
    assert {k: repr(v) for k, v in table.rates.items()} == {
        "chop": "0.1", "pour": "0.9", "mix": "0.9", "crack": "0.2",
        "pick-and-place": "0.8", "stir": "0.8", "bake": "0.4",
    }


@pytest.mark.criterion("tree-count substitute: validity, manifest membership, dominance, IDS depth")
def test_property_suite(corpus, manifest):
    start = time.perf_counter()
    foon, kitchen, subs, table = corpus["foon"], corpus["kitchen"], corpus["subs"], corpus["motions"]
    assert len(foon) >= 12 and len(GOALS) >= 3
    for goal in GOALS:
        valid = {v for s, _, v in manifest["valid_tree"] if s == goal}
        (ids_depth,) = [int(v) for s, _, v in manifest["ids_depth"] if s == goal]
        for algo in ALGOS:
            tree, stats = retrieve(algo, foon, goal, kitchen, subs, table)
            # (a) independent executor
            assert validate_tree(tree, kitchen, subs), (goal, algo)
            # (b) member of the brute-force valid-tree set
            assert ";".join(sorted(str(s) for s in tree.steps)) in valid, (goal, algo)
            # (c) dominance at every instrumented expansion
            for exp in stats.expansions:
                if algo == "gbfs-h1":
                    assert all(rate(exp.chosen, table) >= rate(c, table) for c in exp.candidates)
                elif algo == "gbfs-h2":
                    assert all(len(exp.chosen.inputs) <= len(c.inputs) for c in exp.candidates)
                else:
                    assert exp.chosen is foon.candidate_units(exp.key)[0]
            # (d) IDS stops at the oracle's depth
            if algo == "ids":
                assert stats.max_depth_reached == ids_depth
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion("single-unit ice recipe gives units_in_tree = 1 for every algorithm")
def test_ice_single_unit(corpus):
    for algo in ALGOS:
        tree, stats = retrieve(algo, corpus["foon"], "ice|cube|", corpus["kitchen"], corpus["subs"], corpus["motions"])
        assert stats.units_in_tree == 1 == len(tree)


@pytest.mark.criterion("10 repeated CLI retrievals are byte-identical")
@pytest.mark.parametrize("goal", GOALS)
def test_determinism(goal, tmp_path):
    outputs = set()
    for run in range(10):
        out = tmp_path / f"run{run}" / "tree.txt"
        out.parent.mkdir()
        config = cli.RunConfig(
            foon_paths=FOON_FILES,
            kitchen_path=DATA / "kitchen.json",
            motions_path=DATA / "motions.txt",
            subs_path=DATA / "substitutions.txt",
            goals=[goal],
            algorithm="all",
            out_path=out,
            stats_path=out.with_name("stats.csv"),
        )
        stdout = io.StringIO()
        assert cli.cmd_retrieve(config, stdout=stdout) == 0
        trees = tuple(out.with_name(f"tree.{a}.txt").read_bytes() for a in ALGOS)
        outputs.add((trees, out.with_name("stats.csv").read_bytes(), stdout.getvalue()))
    assert len(outputs) == 1


@pytest.mark.criterion("merge(F, F) = F and merge(F, empty) = F")
def test_merge_algebra(corpus):
    foon = corpus["foon"]
    canon = [u.canonical for u in foon.units]
    assert [u.canonical for u in merge(foon, foon).units] == canon
    assert [u.canonical for u in merge(foon, Foon()).units] == canon


def random_file(rng: random.Random) -> str:
    """A well-formed subgraph file with the cosmetic variation hand-written files have."""

    def name(label):
        return "".join(c.upper() if rng.random() < 0.2 else c for c in label)

    def obj_line():
        states = rng.sample(STATES, rng.randint(0, 3))
        fields = ["O", name(rng.choice(NAMES)), ",".join(name(s) for s in states)]
        if rng.random() < 0.3:
            fields.append("[" + ", ".join(rng.sample(NAMES[:4], rng.randint(1, 3))) + "]")
        return "\t".join(fields)

    lines = ["//"] if rng.random() < 0.5 else []
    for _ in range(rng.randint(0, 8)):
        lines += [obj_line() for _ in range(rng.randint(1, 4))]
        lines.append(f"M\t{name(rng.choice(MOTIONS))}")
        lines += [obj_line() for _ in range(rng.randint(1, 3))]
        lines.append("//")
        if rng.random() < 0.2:
            lines.append("")
    return "\n".join(lines) + ("\n\n" if rng.random() < 0.5 else "\n")


def structure(units):
    return [
        (u.canonical, [n.ingredients for n in u.inputs], [n.ingredients for n in u.outputs])
        for u in units
    ]


@pytest.mark.criterion("parse -> serialize -> parse is identity (corpus + 1,000 random files)")
def test_round_trip():
    rng = random.Random(20261016)
    texts = [p.read_text() for p in [*FOON_FILES, *sorted((DATA / "merge").glob("*.foon"))]]
    texts += [random_file(rng) for _ in range(1000)]
    for text in texts:
        first = parse_subgraph(text)
        second = parse_subgraph(serialize_subgraph(first))
        assert structure(second) == structure(first)


def synthetic_foon(n: int) -> Foon:
    return Foon(
        FunctionalUnit((ObjectNode(f"item{i}", frozenset({"raw"})),), "mix", (ObjectNode(f"item{i}", frozenset({"done"})),))
        for i in range(n)
    )


@pytest.mark.criterion("candidate lookup latency flat (within 2x) from 10^2 to 10^4 units")
def test_candidate_lookup_is_index_probe():
    start = time.perf_counter()
    rng = random.Random(7)

    def per_probe(foon, n):
        keys = [f"item{rng.randrange(n)}|done|" for _ in range(2000)]
        timer = timeit.Timer(lambda: [foon.candidate_units(k) for k in keys])
        return min(timer.repeat(repeat=15, number=5)) / (len(keys) * 5)

    small, large = synthetic_foon(100), synthetic_foon(10_000)
    assert len(small.candidate_units("item3|done|")) == 1 == len(large.candidate_units("item9999|done|"))
    t_small, t_large = per_probe(small, 100), per_probe(large, 10_000)
    print(f"per-probe latency: 10^2 units {t_small * 1e9:.0f} ns, 10^4 units {t_large * 1e9:.0f} ns")
    assert t_large <= 2 * t_small
    assert time.perf_counter() - start < 30.0
