"""Generators of well-formed FOON data for property and acceptance tests."""

import random

from hypothesis import strategies as st

from foon.core import FunctionalUnit, ObjectNode

NAMES = ["egg", "oil", "salt", "bowl", "scrambled egg", "cream", "sugar", "knife", "pan", "Onion"]
STATES = ["raw", "cracked", "whole", "chopped", "liquid", "Cooked", "in bowl", "empty"]
MOTIONS = ["mix", "stir", "pour", "chop", "crack", "pick-and-place", "bake", "whisk"]

names = st.sampled_from(NAMES)
objects = st.builds(
    ObjectNode,
    names,
    st.frozensets(st.sampled_from(STATES), max_size=3),
    st.lists(st.sampled_from(NAMES[:4]), max_size=3).map(tuple),
)
units = st.builds(
    FunctionalUnit,
    st.lists(objects, min_size=1, max_size=4).map(tuple),
    st.sampled_from(MOTIONS),
    st.lists(objects, min_size=1, max_size=3).map(tuple),
)


def random_object(rng: random.Random) -> ObjectNode:
    return ObjectNode(
        rng.choice(NAMES),
        frozenset(rng.sample(STATES, rng.randint(0, 3))),
        tuple(rng.sample(NAMES[:4], rng.randint(0, 2))),
    )


def random_units(rng: random.Random, max_units: int = 8) -> list[FunctionalUnit]:
    return [
        FunctionalUnit(
            tuple(random_object(rng) for _ in range(rng.randint(1, 4))),
            rng.choice(MOTIONS),
            tuple(random_object(rng) for _ in range(rng.randint(1, 3))),
        )
        for _ in range(rng.randint(0, max_units))
    ]
