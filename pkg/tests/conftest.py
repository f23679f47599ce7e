import random

import pytest

from crdyn.finite import FiniteRelation, FiniteSpace


def make_random_relation(rng: random.Random, max_points: int = 7) -> FiniteRelation:
    """Random non-empty relation; edge density varies to hit diverse structure."""
    n = rng.randint(1, max_points)
    density = rng.choice([0.12, 0.2, 0.3, 0.45, 0.65])
    edges = {
        (a, b)
        for a in range(n)
        for b in range(n)
        if rng.random() < density
    }
    if not edges:
        edges.add((rng.randrange(n), rng.randrange(n)))
    return FiniteRelation(FiniteSpace([str(i) for i in range(n)]), edges)


def make_random_function(rng: random.Random, max_points: int = 7) -> FiniteRelation:
    """Graph of a random total single-valued function."""
    n = rng.randint(1, max_points)
    edges = {(a, rng.randrange(n)) for a in range(n)}
    return FiniteRelation(FiniteSpace([str(i) for i in range(n)]), edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
