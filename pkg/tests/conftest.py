import numpy as np
import pytest

from medlat.poset import Poset, make_poset


@pytest.fixture
def fork():
    """Root below two incomparable points: r < a, r < b."""
    leq = np.array([
        [1, 1, 1],
        [0, 1, 0],
        [0, 0, 1],
    ], dtype=bool)
    return make_poset(leq, labels=("r", "a", "b"), name="fork")


def transitive_closure_poset(n: int, edges) -> Poset:
    """Build a poset from acyclic edges (i -> j meaning i <= j), or raise."""
    leq = np.eye(n, dtype=bool)
    for i, j in edges:
        leq[i, j] = True
    for _ in range(n):
        leq = leq | ((leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0)
    return make_poset(leq)


def random_poset(rng: np.random.Generator, n: int) -> Poset:
    """Random partial order: random edges respecting a random linear order."""
    perm = rng.permutation(n)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                edges.append((int(perm[i]), int(perm[j])))
    return transitive_closure_poset(n, edges)
