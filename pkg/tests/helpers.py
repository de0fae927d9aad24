"""Shared helpers for the test suite: brute-force oracles and small corpora."""

import itertools
import random

from posetdim import Coloring, Graph, all_linear_extensions
from posetdim.coloring import build_elimination_forest, coloring_from_forest


def brute_force_reversible(p, pairs):
    """Ground truth for is_reversible: search every linear extension."""
    pairs = list(pairs)
    for ext in all_linear_extensions(p):
        if all(ext.before(y, x) for x, y in pairs):
            return True
    return False


def all_graphs(n):
    """Every labeled simple graph on n vertices."""
    slots = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        yield Graph(n, [e for i, e in enumerate(slots) if bits >> i & 1])


def random_coloring(g, num_colors, seed):
    rng = random.Random(seed)
    return Coloring([rng.randrange(num_colors) for _ in range(g.n)], num_colors)


def auto_coloring(p):
    """The pipeline's default coloring: elimination-forest depths."""
    g = p.cover_graph()
    mode = "exact_small" if g.n <= 12 else "heuristic"
    return coloring_from_forest(g, build_elimination_forest(g, mode))


def oriented_path_or_cycle_poset(seed):
    """Seeded poset whose cover relations orient a path or cycle of length
    >= 4, rejecting orientations that would be cyclic."""
    from posetdim import Poset

    rng = random.Random(seed)
    use_cycle = rng.random() < 0.5
    length = rng.randrange(4, 9)
    if use_cycle:
        edges = [(i, (i + 1) % length) for i in range(length)]
        n = length
    else:
        edges = [(i, i + 1) for i in range(length)]
        n = length + 1
    while True:
        rels = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in edges]
        try:
            return Poset(n, rels)
        except ValueError:
            continue  # the orientation was a directed cycle; redraw
