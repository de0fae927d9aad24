"""Witness families: standard examples, Kelly posets, incidence/adjacency
posets, chains, antichains, boolean lattices, and small named graphs.

Element labels follow fixed conventions (``a1``, ``b3``, ``u2``, ``v1``,
``e_{0,2}``) so that oracle witnesses and golden files stay readable.
"""

from __future__ import annotations

import os
import random
import re

from .graphs import Graph
from .posets import Poset


def standard_example(d):
    """Height-2 poset on 2d points: minimal a_1..a_d, maximal b_1..b_d, and
    a_i < b_j exactly when i != j. Its dimension equals d for d >= 2."""
    if d < 1:
        raise ValueError("standard_example needs d >= 1")
    rels = [(i, d + j) for i in range(d) for j in range(d) if i != j]
    labels = {i: f"a{i + 1}" for i in range(d)}
    labels.update({d + j: f"b{j + 1}" for j in range(d)})
    return Poset(2 * d, rels, labels)


def kelly(d):
    """Planar poset on 4d-2 points whose a/b points induce the standard
    example S_d.

    Ids: a_i -> i-1, b_j -> d+j-1, u_i -> 2d+i-1, v_j -> 3d+j-2. The u's
    form an increasing chain carrying a_i up to every b_j with j > i, the
    v's a decreasing chain carrying a_i up to every b_j with j < i.
    """
    if d < 1:
        raise ValueError("kelly needs d >= 1")
    a = lambda i: i - 1
    b = lambda j: d + j - 1
    u = lambda i: 2 * d + i - 1
    v = lambda j: 3 * d + j - 2
    rels = []
    for i in range(1, d - 1):
        rels.append((u(i), u(i + 1)))
        rels.append((v(i + 1), v(i)))
    for i in range(1, d):
        rels.append((a(i), u(i)))
        rels.append((v(i), b(i)))
    for k in range(2, d + 1):
        rels.append((u(k - 1), b(k)))
        rels.append((a(k), v(k - 1)))
    labels = {a(i): f"a{i}" for i in range(1, d + 1)}
    labels.update({b(j): f"b{j}" for j in range(1, d + 1)})
    labels.update({u(i): f"u{i}" for i in range(1, d)})
    labels.update({v(j): f"v{j}" for j in range(1, d)})
    p = Poset(4 * d - 2, rels, labels)
    _check_kelly(p, d)
    return p


def _check_kelly(p, d):
    # The a/b points must induce exactly the S_d comparability pattern.
    assert p.n == 4 * d - 2
    for i in range(d):
        for j in range(d):
            want = i != j
            assert p.lt(i, d + j) == want, (i, j)
            assert not p.leq(d + j, i)
    for i in range(d):
        for j in range(i + 1, d):
            assert p.incomparable(i, j)
            assert p.incomparable(d + i, d + j)


def incidence_poset(g):
    """Height-2 poset on V(g) + E(g): each edge point covers exactly its two
    endpoints; isolated vertices stay isolated minimal points."""
    n = g.n
    rels = []
    labels = {v: g.label(v) for v in range(n)}
    for k, (x, y) in enumerate(g.edges):
        rels.append((x, n + k))
        rels.append((y, n + k))
        labels[n + k] = f"e_{{{x},{y}}}"
    return Poset(n + len(g.edges), rels, labels)


def adjacency_poset(g):
    """Poset on 2|V| points {a_v} + {b_v} with a_u < b_v exactly when uv is
    an edge of g; height at most 2."""
    n = g.n
    rels = [(x, n + y) for x, y in g.edges] + [(y, n + x) for x, y in g.edges]
    labels = {v: f"a{v}" for v in range(n)}
    labels.update({n + v: f"b{v}" for v in range(n)})
    return Poset(2 * n, rels, labels)


def chain(n):
    if n < 1:
        raise ValueError("chain needs n >= 1")
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    if n < 1:
        raise ValueError("antichain needs n >= 1")
    return Poset(n, [])


BOOLEAN_LATTICE_MAX = 4


def boolean_lattice(k):
    """Subsets of {0..k-1} ordered by inclusion (2^k points, k <= 4)."""
    if k < 1:
        raise ValueError("boolean_lattice needs n >= 1")
    if k > BOOLEAN_LATTICE_MAX:
        raise ValueError(f"boolean_lattice is limited to n <= {BOOLEAN_LATTICE_MAX}")
    rels = []
    for s in range(1 << k):
        for b in range(k):
            if not s >> b & 1:
                rels.append((s, s | 1 << b))
    labels = {
        s: "{" + ",".join(str(b) for b in range(k) if s >> b & 1) + "}" for s in range(1 << k)
    }
    return Poset(1 << k, rels, labels)


_NAMED_GRAPH = re.compile(r"^(k|c|p|star|grid2x)(\d+)$")


def named_graph(name):
    """Small named graphs: ``k<n>``, ``c<n>`` (n >= 3), ``p<n>``,
    ``star<k>`` (k leaves), ``grid2x<k>``, ``petersen``."""
    key = name.strip().lower()
    if key == "petersen":
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        edges += [(i, 5 + i) for i in range(5)]
        return Graph(10, edges)
    m = _NAMED_GRAPH.match(key)
    if not m:
        raise ValueError(f"unknown graph name {name!r}")
    family, num = m.group(1), int(m.group(2))
    if family == "k":
        if num < 1:
            raise ValueError("k<n> needs n >= 1")
        return Graph(num, [(i, j) for i in range(num) for j in range(i + 1, num)])
    if family == "c":
        if num < 3:
            raise ValueError("c<n> needs n >= 3")
        return Graph(num, [(i, (i + 1) % num) for i in range(num)])
    if family == "p":
        if num < 1:
            raise ValueError("p<n> needs n >= 1")
        return Graph(num, [(i, i + 1) for i in range(num - 1)])
    if family == "star":
        if num < 1:
            raise ValueError("star<k> needs k >= 1 leaves")
        return Graph(num + 1, [(0, i) for i in range(1, num + 1)])
    if family == "grid2x":
        if num < 1:
            raise ValueError("grid2x<k> needs k >= 1")
        edges = [(i, i + num) for i in range(num)]
        edges += [(i, i + 1) for i in range(num - 1)]
        edges += [(num + i, num + i + 1) for i in range(num - 1)]
        return Graph(2 * num, edges)
    raise AssertionError


def random_poset(n, seed=None, density=0.3):
    """Seeded random poset: each index pair i < j becomes a relation with the
    given probability, then the usual normalization applies.

    With seed=None the POSETDIM_SEED environment variable (default 0) is
    used, so test corpora stay reproducible.
    """
    if n < 1:
        raise ValueError("random_poset needs n >= 1")
    if seed is None:
        seed = int(os.environ.get("POSETDIM_SEED", "0"))
    rng = random.Random(seed)
    rels = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Poset(n, rels)
