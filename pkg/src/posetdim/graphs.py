"""Finite simple undirected graphs and the exact metrics used across the repo.

Vertices are dense integer ids 0..n-1; optional string labels live in a side
table so that all set algebra can run on plain ints and bitmasks. Graph
values are immutable after construction and every operation is pure.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CapacityError, ParseError

# grad() enumerates shallow minors exhaustively; anything bigger is rejected.
GRAD_MAX_VERTICES = 10


class Graph:
    """Immutable simple graph on vertices 0..n-1 (no loops, no multi-edges)."""

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]},{e[1]})")
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = tuple(sorted(seen))
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.labels = dict(labels) if labels else {}

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges)})"

    def label(self, v):
        return self.labels.get(v, str(v))

    def _check_vertex(self, v):
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")

    def degree(self, v):
        self._check_vertex(v)
        return len(self.adj[v])

    def max_degree(self):
        """Maximum vertex degree; 0 for edgeless graphs."""
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self.adj[u]

    def distance(self, u, v):
        """Length of a shortest u-v path; math.inf across components."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return 0
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for w in frontier:
                for z in self.adj[w]:
                    if z not in dist:
                        dist[z] = dist[w] + 1
                        if z == v:
                            return dist[z]
                        nxt.append(z)
            frontier = nxt
        return math.inf

    def girth(self):
        """Length of a shortest cycle; math.inf when the graph is a forest.

        The shortest cycle through an edge {u,v} is 1 plus the shortest u-v
        path avoiding that edge, so minimizing over all edges is exact.
        """
        best = math.inf
        for u, v in self.edges:
            d = self._distance_avoiding_edge(u, v)
            if d + 1 < best:
                best = d + 1
                if best == 3:
                    break
        return best

    def _distance_avoiding_edge(self, u, v):
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for w in frontier:
                for z in self.adj[w]:
                    if w == u and z == v:
                        continue
                    if z not in dist:
                        dist[z] = dist[w] + 1
                        if z == v:
                            return dist[z]
                        nxt.append(z)
            frontier = nxt
        return math.inf

    def connected_components(self):
        """Vertex partition into maximal connected parts, each a sorted tuple,
        ordered by smallest member."""
        out = []
        seen = [False] * self.n
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                w = stack.pop()
                for z in self.adj[w]:
                    if not seen[z]:
                        seen[z] = True
                        comp.append(z)
                        stack.append(z)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self):
        return self.n <= 1 or len(self.connected_components()) == 1

    def _induced_radius(self, mask):
        """Radius of the subgraph induced by the bitmask, math.inf if it is
        disconnected."""
        members = _bits(mask)
        best = math.inf
        for s in members:
            dist = {s: 0}
            frontier = [s]
            ecc = 0
            while frontier:
                nxt = []
                for w in frontier:
                    for z in self.adj[w]:
                        if mask >> z & 1 and z not in dist:
                            dist[z] = dist[w] + 1
                            ecc = dist[z]
                            nxt.append(z)
                frontier = nxt
            if len(dist) < len(members):
                return math.inf
            if ecc < best:
                best = ecc
        return best

    def grad(self, r):
        """Greatest reduced average density at depth r, as an exact Fraction.

        Enumerates every family of pairwise-disjoint connected vertex sets of
        induced radius <= r, contracts each set to a point, and maximizes the
        edge/vertex ratio of the contracted graphs (taking a subgraph never
        beats keeping all edges among the chosen sets). Exhaustive, so capped
        at GRAD_MAX_VERTICES vertices.
        """
        if r < 0:
            raise ValueError("depth must be non-negative")
        if self.n == 0:
            raise ValueError("grad is undefined for the empty graph")
        if self.n > GRAD_MAX_VERTICES:
            raise CapacityError(
                f"grad enumerates shallow minors exhaustively and is limited to "
                f"{GRAD_MAX_VERTICES} vertices (got {self.n})"
            )
        nbr_of = [0] * self.n
        for u, v in self.edges:
            nbr_of[u] |= 1 << v
            nbr_of[v] |= 1 << u
        by_min = [[] for _ in range(self.n)]
        for mask in range(1, 1 << self.n):
            if self._induced_radius(mask) <= r:
                nbr = 0
                for v in _bits(mask):
                    nbr |= nbr_of[v]
                nbr &= ~mask
                by_min[(mask & -mask).bit_length() - 1].append((mask, nbr))

        best = Fraction(0)
        chosen = []  # (mask, nbr) of the sets picked so far

        def walk(undecided, edges):
            nonlocal best
            if chosen:
                ratio = Fraction(edges, len(chosen))
                if ratio > best:
                    best = ratio
            if not undecided:
                return
            pivot_bit = undecided & -undecided
            walk(undecided ^ pivot_bit, edges)
            for mask, nbr in by_min[pivot_bit.bit_length() - 1]:
                if mask & ~undecided:
                    continue
                added = sum(1 for m2, _ in chosen if nbr & m2)
                chosen.append((mask, nbr))
                walk(undecided & ~mask, edges + added)
                chosen.pop()

        walk((1 << self.n) - 1, 0)
        return best


def _bits(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def parse_graph(text):
    """Parse the line-based graph format.

    Line 1 is ``graph <n>``, then optional ``label <id> <string>`` lines and
    one ``edge <u> <v>`` line per edge. ``#`` starts a comment. Duplicate or
    loop edges and out-of-range ids are parse errors.
    """
    n = None
    edges = []
    labels = {}
    edge_seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "graph" or len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'graph <n>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
            continue
        if parts[0] == "label":
            fields = line.split(maxsplit=2)
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'label <id> <string>'")
            v = _parse_id(fields[1], n, lineno)
            labels[v] = fields[2]
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'edge <u> <v>'")
            u = _parse_id(parts[1], n, lineno)
            v = _parse_id(parts[2], n, lineno)
            if u == v:
                raise ParseError(f"line {lineno}: loop edge at {u}")
            e = (min(u, v), max(u, v))
            if e in edge_seen:
                raise ParseError(f"line {lineno}: duplicate edge ({e[0]},{e[1]})")
            edge_seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'graph <n>' header")
    return Graph(n, edges, labels)


def _parse_id(token, n, lineno):
    try:
        v = int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad id {token!r}") from None
    if not (0 <= v < n):
        raise ParseError(f"line {lineno}: id {v} outside 0..{n - 1}")
    return v


def format_graph(g):
    """Serialize a graph in the text format (inverse of parse_graph)."""
    lines = [f"graph {g.n}"]
    for v in sorted(g.labels):
        lines.append(f"label {v} {g.labels[v]}")
    for u, v in g.edges:
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"
