"""Finite posets stored as normalized cover DAGs with cached reachability.

A poset is built from an arbitrary set of strict relations ``a < b``; the
constructor computes the reflexive-transitive closure (rejecting cycles) and
the transitive reduction, so only genuine cover relations are kept. The
closure is cached as one bitmask per element, which makes ``leq`` a single
bit test -- it is by far the hottest query in the partition pipeline.
"""

from __future__ import annotations

import heapq
from collections import namedtuple

from .errors import NotReversibleError, ParseError
from .graphs import Graph


class Poset:
    """Immutable finite poset on elements 0..n-1."""

    def __init__(self, n, relations=(), labels=None):
        if n < 0:
            raise ValueError("element count must be non-negative")
        succ = [set() for _ in range(n)]
        for a, b in relations:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"relation ({a},{b}) has an element outside 0..{n - 1}")
            if a == b:
                raise ValueError(f"reflexive strict relation at element {a}")
            succ[a].add(b)

        topo = _topological_order(n, succ)
        # up[x] = bitmask of {y : x <= y}, reflexive.
        up = [1 << x for x in range(n)]
        for x in reversed(topo):
            for y in succ[x]:
                up[x] |= up[y]
        down = [1 << x for x in range(n)]
        for x in topo:
            for y in succ[x]:
                down[y] |= down[x]

        covers = []
        for a in range(n):
            strict_up = up[a] & ~(1 << a)
            for b in _bits(strict_up):
                # (a,b) is a cover iff nothing sits strictly between them.
                if not (strict_up & down[b] & ~(1 << b)):
                    covers.append((a, b))

        upper = [[] for _ in range(n)]
        lower = [[] for _ in range(n)]
        for a, b in covers:
            upper[a].append(b)
            lower[b].append(a)

        heights = [0] * n
        for x in topo:
            heights[x] = 1 + max((heights[z] for z in lower[x]), default=0)

        self.n = n
        self.covers = tuple(sorted(covers))
        self.labels = dict(labels) if labels else {}
        self._up = tuple(up)
        self._down = tuple(down)
        self._upper = tuple(tuple(sorted(v)) for v in upper)
        self._lower = tuple(tuple(sorted(v)) for v in lower)
        self._heights = tuple(heights)
        self._topo = tuple(topo)
        self._inc = None

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self.covers)})"

    def label(self, x):
        return self.labels.get(x, str(x))

    def _check(self, x):
        if not (0 <= x < self.n):
            raise ValueError(f"element {x} outside 0..{self.n - 1}")

    def leq(self, x, y):
        """True iff x <= y (reflexive)."""
        self._check(x)
        self._check(y)
        return bool(self._up[x] >> y & 1)

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def incomparable(self, x, y):
        return x != y and not self.leq(x, y) and not self.leq(y, x)

    def upper_covers(self, x):
        self._check(x)
        return self._upper[x]

    def lower_covers(self, x):
        self._check(x)
        return self._lower[x]

    def upset_mask(self, x):
        """Bitmask of {y : x <= y}, including x itself."""
        self._check(x)
        return self._up[x]

    def downset_mask(self, x):
        self._check(x)
        return self._down[x]

    def element_height(self, x):
        """Size of a longest chain ending at x (1 for minimal elements)."""
        self._check(x)
        return self._heights[x]

    def height(self):
        """Maximum chain size; 0 for the empty poset."""
        return max(self._heights, default=0)

    def topo_order(self):
        """Elements in a linear-extension order (smallest id first at ties)."""
        return self._topo

    def cover_graph(self):
        """Undirected graph on the same ids with one edge per cover relation."""
        return Graph(self.n, [tuple(sorted(c)) for c in self.covers], self.labels)

    def incomparable_pairs(self):
        """All ordered pairs of incomparable elements, sorted; (x,y) is
        present iff (y,x) is."""
        if self._inc is None:
            pairs = []
            for x in range(self.n):
                for y in range(x + 1, self.n):
                    if not (self._up[x] >> y & 1 or self._up[y] >> x & 1):
                        pairs.append((x, y))
                        pairs.append((y, x))
            self._inc = tuple(sorted(pairs))
        return self._inc

    def relations(self):
        """All strict relations (a,b) with a < b in the order, sorted."""
        out = []
        for a in range(self.n):
            for b in _bits(self._up[a] & ~(1 << a)):
                out.append((a, b))
        return sorted(out)

    def restrict(self, elements):
        """Induced subposet on the given elements (ids are remapped to
        0..k-1 following the sorted element order); labels carry over."""
        keep = sorted(set(elements))
        for x in keep:
            self._check(x)
        index = {x: i for i, x in enumerate(keep)}
        rels = [
            (index[a], index[b])
            for a in keep
            for b in _bits(self._up[a] & ~(1 << a))
            if b in index
        ]
        labels = {index[x]: self.labels[x] for x in keep if x in self.labels}
        return Poset(len(keep), rels, labels)


def _topological_order(n, succ):
    indeg = [0] * n
    for a in range(n):
        for b in succ[a]:
            indeg[b] += 1
    heap = [x for x in range(n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y in sorted(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(order) < n:
        raise ValueError(f"relations contain a cycle: {_find_cycle(n, succ, set(order))}")
    return order


def _find_cycle(n, succ, done):
    start = next(x for x in range(n) if x not in done)
    path = [start]
    at = {start: 0}
    x = start
    while True:
        x = min(y for y in succ[x] if y not in done)
        if x in at:
            return path[at[x]:]
        at[x] = len(path)
        path.append(x)


class LinearExtension:
    """A total order on 0..n-1, stored as the element sequence."""

    __slots__ = ("order", "_pos")

    def __init__(self, order):
        self.order = tuple(order)
        self._pos = {x: i for i, x in enumerate(self.order)}
        if len(self._pos) != len(self.order):
            raise ValueError("order contains repeated elements")

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __eq__(self, other):
        if not isinstance(other, LinearExtension):
            return NotImplemented
        return self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"LinearExtension({list(self.order)})"

    def position(self, x):
        return self._pos[x]

    def before(self, x, y):
        return self._pos[x] < self._pos[y]

    def first_violation(self, p):
        """A cover relation (a,b) of p placed in the wrong order, or None."""
        if sorted(self.order) != list(range(p.n)):
            raise ValueError("order is not a permutation of the poset's elements")
        for a, b in p.covers:
            if self._pos[a] > self._pos[b]:
                return (a, b)
        return None

    def is_extension_of(self, p):
        return self.first_violation(p) is None


def find_alternating_cycle(p, pairs):
    """Search a set of ordered incomparable pairs for an alternating cycle.

    The auxiliary digraph has one node per pair and an arc from (x,y) to
    (x',y') whenever x <= y' in p (reflexivity counts). A directed cycle of
    length >= 2 in it is exactly an alternating cycle. Returns a shortest
    cycle found by breadth-first search, as a list of pairs satisfying
    x_i <= y_{i+1} cyclically, or None when the set is reversible.
    """
    plist = sorted(set(pairs))
    for x, y in plist:
        if not p.incomparable(x, y):
            raise ValueError(f"pair ({x},{y}) is not incomparable")
    m = len(plist)
    arcs = [
        [j for j in range(m) if j != i and p.leq(plist[i][0], plist[j][1])]
        for i in range(m)
    ]
    # All 2-cycles first: they are the shortest possible witnesses.
    for i in range(m):
        for j in arcs[i]:
            if j > i and i in arcs[j]:
                return _checked_cycle(p, [plist[i], plist[j]])
    best = None
    for start in range(m):
        parent = {}
        frontier = [start]
        depth = 0
        found = None
        while frontier and found is None and (best is None or depth + 2 < len(best)):
            nxt = []
            for i in frontier:
                for j in arcs[i]:
                    if j == start:
                        found = i
                        break
                    if j not in parent:
                        parent[j] = i
                        nxt.append(j)
                if found is not None:
                    break
            frontier = nxt
            depth += 1
        if found is not None:
            chain = [found]
            while chain[-1] != start:
                chain.append(parent[chain[-1]])
            chain.reverse()
            cycle = [plist[i] for i in chain]
            if best is None or len(cycle) < len(best):
                best = cycle
    return _checked_cycle(p, best) if best is not None else None


def _checked_cycle(p, cycle):
    k = len(cycle)
    for i in range(k):
        x = cycle[i][0]
        y_next = cycle[(i + 1) % k][1]
        if not p.leq(x, y_next):
            raise AssertionError("constructed cycle violates the alternating condition")
    return cycle


def is_reversible(p, pairs):
    """True iff one linear extension can reverse every pair in the set."""
    return find_alternating_cycle(p, pairs) is None


def extend_reversed(p, pairs):
    """Linear extension of p putting y before x for every pair (x,y).

    Topologically sorts the strict-order arcs plus one arc y -> x per pair,
    taking the smallest available id first; that digraph is acyclic exactly
    when the pair set is reversible.
    """
    plist = sorted(set(pairs))
    succ = [set(p.upper_covers(x)) for x in range(p.n)]
    for x, y in plist:
        if not p.incomparable(x, y):
            raise ValueError(f"pair ({x},{y}) is not incomparable")
        succ[y].add(x)
    indeg = [0] * p.n
    for a in range(p.n):
        for b in succ[a]:
            indeg[b] += 1
    heap = [x for x in range(p.n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y in sorted(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(order) < p.n:
        cycle = find_alternating_cycle(p, plist)
        raise NotReversibleError(
            f"pair set contains an alternating cycle of length {len(cycle)}", cycle=cycle
        )
    ext = LinearExtension(order)
    assert ext.is_extension_of(p)
    assert all(ext.before(y, x) for x, y in plist)
    return ext


RealizerCheck = namedtuple("RealizerCheck", "ok pair reason")


def validate_realizer(p, extensions):
    """Check that the extensions intersect to exactly the poset's order.

    Every input must be a linear extension of p (otherwise ValueError, with
    the violated cover relation). Returns RealizerCheck(True, None, None) on
    success, otherwise ok=False with the offending ordered pair and whether
    the intersection has a comparability the poset lacks or vice versa.
    """
    exts = list(extensions)
    if not exts:
        raise ValueError("a realizer needs at least one linear extension")
    for ext in exts:
        bad = ext.first_violation(p)
        if bad is not None:
            raise ValueError(f"not a linear extension of the poset: violates {bad[0]} < {bad[1]}")
    for x in range(p.n):
        for y in range(p.n):
            if x == y:
                continue
            everywhere = all(ext.before(x, y) for ext in exts)
            if everywhere and not p.lt(x, y):
                return RealizerCheck(False, (x, y), "extra comparability: never reversed")
            if p.lt(x, y) and not everywhere:
                return RealizerCheck(False, (x, y), "missing comparability")
    return RealizerCheck(True, None, None)


def parse_poset(text):
    """Parse the line-based poset format.

    Line 1 is ``poset <n>``, then optional ``label <id> <string>`` lines and
    ``rel <a> <b>`` lines meaning a < b. Relations may be redundant; the
    closure and reduction are applied. ``#`` starts a comment.
    """
    n = None
    rels = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "poset" or len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'poset <n>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad element count {parts[1]!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative element count")
            continue
        if parts[0] == "label":
            fields = line.split(maxsplit=2)
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'label <id> <string>'")
            x = _parse_elem(fields[1], n, lineno)
            labels[x] = fields[2]
        elif parts[0] == "rel":
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'rel <a> <b>'")
            a = _parse_elem(parts[1], n, lineno)
            b = _parse_elem(parts[2], n, lineno)
            if a == b:
                raise ParseError(f"line {lineno}: reflexive relation at {a}")
            rels.append((a, b))
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'poset <n>' header")
    try:
        return Poset(n, rels, labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_elem(token, n, lineno):
    try:
        x = int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad id {token!r}") from None
    if not (0 <= x < n):
        raise ParseError(f"line {lineno}: id {x} outside 0..{n - 1}")
    return x


def format_poset(p):
    """Serialize a poset in the text format, emitting its cover relations.

    Reading the result back yields a relation-equivalent poset.
    """
    lines = [f"poset {p.n}"]
    for x in sorted(p.labels):
        lines.append(f"label {x} {p.labels[x]}")
    for a, b in p.covers:
        lines.append(f"rel {a} {b}")
    return "\n".join(lines) + "\n"


def _bits(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out
