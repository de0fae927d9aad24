"""p-centered colorings: verification, construction from elimination
forests, and tiny exact optimizers.

A coloring is p-centered when every connected subgraph either uses some
color exactly once or uses at least p colors. The production path never
tries to be clever: colorings come from elimination-forest depths (those are
centered for every p), and the verifiers are exhaustive with documented
exponential caps.
"""

from __future__ import annotations

import itertools
from collections import Counter, namedtuple

from .errors import CapacityError, ParseError

# The subset verifier enumerates color subsets (2^c blowup); the literal
# verifier enumerates all connected subgraphs (2^n blowup).
VERIFY_MAX_COLORS = 20
VERIFY_MAX_P = 12
LITERAL_MAX_VERTICES = 10
EXACT_FOREST_MAX_VERTICES = 12
EXACT_COLORING_MAX_VERTICES = 9


class Coloring:
    """A total vertex -> color map with a declared color budget."""

    def __init__(self, colors, color_count=None):
        colors = tuple(colors)
        if color_count is None:
            color_count = max(colors, default=-1) + 1
        for v, c in enumerate(colors):
            if not (0 <= c < color_count):
                raise ValueError(f"vertex {v} has color {c} outside 0..{color_count - 1}")
        if colors and color_count < 1:
            raise ValueError("a nonempty coloring needs at least one color")
        self.colors = colors
        self.color_count = color_count

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.colors == other.colors and self.color_count == other.color_count

    def __repr__(self):
        return f"Coloring({list(self.colors)}, color_count={self.color_count})"

    def used_colors(self):
        return sorted(set(self.colors))


CenteredVerdict = namedtuple("CenteredVerdict", "ok component colors")


def _check_cover(g, coloring):
    if len(coloring) != g.n:
        raise ValueError(
            f"coloring covers {len(coloring)} vertices, graph has {g.n}"
        )


def is_p_centered(g, coloring, p):
    """Subset-method verifier.

    A coloring is p-centered iff for every set C of fewer than p colors,
    every connected component of the subgraph induced by the C-colored
    vertices has some color used exactly once. Enumerates the color subsets
    in (size, lex) order and components by smallest vertex, so the returned
    witness is the deterministic first failure.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    _check_cover(g, coloring)
    used = coloring.used_colors()
    if len(used) > VERIFY_MAX_COLORS or p > VERIFY_MAX_P:
        raise CapacityError(
            f"subset verification enumerates color subsets and is limited to "
            f"{VERIFY_MAX_COLORS} used colors and p <= {VERIFY_MAX_P}"
        )
    by_color = {c: [v for v in range(g.n) if coloring[v] == c] for c in used}
    for size in range(1, min(p - 1, len(used)) + 1):
        for combo in itertools.combinations(used, size):
            chosen = set(combo)
            verts = sorted(v for c in combo for v in by_color[c])
            for comp in _components_within(g, verts):
                counts = Counter(coloring[v] for v in comp)
                if 1 not in counts.values():
                    return CenteredVerdict(False, tuple(comp), tuple(sorted(chosen)))
    return CenteredVerdict(True, None, None)


def _components_within(g, verts):
    inside = set(verts)
    seen = set()
    for s in verts:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            w = stack.pop()
            for z in g.adj[w]:
                if z in inside and z not in seen:
                    seen.add(z)
                    comp.append(z)
                    stack.append(z)
        yield sorted(comp)


def is_p_centered_literal(g, coloring, p):
    """Oracle verifier straight from the definition: every connected
    subgraph must use some color once or at least p colors. Enumerates all
    connected vertex subsets, so it only accepts tiny graphs."""
    if p < 1:
        raise ValueError("p must be >= 1")
    _check_cover(g, coloring)
    if g.n > LITERAL_MAX_VERTICES:
        raise CapacityError(
            f"literal verification is limited to {LITERAL_MAX_VERTICES} vertices (got {g.n})"
        )
    for mask in range(1, 1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if not _mask_connected(g, mask, verts):
            continue
        counts = Counter(coloring[v] for v in verts)
        if 1 not in counts.values() and len(counts) < p:
            return CenteredVerdict(False, tuple(verts), tuple(sorted(counts)))
    return CenteredVerdict(True, None, None)


def _mask_connected(g, mask, verts):
    if len(verts) <= 1:
        return True
    seen = 1 << verts[0]
    stack = [verts[0]]
    while stack:
        w = stack.pop()
        for z in g.adj[w]:
            if mask >> z & 1 and not seen >> z & 1:
                seen |= 1 << z
                stack.append(z)
    return seen == mask


class EliminationForest:
    """Rooted forest on the graph's vertices in which every graph edge joins
    an ancestor-descendant pair. Depths start at 1 for roots."""

    def __init__(self, parent):
        parent = tuple(parent)
        n = len(parent)
        depth = [0] * n
        for v in range(n):
            chain = []
            w = v
            while w != -1 and depth[w] == 0:
                chain.append(w)
                w = parent[w]
                if len(chain) > n:
                    raise ValueError("parent pointers contain a cycle")
            base = 0 if w == -1 else depth[w]
            for x in reversed(chain):
                base += 1
                depth[x] = base
        self.parent = parent
        self.depth = tuple(depth)

    def __len__(self):
        return len(self.parent)

    def max_depth(self):
        return max(self.depth, default=0)

    def is_ancestor(self, u, v):
        """True iff u is a (non-strict) ancestor of v."""
        while v != -1:
            if v == u:
                return True
            v = self.parent[v]
        return False

    def violating_edge(self, g):
        """An edge of g joining two tree-incomparable vertices, or None."""
        if len(self.parent) != g.n:
            raise ValueError("forest and graph sizes differ")
        for u, v in g.edges:
            lo, hi = (u, v) if self.depth[u] <= self.depth[v] else (v, u)
            if not self.is_ancestor(lo, hi):
                return (u, v)
        return None


def coloring_from_forest(g, forest):
    """Depth coloring of an elimination forest: color(v) = depth(v) - 1.

    The minimum-depth vertex of any connected subgraph is unique, so the
    result is p-centered for every p.
    """
    bad = forest.violating_edge(g)
    if bad is not None:
        raise ValueError(f"not an elimination forest: edge ({bad[0]},{bad[1]}) "
                         f"joins tree-incomparable vertices")
    return Coloring([d - 1 for d in forest.depth], forest.max_depth())


def build_elimination_forest(g, mode="exact_small"):
    """Build a valid elimination forest of g.

    ``exact_small`` finds a minimum-depth forest by branching over the root
    of every connected sub-block (memoized over vertex masks, capped at
    EXACT_FOREST_MAX_VERTICES). ``heuristic`` recursively roots each block
    at its highest-degree vertex; deterministic and valid, depth <= |V|.
    """
    if mode == "exact_small":
        if g.n > EXACT_FOREST_MAX_VERTICES:
            raise CapacityError(
                f"exact_small is limited to {EXACT_FOREST_MAX_VERTICES} vertices (got {g.n})"
            )
        return _exact_forest(g)
    if mode == "heuristic":
        return _heuristic_forest(g)
    raise ValueError(f"unknown mode {mode!r}")


def _mask_components(g, mask):
    comps = []
    left = mask
    while left:
        s = (left & -left).bit_length() - 1
        comp = 1 << s
        stack = [s]
        while stack:
            w = stack.pop()
            for z in g.adj[w]:
                if mask >> z & 1 and not comp >> z & 1:
                    comp |= 1 << z
                    stack.append(z)
        comps.append(comp)
        left &= ~comp
    return comps


def _exact_forest(g):
    memo = {}

    def best(mask):
        # (depth, root) for a minimum-depth elimination tree of g[mask].
        got = memo.get(mask)
        if got is not None:
            return got
        if mask & (mask - 1) == 0:
            memo[mask] = (1, mask.bit_length() - 1)
            return memo[mask]
        best_d, best_root = g.n + 1, -1
        for v in _mask_bits(mask):
            rest = mask ^ (1 << v)
            d = 1 + max((best(c)[0] for c in _mask_components(g, rest)), default=0)
            if d < best_d:
                best_d, best_root = d, v
        memo[mask] = (best_d, best_root)
        return memo[mask]

    parent = [-1] * g.n

    def build(mask, above):
        _, root = best(mask)
        parent[root] = above
        for c in _mask_components(g, mask ^ (1 << root)):
            build(c, root)

    for comp in _mask_components(g, (1 << g.n) - 1):
        build(comp, -1)
    return EliminationForest(parent)


def _heuristic_forest(g):
    parent = [-1] * g.n

    def build(mask, above):
        members = _mask_bits(mask)
        root = max(members, key=lambda v: (_degree_within(g, v, mask), -v))
        parent[root] = above
        for c in _mask_components(g, mask ^ (1 << root)):
            build(c, root)

    for comp in _mask_components(g, (1 << g.n) - 1) if g.n else []:
        build(comp, -1)
    return EliminationForest(parent)


def _degree_within(g, v, mask):
    return sum(1 for z in g.adj[v] if mask >> z & 1)


def _mask_bits(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def exact_min_p_centered(g, p):
    """A p-centered coloring with provably minimum color count.

    Enumerates colorings in restricted-growth form (one representative per
    color-renaming class) with an increasing budget; the first hit for the
    smallest budget is returned. Capped at EXACT_COLORING_MAX_VERTICES.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if g.n > EXACT_COLORING_MAX_VERTICES:
        raise CapacityError(
            f"exact_min_p_centered is limited to {EXACT_COLORING_MAX_VERTICES} "
            f"vertices (got {g.n})"
        )
    if g.n == 0:
        return Coloring([], 0)
    for budget in range(1, g.n + 1):
        for assignment in _restricted_growth(g.n, budget):
            col = Coloring(assignment, budget)
            if is_p_centered(g, col, p).ok:
                return col
    raise AssertionError("an injective coloring is always p-centered")


def _restricted_growth(n, exactly):
    # Color strings with colors appearing in first-use order, using exactly
    # `exactly` colors.
    assignment = [0] * n

    def rec(i, used):
        if n - i < exactly - used:
            return
        if i == n:
            if used == exactly:
                yield list(assignment)
            return
        for c in range(min(used + 1, exactly)):
            assignment[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def parse_coloring(text):
    """Parse the coloring format: ``coloring <n> <c>`` then ``col <v> <color>``
    lines, one per vertex."""
    header = None
    colors = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "coloring" or len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'coloring <n> <c>' header")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: bad header numbers") from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"line {lineno}: negative header numbers")
            colors = [None] * header[0]
            continue
        if parts[0] != "col" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'col <vertex> <color>'")
        try:
            v, c = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: bad numbers") from None
        if not (0 <= v < header[0]):
            raise ParseError(f"line {lineno}: vertex {v} outside 0..{header[0] - 1}")
        if not (0 <= c < header[1]):
            raise ParseError(f"line {lineno}: color {c} outside 0..{header[1] - 1}")
        if v in seen:
            raise ParseError(f"line {lineno}: vertex {v} colored twice")
        seen.add(v)
        colors[v] = c
    if header is None:
        raise ParseError("missing 'coloring <n> <c>' header")
    missing = [v for v, c in enumerate(colors) if c is None]
    if missing:
        raise ParseError(f"uncolored vertices: {missing}")
    return Coloring(colors, header[1])


def format_coloring(coloring):
    lines = [f"coloring {len(coloring)} {coloring.color_count}"]
    for v, c in enumerate(coloring.colors):
        lines.append(f"col {v} {c}")
    return "\n".join(lines) + "\n"
