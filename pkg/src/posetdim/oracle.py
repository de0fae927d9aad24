"""Exact brute-force ground truth: poset dimension, graph chromatic number,
and standard-example containment.

Everything here is exponential with documented caps; the point is desk-scale
exactness for validating the constructive pipeline, not performance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapacityError
from .generators import incidence_poset, named_graph
from .posets import LinearExtension, extend_reversed, validate_realizer

DIMENSION_MAX_ELEMENTS = 16
EXTENSION_ORACLE_MAX_ELEMENTS = 6
SD_SEARCH_MAX_D = 4
LOGLOG_MAX_N = 5


@dataclass
class DimensionCertificate:
    """Exact dimension with an upper witness (a realizer of that size) and a
    lower witness: a pair set that provably does not fit into value-1
    reversible sets (by mutual-conflict pigeonhole or by exhausted search)."""

    value: int
    realizer: list
    hard_core: frozenset | None


def exact_dimension(p, max_n=DIMENSION_MAX_ELEMENTS):
    """Minimum number of reversible sets partitioning the incomparable pairs.

    Backtracking over pair-to-class assignments with alternating-cycle
    checks on every insertion, a most-constrained-pair branching order, and
    a seeded clique of pairwise-conflicting pairs for the lower bound and
    symmetry breaking. Dimension 1 iff nothing is incomparable.
    """
    if max_n > DIMENSION_MAX_ELEMENTS:
        max_n = DIMENSION_MAX_ELEMENTS
    if p.n > max_n:
        raise CapacityError(
            f"exact_dimension is limited to {max_n} elements (got {p.n})"
        )
    inc = p.incomparable_pairs()
    if not inc:
        return DimensionCertificate(1, [extend_reversed(p, ())], None)

    m = len(inc)
    arcs = [0] * m    # arcs[i] has bit j iff x_i <= y_j (an alternating step)
    for i, (xi, _) in enumerate(inc):
        for j, (_, yj) in enumerate(inc):
            if i != j and p.leq(xi, yj):
                arcs[i] |= 1 << j
    rarcs = [0] * m
    for i in range(m):
        rest = arcs[i]
        while rest:
            b = rest & -rest
            rest ^= b
            rarcs[b.bit_length() - 1] |= 1 << i
    conflict = [arcs[i] & rarcs[i] for i in range(m)]  # mutual 2-cycles

    clique = _greedy_conflict_clique(m, conflict)
    lower = max(2, len(clique))
    for d in range(lower, m + 1):
        assignment = _search_partition(m, arcs, rarcs, conflict, d, clique)
        if assignment is not None:
            groups = [[] for _ in range(d)]
            for i, k in enumerate(assignment):
                groups[k].append(inc[i])
            assert all(groups)
            exts = [extend_reversed(p, grp) for grp in groups]
            check = validate_realizer(p, exts)
            assert check.ok, check
            if d == lower:
                hard = frozenset(inc[i] for i in clique) if len(clique) >= d else frozenset(inc)
            else:
                hard = frozenset(inc)
            return DimensionCertificate(d, exts, hard)
    raise AssertionError("one class per pair is always feasible")


def _greedy_conflict_clique(m, conflict):
    """Pairwise mutually-conflicting pairs, grown greedily from the highest
    conflict degrees. Sound lower bound: such pairs need distinct classes."""
    order = sorted(range(m), key=lambda i: (-bin(conflict[i]).count("1"), i))
    clique = []
    mask = 0
    for i in order:
        if mask & ~conflict[i]:
            continue
        clique.append(i)
        mask |= 1 << i
    return sorted(clique)


def _search_partition(m, arcs, rarcs, conflict, d, clique):
    """Assign each pair index to one of d classes with no alternating cycle
    inside any class; None when impossible. Deterministic: the clique seeds
    classes 0..q-1, then always branch on the pair with fewest conflict-free
    classes (smallest index on ties), trying classes in index order and
    opening at most one fresh class."""
    if len(clique) > d:
        return None
    assignment = [-1] * m
    class_masks = [0] * d
    for idx, i in enumerate(clique):
        assignment[i] = idx
        class_masks[idx] = 1 << i
    unassigned = set(range(m)) - set(clique)
    used = len(clique)

    def creates_cycle(i, cmask):
        # Would inserting pair i close a directed cycle through i?
        frontier = arcs[i] & cmask
        seen = 0
        back = rarcs[i]
        while frontier:
            if frontier & back:
                return True
            seen |= frontier
            nxt = 0
            rest = frontier
            while rest:
                b = rest & -rest
                rest ^= b
                nxt |= arcs[b.bit_length() - 1]
            frontier = nxt & cmask & ~seen
        return False

    def solve():
        nonlocal used
        if not unassigned:
            return True
        limit = min(used, d - 1)
        best_i, best_ks = -1, None
        for i in sorted(unassigned):
            ks = [k for k in range(limit + 1) if not conflict[i] & class_masks[k]]
            if best_ks is None or len(ks) < len(best_ks):
                best_i, best_ks = i, ks
                if not ks:
                    return False
                if len(ks) == 1:
                    break
        i = best_i
        unassigned.discard(i)
        for k in best_ks:
            if creates_cycle(i, class_masks[k]):
                continue
            assignment[i] = k
            class_masks[k] |= 1 << i
            grew = k == used
            if grew:
                used += 1
            if solve():
                return True
            if grew:
                used -= 1
            class_masks[k] &= ~(1 << i)
            assignment[i] = -1
        unassigned.add(i)
        return False

    return assignment if solve() else None


def all_linear_extensions(p):
    """Yield every linear extension, in lexicographic order of the element
    sequences."""
    indeg = [0] * p.n
    for _, b in p.covers:
        indeg[b] += 1
    order = []

    def rec():
        if len(order) == p.n:
            yield LinearExtension(order)
            return
        for x in range(p.n):
            if indeg[x] == 0:
                indeg[x] = -1
                order.append(x)
                for y in p.upper_covers(x):
                    indeg[y] -= 1
                yield from rec()
                for y in p.upper_covers(x):
                    indeg[y] += 1
                order.pop()
                indeg[x] = 0

    yield from rec()


def dimension_by_extension_search(p, max_n=EXTENSION_ORACLE_MAX_ELEMENTS):
    """Independent oracle: smallest d such that d linear extensions jointly
    reverse every incomparable pair (equivalently, intersect to the poset).

    Enumerates all extensions, reduces them to maximal reversal masks, and
    runs an exact set-cover search. Tiny inputs only; kept as a cross-check
    for the partition search.
    """
    if max_n > EXTENSION_ORACLE_MAX_ELEMENTS:
        max_n = EXTENSION_ORACLE_MAX_ELEMENTS
    if p.n > max_n:
        raise CapacityError(
            f"dimension_by_extension_search is limited to {max_n} elements (got {p.n})"
        )
    inc = p.incomparable_pairs()
    if not inc:
        return 1
    pair_index = {pair: i for i, pair in enumerate(inc)}
    masks = set()
    for ext in all_linear_extensions(p):
        mask = 0
        for (x, y), i in pair_index.items():
            if ext.before(y, x):
                mask |= 1 << i
        masks.add(mask)
    masks = sorted(masks, key=lambda m: (-bin(m).count("1"), m))
    maximal = []
    for mask in masks:
        if not any(mask & big == mask for big in maximal):
            maximal.append(mask)
    full = (1 << len(inc)) - 1

    def cover(done, depth):
        if done == full:
            return True
        if depth == 0:
            return False
        missing = (~done & full)
        lowest = missing & -missing
        for mask in maximal:
            if mask & lowest and cover(done | mask, depth - 1):
                return True
        return False

    for d in range(1, len(inc) + 1):
        if cover(0, d):
            return d
    raise AssertionError("reversing one pair per extension always covers")


def exact_chromatic_number(g, max_n=DIMENSION_MAX_ELEMENTS):
    """Chromatic number with a witness coloring, by DSATUR branch and bound."""
    if max_n > DIMENSION_MAX_ELEMENTS:
        max_n = DIMENSION_MAX_ELEMENTS
    if g.n > max_n:
        raise CapacityError(
            f"exact_chromatic_number is limited to {max_n} vertices (got {g.n})"
        )
    if g.n == 0:
        return 0, []
    greedy_k, greedy_cols = _dsatur_greedy(g)
    clique = _greedy_graph_clique(g)
    best_k, best_cols = greedy_k, greedy_cols
    if len(clique) == best_k:
        return best_k, best_cols

    colors = [-1] * g.n
    for i, v in enumerate(clique):
        colors[v] = i

    def choose():
        pending = [v for v in range(g.n) if colors[v] == -1]
        if not pending:
            return None
        def saturation(v):
            return len({colors[u] for u in g.adj[v] if colors[u] != -1})
        return max(pending, key=lambda v: (saturation(v), len(g.adj[v]), -v))

    def backtrack(current_k):
        nonlocal best_k, best_cols
        if current_k >= best_k:
            return
        v = choose()
        if v is None:
            best_k, best_cols = current_k, colors[:]
            return
        banned = {colors[u] for u in g.adj[v] if colors[u] != -1}
        for c in range(min(current_k + 1, best_k - 1)):
            if c in banned:
                continue
            colors[v] = c
            backtrack(max(current_k, c + 1))
            colors[v] = -1

    backtrack(len(clique))
    assert _is_proper(g, best_cols)
    return best_k, best_cols


def _dsatur_greedy(g):
    colors = [-1] * g.n
    pending = set(range(g.n))
    while pending:
        def saturation(v):
            return len({colors[u] for u in g.adj[v] if colors[u] != -1})
        v = max(sorted(pending), key=lambda w: (saturation(w), len(g.adj[w])))
        banned = {colors[u] for u in g.adj[v] if colors[u] != -1}
        c = 0
        while c in banned:
            c += 1
        colors[v] = c
        pending.discard(v)
    return max(colors) + 1, colors


def _greedy_graph_clique(g):
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    clique = []
    for v in order:
        if all(u in g.adj[v] for u in clique):
            clique.append(v)
    return sorted(clique)


def _is_proper(g, colors):
    return all(colors[u] != colors[v] for u, v in g.edges)


def contains_standard_example(p, d, max_d=SD_SEARCH_MAX_D):
    """Witness tuples (a_1..a_d), (b_1..b_d) inducing the standard-example
    pattern as a subposet (a_i < b_j iff i != j, both sides antichains), or
    None. The pattern is pairwise between index pairs, so this is a clique
    search over incomparable ordered pairs, canonicalized by increasing a."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d > max_d or d > SD_SEARCH_MAX_D:
        raise CapacityError(f"standard-example search is limited to d <= {SD_SEARCH_MAX_D}")
    pairs = p.incomparable_pairs()
    if d == 1:
        return ((pairs[0][0],), (pairs[0][1],)) if pairs else None

    def compatible(p1, p2):
        a1, b1 = p1
        a2, b2 = p2
        return (
            p.incomparable(a1, a2)
            and p.incomparable(b1, b2)
            and p.lt(a1, b2)
            and p.lt(a2, b1)
        )

    chosen = []

    def extend():
        if len(chosen) == d:
            return True
        floor = chosen[-1][0] if chosen else -1
        for cand in pairs:
            if cand[0] <= floor:
                continue
            if all(compatible(cand, prev) for prev in chosen):
                chosen.append(cand)
                if extend():
                    return True
                chosen.pop()
        return False

    if not extend():
        return None
    a_tuple = tuple(q[0] for q in chosen)
    b_tuple = tuple(q[1] for q in chosen)
    _assert_standard_pattern(p, a_tuple, b_tuple)
    return (a_tuple, b_tuple)


def _assert_standard_pattern(p, a_tuple, b_tuple):
    d = len(a_tuple)
    assert len(set(a_tuple) | set(b_tuple)) == 2 * d
    for i in range(d):
        for j in range(d):
            if i == j:
                assert p.incomparable(a_tuple[i], b_tuple[j])
            else:
                assert p.lt(a_tuple[i], b_tuple[j])
    for i in range(d):
        for j in range(i + 1, d):
            assert p.incomparable(a_tuple[i], a_tuple[j])
            assert p.incomparable(b_tuple[i], b_tuple[j])


def loglog_check(n, max_n=LOGLOG_MAX_N):
    """Verify that the incidence poset of K_n has dimension at least
    log2(log2(n)), using the exact oracle."""
    if n < 2:
        raise ValueError("needs n >= 2")
    if n > max_n or n > LOGLOG_MAX_N:
        raise CapacityError(f"loglog_check is limited to n <= {LOGLOG_MAX_N}")
    cert = exact_dimension(incidence_poset(named_graph(f"k{n}")))
    return cert.value >= math.log2(math.log2(n))
