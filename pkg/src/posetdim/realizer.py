"""Reversible-partition pipeline for bounded-height posets.

Given a poset of height h and a coloring of its cover graph that is
2h-centered, the pipeline

  1. refines the coloring with element heights,
  2. tabulates, per element, the signatures of all upward cover-chains
     together with their endpoint sets (upsets) and the transposed downsets,
  3. groups elements whose upsets for a signature coincide (with a genuine
     2h-centered coloring, upsets that intersect must be equal),
  4. collects elements by fingerprint (the set of signatures realized at the
     element), arranges each fingerprint block's class restrictions into a
     laminar family, and orders the block by a preorder traversal of the
     laminar tree,
  5. keys every incomparable pair (x, y) by x's fingerprint and a bit vector
     recording, per signature, whether y's downset meets the block strictly
     to the right of x.

Each key class is free of alternating cycles, so one linear extension per
class reverses it and the extensions together realize the poset. Every
structural fact this argument rests on is certified at runtime; a coloring
that is not 2h-centered surfaces as a CertificationError, never as a wrong
partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import VERIFY_MAX_COLORS, VERIFY_MAX_P, is_p_centered
from .errors import CapacityError, CertificationError, InternalInvariantError
from .posets import extend_reversed, find_alternating_cycle, validate_realizer

# dimension_bound() values explode doubly exponentially; refuse to
# materialize integers beyond this many bits (comparisons against the bound
# are done in exponent space instead, see fits_bound).
BOUND_MAX_BITS = 1 << 20


def refine_by_height(p, coloring):
    """Refine a cover-graph coloring by element height.

    Returns one (color, level) pair per element, level being the length of a
    longest chain ending there. Levels strictly increase along cover
    relations, so chain signatures made of these pairs never repeat an
    entry; and a refinement of a p-centered coloring stays p-centered.
    """
    if len(coloring) != p.n:
        raise ValueError(f"coloring covers {len(coloring)} vertices, poset has {p.n}")
    return tuple((coloring[x], p.element_height(x)) for x in range(p.n))


class SignatureTable:
    """Upsets and downsets of upward cover-chain signatures.

    A chain signature is the tuple of refined colors along an upward
    cover-chain (single elements included). Signatures are interned:
    ``signatures[sid]`` is the tuple itself, ``up[x][sid]`` the bitmask of
    chain endpoints reachable from x along sid-chains, ``down[y][sid]`` the
    transposed mask of chain starts, ``members[sid]`` the elements whose
    sid-upset is nonempty, and ``fingerprint[x]`` the frozenset of sids
    realized at x.
    """

    def __init__(self, signatures, up, down, fingerprint, members, refined):
        self.signatures = signatures
        self.up = up
        self.down = down
        self.fingerprint = fingerprint
        self.members = members
        self.refined = refined

    @property
    def n(self):
        return len(self.up)

    def signature_count(self):
        return len(self.signatures)


def compute_signature_table(p, refined):
    """Tabulate every covering-chain signature by dynamic programming from
    the maximal elements downward.

    The one-element chain at x contributes the signature (refined[x],) with
    upset {x}; longer chains prepend refined[x] to the signatures realized
    at x's upper covers and take unions of their endpoint sets.
    """
    if len(refined) != p.n:
        raise ValueError("refined coloring does not cover the poset")
    intern = {}
    signatures = []

    def sig_id(sig):
        sid = intern.get(sig)
        if sid is None:
            sid = len(signatures)
            intern[sig] = sid
            signatures.append(sig)
        return sid

    up = [dict() for _ in range(p.n)]
    for x in reversed(p.topo_order()):
        mine = refined[x]
        own = sig_id((mine,))
        up[x][own] = 1 << x
        for z in p.upper_covers(x):
            assert refined[z][1] > mine[1]
            for sid, mask in up[z].items():
                ext = sig_id((mine,) + signatures[sid])
                up[x][ext] = up[x].get(ext, 0) | mask

    down = [dict() for _ in range(p.n)]
    members = {}
    for x in range(p.n):
        for sid, mask in up[x].items():
            members[sid] = members.get(sid, 0) | 1 << x
            rest = mask
            while rest:
                b = rest & -rest
                rest ^= b
                y = b.bit_length() - 1
                down[y][sid] = down[y].get(sid, 0) | 1 << x

    fingerprint = tuple(frozenset(d.keys()) for d in up)
    return SignatureTable(tuple(signatures), tuple(up), tuple(down), fingerprint, members, refined)


def signature_classes(table, sid):
    """Group the elements with a nonempty sid-upset by upset intersection.

    Union-find merging on intersecting upsets; afterwards every class must
    have all its upsets *equal* -- that equality is exactly what a genuine
    2h-centered coloring guarantees, so an intersecting-but-unequal pair is
    reported as a certification failure. Returns the classes as bitmasks
    ordered by smallest member.
    """
    elems = _mask_bits(table.members.get(sid, 0))
    parent = {x: x for x in elems}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, x in enumerate(elems):
        ux = table.up[x][sid]
        for y in elems[i + 1:]:
            if ux & table.up[y][sid]:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    groups = {}
    for x in elems:
        groups.setdefault(find(x), []).append(x)
    classes = []
    for root in sorted(groups):
        cls = groups[root]
        base = table.up[cls[0]][sid]
        for x in cls[1:]:
            if table.up[x][sid] != base:
                raise CertificationError(
                    f"upsets of elements {cls[0]} and {x} for signature {sid} intersect "
                    f"but differ: the coloring is not 2h-centered",
                    check="upset-equality",
                    witness=(sid, cls[0], x),
                )
        classes.append(_mask_of(cls))
    return classes


@dataclass
class FingerprintBlock:
    """One fingerprint's ground set with its laminar family and preorder."""

    ground: int
    family: tuple
    parent: dict
    order: tuple
    pos: dict


class LaminarIndex:
    """Per realized fingerprint: the laminar family of signature-class
    restrictions, its inclusion tree and the preorder positions."""

    def __init__(self, blocks, class_of):
        self.blocks = blocks          # fingerprint -> FingerprintBlock
        self.class_of = class_of      # sid -> {element -> class mask}

    def block_of(self, table, x):
        return self.blocks[table.fingerprint[x]]


def build_laminar_index(table, classes_by_sid=None):
    """Assemble and certify the laminar structure of every realized
    fingerprint.

    Only fingerprints actually realized by an element are materialized. The
    family of a block consists of the signature-class restrictions to the
    block, all singletons, and the block itself; it is checked pairwise for
    disjoint-or-nested, the inclusion tree is built with children ordered by
    smallest member, and each class restriction is checked to occupy an
    interval of the preorder.
    """
    if classes_by_sid is None:
        classes_by_sid = {sid: signature_classes(table, sid) for sid in range(len(table.signatures))}
    class_of = {}
    for sid, classes in classes_by_sid.items():
        lookup = {}
        for mask in classes:
            for x in _mask_bits(mask):
                lookup[x] = mask
        class_of[sid] = lookup

    grounds = {}
    for x in range(table.n):
        fp = table.fingerprint[x]
        grounds[fp] = grounds.get(fp, 0) | 1 << x

    blocks = {}
    for fp in sorted(grounds, key=sorted):
        ground = grounds[fp]
        family = {ground}
        for x in _mask_bits(ground):
            family.add(1 << x)
            for sid in fp:
                family.add(class_of[sid][x] & ground)
        family = sorted(family)
        _certify_laminar(family, fp)
        parent = _inclusion_tree(family, ground)
        order = _preorder(family, parent, ground)
        pos = {x: i for i, x in enumerate(order)}
        for sid in sorted(fp):
            for mask in classes_by_sid[sid]:
                restriction = mask & ground
                if restriction:
                    _certify_interval(restriction, pos, fp, sid)
        blocks[fp] = FingerprintBlock(ground, tuple(family), parent, tuple(order), pos)
    return LaminarIndex(blocks, class_of)


def _certify_laminar(family, fp):
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            inter = a & b
            if inter and inter != a and inter != b:
                raise CertificationError(
                    f"family of fingerprint {sorted(fp)} is not laminar: sets "
                    f"{_mask_bits(a)} and {_mask_bits(b)} overlap without nesting "
                    f"(the coloring is not 2h-centered)",
                    check="laminarity",
                    witness=(fp, a, b),
                )


def _inclusion_tree(family, ground):
    # Parent = inclusion-minimal strict superset; the ground set is the root.
    by_size = sorted(family, key=lambda m: bin(m).count("1"))
    parent = {}
    for s in family:
        if s == ground:
            continue
        for candidate in by_size:
            if candidate != s and candidate & s == s:
                parent[s] = candidate
                break
        else:
            raise AssertionError("ground set missing from the family")
    return parent


def _preorder(family, parent, ground):
    children = {s: [] for s in family}
    for s, par in parent.items():
        children[par].append(s)
    for s in children:
        children[s].sort(key=lambda m: m & -m)  # by smallest contained element
    order = []

    def visit(s):
        if s & (s - 1) == 0:
            order.append(s.bit_length() - 1)
        for child in children[s]:
            visit(child)

    visit(ground)
    if sorted(order) != _mask_bits(ground):
        raise AssertionError("preorder did not visit every singleton exactly once")
    return order


def _certify_interval(restriction, pos, fp, sid):
    positions = sorted(pos[x] for x in _mask_bits(restriction))
    if positions[-1] - positions[0] != len(positions) - 1:
        raise CertificationError(
            f"class of signature {sid} is not an interval of the preorder in "
            f"fingerprint {sorted(fp)} (the coloring is not 2h-centered)",
            check="interval",
            witness=(fp, sid, restriction),
        )


def side_vector(table, index, x, y):
    """Class key of the incomparable pair (x, y).

    The key is x's fingerprint together with one bit per signature in it:
    the bit is 1 when some element of y's signature-downset, restricted to
    x's fingerprint block, lies strictly to the right of x in the block's
    preorder. The certified fact that such restrictions never straddle x is
    asserted on the way.
    """
    fp = table.fingerprint[x]
    block = index.blocks[fp]
    px = block.pos[x]
    bits = []
    for sid in sorted(fp):
        dmask = table.down[y].get(sid, 0) & block.ground
        bit = 0
        if dmask:
            left = right = False
            for w in _mask_bits(dmask):
                pw = block.pos[w]
                if pw > px:
                    right = True
                elif pw < px:
                    left = True
                else:
                    raise InternalInvariantError(
                        f"element {x} sits in the downset of its incomparable partner {y}"
                    )
            if left and right:
                raise CertificationError(
                    f"downset of {y} for signature {sid} has elements on both sides of "
                    f"{x} in its fingerprint block (the coloring is not 2h-centered)",
                    check="downset-side",
                    witness=(x, y, sid),
                )
            bit = 1 if right else 0
        bits.append(bit)
    return (tuple(sorted(fp)), tuple(bits))


@dataclass
class PipelineStats:
    height: int
    colors: int
    signature_count: int
    fingerprint_count: int
    verified_upfront: bool
    checks: dict = field(default_factory=dict)


class IncPartition:
    """Partition of the ordered incomparable pairs into reversible classes,
    keyed by (fingerprint, side vector)."""

    def __init__(self, classes, stats):
        self.classes = classes
        self.stats = stats

    def class_count(self):
        return len(self.classes)

    def pair_count(self):
        return sum(len(v) for v in self.classes.values())

    def sorted_keys(self):
        return sorted(self.classes)


def partition_incomparable_pairs(p, coloring):
    """Run the whole pipeline and certify every step.

    The coloring must be 2h-centered on the cover graph for h = height(p).
    When the subset verifier can afford it, that is checked up front;
    otherwise the runtime certificates (upset equality, laminarity,
    intervals, downset sides, and the final per-class reversibility check)
    stand guard. The returned classes are pairwise disjoint, cover all
    incomparable pairs, each is reversible, and their number respects
    dimension_bound(height, colors).
    """
    if len(coloring) != p.n:
        raise ValueError(f"coloring covers {len(coloring)} vertices, poset has {p.n}")
    h = p.height()
    c = coloring.color_count
    inc = p.incomparable_pairs()
    stats = PipelineStats(h, c, 0, 0, False)

    centered_p = 2 * h
    if h >= 1 and len(coloring.used_colors()) <= VERIFY_MAX_COLORS and centered_p <= VERIFY_MAX_P:
        verdict = is_p_centered(p.cover_graph(), coloring, centered_p)
        if not verdict.ok:
            raise CertificationError(
                f"coloring is not {centered_p}-centered: component {verdict.component} "
                f"uses colors {verdict.colors} with none unique",
                check="centered",
                witness=verdict,
            )
        stats.verified_upfront = True
        stats.checks["centered"] = "ok"
    else:
        stats.checks["centered"] = "deferred"

    if not inc:
        return IncPartition({}, stats)

    refined = refine_by_height(p, coloring)
    table = compute_signature_table(p, refined)
    stats.signature_count = table.signature_count()
    if table.signature_count() > h * (h * c) ** h:
        raise InternalInvariantError(
            f"{table.signature_count()} signatures exceed the h(hc)^h ceiling"
        )

    classes_by_sid = {
        sid: signature_classes(table, sid) for sid in range(table.signature_count())
    }
    stats.checks["upset-equality"] = "ok"
    index = build_laminar_index(table, classes_by_sid)
    stats.fingerprint_count = len(index.blocks)
    stats.checks["laminarity"] = "ok"
    stats.checks["interval"] = "ok"

    classes = {}
    for x, y in inc:
        key = side_vector(table, index, x, y)
        classes.setdefault(key, []).append((x, y))
    stats.checks["downset-side"] = "ok"

    for key in sorted(classes):
        pairs = classes[key] = tuple(classes[key])
        cycle = find_alternating_cycle(p, pairs)
        if cycle is not None:
            if stats.verified_upfront:
                raise InternalInvariantError(
                    f"class {key} of a verified 2h-centered coloring contains an "
                    f"alternating cycle",
                    witness=cycle,
                )
            raise CertificationError(
                f"class {key} contains an alternating cycle of length {len(cycle)} "
                f"(the coloring is not 2h-centered)",
                check="reversibility",
                witness=cycle,
            )
    stats.checks["reversibility"] = "ok"

    if sum(len(v) for v in classes.values()) != len(inc):
        raise InternalInvariantError("classes do not partition the incomparable pairs")
    if not fits_bound(len(classes), h, c):
        raise InternalInvariantError(
            f"{len(classes)} classes exceed dimension_bound({h},{c})"
        )
    return IncPartition(classes, stats)


def realizer_from_partition(p, partition):
    """One linear extension per class, reversing it; together they realize
    the poset. A single extension is emitted when nothing is incomparable."""
    keys = partition.sorted_keys()
    if not keys:
        exts = [extend_reversed(p, ())]
    else:
        exts = [extend_reversed(p, partition.classes[k]) for k in keys]
    check = validate_realizer(p, exts)
    if not check.ok:
        raise InternalInvariantError(
            f"partition extensions do not realize the poset: {check.pair} {check.reason}"
        )
    return exts


def bound_exponent(height, colors):
    """Exponent e with dimension_bound(height, colors) = 2**e."""
    if height < 1 or colors < 1:
        raise ValueError("height and colors must be >= 1")
    return 2 * height ** (height + 1) * colors ** height


def dimension_bound(height, colors):
    """The certified ceiling 2**(2 * h^(h+1) * c^h) on the class count, as
    an exact integer. Raises CapacityError when the value would not fit in
    memory; use fits_bound for comparisons in that regime."""
    e = bound_exponent(height, colors)
    if e > BOUND_MAX_BITS:
        raise CapacityError(
            f"dimension_bound(h={height}, c={colors}) = 2**{e} is too large to "
            f"materialize (> {BOUND_MAX_BITS} bits); compare with fits_bound instead"
        )
    return 1 << e


def fits_bound(count, height, colors):
    """Exact comparison count <= dimension_bound(height, colors) without
    materializing the bound."""
    if count < 1:
        return True
    return (count - 1).bit_length() <= bound_exponent(height, colors)


def _mask_bits(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _mask_of(elements):
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask
