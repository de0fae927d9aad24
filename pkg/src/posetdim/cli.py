"""Command-line entry point wiring the generators, colorings, the partition
pipeline, and the exact oracles into reproducible runs over the text formats.

``-`` means standard input (or output for ``-o``) everywhere. Exit codes:
0 success, 1 verification/certification failure (machine-readable witness on
stdout), 2 usage or parse errors. All stdout output is deterministic for
fixed inputs; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .coloring import (
    build_elimination_forest,
    coloring_from_forest,
    exact_min_p_centered,
    format_coloring,
    is_p_centered,
    parse_coloring,
)
from .errors import CapacityError, CertificationError, ParseError
from .generators import (
    adjacency_poset,
    antichain,
    boolean_lattice,
    chain,
    incidence_poset,
    kelly,
    named_graph,
    random_poset,
    standard_example,
)
from .graphs import format_graph, parse_graph
from .oracle import contains_standard_example, exact_chromatic_number, exact_dimension
from .posets import LinearExtension, format_poset, parse_poset, validate_realizer
from .realizer import (
    bound_exponent,
    dimension_bound,
    partition_incomparable_pairs,
    realizer_from_partition,
)

EXACT_FOREST_CUTOFF = 12
BOUND_PRINT_MAX_EXPONENT = 4096


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except (ParseError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"fail certification check={exc.check} detail={exc}")
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="posetdim",
        description="Certified reversible-partition realizers for bounded-height posets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a poset or graph family instance")
    g.add_argument("family", choices=[
        "standard_example", "kelly", "chain", "antichain", "boolean_lattice",
        "incidence", "adjacency", "graph", "random",
    ])
    g.add_argument("param", help="size parameter, graph name, or graph file")
    g.add_argument("--seed", type=int, default=None, help="seed for family 'random'")
    g.add_argument("--density", type=float, default=0.3, help="relation density for 'random'")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(handler=_cmd_gen)

    d = sub.add_parser("dim", help="exact dimension of a poset with a realizer witness")
    d.add_argument("poset")
    d.add_argument("--max-n", type=int, default=16)
    d.set_defaults(handler=_cmd_dim)

    c = sub.add_parser("chi", help="exact chromatic number of a graph")
    c.add_argument("graph")
    c.set_defaults(handler=_cmd_chi)

    col = sub.add_parser("color", help="produce a centered coloring of a graph")
    col.add_argument("graph")
    col.add_argument("--p", type=int, default=None, help="target p for --exact")
    col.add_argument("--exact", action="store_true",
                     help="minimum-color p-centered coloring (tiny graphs; needs --p)")
    col.add_argument("-o", "--output", default="-")
    col.set_defaults(handler=_cmd_color)

    vc = sub.add_parser("verify-coloring", help="check that a coloring is p-centered")
    vc.add_argument("graph")
    vc.add_argument("coloring")
    vc.add_argument("--p", type=int, required=True)
    vc.set_defaults(handler=_cmd_verify_coloring)

    r = sub.add_parser("realize", help="run the certified partition pipeline")
    r.add_argument("poset")
    r.add_argument("--coloring", default=None, help="coloring file for the cover graph")
    r.add_argument("--auto-color", action="store_true",
                   help="color via an elimination forest of the cover graph")
    r.add_argument("--emit-realizer", default=None)
    r.add_argument("--emit-partition", default=None)
    r.add_argument("--certify", action="store_true",
                   help="print one verdict line per runtime certificate")
    r.set_defaults(handler=_cmd_realize)

    vr = sub.add_parser("verify-realizer", help="check extensions against a poset")
    vr.add_argument("poset")
    vr.add_argument("realizer")
    vr.set_defaults(handler=_cmd_verify_realizer)

    b = sub.add_parser("bound", help="certified class-count ceiling for given height/colors")
    b.add_argument("--height", type=int, required=True)
    b.add_argument("--colors", type=int, required=True)
    b.set_defaults(handler=_cmd_bound)

    f = sub.add_parser("find-sd", help="find a standard-example witness inside a poset")
    f.add_argument("poset")
    f.add_argument("--d", type=int, required=True)
    f.set_defaults(handler=_cmd_find_sd)

    rep = sub.add_parser("report", help="batch-run the pipeline over a manifest")
    rep.add_argument("manifest")
    rep.add_argument("--max-oracle-n", type=int, default=16,
                     help="skip the dimension oracle above this size")
    rep.set_defaults(handler=_cmd_report)
    return parser


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    if not os.path.exists(path):
        raise ParseError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph_ref(ref):
    """A graph reference is a named family (k4, c5, petersen, ...) or a file."""
    try:
        return named_graph(ref)
    except ValueError:
        pass
    return parse_graph(_read_text(ref))


def _gen_instance(family, param, seed=None, density=0.3):
    if family in ("standard_example", "kelly", "chain", "antichain", "boolean_lattice", "random"):
        try:
            size = int(param)
        except ValueError:
            raise ParseError(f"family {family} needs an integer parameter, got {param!r}") from None
        maker = {
            "standard_example": standard_example,
            "kelly": kelly,
            "chain": chain,
            "antichain": antichain,
            "boolean_lattice": boolean_lattice,
        }
        if family == "random":
            return random_poset(size, seed=seed, density=density)
        return maker[family](size)
    if family == "incidence":
        return incidence_poset(_load_graph_ref(param))
    if family == "adjacency":
        return adjacency_poset(_load_graph_ref(param))
    if family == "graph":
        return named_graph(param)
    raise ParseError(f"unknown family {family!r}")


def _cmd_gen(args):
    obj = _gen_instance(args.family, args.param, args.seed, args.density)
    if args.family == "graph":
        _write_text(args.output, format_graph(obj))
    else:
        _write_text(args.output, format_poset(obj))
    return 0


def _cmd_dim(args):
    p = parse_poset(_read_text(args.poset))
    cert = exact_dimension(p, max_n=args.max_n)
    lines = [f"dim {cert.value}"]
    for ext in cert.realizer:
        lines.append("ext " + " ".join(str(x) for x in ext.order))
    _write_text("-", "\n".join(lines) + "\n")
    return 0


def _cmd_chi(args):
    g = parse_graph(_read_text(args.graph))
    value, colors = exact_chromatic_number(g)
    lines = [f"chi {value}"]
    for v, c in enumerate(colors):
        lines.append(f"col {v} {c}")
    _write_text("-", "\n".join(lines) + "\n")
    return 0


def _auto_coloring(g):
    mode = "exact_small" if g.n <= EXACT_FOREST_CUTOFF else "heuristic"
    forest = build_elimination_forest(g, mode)
    return coloring_from_forest(g, forest), mode, forest.max_depth()


def _cmd_color(args):
    g = parse_graph(_read_text(args.graph))
    if args.exact:
        if args.p is None:
            raise ParseError("--exact needs --p")
        coloring = exact_min_p_centered(g, args.p)
        header = f"# minimum {args.p}-centered coloring\n"
    else:
        coloring, mode, depth = _auto_coloring(g)
        header = f"# depth coloring from elimination forest (mode={mode}, depth={depth})\n"
    _write_text(args.output, header + format_coloring(coloring))
    return 0


def _cmd_verify_coloring(args):
    g = parse_graph(_read_text(args.graph))
    coloring = parse_coloring(_read_text(args.coloring))
    verdict = is_p_centered(g, coloring, args.p)
    if verdict.ok:
        print(f"ok p-centered p={args.p} colors={coloring.color_count}")
        return 0
    comp = ",".join(str(v) for v in verdict.component)
    cols = ",".join(str(c) for c in verdict.colors)
    print(f"fail not-centered p={args.p} component={comp} colors={cols}")
    return 1


def _format_bound(height, colors):
    e = bound_exponent(height, colors)
    if e <= BOUND_PRINT_MAX_EXPONENT:
        return str(dimension_bound(height, colors))
    return f"2^{e}"


def _cmd_realize(args):
    p = parse_poset(_read_text(args.poset))
    if args.coloring and args.auto_color:
        raise ParseError("--coloring and --auto-color are mutually exclusive")
    if args.coloring:
        coloring = parse_coloring(_read_text(args.coloring))
    elif args.auto_color:
        coloring, _, _ = _auto_coloring(p.cover_graph())
    else:
        raise ParseError("realize needs --coloring FILE or --auto-color")

    t0 = time.monotonic()
    partition = partition_incomparable_pairs(p, coloring)
    t1 = time.monotonic()
    exts = realizer_from_partition(p, partition)
    t2 = time.monotonic()

    s = partition.stats
    bound = _format_bound(max(s.height, 1), max(s.colors, 1))
    print(
        f"realize n={p.n} height={s.height} colors={s.colors} sigma={s.signature_count} "
        f"fingerprints={s.fingerprint_count} classes={partition.class_count()} "
        f"pairs={partition.pair_count()} bound={bound} extensions={len(exts)}"
    )
    if args.certify:
        for check in ("centered", "upset-equality", "laminarity", "interval",
                      "downset-side", "reversibility"):
            print(f"certify {check} {s.checks.get(check, 'ok')}")
        print(f"certify realizer ok extensions={len(exts)}")
    print(f"time partition={t1 - t0:.3f}s realizer={t2 - t1:.3f}s", file=sys.stderr)

    if args.emit_partition:
        _write_text(args.emit_partition, _format_partition(partition))
    if args.emit_realizer:
        _write_text(args.emit_realizer, _format_realizer(exts))
    return 0


def _format_partition(partition):
    lines = []
    for key in partition.sorted_keys():
        sids, vbits = key
        sig = ",".join(str(s) for s in sids)
        v = "".join(str(b) for b in vbits)
        pairs = "".join(f"({x},{y})" for x, y in sorted(partition.classes[key]))
        lines.append(f"class sigma-set={sig} v={v} pairs={pairs}")
    return "\n".join(lines) + "\n" if lines else ""


def _format_realizer(exts):
    return "".join("ext " + " ".join(str(x) for x in ext.order) + "\n" for ext in exts)


def _parse_realizer(text, n):
    exts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "dim" and len(parts) == 2:
            continue  # header of `dim` output
        if parts[0] != "ext":
            raise ParseError(f"line {lineno}: expected 'ext <ids...>'")
        try:
            order = [int(tok) for tok in parts[1:]]
        except ValueError:
            raise ParseError(f"line {lineno}: bad element id") from None
        if sorted(order) != list(range(n)):
            raise ParseError(f"line {lineno}: not a permutation of 0..{n - 1}")
        exts.append(LinearExtension(order))
    if not exts:
        raise ParseError("no 'ext' lines found")
    return exts


def _cmd_verify_realizer(args):
    p = parse_poset(_read_text(args.poset))
    exts = _parse_realizer(_read_text(args.realizer), p.n)
    try:
        check = validate_realizer(p, exts)
    except ValueError as exc:
        print(f"fail realizer reason={exc}")
        return 1
    if check.ok:
        print(f"ok realizer extensions={len(exts)}")
        return 0
    print(f"fail realizer pair=({check.pair[0]},{check.pair[1]}) reason={check.reason}")
    return 1


def _cmd_bound(args):
    print(dimension_bound(args.height, args.colors))
    return 0


def _cmd_find_sd(args):
    p = parse_poset(_read_text(args.poset))
    witness = contains_standard_example(p, args.d)
    if witness is None:
        print("none")
        return 0
    a_ids = ",".join(str(x) for x in witness[0])
    b_ids = ",".join(str(x) for x in witness[1])
    a_lab = ",".join(p.label(x) for x in witness[0])
    b_lab = ",".join(p.label(x) for x in witness[1])
    print(f"sd {args.d} a={a_ids} b={b_ids} a-labels={a_lab} b-labels={b_lab}")
    return 0


def _parse_manifest(text):
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "file" and len(parts) == 2:
            entries.append(("file", parts[1], line))
        elif parts[0] == "gen" and len(parts) >= 3:
            entries.append(("gen", parts[1:], line))
        else:
            raise ParseError(f"line {lineno}: manifest lines are 'file <path>' or "
                             f"'gen <family> <param...>'")
    return entries


def _report_row(kind, payload, name, max_oracle_n):
    t0 = time.monotonic()
    if kind == "file":
        p = parse_poset(_read_text(payload))
    else:
        family, param = payload[0], payload[1]
        seed = int(payload[2]) if len(payload) > 2 else None
        obj = _gen_instance(family, param, seed=seed)
        if family == "graph":
            raise ParseError("manifest instances must be posets")
        p = obj
    coloring, _, _ = _auto_coloring(p.cover_graph())
    partition = partition_incomparable_pairs(p, coloring)
    exts = realizer_from_partition(p, partition)
    check = validate_realizer(p, exts)
    assert check.ok
    s = partition.stats
    oracle_dim = "-"
    if p.n <= max_oracle_n:
        oracle_dim = str(exact_dimension(p, max_n=max_oracle_n).value)
    elapsed = time.monotonic() - t0
    row = {
        "name": name,
        "status": "ok",
        "n": str(p.n),
        "height": str(s.height),
        "colors": str(s.colors),
        "sigma": str(s.signature_count),
        "fingerprints": str(s.fingerprint_count),
        "classes": str(partition.class_count()),
        "bound": _format_bound(max(s.height, 1), max(s.colors, 1)),
        "oracle_dim": oracle_dim,
        "certified": "ok",
    }
    return row, elapsed


_REPORT_COLUMNS = ("name", "status", "n", "height", "colors", "sigma",
                   "fingerprints", "classes", "bound", "oracle_dim", "certified")


def _cmd_report(args):
    entries = _parse_manifest(_read_text(args.manifest))
    rows = []
    failures = 0
    for kind, payload, line in entries:
        name = line if kind == "gen" else payload
        try:
            row, elapsed = _report_row(kind, payload, name, args.max_oracle_n)
            print(f"time instance={name!r} {elapsed:.3f}s", file=sys.stderr)
        except ParseError as exc:
            row = {c: "-" for c in _REPORT_COLUMNS}
            row.update(name=name, status="parse-error", certified=f"error:{exc}")
            failures += 1
        except CertificationError as exc:
            row = {c: "-" for c in _REPORT_COLUMNS}
            row.update(name=name, status="cert-fail", certified=f"{exc.check}:{exc}")
            failures += 1
        rows.append(row)
        print("report " + " ".join(f"{c}={row[c]}" for c in _REPORT_COLUMNS))
    if rows:
        widths = {c: max(len(c), max(len(r[c]) for r in rows)) for c in _REPORT_COLUMNS}
        print("  ".join(c.ljust(widths[c]) for c in _REPORT_COLUMNS))
        for r in rows:
            print("  ".join(r[c].ljust(widths[c]) for c in _REPORT_COLUMNS))
    print(f"summary total={len(rows)} ok={len(rows) - failures} failed={failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
