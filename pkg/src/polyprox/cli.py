"""Command-line surface: fetch, merge, validate, centrality, cross, verify.

Output is deterministic: nodes and edges are sorted, score tables are ranked
by descending closeness with ties broken by ascending id, and floats are
printed with 12 significant digits. Infinity is serialized as the literal
``inf`` in CSV and as the JSON string ``"inf"``. Exit codes: 0 success,
1 validation or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from functools import reduce
from pathlib import Path

from . import acquisition, oracle
from .centrality import (
    CentralityScore,
    holder_centrality,
    holder_nobelity,
)
from .cross import cross_closeness, cross_distance
from .distances import distances_from
from .errors import PolyproxError
from .graph import Polytree, merge
from .graphio import graph_to_json_text, load_graph, load_mask, save_graph


def _fmt(v: float) -> str:
    return "%.12g" % v


def _json_value(v: float):
    return "inf" if math.isinf(v) else float(_fmt(v))


def _rank(scores: list[CentralityScore]) -> list[CentralityScore]:
    return sorted(scores, key=lambda s: (-s.closeness, s.node))


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _scores_text(g: Polytree, scores: list[CentralityScore], fmt: str) -> str:
    ordered = _rank(scores)
    if fmt == "csv":
        rows = [["id", "name", "mean_distance", "closeness"]]
        rows += [
            [s.node, g.names[s.node], _fmt(s.mean_distance), _fmt(s.closeness)]
            for s in ordered
        ]
        return _csv_text(rows)
    doc = [
        {
            "id": s.node,
            "name": g.names[s.node],
            "mean_distance": _json_value(s.mean_distance),
            "closeness": _json_value(s.closeness),
        }
        for s in ordered
    ]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _matrix_text(matrix, fmt: str) -> str:
    if fmt == "csv":
        rows = [["id", *matrix.nodes]]
        for pid, row in zip(matrix.nodes, matrix.values):
            rows.append([pid, *(_fmt(v) for v in row)])
        return _csv_text(rows)
    doc = {
        "nodes": list(matrix.nodes),
        "degree": matrix.degree,
        "orientation": matrix.orientation,
        "values": [[_json_value(v) for v in row] for row in matrix.values],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _pairs_text(pairs: list[tuple[str, float]], fmt: str) -> str:
    ordered = sorted(pairs, key=lambda kv: (-kv[1], kv[0]))
    if fmt == "csv":
        rows = [["id", "score"]]
        rows += [[pid, _fmt(score)] for pid, score in ordered]
        return _csv_text(rows)
    doc = [{"id": pid, "score": _json_value(score)} for pid, score in ordered]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _write_graph(args, g: Polytree) -> None:
    if args.output in (None, "-"):
        if args.format == "csv":
            args.parser.error("csv graph output requires --output")
        sys.stdout.write(graph_to_json_text(g))
    else:
        save_graph(g, args.output, args.format)


# -- argument helpers ------------------------------------------------------


def _nonzero_float(text: str) -> float:
    value = float(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _add_mask_flag(sub) -> None:
    sub.add_argument(
        "--targets",
        "--mask",
        dest="targets",
        metavar="FILE",
        help="mask file restricting the target set (one id per line, # comments)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyprox",
        description="Closeness and shared-ancestry measures on directed acyclic graphs.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    fetch = commands.add_parser("fetch", help="build a lineage graph from the genealogy site")
    fetch.add_argument("--pid", action="append", required=True, help="root person id (repeatable)")
    fetch.add_argument(
        "--orientation",
        choices=("ancestors", "descendants"),
        default="ancestors",
        help="crawl advisors (ancestors) or students (descendants)",
    )
    fetch.add_argument("--base-url", help="person page endpoint (or POLYPROX_BASE_URL)")
    fetch.add_argument("--cache-dir", help="page cache directory (or POLYPROX_CACHE_DIR)")
    fetch.add_argument("--delay-ms", type=_nonneg_int, default=1000)
    fetch.add_argument("--max-depth", type=_positive_int)
    fetch.add_argument("--timeout", type=float, default=30.0)
    fetch.add_argument("--fixture-dir", help="serve pages from a directory instead of the network")
    fetch.add_argument("--output", "-o")
    fetch.add_argument("--format", choices=("csv", "json"), default="json")
    fetch.set_defaults(func=_cmd_fetch)

    mrg = commands.add_parser("merge", help="merge two or more graphs")
    mrg.add_argument("--input", "-i", action="append", required=True)
    mrg.add_argument("--strict", action="store_true", help="reject edges naming unknown ids")
    mrg.add_argument("--output", "-o")
    mrg.add_argument("--format", choices=("csv", "json"), default="json")
    mrg.set_defaults(func=_cmd_merge)

    val = commands.add_parser("validate", help="load a graph and report whether it is a valid polytree")
    val.add_argument("--input", "-i", required=True)
    val.add_argument("--strict", action="store_true")
    val.set_defaults(func=_cmd_validate)

    cen = commands.add_parser("centrality", help="generalized-mean distance and closeness per node")
    cen.add_argument("--input", "-i", required=True)
    cen.add_argument("--strict", action="store_true")
    cen.add_argument("--h", type=_nonzero_float, default=-1.0, help="mean exponent (default -1, harmonic)")
    cen.add_argument("--direction", choices=("out", "in"), default="out")
    _add_mask_flag(cen)
    cen.add_argument("--output", "-o")
    cen.add_argument("--format", choices=("csv", "json"), default="csv")
    cen.set_defaults(func=_cmd_centrality)

    crs = commands.add_parser("cross", help="shared-ancestry overlap matrix or per-node aggregate")
    crs.add_argument("--input", "-i", required=True)
    crs.add_argument("--strict", action="store_true")
    crs.add_argument("--n", type=_positive_int, default=1, help="generation degree (>= 1)")
    crs.add_argument("--h", type=_nonzero_float, default=1.0, help="aggregation exponent for --closeness")
    crs.add_argument(
        "--orientation",
        choices=("ancestors", "descendants"),
        default="ancestors",
    )
    _add_mask_flag(crs)
    crs.add_argument("--closeness", action="store_true", help="emit per-node scores instead of the matrix")
    crs.add_argument("--output", "-o")
    crs.add_argument("--format", choices=("csv", "json"), default="csv")
    crs.set_defaults(func=_cmd_cross)

    ver = commands.add_parser("verify", help="compare the engine against the brute-force oracle")
    ver.add_argument("--input", "-i", required=True)
    ver.add_argument("--strict", action="store_true")
    _add_mask_flag(ver)
    ver.add_argument("--tolerance", type=float, default=1e-12)
    ver.set_defaults(func=_cmd_verify)

    for sub in (fetch, mrg, val, cen, crs, ver):
        sub.set_defaults(parser=sub)
    return parser


# -- subcommand handlers ---------------------------------------------------


def _cmd_fetch(args) -> int:
    kwargs = {"delay_ms": args.delay_ms, "timeout": args.timeout}
    if args.base_url:
        kwargs["base_url"] = args.base_url
    if args.cache_dir:
        kwargs["cache_dir"] = args.cache_dir
    if args.max_depth:
        kwargs["max_depth"] = args.max_depth
    cfg = acquisition.FetchConfig(**kwargs)
    source = acquisition.DirectorySource(args.fixture_dir) if args.fixture_dir else None
    build = (
        acquisition.build_ancestor_tree
        if args.orientation == "ancestors"
        else acquisition.build_descendant_tree
    )
    graphs = [build(cfg, pid, source=source) for pid in args.pid]
    _write_graph(args, reduce(merge, graphs))
    return 0


def _cmd_merge(args) -> int:
    if len(args.input) < 2:
        args.parser.error("merge needs at least two --input graphs")
    graphs = [load_graph(path, strict=args.strict) for path in args.input]
    _write_graph(args, reduce(merge, graphs))
    return 0


def _cmd_validate(args) -> int:
    g = load_graph(args.input, strict=args.strict)
    print(f"valid polytree: {len(g)} persons, {g.num_edges} edges")
    return 0


def _cmd_centrality(args) -> int:
    g = load_graph(args.input, strict=args.strict)
    if args.targets:
        scores = holder_nobelity(g, load_mask(args.targets), args.h, args.direction)
    else:
        scores = holder_centrality(g, args.h, args.direction)
    _emit(_scores_text(g, scores, args.format), args.output)
    return 0


def _cmd_cross(args) -> int:
    g = load_graph(args.input, strict=args.strict)
    mask = load_mask(args.targets) if args.targets else g.node_ids
    if args.closeness:
        pairs = cross_closeness(g, mask, args.n, args.h, args.orientation)
        _emit(_pairs_text(pairs, args.format), args.output)
    else:
        matrix = cross_distance(g, mask, args.n, args.orientation)
        _emit(_matrix_text(matrix, args.format), args.output)
    return 0


def _relative_match(a: float, b: float, tol: float) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= tol * max(abs(a), abs(b))


def _cmd_verify(args) -> int:
    g = load_graph(args.input, strict=args.strict)
    mask = load_mask(args.targets) if args.targets else None
    tol = args.tolerance
    failures = 0

    ids, dist = oracle.all_pairs_matrix(g)
    index = {pid: k for k, pid in enumerate(ids)}
    bad = 0
    for src in ids:
        engine_row = distances_from(g, src)
        for dst in ids:
            if engine_row[dst] != dist[index[src], index[dst]]:
                bad += 1
    failures += _report("all-pairs distances", bad == 0, f"{len(ids)} sources")

    mask_sets = [None] + ([sorted(set(mask))] if mask else [])
    for h in (-4.0, -1.0, 1.0):
        for direction in ("out", "in"):
            for targets in mask_sets:
                if targets is None:
                    engine = holder_centrality(g, h, direction)
                    label = f"centrality h={h:g} {direction} targets=all"
                else:
                    engine = holder_nobelity(g, targets, h, direction)
                    label = f"centrality h={h:g} {direction} targets={len(targets)}"
                reference = oracle.holder_scores(g, h, direction, mask=targets)
                ok = all(
                    _relative_match(e.mean_distance, r.mean_distance, tol)
                    and _relative_match(e.closeness, r.closeness, tol)
                    for e, r in zip(engine, reference)
                )
                failures += _report(label, ok, f"tol={tol:g}")

    if len(g) <= 30:
        cross_nodes = sorted(set(mask)) if mask else list(g.node_ids)
        for n in (1, 2, 3):
            matrix = cross_distance(g, cross_nodes, n)
            _, reference = oracle.cross_matrix(g, cross_nodes, n)
            ok = all(
                e == r
                for erow, rrow in zip(matrix.values, reference)
                for e, r in zip(erow, rrow)
            )
            failures += _report(f"cross-distance n={n}", ok, "exact")
    else:
        print(f"skip: cross-distance (path-enumeration oracle is limited to 30 nodes, graph has {len(g)})")

    if failures:
        print(f"FAIL: {failures} check(s) disagreed")
        return 1
    print("all checks passed")
    return 0


def _report(label: str, ok: bool, detail: str) -> int:
    print(f"{'ok' if ok else 'MISMATCH'}: {label} ({detail})")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SystemExit as exc:  # parser.error inside a handler
        return int(exc.code or 0)
    except PolyproxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
