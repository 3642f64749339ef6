"""Load/save polytrees as edge-list CSV or canonical JSON, plus mask files.

Canonical JSON sorts nodes and edges lexicographically by id so that output
is byte-identical across runs. The CSV form is an edge list with header
``parent,child``; names and isolated nodes live in a companion node table
with header ``id,name`` (``<stem>.nodes.csv`` next to the edge file).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .errors import ParseError, SelfLoopError
from .graph import Polytree

EDGE_HEADER = ["parent", "child"]
NODE_HEADER = ["id", "name"]


def default_nodes_path(path: Path | str) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".nodes.csv")


def graph_to_json_text(g: Polytree) -> str:
    doc = {
        "nodes": [{"id": p.id, "name": p.name} for p in g.persons()],
        "edges": [[parent, child] for parent, child in g.edges],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def save_json(g: Polytree, path: Path | str) -> None:
    Path(path).write_text(graph_to_json_text(g), encoding="utf-8")


def load_json(path: Path | str, *, strict: bool = False) -> Polytree:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=str(path), line=exc.lineno) from exc
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise ParseError('expected an object with "nodes" and "edges"', source=str(path))
    persons = []
    for entry in doc["nodes"]:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ParseError(f"bad node entry: {entry!r}", source=str(path))
        persons.append((entry["id"], entry.get("name", "")))
    edges = []
    for entry in doc["edges"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ParseError(f"bad edge entry: {entry!r}", source=str(path))
        edges.append((entry[0], entry[1]))
    return Polytree(persons, edges, strict=strict)


def save_csv(g: Polytree, path: Path | str, nodes_path: Path | str | None = None) -> None:
    path = Path(path)
    if nodes_path is None:
        nodes_path = default_nodes_path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(EDGE_HEADER)
        writer.writerows(g.edges)
    with Path(nodes_path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(NODE_HEADER)
        for person in g.persons():
            writer.writerow([person.id, person.name])


def _read_rows(path: Path, header: list[str], width: int):
    rows: list[tuple[int, list[str]]] = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise ParseError("missing header row", source=str(path)) from None
        if [cell.strip() for cell in first] != header:
            raise ParseError(
                f"expected header {','.join(header)!r}", source=str(path), line=1
            )
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue  # blank line
            if len(row) != width:
                raise ParseError(
                    f"expected {width} columns, got {len(row)}",
                    source=str(path),
                    line=reader.line_num,
                )
            rows.append((reader.line_num, [cell.strip() for cell in row]))
    return rows


def load_csv(
    path: Path | str,
    nodes_path: Path | str | None = None,
    *,
    strict: bool = False,
) -> Polytree:
    """Load an edge-list CSV; reads the companion node table when present."""
    path = Path(path)
    if nodes_path is None:
        candidate = default_nodes_path(path)
        nodes_path = candidate if candidate.exists() else None

    persons: list[tuple[str, str]] = []
    if nodes_path is not None:
        for line, (pid, name) in _read_rows(Path(nodes_path), NODE_HEADER, 2):
            if not pid:
                raise ParseError("empty id", source=str(nodes_path), line=line)
            persons.append((pid, name))

    edges: list[tuple[str, str]] = []
    for line, (parent, child) in _read_rows(path, EDGE_HEADER, 2):
        if not parent or not child:
            raise ParseError("empty id in edge", source=str(path), line=line)
        if parent == child:
            raise SelfLoopError(parent, line=line)
        edges.append((parent, child))
    return Polytree(persons, edges, strict=strict)


def load_graph(path: Path | str, fmt: str | None = None, *, strict: bool = False) -> Polytree:
    """Load a graph, inferring the format from the extension unless given."""
    path = Path(path)
    fmt = fmt or _infer_format(path)
    if fmt == "json":
        return load_json(path, strict=strict)
    if fmt == "csv":
        return load_csv(path, strict=strict)
    raise ParseError(f"unknown graph format {fmt!r}", source=str(path))


def save_graph(g: Polytree, path: Path | str, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or _infer_format(path)
    if fmt == "json":
        save_json(g, path)
    elif fmt == "csv":
        save_csv(g, path)
    else:
        raise ParseError(f"unknown graph format {fmt!r}", source=str(path))


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower().lstrip(".")
    return suffix if suffix in ("csv", "json") else "json"


def load_mask(path: Path | str) -> list[str]:
    """Read a node-id mask file: one id per line, ``#`` starts a comment."""
    ids: list[str] = []
    seen: set[str] = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line not in seen:
            seen.add(line)
            ids.append(line)
    return ids
