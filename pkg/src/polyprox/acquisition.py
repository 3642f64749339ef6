"""Build polytrees from an academic-genealogy website.

A person page is fetched by pid, parsed into a PersonRecord, and the
parent/child links are followed breadth-first to assemble an ancestor or
descendant tree. Raw pages are cached on disk (``<cache_dir>/<pid>.html``)
together with the parsed record (``<cache_dir>/<pid>.json``); a cache hit
never touches the network, so interrupted crawls are cheap to resume.

Page adapter contract (kept deliberately small so site drift breaks only
this parser; recorded fixtures in tests/fixtures/acadtree pin it down):

* the person's name is the text of the first ``<h1>`` element, falling back
  to the ``<title>`` text before a `` - `` separator;
* advisor links are ``<a href="...pid=<id>...">`` anchors inside any element
  carrying ``data-relation="parents"``; student links likewise inside
  ``data-relation="children"``. Link order is preserved.

Base URL and cache directory can be overridden with the POLYPROX_BASE_URL
and POLYPROX_CACHE_DIR environment variables or the equivalent CLI flags.
"""

from __future__ import annotations

import json
import logging
import os
import time
import urllib.error
import urllib.request
from collections import deque
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from typing import Callable, Protocol
from urllib.parse import parse_qs, quote, urlparse

from .errors import NetworkError, NotFoundError, ParseError, ValidationError
from .graph import Person, Polytree

logger = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://academictree.org/econ/tree.php"
BASE_URL_ENV = "POLYPROX_BASE_URL"
CACHE_DIR_ENV = "POLYPROX_CACHE_DIR"
USER_AGENT = "polyprox/0.1 (genealogy research tool)"

PARENTS = "parents"
CHILDREN = "children"


def _default_base_url() -> str:
    return os.environ.get(BASE_URL_ENV, DEFAULT_BASE_URL)


def _default_cache_dir() -> Path:
    override = os.environ.get(CACHE_DIR_ENV)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "polyprox"


@dataclass
class FetchConfig:
    base_url: str = field(default_factory=_default_base_url)
    cache_dir: Path = field(default_factory=_default_cache_dir)
    delay_ms: int = 1000
    max_depth: int | None = None
    timeout: float = 30.0

    def __post_init__(self) -> None:
        self.cache_dir = Path(self.cache_dir)
        if self.delay_ms < 0:
            raise ValueError("delay_ms must be >= 0")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 when set")


@dataclass(frozen=True)
class PersonRecord:
    id: str
    name: str
    parent_ids: tuple[str, ...] = ()
    child_ids: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "parent_ids": list(self.parent_ids),
            "child_ids": list(self.child_ids),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PersonRecord":
        return cls(
            id=doc["id"],
            name=doc.get("name", ""),
            parent_ids=tuple(doc.get("parent_ids", ())),
            child_ids=tuple(doc.get("child_ids", ())),
        )


class RateLimiter:
    """Enforces a minimum spacing between consecutive requests.

    The clock and sleep functions are injectable so politeness is testable
    without real waiting.
    """

    def __init__(
        self,
        delay_ms: int,
        *,
        monotonic: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.delay_ms = delay_ms
        self._monotonic = monotonic
        self._sleep = sleep
        self._last: float | None = None

    def wait(self) -> None:
        if self.delay_ms <= 0:
            self._last = self._monotonic()
            return
        now = self._monotonic()
        if self._last is not None:
            remaining = self._last + self.delay_ms / 1000.0 - now
            if remaining > 0:
                self._sleep(remaining)
                now = self._monotonic()
        self._last = now


class PageSource(Protocol):
    def get(self, pid: str) -> str: ...


def _urllib_transport(url: str, timeout: float) -> tuple[int, str]:
    request = urllib.request.Request(url, headers={"User-Agent": USER_AGENT})
    try:
        with urllib.request.urlopen(request, timeout=timeout) as response:
            charset = response.headers.get_content_charset() or "utf-8"
            return response.status, response.read().decode(charset, "replace")
    except urllib.error.HTTPError as exc:
        return exc.code, ""
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkError(f"request to {url} failed: {exc}") from exc


class HttpSource:
    """Fetches person pages over HTTP, one rate-limited GET per pid."""

    def __init__(
        self,
        base_url: str,
        *,
        timeout: float = 30.0,
        limiter: RateLimiter | None = None,
        transport: Callable[[str, float], tuple[int, str]] = _urllib_transport,
    ):
        self.base_url = base_url
        self.timeout = timeout
        self.limiter = limiter
        self._transport = transport

    def url_for(self, pid: str) -> str:
        return f"{self.base_url}?pid={quote(pid, safe='')}"

    def get(self, pid: str) -> str:
        if self.limiter is not None:
            self.limiter.wait()
        url = self.url_for(pid)
        status, text = self._transport(url, self.timeout)
        if status == 404:
            raise NotFoundError(pid)
        if status >= 400:
            raise NetworkError(f"HTTP {status} for {url}")
        return text


class DirectorySource:
    """Serves pages from a directory of ``<pid>.html`` files; no network."""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    def get(self, pid: str) -> str:
        path = self.root / f"{_safe_filename(pid)}.html"
        if not path.exists():
            raise NotFoundError(pid)
        return path.read_text(encoding="utf-8")


def _safe_filename(pid: str) -> str:
    return quote(pid, safe="")


class _PersonPageParser(HTMLParser):
    def __init__(self) -> None:
        super().__init__()
        self.name_parts: list[str] = []
        self.title_parts: list[str] = []
        self.links: dict[str, list[str]] = {PARENTS: [], CHILDREN: []}
        self._stack: list[str] = []
        self._relations: list[tuple[int, str]] = []  # (stack depth, relation)
        self._in_h1 = False
        self._h1_done = False
        self._in_title = False

    def handle_starttag(self, tag, attrs):
        self._stack.append(tag)
        attrs = dict(attrs)
        relation = attrs.get("data-relation")
        if relation in self.links:
            self._relations.append((len(self._stack), relation))
        if tag == "h1" and not self._h1_done:
            self._in_h1 = True
        elif tag == "title":
            self._in_title = True
        elif tag == "a" and self._relations:
            pid = _pid_from_href(attrs.get("href", ""))
            if pid:
                self.links[self._relations[-1][1]].append(pid)

    def handle_endtag(self, tag):
        if tag == "h1" and self._in_h1:
            self._in_h1 = False
            self._h1_done = True
        elif tag == "title":
            self._in_title = False
        if tag not in self._stack:
            return  # stray close tag
        # unwind the stack past unclosed inner tags, as browsers do
        while self._stack:
            top = self._stack.pop()
            while self._relations and self._relations[-1][0] > len(self._stack):
                self._relations.pop()
            if top == tag:
                break

    def handle_data(self, data):
        if self._in_h1:
            self.name_parts.append(data)
        elif self._in_title:
            self.title_parts.append(data)


def _pid_from_href(href: str) -> str | None:
    query = parse_qs(urlparse(href).query)
    values = query.get("pid")
    return values[0] if values else None


def parse_person_page(pid: str, html: str) -> PersonRecord:
    """Parse one person page into a PersonRecord (see module docstring)."""
    if not html.strip():
        raise ParseError("empty page", source=pid)
    parser = _PersonPageParser()
    parser.feed(html)
    parser.close()
    name = "".join(parser.name_parts).strip()
    if not name and parser.title_parts:
        name = "".join(parser.title_parts).split(" - ")[0].strip()
    cleaned = {}
    for relation in (PARENTS, CHILDREN):
        ordered: list[str] = []
        for linked in parser.links[relation]:
            if linked == pid:
                logger.warning("dropping self-reference on page %r", pid)
                continue
            if linked not in ordered:
                ordered.append(linked)
        cleaned[relation] = tuple(ordered)
    return PersonRecord(pid, name, cleaned[PARENTS], cleaned[CHILDREN])


def default_source(cfg: FetchConfig) -> HttpSource:
    return HttpSource(
        cfg.base_url,
        timeout=cfg.timeout,
        limiter=RateLimiter(cfg.delay_ms),
    )


def fetch_person(cfg: FetchConfig, pid: str, source: PageSource | None = None) -> PersonRecord:
    """Fetch and parse one person, going through the on-disk cache.

    Order of preference: cached parsed record, cached raw page, then the
    page source (network by default). Only the last one counts as a fetch.
    """
    if not pid:
        raise ValueError("pid must be non-empty")
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    stem = _safe_filename(pid)
    record_path = cfg.cache_dir / f"{stem}.json"
    page_path = cfg.cache_dir / f"{stem}.html"

    if record_path.exists():
        try:
            return PersonRecord.from_dict(json.loads(record_path.read_text(encoding="utf-8")))
        except (json.JSONDecodeError, KeyError):
            logger.warning("corrupt cached record for %r; reparsing", pid)

    if page_path.exists():
        record = parse_person_page(pid, page_path.read_text(encoding="utf-8"))
    else:
        if source is None:
            source = default_source(cfg)
        html = source.get(pid)
        page_path.write_text(html, encoding="utf-8")
        record = parse_person_page(pid, html)

    record_path.write_text(
        json.dumps(record.to_dict(), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return record


def build_ancestor_tree(cfg: FetchConfig, pid: str, source: PageSource | None = None) -> Polytree:
    """Closure over advisor links from ``pid`` up to ``cfg.max_depth``."""
    return _build_tree(cfg, pid, source, PARENTS)


def build_descendant_tree(cfg: FetchConfig, pid: str, source: PageSource | None = None) -> Polytree:
    """Closure over student links from ``pid`` down to ``cfg.max_depth``."""
    return _build_tree(cfg, pid, source, CHILDREN)


def _build_tree(
    cfg: FetchConfig, root_pid: str, source: PageSource | None, relation: str
) -> Polytree:
    if source is None:
        source = default_source(cfg)
    root = fetch_person(cfg, root_pid, source)  # root failures propagate

    names: dict[str, str] = {root.id: root.name}
    records: dict[str, PersonRecord] = {root.id: root}
    edges: list[tuple[str, str]] = []
    edge_set: set[tuple[str, str]] = set()
    forward: dict[str, list[str]] = {}  # parent -> children, for cycle checks

    queue = deque([(root.id, 0)])
    while queue:
        pid, depth = queue.popleft()
        if cfg.max_depth is not None and depth >= cfg.max_depth:
            continue
        record = records.get(pid)
        if record is None:
            continue  # failed leaf
        linked = record.parent_ids if relation == PARENTS else record.child_ids
        for other in linked:
            edge = (other, pid) if relation == PARENTS else (pid, other)
            if edge in edge_set:
                continue
            if _reaches(forward, edge[1], edge[0]):
                logger.warning(
                    "skipping edge %s -> %s: would close a cycle in source data",
                    edge[0],
                    edge[1],
                )
                continue
            edge_set.add(edge)
            edges.append(edge)
            forward.setdefault(edge[0], []).append(edge[1])
            if other not in names:
                names[other] = ""
                try:
                    fetched = fetch_person(cfg, other, source)
                except (NotFoundError, NetworkError, ParseError) as exc:
                    logger.warning("keeping %r as a leaf, fetch failed: %s", other, exc)
                else:
                    names[other] = fetched.name
                    records[other] = fetched
                    queue.append((other, depth + 1))

    try:
        return Polytree(names.items(), edges)
    except ValidationError as exc:  # the incremental check should prevent this
        raise ParseError(f"source data produced an invalid graph: {exc}", source=root_pid)


def _reaches(forward: dict[str, list[str]], start: str, goal: str) -> bool:
    if start == goal:
        return True
    seen = {start}
    stack = [start]
    while stack:
        for nxt in forward.get(stack.pop(), ()):
            if nxt == goal:
                return True
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False
