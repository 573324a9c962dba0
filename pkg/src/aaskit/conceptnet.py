"""ConceptNet REST client with a mandatory on-disk cache.

Every query is cached under a key derived from (label, relation set,
API version); warm-cache runs perform zero network I/O, and CI runs
strictly offline against committed cache files.  Cache writes are
atomic (write-temp-then-rename) so concurrent readers never observe a
partial file.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import httpx

from .core import Label, normalize
from .errors import CacheMiss, FormatError, ResourceUnavailable, UnusableAnswer

API_ROOT = "https://api.conceptnet.io"
API_VERSION = "5.8"
DEFAULT_RELATIONS = ("Synonym", "IsA", "FormOf", "SimilarTo")
DEFAULT_MIN_WEIGHT = 1.0
PAGE_LIMIT = 1000
MAX_PAGES = 20


@dataclass(frozen=True)
class EdgeRecord:
    """One usable edge: relation, the other endpoint's phrase, weight."""

    relation: str
    other_phrase: str
    weight: float


class _TokenBucket:
    """Client-side rate limiter, default 60 requests per minute.

    Shared across the builder's worker threads, so slot handout is
    locked; the sleep happens outside the lock.
    """

    def __init__(self, rate_per_minute: float = 60.0, clock=time.monotonic, sleep=time.sleep):
        self.interval = 60.0 / rate_per_minute
        self._clock = clock
        self._sleep = sleep
        self._next_at = 0.0
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            now = self._clock()
            wait = max(0.0, self._next_at - now)
            self._next_at = max(now, self._next_at) + self.interval
        if wait > 0:
            self._sleep(wait)


def _slug(label: Label) -> str:
    term = label.normalized.replace(" ", "_")
    return re.sub(r"[^a-z0-9_-]", "", term)


@dataclass
class ConceptNetClient:
    """Term-endpoint client; offline=True forbids all network I/O."""

    cache_dir: str | Path
    offline: bool = False
    relations: tuple[str, ...] = DEFAULT_RELATIONS
    base_url: str = API_ROOT
    rate_per_minute: float = 60.0
    max_retries: int = 3
    transport: httpx.BaseTransport | None = None
    sleep_fn: Callable[[float], None] = time.sleep
    _bucket: _TokenBucket = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.cache_dir = Path(self.cache_dir)
        self._bucket = _TokenBucket(self.rate_per_minute, sleep=self.sleep_fn)

    # -- cache layout --

    def cache_key(self, label: Label) -> str:
        material = json.dumps(
            {"term": _slug(label), "relations": sorted(self.relations), "api": API_VERSION},
            sort_keys=True,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()[:16]

    def cache_path(self, label: Label) -> Path:
        return Path(self.cache_dir) / f"{_slug(label)}.{self.cache_key(label)}.json"

    def _write_cache(self, path: Path, payload: dict) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(f"{path.name}.tmp.{os.getpid()}")
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False, sort_keys=True)
        os.replace(tmp, path)

    # -- network --

    def _get_json(self, client: httpx.Client, url: str, params: dict | None) -> dict:
        delay = 1.0
        for attempt in range(self.max_retries + 1):
            self._bucket.acquire()
            try:
                response = client.get(url, params=params)
            except httpx.HTTPError as exc:
                raise ResourceUnavailable(f"ConceptNet request failed: {exc}") from exc
            if response.status_code == 429:
                if attempt == self.max_retries:
                    break
                self.sleep_fn(delay)
                delay *= 2
                continue
            if response.status_code != 200:
                raise ResourceUnavailable(
                    f"ConceptNet returned HTTP {response.status_code} for {url}"
                )
            return response.json()
        raise ResourceUnavailable(f"ConceptNet kept returning HTTP 429 for {url}")

    def _fetch_raw(self, label: Label) -> dict:
        term = f"/c/en/{_slug(label)}"
        edges: list[dict] = []
        url = f"{self.base_url}{term}"
        params: dict | None = {"limit": PAGE_LIMIT}
        with httpx.Client(transport=self.transport, timeout=30.0) as client:
            for _ in range(MAX_PAGES):
                page = self._get_json(client, url, params)
                edges.extend(page.get("edges", []))
                next_page = page.get("view", {}).get("nextPage")
                if not next_page:
                    break
                url = f"{self.base_url}{next_page}"
                params = None
        return {
            "term": term,
            "relations": sorted(self.relations),
            "api_version": API_VERSION,
            "edges": edges,
        }

    # -- public API --

    def fetch_edges(self, label: Label) -> list[EdgeRecord]:
        """Edges for the label, from cache when warm, else from the API."""
        path = self.cache_path(label)
        if path.is_file():
            with open(path, encoding="utf-8") as f:
                payload = json.load(f)
        elif self.offline:
            raise CacheMiss(label.normalized)
        else:
            payload = self._fetch_raw(label)
            self._write_cache(path, payload)
        return _parse_edges(payload, label, self.relations)


def _endpoint(node: dict) -> tuple[str, str]:
    term = node.get("term", "")
    language = node.get("language") or (term.split("/")[2] if term.count("/") >= 2 else "")
    return term, language


def _parse_edges(payload: dict, label: Label, relations: tuple[str, ...]) -> list[EdgeRecord]:
    if "edges" not in payload:
        raise FormatError(f"cached ConceptNet payload for {label.normalized!r} has no edges field")
    term = f"/c/en/{_slug(label)}"
    allowed = set(relations)
    records = []
    for edge in payload["edges"]:
        rel = edge.get("rel", {}).get("label")
        if rel not in allowed:
            continue
        start, end = edge.get("start", {}), edge.get("end", {})
        start_term, start_lang = _endpoint(start)
        end_term, end_lang = _endpoint(end)
        if start_lang != "en" or end_lang != "en":
            continue
        if start_term == term or start_term.startswith(term + "/"):
            other = end
        elif end_term == term or end_term.startswith(term + "/"):
            other = start
        else:
            continue
        try:
            phrase = normalize(other.get("label", ""))
        except UnusableAnswer:
            continue
        if phrase == label.normalized:
            continue
        weight = float(edge.get("weight", 0.0))
        if weight < 0:
            continue
        records.append(EdgeRecord(relation=rel, other_phrase=phrase, weight=weight))
    return records


def conceptnet_candidates(
    edges: list[EdgeRecord], min_weight: float = DEFAULT_MIN_WEIGHT
) -> list[str]:
    """Phrases with weight >= min_weight, by weight descending then phrase."""
    best: dict[str, float] = {}
    for e in edges:
        if e.weight > best.get(e.other_phrase, -1.0):
            best[e.other_phrase] = e.weight
    kept = [(w, p) for p, w in best.items() if w >= min_weight]
    kept.sort(key=lambda wp: (-wp[0], wp[1]))
    return [p for _, p in kept]
