"""LMFDB HTTP client with an offline-first cache.

The engine never depends on the network: every test runs against committed
fixture files, and this client exists to refresh them.  Fetched payloads are
normalized into the fixture schema and cached atomically under
`cache/<label>.json`; with a populated cache all operations work offline.

Environment:
    SUPERCUSP_CACHE_DIR   cache root (default ./cache)
    SUPERCUSP_OFFLINE     set to 1 to forbid network access
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import CacheMiss, FetchError, NotFound, SchemaError, WriteError
from .newform import NewformData, fixture_from_dict, fixture_to_dict

SCHEMA_VERSION = 1
DEFAULT_BASE_URL = "https://www.lmfdb.org/api"


@dataclass
class CacheEntry:
    label: str
    fetched_at: float
    schema_version: int
    payload: dict

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "fetched_at": self.fetched_at,
            "schema_version": self.schema_version,
            "payload": self.payload,
        }


def _default_transport(url: str, timeout: float) -> tuple[int, bytes]:
    import requests

    resp = requests.get(url, timeout=timeout)
    return resp.status_code, resp.content


class LmfdbClient:
    """Fetch newform data and persist it as fixtures.

    `transport` is a callable (url, timeout) -> (status_code, body_bytes);
    tests inject a fake one.  At most one request is in flight per label, and
    consecutive requests are spaced by `min_interval` seconds.
    """

    def __init__(
        self,
        cache_dir: str | Path | None = None,
        base_url: str = DEFAULT_BASE_URL,
        offline: bool | None = None,
        transport=None,
        max_retries: int = 3,
        backoff: float = 0.5,
        min_interval: float = 0.5,
        timeout: float = 30.0,
    ):
        env_dir = os.environ.get("SUPERCUSP_CACHE_DIR")
        self.cache_dir = Path(cache_dir or env_dir or "cache")
        self.base_url = base_url.rstrip("/")
        if offline is None:
            offline = os.environ.get("SUPERCUSP_OFFLINE", "") not in ("", "0")
        self.offline = offline
        self.transport = transport or _default_transport
        self.max_retries = max_retries
        self.backoff = backoff
        self.min_interval = min_interval
        self.timeout = timeout
        self._label_locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._last_request = 0.0

    # -- cache layer -------------------------------------------------------

    def _cache_path(self, label: str) -> Path:
        return self.cache_dir / f"{label}.json"

    def cache_read(self, label: str) -> CacheEntry | None:
        path = self._cache_path(label)
        if not path.exists():
            return None
        raw = json.loads(path.read_text())
        return CacheEntry(
            label=raw["label"],
            fetched_at=raw["fetched_at"],
            schema_version=raw["schema_version"],
            payload=raw["payload"],
        )

    def cache_write(self, entry: CacheEntry) -> None:
        # Validate before persisting: a cache entry must parse as a fixture.
        fixture_from_dict(entry.payload)
        if entry.payload.get("label") != entry.label:
            raise SchemaError(f"payload label {entry.payload.get('label')!r} != {entry.label!r}")
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        _atomic_write_json(self._cache_path(label=entry.label), entry.to_json())

    # -- network layer -----------------------------------------------------

    def _lock_for(self, label: str) -> threading.Lock:
        with self._locks_guard:
            return self._label_locks.setdefault(label, threading.Lock())

    def _throttled_get(self, url: str) -> tuple[int, bytes]:
        wait = self._last_request + self.min_interval - time.monotonic()
        if wait > 0:
            time.sleep(wait)
        self._last_request = time.monotonic()
        return self.transport(url, self.timeout)

    def _get_json(self, url: str) -> dict:
        if self.offline:
            raise FetchError("offline mode: network access disabled")
        last_error: Exception | None = None
        for attempt in range(self.max_retries):
            try:
                status, body = self._throttled_get(url)
            except Exception as exc:  # transport-level failure
                last_error = exc
                time.sleep(self.backoff * 2**attempt)
                continue
            if status == 404:
                raise NotFound(url)
            if status != 200:
                last_error = FetchError(f"HTTP {status} from {url}")
                time.sleep(self.backoff * 2**attempt)
                continue
            try:
                return json.loads(body.decode())
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise SchemaError(f"unparseable payload from {url}: {exc}") from exc
        raise FetchError(f"giving up on {url} after {self.max_retries} attempts: {last_error}")

    # -- public operations ---------------------------------------------------

    def fetch_newform(self, label: str) -> NewformData:
        """Return the newform for an LMFDB label, cache first."""
        with self._lock_for(label):
            entry = self.cache_read(label)
            if entry is not None:
                return fixture_from_dict(entry.payload)
            url = f"{self.base_url}/mf_newforms/?label={label}&_format=json"
            doc = self._get_json(url)
            payload = _normalize_newform_payload(label, doc)
            entry = CacheEntry(label, time.time(), SCHEMA_VERSION, payload)
            self.cache_write(entry)
            return fixture_from_dict(payload)

    def fetch_coefficients(self, label: str, up_to: int) -> dict:
        """Coefficients a_n for n <= up_to, merged into the cached fixture.

        Returns the (possibly partial) map; the effective bound is recorded in
        the cache entry's coeff_bound.
        """
        form = self.fetch_newform(label)
        if form.coeff_bound >= up_to:
            return {n: a for n, a in form.coefficients.items() if n <= up_to}
        with self._lock_for(label):
            url = f"{self.base_url}/mf_hecke_nf/?label={label}&_format=json"
            doc = self._get_json(url)
            entry = self.cache_read(label)
            payload = dict(entry.payload)
            payload["an"] = _normalize_an(doc, payload)
            payload["coeff_bound"] = max(up_to, payload.get("coeff_bound", 0))
            new_entry = CacheEntry(label, time.time(), SCHEMA_VERSION, payload)
            self.cache_write(new_entry)
            merged = fixture_from_dict(payload)
        return {n: a for n, a in merged.coefficients.items() if n <= up_to}

    def export_fixture(self, label: str, path: str | Path) -> None:
        """Write the cached fixture to `path` (atomic replace)."""
        entry = self.cache_read(label)
        if entry is None:
            raise CacheMiss(f"no cache entry for {label}")
        form = fixture_from_dict(entry.payload)  # validates
        try:
            _atomic_write_json(Path(path), fixture_to_dict(form))
        except OSError as exc:
            raise WriteError(str(exc)) from exc


def _atomic_write_json(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise WriteError(str(exc)) from exc


def _first_row(doc: dict) -> dict:
    rows = doc.get("data")
    if not isinstance(rows, list) or not rows:
        raise NotFound("label not present upstream")
    if not isinstance(rows[0], dict):
        raise SchemaError("upstream row is not an object")
    return rows[0]


def _normalize_newform_payload(label: str, doc: dict) -> dict:
    """Map an upstream mf_newforms row into the fixture schema.

    Only the fields the schema names are mapped; anything unrecognized is an
    error rather than a guess.
    """
    row = _first_row(doc)
    try:
        level = int(row["level"])
        weight = int(row["weight"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"row lacks level/weight: {exc}") from exc
    conrey = row.get("char_conrey")
    if conrey is None:
        indexes = row.get("conrey_indexes") or row.get("char_labels")
        if isinstance(indexes, list) and indexes:
            conrey = indexes[0]
    if not isinstance(conrey, int):
        raise SchemaError("cannot locate a Conrey index in the row")
    degree = int(row.get("dim", 1))
    disc = None
    if degree == 2:
        poly = row.get("field_poly")
        if not (isinstance(poly, list) and len(poly) == 3):
            raise SchemaError("degree-2 form without a quadratic field_poly")
        c0, c1, c2 = (int(c) for c in poly)
        if c2 != 1:
            raise SchemaError("field_poly is not monic")
        from .exact import squarefree_part

        disc = squarefree_part(c1 * c1 - 4 * c0)
    elif degree != 1:
        raise SchemaError(f"Hecke field degree {degree} unsupported; store raw data manually")
    payload = {
        "label": label,
        "level": level,
        "weight": weight,
        "char": {"modulus": level, "conrey": conrey},
        "hecke_field": {"degree": degree, "disc": disc if disc is not None else 0},
        "an": row.get("an_normalized") or [{"n": 1, "a": ["1"]}],
        "coeff_bound": int(row.get("coeff_bound", 1)),
        "inner_twists": row.get("inner_twists_normalized", []),
        "F": row.get("F_normalized", {"degree": 1, "disc": 0}),
        "is_cm": bool(row.get("is_cm", False)),
        "is_p_minimal": row.get("is_p_minimal", {}),
    }
    return payload


def _normalize_an(doc: dict, payload: dict) -> list:
    """Map an upstream coefficient row into fixture `an` entries.

    Expects coordinates already expressed in the (1, sqrt d) basis as
    "num/den" strings; other layouts raise SchemaError.
    """
    row = _first_row(doc)
    an = row.get("an")
    if not isinstance(an, list):
        raise SchemaError("coefficient row lacks an")
    out = []
    for i, item in enumerate(an):
        if isinstance(item, dict) and "n" in item and "a" in item:
            out.append({"n": int(item["n"]), "a": [str(x) for x in item["a"]]})
        elif isinstance(item, list):
            out.append({"n": i + 1, "a": [str(x) for x in item]})
        else:
            raise SchemaError(f"unrecognized coefficient entry at index {i}")
    return out
