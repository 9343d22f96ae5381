"""Persistent on-disk cache for expensive intermediates.

Entries are JSON files addressed by the SHA-256 of their key.  Each file
records the key, the schema version and a checksum of the payload; anything
that fails to validate is treated as a miss.  Writes go through a temporary
file and ``os.replace`` so concurrent readers never observe a partial entry.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ENV_VAR = "JACKFACTOR_CACHE_DIR"


class CacheIOError(OSError):
    pass


def _checksum(payload_text: str) -> str:
    return hashlib.sha256(payload_text.encode()).hexdigest()


class Cache:
    def __init__(self, directory: str | os.PathLike, schema_version: int = SCHEMA_VERSION):
        self.directory = Path(directory)
        self.schema_version = schema_version

    def _full_key(self, key: str) -> str:
        return f"v{self.schema_version}:{key}"

    def path_for(self, key: str) -> Path:
        digest = hashlib.sha256(self._full_key(key).encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: str) -> Any | None:
        path = self.path_for(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise CacheIOError(f"cannot read cache entry {path}: {exc}") from exc
        try:
            entry = json.loads(text)
            payload_text = entry["payload"]
            if not isinstance(payload_text, str):
                raise TypeError("payload is not text")
            if entry.get("schema") != self.schema_version or entry.get("key") != self._full_key(key):
                return None
            if entry.get("checksum") != _checksum(payload_text):
                log.warning("corrupted cache entry %s, ignoring", path)
                return None
            return json.loads(payload_text)
        except (ValueError, KeyError, TypeError):
            log.warning("unreadable cache entry %s, ignoring", path)
            return None

    def put(self, key: str, payload: Any) -> None:
        payload_text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        entry = {
            "schema": self.schema_version,
            "key": self._full_key(key),
            "checksum": _checksum(payload_text),
            "payload": payload_text,
        }
        path = self.path_for(key)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh)
            os.replace(tmp, path)
        except OSError as exc:
            raise CacheIOError(f"cannot write cache entry {path}: {exc}") from exc


_default: Cache | None = None


def configure(directory: str | os.PathLike | None) -> Cache | None:
    """Set (or clear, with ``None``) the process-wide cache."""
    global _default
    _default = Cache(directory) if directory else None
    return _default


def default_cache() -> Cache | None:
    if _default is None and os.environ.get(ENV_VAR):
        configure(os.environ[ENV_VAR])
    return _default


def cache_get(key: str) -> Any | None:
    c = default_cache()
    return c.get(key) if c else None


def cache_put(key: str, payload: Any) -> None:
    c = default_cache()
    if c:
        c.put(key, payload)
