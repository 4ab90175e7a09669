"""Optional on-disk character cache, enabled by ``WEYLFORGE_CACHE_DIR``.

One JSON file per (system, p, kind, weight).  The file name is the SHA-256
of the key; the header carries the schema and engine versions and files with
any other versions are ignored, never migrated.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

SCHEMA_VERSION = 1
ENGINE_VERSION = "0.1.0"
ENV_VAR = "WEYLFORGE_CACHE_DIR"


class DiskCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @staticmethod
    def _key(system: str, p: int, kind: str, weight) -> dict:
        return {"system": system, "p": int(p), "kind": kind, "weight": [int(x) for x in weight]}

    def path_for(self, system: str, p: int, kind: str, weight) -> Path:
        blob = json.dumps(self._key(system, p, kind, weight), sort_keys=True).encode()
        return self.root / f"{hashlib.sha256(blob).hexdigest()}.json"

    def get(self, system: str, p: int, kind: str, weight):
        path = self.path_for(system, p, kind, weight)
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if doc.get("schema_version") != SCHEMA_VERSION or doc.get("engine_version") != ENGINE_VERSION:
            return None
        if doc.get("key") != self._key(system, p, kind, weight):
            return None
        return doc.get("payload")

    def put(self, system: str, p: int, kind: str, weight, payload) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(system, p, kind, weight)
        doc = {
            "schema_version": SCHEMA_VERSION,
            "engine_version": ENGINE_VERSION,
            "key": self._key(system, p, kind, weight),
            "payload": payload,
        }
        # write-then-rename keeps concurrent readers from seeing partial files
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)


def default_cache() -> DiskCache | None:
    root = os.environ.get(ENV_VAR)
    return DiskCache(root) if root else None
