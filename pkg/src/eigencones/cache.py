"""JSON-lines cache for structure constants and character tables.

One file per keyed object, one record per line.  Records carry the cache
version; stale-version lines are rejected at load time, so deleting a
cache directory can never change a result, only a runtime.
"""

from __future__ import annotations

import json
from pathlib import Path

CACHE_VERSION = 1

# names the Schubert basis convention the constants were computed in
BASIS_TAG = "point-at-identity"


class JsonlStore:
    def __init__(self, directory):
        self.directory = Path(directory)

    def _path(self, name):
        return self.directory / f"{name}.jsonl"

    @staticmethod
    def _schubert_name(kind, rank, excluded):
        return f"schubert-{kind}{rank}-P{excluded}-{BASIS_TAG}"

    @staticmethod
    def _character_name(kind, rank, coords):
        return f"character-{kind}{rank}-" + "-".join(str(c) for c in coords)

    def load_structure_constants(self, kind, rank, excluded):
        """(u word, v word) -> {w word: int}, or None when absent/stale."""
        path = self._path(self._schubert_name(kind, rank, excluded))
        if not path.exists():
            return None
        table = {}
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get("cache_version") != CACHE_VERSION:
                return None
            table[(rec["u"], rec["v"])] = {
                w: int(c) for w, c in rec["coeffs"].items()
            }
        return table

    def save_structure_constants(self, kind, rank, excluded, table):
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(self._schubert_name(kind, rank, excluded))
        lines = []
        for (u, v) in sorted(table):
            lines.append(json.dumps(
                {
                    "cache_version": CACHE_VERSION,
                    "u": u,
                    "v": v,
                    "coeffs": dict(sorted(table[(u, v)].items())),
                },
                sort_keys=True,
            ))
        path.write_text("\n".join(lines) + "\n")

    def load_character_table(self, kind, rank, coords):
        """Dominant eps vector (as fraction strings) -> multiplicity."""
        path = self._path(self._character_name(kind, rank, coords))
        if not path.exists():
            return None
        out = {}
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get("cache_version") != CACHE_VERSION:
                return None
            out[tuple(rec["weight"])] = int(rec["multiplicity"])
        return out

    def save_character_table(self, kind, rank, coords, mult_by_eps_strings):
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(self._character_name(kind, rank, coords))
        lines = [
            json.dumps(
                {
                    "cache_version": CACHE_VERSION,
                    "weight": list(weight),
                    "multiplicity": m,
                },
                sort_keys=True,
            )
            for weight, m in sorted(mult_by_eps_strings.items())
        ]
        path.write_text("\n".join(lines) + "\n")
