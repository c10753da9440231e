"""
Result Store
============

Local JSON store for enumeration results. A stored census is reused by
later runs with ``--store`` instead of being recomputed; strata documents
are kept for inspection.

Documents live in one directory per kind under the data root:

    data/regular/g2_n0.json
    data/stable/g2_n0.json
    data/strata/<digest>.json
"""

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger

from .errors import InputFormatError

KINDS = ("regular", "stable", "strata")


@dataclass
class StoredResult:
    """A persisted enumeration result."""
    kind: str
    genus: int
    leaves: int
    count: int
    graphs: List[Dict[str, Any]]
    created_at: str
    extra: Optional[Dict[str, Any]] = None

    def to_document(self) -> Dict[str, Any]:
        doc = {
            "kind": self.kind,
            "genus": self.genus,
            "leaves": self.leaves,
            "count": self.count,
            "graphs": self.graphs,
            "created_at": self.created_at,
        }
        if self.extra:
            doc["extra"] = self.extra
        return doc


class ResultStore:
    """
    File-backed index of enumeration results.

    The store only writes below ``root``; it never prints, so artifacts on
    stdout are unaffected by whether it is enabled.
    """

    def __init__(self, root: Path = Path("data")):
        """
        Initialize the store.

        Args:
            root: Data directory; per-kind subdirectories are created on demand
        """
        self.root = Path(root)

    def _path(self, kind: str, name: str) -> Path:
        if kind not in KINDS:
            raise ValueError(f"unknown result kind {kind!r}; expected one of {KINDS}")
        return self.root / kind / f"{name}.json"

    @staticmethod
    def census_name(genus: int, leaves: int) -> str:
        return f"g{genus}_n{leaves}"

    def save(self, name: str, result: StoredResult) -> Path:
        """
        Write a result document, replacing any previous one under the same name.

        Returns:
            Path of the written document
        """
        path = self._path(result.kind, name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result.to_document(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Stored {result.count} {result.kind} graph(s) in {path}")
        return path

    def save_census(self, kind: str, genus: int, leaves: int, graphs: List[Dict[str, Any]]) -> Path:
        result = StoredResult(
            kind=kind,
            genus=genus,
            leaves=leaves,
            count=len(graphs),
            graphs=graphs,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        return self.save(self.census_name(genus, leaves), result)

    def save_strata(self, name: str, genus: int, leaves: int, representatives: List[Dict[str, Any]],
                    hasse: List[List[int]]) -> Path:
        """Persist the strata of one base under the digest of its canonical key."""
        result = StoredResult(
            kind="strata",
            genus=genus,
            leaves=leaves,
            count=len(representatives),
            graphs=representatives,
            created_at=datetime.now(timezone.utc).isoformat(),
            extra={"hasse": hasse},
        )
        return self.save(name, result)

    def get(self, kind: str, name: str) -> Optional[Dict[str, Any]]:
        """
        Fetch a stored document.

        Returns:
            The decoded document, or None when nothing is stored under that name

        Raises:
            InputFormatError: the stored file is not valid JSON
        """
        path = self._path(kind, name)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            logger.error(f"Corrupt result document {path}: {exc}")
            raise InputFormatError(f"stored result {path} is not valid JSON")
