"""File-backed workspace persistence.

One directory per workspace holding the uploaded datasets as plain files plus
a metadata document.  Writes go through a temp file and an atomic rename, so
a failed upload never clobbers the previous version.  Uploads are validated
with the dataset parsers before anything touches disk.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import tempfile
import threading
import uuid
from pathlib import Path

from .. import ingest
from ..classify import BaselineModel, load_model, save_model
from ..errors import CurriAlignError

SCHEMA_VERSION = 1

DATASET_FILES = {
    "courses": "courses.jsonl",
    "kds": "kds.jsonl",
    "roles": "roles.csv",
    "categories": "categories.csv",
    "annotations": "annotations.csv",
    "demand": "demand.jsonl",
    "curriculum": "curriculum.json",
    "training": "training.jsonl",
    "topics": "topics.jsonl",
}

_PARSERS = {
    "courses": ingest.parse_courses,
    "kds": ingest.parse_kds,
    "roles": ingest.parse_role_table,
    "categories": ingest.parse_role_table,
    "annotations": ingest.parse_annotations,
    "demand": ingest.parse_demand,
    "curriculum": ingest.parse_curriculum,
    "training": ingest.parse_labeled_texts,
    "topics": ingest.parse_classified_topics,
}


class UnknownWorkspaceError(CurriAlignError):
    def __init__(self, workspace_id: str):
        super().__init__(f"no workspace {workspace_id!r}")
        self.workspace_id = workspace_id


class UnknownDatasetError(CurriAlignError):
    def __init__(self, kind: str):
        super().__init__(f"no dataset of kind {kind!r}")
        self.kind = kind


def _utcnow() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _atomic_write(path: Path, content: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


class WorkspaceStore:
    """Directory-of-workspaces with single-writer discipline per workspace."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.RLock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, workspace_id: str) -> threading.RLock:
        with self._locks_guard:
            return self._locks.setdefault(workspace_id, threading.RLock())

    def _dir(self, workspace_id: str, must_exist: bool = True) -> Path:
        path = self.root / workspace_id
        if must_exist and not (path / "meta.json").exists():
            raise UnknownWorkspaceError(workspace_id)
        return path

    # --- workspace lifecycle ---------------------------------------------

    def create(self, workspace_id: str | None = None) -> dict:
        workspace_id = workspace_id or uuid.uuid4().hex[:12]
        if not workspace_id.replace("-", "").replace("_", "").isalnum():
            raise ValueError(f"workspace id must be filesystem-safe, got {workspace_id!r}")
        path = self.root / workspace_id
        with self._lock(workspace_id):
            if (path / "meta.json").exists():
                raise ValueError(f"workspace {workspace_id!r} already exists")
            (path / "datasets").mkdir(parents=True, exist_ok=True)
            meta = {
                "id": workspace_id,
                "created": _utcnow(),
                "modified": _utcnow(),
                "schema_version": SCHEMA_VERSION,
            }
            _atomic_write(path / "meta.json", json.dumps(meta, indent=2) + "\n")
        return meta

    def meta(self, workspace_id: str) -> dict:
        path = self._dir(workspace_id) / "meta.json"
        return json.loads(path.read_text(encoding="utf-8"))

    def list_ids(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if (p / "meta.json").exists())

    def _touch(self, workspace_id: str) -> None:
        path = self._dir(workspace_id) / "meta.json"
        meta = json.loads(path.read_text(encoding="utf-8"))
        meta["modified"] = _utcnow()
        _atomic_write(path, json.dumps(meta, indent=2) + "\n")

    # --- datasets -----------------------------------------------------------

    def put_dataset(self, workspace_id: str, kind: str, content: str):
        if kind not in DATASET_FILES:
            raise UnknownDatasetError(kind)
        parsed = _PARSERS[kind](content)  # validation happens before any write
        with self._lock(workspace_id):
            directory = self._dir(workspace_id) / "datasets"
            _atomic_write(directory / DATASET_FILES[kind], content)
            self._touch(workspace_id)
        return parsed

    def dataset_text(self, workspace_id: str, kind: str) -> str:
        if kind not in DATASET_FILES:
            raise UnknownDatasetError(kind)
        path = self._dir(workspace_id) / "datasets" / DATASET_FILES[kind]
        if not path.exists():
            raise UnknownDatasetError(kind)
        return path.read_text(encoding="utf-8")

    def has_dataset(self, workspace_id: str, kind: str) -> bool:
        if kind not in DATASET_FILES:
            return False
        return (self._dir(workspace_id) / "datasets" / DATASET_FILES[kind]).exists()

    def load_dataset(self, workspace_id: str, kind: str):
        return _PARSERS[kind](self.dataset_text(workspace_id, kind))

    def dataset_kinds(self, workspace_id: str) -> list[str]:
        return sorted(k for k in DATASET_FILES if self.has_dataset(workspace_id, k))

    # --- baseline model -----------------------------------------------------

    def save_baseline(self, workspace_id: str, model: BaselineModel) -> None:
        with self._lock(workspace_id):
            save_model(model, self._dir(workspace_id) / "baseline.json")
            self._touch(workspace_id)

    def load_baseline(self, workspace_id: str) -> BaselineModel | None:
        path = self._dir(workspace_id) / "baseline.json"
        if not path.exists():
            return None
        return load_model(path)
