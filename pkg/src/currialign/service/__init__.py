"""Long-running HTTP facade with a file-backed workspace store."""

from .app import DEFAULT_BIND, create_app
from .store import SCHEMA_VERSION, WorkspaceStore

__all__ = ["DEFAULT_BIND", "SCHEMA_VERSION", "WorkspaceStore", "create_app"]
