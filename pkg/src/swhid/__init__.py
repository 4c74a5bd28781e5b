"""SWHID toolkit: parse, compute, resolve and archive persistent identifiers."""

from .model import (
    CoreIdentifier,
    LineRange,
    ObjectType,
    QualifiedIdentifier,
    SwhidParseError,
    ValidationReport,
    parse,
    validate,
)
from .hashing import (
    DirectoryEntry,
    EntryKind,
    PersonStamp,
    ReleaseRecord,
    RevisionRecord,
    SnapshotBranch,
    content_id,
    directory_id,
    directory_id_from_path,
    release_id,
    revision_id,
    snapshot_id,
)
from .resolve import (
    ArchiveEndpoints,
    latex_citation,
    latex_macros,
    markdown_citation,
    origin_url,
    resolve_url,
)
from .client import ArchiveClient, SaveRequest, SaveStatus
from .audit import AuditReport, audit
from .gitrefs import resolve_head

__version__ = "0.1.0"

__all__ = [
    "ObjectType",
    "CoreIdentifier",
    "LineRange",
    "QualifiedIdentifier",
    "SwhidParseError",
    "ValidationReport",
    "parse",
    "validate",
    "EntryKind",
    "DirectoryEntry",
    "PersonStamp",
    "RevisionRecord",
    "ReleaseRecord",
    "SnapshotBranch",
    "content_id",
    "directory_id",
    "directory_id_from_path",
    "revision_id",
    "release_id",
    "snapshot_id",
    "ArchiveEndpoints",
    "resolve_url",
    "origin_url",
    "latex_citation",
    "latex_macros",
    "markdown_citation",
    "ArchiveClient",
    "SaveRequest",
    "SaveStatus",
    "AuditReport",
    "audit",
    "resolve_head",
    "__version__",
]
