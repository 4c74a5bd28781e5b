"""Intrinsic object identifiers: SHA1 over git-style serializations.

Contents, directories, revisions and releases hash exactly like git blobs,
trees, commits and annotated tags, so the ids computed here match ``git
hash-object`` / ``git write-tree`` / ``git commit-tree`` output bit for bit.
Snapshots have no git counterpart; they hash a sorted branch manifest
(``<target_type> <name>\\0<len>:<target>`` per branch) under a ``snapshot``
header.

Everything is byte-level: names, messages and identities are never
transcoded.  ``str`` arguments are accepted as a convenience and encoded
as UTF-8.
"""

from __future__ import annotations

import enum
import fnmatch
import hashlib
import os
import stat
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .model import ObjectType

__all__ = [
    "EntryKind",
    "DirectoryEntry",
    "PersonStamp",
    "RevisionRecord",
    "ReleaseRecord",
    "SnapshotBranch",
    "HashingError",
    "InvalidName",
    "DuplicateName",
    "MalformedRecord",
    "MalformedBranch",
    "UnsupportedNode",
    "content_id",
    "directory_id",
    "directory_id_from_path",
    "revision_id",
    "release_id",
    "snapshot_id",
    "EMPTY_TREE_ID",
    "EMPTY_SNAPSHOT_ID",
]

EMPTY_TREE_ID = "4b825dc642cb6eb9a060e54bf8d69288fbee4904"
EMPTY_SNAPSHOT_ID = "1a8893e6a86f444e8be8e7bda6cb34fb1735a00e"

_HEX_DIGITS = set("0123456789abcdef")


class HashingError(ValueError):
    """A record that cannot be serialized into a well-formed object."""


class InvalidName(HashingError):
    pass


class DuplicateName(HashingError):
    pass


class MalformedRecord(HashingError):
    pass


class MalformedBranch(HashingError):
    pass


class UnsupportedNode(HashingError):
    """Filesystem node with no object representation (socket, device, ...)."""


def _as_bytes(value: bytes | str, what: str) -> bytes:
    if isinstance(value, bytes):
        return value
    if isinstance(value, str):
        return value.encode("utf-8")
    raise MalformedRecord(f"{what} must be bytes or str, got {type(value).__name__}")


def _require_hex40(value: str, what: str, error=MalformedRecord) -> str:
    if not (
        isinstance(value, str) and len(value) == 40 and set(value) <= _HEX_DIGITS
    ):
        raise error(f"{what} must be a 40-char lowercase hex id, got {value!r}")
    return value


def _object_id(header: bytes, payload: bytes) -> str:
    h = hashlib.sha1(header + b" " + str(len(payload)).encode("ascii") + b"\x00")
    h.update(payload)
    return h.hexdigest()


def content_id(data: bytes) -> str:
    """Id of a file's byte sequence (equals the git blob id)."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise MalformedRecord("content must be a byte sequence")
    return _object_id(b"blob", bytes(data))


class EntryKind(enum.Enum):
    """Directory entry kinds, one per git tree-entry mode."""

    FILE = "file"
    EXECUTABLE_FILE = "executable-file"
    SYMLINK = "symlink"
    SUBDIRECTORY = "subdirectory"
    REVISION_LINK = "revision-link"

    @property
    def mode(self) -> bytes:
        return _ENTRY_MODES[self]


_ENTRY_MODES = {
    EntryKind.FILE: b"100644",
    EntryKind.EXECUTABLE_FILE: b"100755",
    EntryKind.SYMLINK: b"120000",
    EntryKind.SUBDIRECTORY: b"40000",
    EntryKind.REVISION_LINK: b"160000",
}


@dataclass(frozen=True)
class DirectoryEntry:
    """A named, typed link from a directory to another object."""

    name: bytes
    kind: EntryKind
    target: str

    def __post_init__(self):
        name = _as_bytes(self.name, "entry name")
        object.__setattr__(self, "name", name)
        if not name or b"/" in name or name in (b".", b".."):
            raise InvalidName(f"invalid entry name {name!r}")
        if not isinstance(self.kind, EntryKind):
            raise MalformedRecord(f"not an EntryKind: {self.kind!r}")
        _require_hex40(self.target, "entry target")

    @property
    def sort_key(self) -> bytes:
        # git compares names as if directories were suffixed with "/"
        if self.kind is EntryKind.SUBDIRECTORY:
            return self.name + b"/"
        return self.name


def directory_id(entries: Iterable[DirectoryEntry]) -> str:
    """Id of a directory given its entries (equals the git tree id).

    Entry order is irrelevant; serialization always uses git's tree sort.
    """
    entries = list(entries)
    seen = set()
    for entry in entries:
        if entry.name in seen:
            raise DuplicateName(f"duplicate entry name {entry.name!r}")
        seen.add(entry.name)
    payload = b"".join(
        entry.kind.mode + b" " + entry.name + b"\x00" + bytes.fromhex(entry.target)
        for entry in sorted(entries, key=lambda e: e.sort_key)
    )
    return _object_id(b"tree", payload)


def directory_id_from_path(path: str | os.PathLike, exclude: Iterable[str] = ()) -> str:
    """Id of a filesystem tree, equal to ``git add -A && git write-tree``.

    ``.git`` directories are always skipped; ``exclude`` holds glob patterns
    matched against entry names and slash-separated relative paths.  Like
    git, empty subdirectories are left out (an empty *root* still hashes to
    the empty-tree id).  Sockets, devices and FIFOs raise
    :class:`UnsupportedNode`; unreadable paths raise :class:`OSError`.
    """
    root = Path(path)
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    return directory_id(_walk(root, "", tuple(exclude)))


def _excluded(name: str, rel: str, patterns: tuple[str, ...]) -> bool:
    return any(
        fnmatch.fnmatch(name, pat) or fnmatch.fnmatch(rel, pat) for pat in patterns
    )


def _walk(dirpath: Path, rel: str, exclude: tuple[str, ...]) -> list[DirectoryEntry]:
    entries = []
    with os.scandir(dirpath) as it:
        nodes = sorted(it, key=lambda n: n.name)
    for node in nodes:
        if node.name == ".git":
            continue
        node_rel = f"{rel}/{node.name}" if rel else node.name
        if _excluded(node.name, node_rel, exclude):
            continue
        name = os.fsencode(node.name)
        mode = node.stat(follow_symlinks=False).st_mode
        if stat.S_ISLNK(mode):
            target = content_id(os.fsencode(os.readlink(node.path)))
            entries.append(DirectoryEntry(name, EntryKind.SYMLINK, target))
        elif stat.S_ISDIR(mode):
            sub = _walk(Path(node.path), node_rel, exclude)
            if not sub:
                continue
            entries.append(DirectoryEntry(name, EntryKind.SUBDIRECTORY, directory_id(sub)))
        elif stat.S_ISREG(mode):
            with open(node.path, "rb") as f:
                target = content_id(f.read())
            kind = EntryKind.EXECUTABLE_FILE if mode & stat.S_IXUSR else EntryKind.FILE
            entries.append(DirectoryEntry(name, kind, target))
        else:
            raise UnsupportedNode(f"cannot hash filesystem node {node_rel!r}")
    return entries


@dataclass(frozen=True)
class PersonStamp:
    """Author/committer/tagger identity with timestamp and UTC offset."""

    name: bytes
    email: bytes
    timestamp: int
    tz_offset: int = 0  # minutes east of UTC

    def __post_init__(self):
        object.__setattr__(self, "name", _as_bytes(self.name, "person name"))
        object.__setattr__(self, "email", _as_bytes(self.email, "person email"))
        for label, value in (("name", self.name), ("email", self.email)):
            if b"\n" in value or b"<" in value or b">" in value:
                raise MalformedRecord(f"person {label} may not contain '<', '>' or newline")
        if not isinstance(self.timestamp, int):
            raise MalformedRecord("timestamp must be an integer (seconds since epoch)")
        if not isinstance(self.tz_offset, int) or not -1440 < self.tz_offset < 1440:
            raise MalformedRecord(f"timezone offset out of range: {self.tz_offset!r}")

    def serialize(self) -> bytes:
        sign = b"-" if self.tz_offset < 0 else b"+"
        minutes = abs(self.tz_offset)
        tz = b"%s%02d%02d" % (sign, minutes // 60, minutes % 60)
        return b"%s <%s> %d %s" % (self.name, self.email, self.timestamp, tz)


@dataclass(frozen=True)
class RevisionRecord:
    """Commit metadata; hashes to the matching git commit id."""

    tree: str
    author: PersonStamp
    committer: PersonStamp
    message: bytes
    parents: tuple[str, ...] = ()

    def __post_init__(self):
        _require_hex40(self.tree, "tree id")
        object.__setattr__(self, "parents", tuple(self.parents))
        for parent in self.parents:
            _require_hex40(parent, "parent id")
        object.__setattr__(self, "message", _as_bytes(self.message, "message"))


def revision_id(record: RevisionRecord) -> str:
    """Id of a revision record (equals the git commit id)."""
    lines = [b"tree " + record.tree.encode("ascii")]
    for parent in record.parents:
        lines.append(b"parent " + parent.encode("ascii"))
    lines.append(b"author " + record.author.serialize())
    lines.append(b"committer " + record.committer.serialize())
    payload = b"\n".join(lines) + b"\n\n" + record.message
    return _object_id(b"commit", payload)


_TAG_TARGET_TYPES = {
    ObjectType.CONTENT: b"blob",
    ObjectType.DIRECTORY: b"tree",
    ObjectType.REVISION: b"commit",
    ObjectType.RELEASE: b"tag",
}


@dataclass(frozen=True)
class ReleaseRecord:
    """Annotated-tag metadata; hashes to the matching git tag id."""

    target: str
    target_type: ObjectType
    tag_name: bytes
    message: bytes
    tagger: PersonStamp | None = None

    def __post_init__(self):
        _require_hex40(self.target, "release target")
        if self.target_type not in _TAG_TARGET_TYPES:
            raise MalformedRecord(
                f"a release cannot target a {self.target_type!r} object"
            )
        object.__setattr__(self, "tag_name", _as_bytes(self.tag_name, "tag name"))
        if not self.tag_name or b"\n" in self.tag_name:
            raise MalformedRecord(f"invalid tag name {self.tag_name!r}")
        object.__setattr__(self, "message", _as_bytes(self.message, "message"))


def release_id(record: ReleaseRecord) -> str:
    """Id of a release record (equals the git annotated-tag id)."""
    lines = [
        b"object " + record.target.encode("ascii"),
        b"type " + _TAG_TARGET_TYPES[record.target_type],
        b"tag " + record.tag_name,
    ]
    if record.tagger is not None:
        lines.append(b"tagger " + record.tagger.serialize())
    payload = b"\n".join(lines) + b"\n\n" + record.message
    return _object_id(b"tag", payload)


@dataclass(frozen=True)
class SnapshotBranch:
    """Branch target: one of the five object types, or an alias, or dangling.

    ``kind`` is an :class:`ObjectType` (then ``target`` is a 40-hex id) or
    the string ``"alias"`` (then ``target`` is another branch name).  A
    branch mapped to ``None`` instead of a ``SnapshotBranch`` is dangling.
    """

    kind: ObjectType | str
    target: str | bytes

    def __post_init__(self):
        if self.kind == "alias":
            target = _as_bytes(self.target, "alias target")
            if not target:
                raise MalformedBranch("alias branch without a target name")
            object.__setattr__(self, "target", target)
        elif isinstance(self.kind, ObjectType):
            if not isinstance(self.target, str):
                raise MalformedBranch("object targets are 40-hex strings")
            _require_hex40(self.target, "branch target", error=MalformedBranch)
        else:
            raise MalformedBranch(f"unknown branch target kind {self.kind!r}")

    def manifest_token(self) -> bytes:
        if self.kind == "alias":
            return b"alias"
        return self.kind.name.lower().encode("ascii")

    def manifest_target(self) -> bytes:
        if self.kind == "alias":
            return self.target  # type: ignore[return-value]
        return bytes.fromhex(self.target)  # type: ignore[arg-type]


def snapshot_id(branches: Mapping[bytes | str, SnapshotBranch | None]) -> str:
    """Id of a set of named branches.

    Serialization is the archive's snapshot manifest: branches sorted by
    name bytes, each as ``<target_type> <name>\\0<len>:<target>``, hashed
    under a ``snapshot`` header.  Insertion order never matters.
    """
    normalized: dict[bytes, SnapshotBranch | None] = {}
    for name, branch in branches.items():
        name = _as_bytes(name, "branch name")
        if not name or b"\x00" in name:
            raise MalformedBranch(f"invalid branch name {name!r}")
        if name in normalized:
            raise MalformedBranch(f"duplicate branch name {name!r}")
        normalized[name] = branch
    chunks = []
    for name in sorted(normalized):
        branch = normalized[name]
        if branch is None:
            token, target = b"dangling", b""
        else:
            token, target = branch.manifest_token(), branch.manifest_target()
        chunks.append(
            token + b" " + name + b"\x00" + str(len(target)).encode("ascii") + b":" + target
        )
    return _object_id(b"snapshot", b"".join(chunks))
