"""Core SWHID value types and the identifier grammar.

An identifier is ``swh:1:<type>:<40-hex-sha1>``, optionally followed by
``;key=value`` qualifiers (``origin`` and ``lines``).  Parsing is strict:
anything ungrammatical raises a classified :class:`SwhidParseError` carrying
the offset of the offending byte.  Printing is canonical and round-trips,
i.e. ``parse(str(x)) == x`` for every structurally valid value.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

__all__ = [
    "ObjectType",
    "CoreIdentifier",
    "LineRange",
    "QualifiedIdentifier",
    "SwhidParseError",
    "BadPrefix",
    "UnsupportedVersion",
    "UnknownObjectType",
    "MalformedObjectId",
    "MalformedQualifier",
    "DuplicateQualifier",
    "MalformedOrigin",
    "Violation",
    "ValidationReport",
    "parse",
    "validate",
    "is_valid_origin",
]

SCHEME_VERSION = 1

_HEX40_RE = re.compile(r"[0-9a-f]{40}")
_LINES_RE = re.compile(r"(\d+)(?:-(\d+))?")
# an RFC 3986 URI starts with scheme ":"; clone URLs always carry a scheme
_URL_SCHEME_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


class ObjectType(enum.Enum):
    """The five kinds of archived objects an identifier can point to."""

    SNAPSHOT = "snp"
    RELEASE = "rel"
    REVISION = "rev"
    DIRECTORY = "dir"
    CONTENT = "cnt"

    @property
    def tag(self) -> str:
        """Three-letter token used in the textual form."""
        return self.value


_TAG_TO_TYPE = {t.value: t for t in ObjectType}


class SwhidParseError(ValueError):
    """Base for all grammar violations; carries the rule name and offset."""

    rule = "SwhidParseError"

    def __init__(self, message: str, offset: int = 0):
        super().__init__(message)
        self.offset = offset

    @property
    def message(self) -> str:
        return self.args[0]


class BadPrefix(SwhidParseError):
    rule = "BadPrefix"


class UnsupportedVersion(SwhidParseError):
    rule = "UnsupportedVersion"


class UnknownObjectType(SwhidParseError):
    rule = "UnknownObjectType"


class MalformedObjectId(SwhidParseError):
    rule = "MalformedObjectId"


class MalformedQualifier(SwhidParseError):
    rule = "MalformedQualifier"


class DuplicateQualifier(SwhidParseError):
    rule = "DuplicateQualifier"


class MalformedOrigin(ValueError):
    """An origin URL that is empty or not an RFC 3986 style URL."""


def is_valid_origin(url: str) -> bool:
    """True if ``url`` looks like an RFC 3986 URL usable as an origin.

    Requires a scheme, a non-empty remainder, and no whitespace, control
    characters or ``;`` (the qualifier separator).
    """
    if not url:
        return False
    if any(c.isspace() or ord(c) < 0x20 for c in url):
        return False
    if ";" in url:
        return False
    m = _URL_SCHEME_RE.match(url)
    return m is not None and m.end() < len(url)


@dataclass(frozen=True)
class CoreIdentifier:
    """``swh:1:<type>:<object_id>`` without any qualifier."""

    object_type: ObjectType
    object_id: str
    scheme_version: int = SCHEME_VERSION

    def __post_init__(self):
        if self.scheme_version != SCHEME_VERSION:
            raise ValueError(f"unsupported scheme version {self.scheme_version!r}")
        if not isinstance(self.object_type, ObjectType):
            raise ValueError(f"not an ObjectType: {self.object_type!r}")
        if not _HEX40_RE.fullmatch(self.object_id):
            raise ValueError(
                f"object id must be 40 lowercase hex characters, got {self.object_id!r}"
            )

    def __str__(self) -> str:
        return f"swh:{self.scheme_version}:{self.object_type.tag}:{self.object_id}"


@dataclass(frozen=True)
class LineRange:
    """1-based line range; ``end is None`` means a single line."""

    start: int
    end: int | None = None

    def __post_init__(self):
        if self.start < 1:
            raise ValueError(f"line numbers are 1-based, got start={self.start}")
        if self.end is not None and self.end < self.start:
            raise ValueError(f"line range ends before it starts: {self.start}-{self.end}")

    def __str__(self) -> str:
        if self.end is None:
            return str(self.start)
        return f"{self.start}-{self.end}"


@dataclass(frozen=True)
class QualifiedIdentifier:
    """A core identifier plus optional origin and line-range qualifiers."""

    core: CoreIdentifier
    origin: str | None = None
    lines: LineRange | None = None

    def __post_init__(self):
        if self.origin is not None and not is_valid_origin(self.origin):
            raise ValueError(f"not a valid origin URL: {self.origin!r}")

    def __str__(self) -> str:
        # canonical qualifier order: origin first, then lines
        out = str(self.core)
        if self.origin is not None:
            out += f";origin={self.origin}"
        if self.lines is not None:
            out += f";lines={self.lines}"
        return out


def parse(text: str) -> QualifiedIdentifier:
    """Parse an identifier, with or without qualifiers.

    Raises a :class:`SwhidParseError` subclass naming the violated rule.
    No whitespace trimming is done here; callers own that.
    """
    if not isinstance(text, str):
        raise BadPrefix(f"expected a string, got {type(text).__name__}", 0)
    if not text.startswith("swh:"):
        raise BadPrefix("identifier does not start with 'swh:'", 0)

    sep = text.find(";")
    core_text = text if sep < 0 else text[:sep]

    fields = core_text[4:].split(":", 2)
    version = fields[0]
    if version != "1":
        raise UnsupportedVersion(f"unsupported scheme version {version!r}", 4)

    type_off = 4 + len(version) + 1
    if len(fields) < 2:
        raise UnknownObjectType("missing object type", len(core_text))
    tag = fields[1]
    obj_type = _TAG_TO_TYPE.get(tag)
    if obj_type is None:
        raise UnknownObjectType(
            f"unknown object type {tag!r} (expected snp, rel, rev, dir or cnt)", type_off
        )

    id_off = type_off + len(tag) + 1
    if len(fields) < 3:
        raise MalformedObjectId("missing object id", len(core_text))
    obj_id = fields[2]
    if not _HEX40_RE.fullmatch(obj_id):
        if len(obj_id) != 40:
            msg = f"object id length {len(obj_id)} != 40"
        else:
            msg = "object id must be lowercase hexadecimal"
        raise MalformedObjectId(msg, id_off)

    core = CoreIdentifier(obj_type, obj_id)
    if sep < 0:
        return QualifiedIdentifier(core)

    origin: str | None = None
    lines: LineRange | None = None
    pos = sep + 1
    for segment in text[sep + 1 :].split(";"):
        key, eq, value = segment.partition("=")
        if not eq:
            raise MalformedQualifier(f"qualifier {segment!r} is missing '='", pos)
        if key == "origin":
            if origin is not None:
                raise DuplicateQualifier("origin qualifier given twice", pos)
            if not is_valid_origin(value):
                raise MalformedQualifier(f"origin is not a parsable URL: {value!r}", pos)
            origin = value
        elif key == "lines":
            if lines is not None:
                raise DuplicateQualifier("lines qualifier given twice", pos)
            lines = _parse_lines(value, pos + len("lines="))
        else:
            raise MalformedQualifier(f"unknown qualifier key {key!r}", pos)
        pos += len(segment) + 1

    return QualifiedIdentifier(core, origin=origin, lines=lines)


def _parse_lines(value: str, offset: int) -> LineRange:
    m = _LINES_RE.fullmatch(value)
    if not m:
        raise MalformedQualifier(
            f"lines must be <number> or <number>-<number>, got {value!r}", offset
        )
    start = int(m.group(1))
    end = int(m.group(2)) if m.group(2) is not None else None
    if start < 1:
        raise MalformedQualifier("line numbers are 1-based", offset)
    if end is not None and end < start:
        raise MalformedQualifier(f"line range ends before it starts: {value}", offset)
    return LineRange(start, end)


@dataclass(frozen=True)
class Violation:
    """One grammar violation (or warning) found by :func:`validate`."""

    rule: str
    offset: int
    message: str
    severity: str = "error"  # "error" | "warning"

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "offset": self.offset,
            "message": self.message,
            "severity": self.severity,
        }


@dataclass(frozen=True)
class ValidationReport:
    """Non-throwing parse outcome: ok iff the text is grammatical."""

    ok: bool
    violations: tuple[Violation, ...] = ()
    identifier: QualifiedIdentifier | None = None

    def to_dict(self) -> dict:
        d: dict = {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}
        if self.identifier is not None:
            d["canonical"] = str(self.identifier)
        return d


def validate(text: str) -> ValidationReport:
    """Check ``text`` against the grammar without raising.

    A ``lines`` qualifier on a non-content identifier parses fine but is
    reported as a warning, since line numbers only mean something inside a
    file's content.
    """
    try:
        qid = parse(text)
    except SwhidParseError as exc:
        return ValidationReport(
            ok=False,
            violations=(Violation(exc.rule, exc.offset, exc.message),),
        )
    warnings = []
    if qid.lines is not None and qid.core.object_type is not ObjectType.CONTENT:
        warnings.append(
            Violation(
                "LinesOnNonContent",
                text.find(";lines="),
                f"lines qualifier on a {qid.core.object_type.name.lower()} identifier",
                severity="warning",
            )
        )
    return ValidationReport(ok=True, violations=tuple(warnings), identifier=qid)
