"""Turn identifiers and origins into archive URLs and citation snippets.

URLs are built by plain prefix concatenation, with no percent-encoding, so
the output matches what the archive's own permalink box hands out.  Pass
``encode=True`` where a downstream toolchain chokes on ``;`` or ``=``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import quote

from .model import MalformedOrigin, QualifiedIdentifier, is_valid_origin

__all__ = [
    "ArchiveEndpoints",
    "resolve_url",
    "origin_url",
    "latex_citation",
    "latex_macros",
    "markdown_citation",
    "escape_latex",
]

DEFAULT_BROWSE_PREFIX = "https://archive.softwareheritage.org/"
DEFAULT_ORIGIN_BROWSE_PREFIX = "https://archive.softwareheritage.org/browse/origin"


@dataclass(frozen=True)
class ArchiveEndpoints:
    """Base URLs of an archive instance (override for mirrors or tests)."""

    browse_prefix: str = DEFAULT_BROWSE_PREFIX
    origin_browse_prefix: str = DEFAULT_ORIGIN_BROWSE_PREFIX

    def __post_init__(self):
        for url in (self.browse_prefix, self.origin_browse_prefix):
            if not re.match(r"[A-Za-z][A-Za-z0-9+.\-]*://", url):
                raise ValueError(f"endpoint must be an absolute URL: {url!r}")


_DEFAULT_ENDPOINTS = ArchiveEndpoints()


def resolve_url(
    qid: QualifiedIdentifier,
    endpoints: ArchiveEndpoints = _DEFAULT_ENDPOINTS,
    encode: bool = False,
) -> str:
    """Browse URL for an identifier: prefix + canonical text, qualifiers kept."""
    text = str(qid)
    if encode:
        text = quote(text, safe=":/")
    prefix = endpoints.browse_prefix
    if not prefix.endswith("/"):
        prefix += "/"
    return prefix + text


def origin_url(
    origin: str,
    endpoints: ArchiveEndpoints = _DEFAULT_ENDPOINTS,
    encode: bool = False,
) -> str:
    """Browse URL for an origin: prefix + "/" + the clone URL, verbatim."""
    if not is_valid_origin(origin):
        raise MalformedOrigin(f"not a valid origin URL: {origin!r}")
    if encode:
        origin = quote(origin, safe=":/")
    return endpoints.origin_browse_prefix.rstrip("/") + "/" + origin


# LaTeX helpers pairing with the \swhurl / \swhref convention
LATEX_MACROS = (
    "\\newcommand{\\swhurl}[1]{https://archive.softwareheritage.org/#1}\n"
    "\\newcommand{\\swhref}[2]{\\href{\\swhurl{#1}}{#2}}\n"
)

_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}
_LATEX_SPECIALS_RE = re.compile("[%s]" % re.escape("".join(_LATEX_SPECIALS)))


def escape_latex(text: str) -> str:
    """Escape LaTeX-reserved characters in human-readable label text."""
    return _LATEX_SPECIALS_RE.sub(lambda m: _LATEX_SPECIALS[m.group()], text)


def latex_macros() -> str:
    """The two ``\\newcommand`` definitions the snippets rely on."""
    return LATEX_MACROS


def latex_citation(qid: QualifiedIdentifier, label: str) -> str:
    """``\\swhref{<identifier>}{<label>}`` with the label LaTeX-escaped."""
    return "\\swhref{%s}{%s}" % (str(qid), escape_latex(label))


def markdown_citation(
    qid: QualifiedIdentifier,
    label: str,
    endpoints: ArchiveEndpoints = _DEFAULT_ENDPOINTS,
    encode: bool = False,
) -> str:
    """Markdown link variant: ``[label](browse-url)``."""
    label = label.replace("\\", "\\\\").replace("[", "\\[").replace("]", "\\]")
    return f"[{label}]({resolve_url(qid, endpoints, encode=encode)})"
