"""Archival-readiness audit of a source tree's top level.

Checks for the three key files (README, AUTHORS, LICENSE), structured
citation metadata (codemeta.json / CITATION.cff) and a recognizable SPDX
license name.  Detection is case-insensitive and extension-tolerant, top
level only, and strictly read-only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .spdx import identify_license

__all__ = ["CheckResult", "AuditReport", "audit", "CHECKS"]

CHECKS = ("readme", "authors", "license", "license_spdx_name", "citation_metadata")

CONTRIBUTOR_ROLES = (
    "design",
    "architecture",
    "coding",
    "testing",
    "debugging",
    "documentation",
    "maintenance",
    "support",
    "management",
)

_CITATION_FILES = ("codemeta.json", "citation.cff")
_MAX_SNIFF_BYTES = 256 * 1024


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str  # present | missing | warning
    note: str

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "note": self.note}


@dataclass(frozen=True)
class AuditReport:
    path: str
    checks: tuple[CheckResult, ...]
    ready: bool

    def __getitem__(self, check: str) -> CheckResult:
        for result in self.checks:
            if result.check == check:
                return result
        raise KeyError(check)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "ready": self.ready,
            "checks": [c.to_dict() for c in self.checks],
        }


def _stem(filename: str) -> str:
    return filename.split(".", 1)[0].lower()


def _read_text(path: Path) -> str:
    with open(path, "rb") as f:
        return f.read(_MAX_SNIFF_BYTES).decode("utf-8", errors="replace")


def _readme_note(names: list[str], text: str) -> str:
    gaps = []
    if not re.search(r"https?://", text):
        gaps.append("a project website or documentation link")
    if "install" not in text.lower():
        gaps.append("install/build instructions (or a pointer to them)")
    if not re.search(r"contact|support|mailto|@", text, re.I):
        gaps.append("contact or support information")
    note = f"present as {', '.join(names)}"
    if gaps:
        note += "; also worth adding: " + "; ".join(gaps)
    return note


def audit(path: str | Path) -> AuditReport:
    """Audit the top level of ``path``; raises OSError if unreadable."""
    root = Path(path)
    files = sorted(p.name for p in root.iterdir() if p.is_file())
    by_stem: dict[str, list[str]] = {}
    for name in files:
        by_stem.setdefault(_stem(name), []).append(name)

    checks = []

    readmes = by_stem.get("readme", [])
    if readmes:
        checks.append(
            CheckResult("readme", "present", _readme_note(readmes, _read_text(root / readmes[0])))
        )
    else:
        checks.append(
            CheckResult("readme", "missing", "add a README describing the project and how to use it")
        )

    authors = by_stem.get("authors", [])
    if authors:
        note = (
            f"present as {', '.join(authors)}; contributor roles can be annotated "
            f"({', '.join(CONTRIBUTOR_ROLES)})"
        )
        checks.append(CheckResult("authors", "present", note))
    else:
        checks.append(
            CheckResult("authors", "missing", "add an AUTHORS file crediting contributors")
        )

    licenses = by_stem.get("license", [])
    if licenses:
        checks.append(CheckResult("license", "present", f"present as {', '.join(licenses)}"))
        spdx_id = identify_license(_read_text(root / licenses[0]))
        if spdx_id:
            checks.append(
                CheckResult("license_spdx_name", "present", f"recognized as {spdx_id}")
            )
        else:
            checks.append(
                CheckResult(
                    "license_spdx_name",
                    "warning",
                    "license text carries no recognizable standard name; "
                    "use a name from the SPDX license list",
                )
            )
    else:
        checks.append(
            CheckResult(
                "license",
                "missing",
                "add a LICENSE file, preferably under its standard SPDX name",
            )
        )
        checks.append(
            CheckResult("license_spdx_name", "missing", "no license file to inspect")
        )

    citation_files = [n for n in files if n.lower() in _CITATION_FILES]
    if citation_files:
        checks.append(
            CheckResult("citation_metadata", "present", f"found {', '.join(citation_files)}")
        )
    else:
        checks.append(
            CheckResult(
                "citation_metadata",
                "missing",
                "no codemeta.json or CITATION.cff; structured citation metadata "
                "tells users how to credit the artifact",
            )
        )

    ready = all(
        next(c for c in checks if c.check == key).status == "present"
        for key in ("readme", "authors", "license")
    )
    return AuditReport(path=str(root), checks=tuple(checks), ready=ready)
