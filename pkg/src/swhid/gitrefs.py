"""Resolve a git checkout's HEAD to a commit hash by reading ref files.

Only plain-text plumbing is touched: ``.git/HEAD``, loose refs under
``refs/`` and ``packed-refs``.  The object database (loose objects,
packfiles) is never opened, and the git binary is never invoked.
"""

from __future__ import annotations

import re
from pathlib import Path

__all__ = ["GitRepoError", "resolve_head"]

_HEX40_RE = re.compile(r"[0-9a-f]{40}")
_MAX_SYMREF_DEPTH = 10


class GitRepoError(ValueError):
    """Path is not a usable git checkout, or HEAD cannot be resolved."""


def resolve_head(path: str | Path) -> str:
    """Commit hash HEAD points at, for the checkout rooted at ``path``."""
    gitdir, commondir = _locate_gitdir(Path(path))
    head = _read_text(gitdir / "HEAD")
    if head is None:
        raise GitRepoError(f"no HEAD in {gitdir}")
    return _resolve(head, gitdir, commondir, depth=0)


def _locate_gitdir(path: Path) -> tuple[Path, Path]:
    """Return (gitdir, commondir); they differ for linked worktrees."""
    dotgit = path / ".git"
    if dotgit.is_dir():
        gitdir = dotgit
    elif dotgit.is_file():
        # worktree/submodule indirection: ".git" is "gitdir: <path>"
        content = dotgit.read_text().strip()
        if not content.startswith("gitdir:"):
            raise GitRepoError(f"unrecognized .git file at {dotgit}")
        gitdir = Path(content[len("gitdir:") :].strip())
        if not gitdir.is_absolute():
            gitdir = (path / gitdir).resolve()
        if not gitdir.is_dir():
            raise GitRepoError(f".git file points at missing directory {gitdir}")
    else:
        raise GitRepoError(f"not a git checkout: {path}")

    commondir = gitdir
    common = _read_text(gitdir / "commondir")
    if common is not None:
        candidate = Path(common)
        if not candidate.is_absolute():
            candidate = (gitdir / candidate).resolve()
        commondir = candidate
    return gitdir, commondir


def _resolve(value: str, gitdir: Path, commondir: Path, depth: int) -> str:
    if depth > _MAX_SYMREF_DEPTH:
        raise GitRepoError("symbolic ref chain too deep")
    if value.startswith("ref:"):
        refname = value[len("ref:") :].strip()
        target = _lookup_ref(refname, gitdir, commondir)
        if target is None:
            raise GitRepoError(f"unborn or missing ref {refname!r}")
        return _resolve(target, gitdir, commondir, depth + 1)
    if _HEX40_RE.fullmatch(value):
        return value
    raise GitRepoError(f"cannot interpret ref value {value!r}")


def _lookup_ref(refname: str, gitdir: Path, commondir: Path) -> str | None:
    # HEAD and pseudo-refs live in the worktree gitdir, refs/* in commondir
    dirs = [gitdir, commondir] if "/" not in refname else [commondir, gitdir]
    for base in dirs:
        loose = _read_text(base / refname)
        if loose is not None:
            return loose
    packed = _read_text(commondir / "packed-refs")
    if packed is not None:
        for line in packed.splitlines():
            if not line or line.startswith(("#", "^")):
                continue
            oid, _, name = line.partition(" ")
            if name.strip() == refname:
                return oid.strip()
    return None


def _read_text(path: Path) -> str | None:
    try:
        return path.read_text(errors="surrogateescape").strip()
    except (FileNotFoundError, NotADirectoryError, IsADirectoryError):
        return None
