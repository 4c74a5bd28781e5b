"""Random filesystem-tree generator for git-equivalence testing."""

import os
import random
import string
from pathlib import Path

NAME_ALPHABET = string.ascii_lowercase + string.digits + "._-"
# names that would change git's own behavior inside the scratch worktree
FORBIDDEN_NAMES = {".", "..", ".git", ".gitignore", ".gitattributes", ".gitmodules"}


def _random_name(rng: random.Random, used: set) -> str:
    while True:
        n = rng.randint(1, 12)
        name = "".join(rng.choices(NAME_ALPHABET, k=n))
        if rng.random() < 0.05:
            name += rng.choice("éδ名")
        if name not in FORBIDDEN_NAMES and name not in used and not name.startswith("-"):
            used.add(name)
            return name


def populate(root: Path, rng: random.Random, depth: int = 0, max_depth: int = 3) -> list[Path]:
    """Fill ``root`` with random files/symlinks/subdirs; returns regular files."""
    files = []
    used: set = set()
    n_entries = rng.randint(1 if depth == 0 else 0, 6)
    for _ in range(n_entries):
        name = _random_name(rng, used)
        path = root / name
        roll = rng.random()
        if roll < 0.15:
            # symlink, possibly dangling; target is an arbitrary relative path
            target = "".join(rng.choices(NAME_ALPHABET + "/", k=rng.randint(1, 16))).strip("/")
            path.symlink_to(target or "x")
        elif roll < 0.45 and depth < max_depth:
            path.mkdir()
            if rng.random() < 0.9:
                files.extend(populate(path, rng, depth + 1, max_depth))
            # else: left empty on purpose (git omits empty directories)
        else:
            path.write_bytes(rng.randbytes(rng.randint(0, 2048)))
            if rng.random() < 0.25:
                path.chmod(0o755)
            files.append(path)
    return files


def has_content(root: Path) -> bool:
    """True if git would record anything at all for this tree."""
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = [d for d in dirnames if d != ".git"]
        if filenames:
            return True
        for d in list(dirnames):
            if os.path.islink(os.path.join(dirpath, d)):
                return True
    return False
