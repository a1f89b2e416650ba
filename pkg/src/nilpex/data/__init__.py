"""Bundled example algebras, identities and automorphism families."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import List, Optional


def _root() -> Path:
    return Path(str(resources.files(__name__)))


def path(name: str) -> Optional[Path]:
    """Path of a bundled file, or None if there is no such file."""
    p = _root() / name
    return p if p.is_file() and not name.endswith(".py") else None


def names(suffix: str = "") -> List[str]:
    return sorted(p.name for p in _root().iterdir()
                  if p.is_file() and p.name.endswith(suffix) and p.suffix != ".py")
