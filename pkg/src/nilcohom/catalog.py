"""Built-in example algebras and user catalogs.

Entries are algebra files shipped in ``nilcohom/data``. Extra ``*.nil``
files are picked up from the directory named by ``NILCOHOM_CATALOG``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import InputError
from .lie import StructureConstants, parse_algebra_file

CATALOG_ENV = "NILCOHOM_CATALOG"
BUILTIN = ("torus2", "torus4", "torus6", "kt", "kt-x-kt", "prop45")


@dataclass
class CatalogEntry:
    name: str
    algebra: StructureConstants
    forms: dict = field(default_factory=dict)
    source: str = ""

    @property
    def default_form(self):
        return next(iter(self.forms.values()), None)


def _builtin_text(name: str) -> str:
    return resources.files("nilcohom").joinpath("data", f"{name}.nil").read_text(encoding="utf-8")


def _user_dir() -> Path | None:
    path = os.environ.get(CATALOG_ENV)
    return Path(path) if path else None


def names() -> list[str]:
    out = list(BUILTIN)
    user = _user_dir()
    if user and user.is_dir():
        out += sorted(p.stem for p in user.glob("*.nil") if p.stem not in out)
    return out


def entry_from_text(name: str, text: str) -> CatalogEntry:
    parsed = parse_algebra_file(text)
    return CatalogEntry(name, parsed.algebra, parsed.forms, text)


def load(name: str) -> CatalogEntry:
    if name in BUILTIN:
        return entry_from_text(name, _builtin_text(name))
    user = _user_dir()
    if user is not None:
        path = user / f"{name}.nil"
        if path.is_file():
            return entry_from_text(name, path.read_text(encoding="utf-8"))
    raise InputError(f"unknown catalog entry {name!r}; known: {', '.join(names())}")


def resolve(source: str) -> CatalogEntry:
    """A file path, ``catalog:NAME`` or a bare catalog name."""
    if source.startswith("catalog:"):
        return load(source[len("catalog:"):])
    path = Path(source)
    if path.is_file():
        return entry_from_text(path.stem, path.read_text(encoding="utf-8"))
    return load(source)
