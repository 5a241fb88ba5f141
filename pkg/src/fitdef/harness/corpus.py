"""Corpus entries: named groups from family specs or group files."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional

from ..families import split_top_level, is_family_spec, parse_family_spec
from ..group import FiniteGroup, whole_group
from ..io import read_group_file
from ..radicals import fitting, soluble_radical

DEFAULT_CORPUS_SPECS = (
    *(f"cyclic:{n}" for n in range(1, 13)),
    *(f"dihedral:{n}" for n in range(3, 9)),
    *(f"symmetric:{n}" for n in range(3, 6)),
    "alternating:4",
    "alternating:5",
    "quaternion8",
    "klein4",
    "product(quaternion8,cyclic:3)",
    "product(cyclic:2,alternating:5)",
    "product(quaternion8,alternating:5)",
)

GROUP_FILE_SUFFIXES = (".table", ".perm", ".family")


@dataclass
class CorpusEntry:
    """A named corpus group, built on first access.

    ``source`` is ``("family", spec)``, ``("table", path)`` or
    ``("perm", path)``.
    """

    name: str
    source: tuple
    tags: list = field(default_factory=list)

    @cached_property
    def group(self) -> FiniteGroup:
        kind, value = self.source
        if kind == "family":
            G = parse_family_spec(value)
            G.name = self.name
            return G
        return read_group_file(value)

    @property
    def factors(self) -> Optional[tuple]:
        """Factor specs for a ``product(a, b)`` family entry, else ``None``."""
        kind, value = self.source
        spec = "".join(value.split()) if kind == "family" else ""
        if not spec.startswith("product("):
            return None
        parts = split_top_level(spec[len("product("):-1])
        return tuple(parts) if len(parts) == 2 else None

    def compute_tags(self) -> list:
        G = self.group
        tags = []
        if G.is_abelian_group:
            tags.append("abelian")
        if fitting(G).subgroup == whole_group(G):
            tags.append("nilpotent")
        if soluble_radical(G).subgroup == whole_group(G):
            tags.append("soluble")
        elif soluble_radical(G).subgroup.is_trivial:
            tags.append("trivial-radical")
        self.tags = tags
        return tags


def entry_from_text(text: str) -> CorpusEntry:
    """A corpus entry for a family spec or a path to a group file."""
    path = Path(text)
    if path.exists():
        return entry_from_file(path)
    if is_family_spec(text):
        return CorpusEntry("".join(text.split()), ("family", text))
    raise FileNotFoundError(f"{text!r} is neither a group file nor a family spec")


def entry_from_file(path) -> CorpusEntry:
    path = Path(path)
    if path.suffix == ".family":
        spec = path.read_text().strip()
        return CorpusEntry(path.stem, ("family", spec))
    kind = "perm" if path.suffix == ".perm" else "table"
    return CorpusEntry(path.stem, (kind, str(path)))


def default_corpus() -> list:
    return [CorpusEntry(spec, ("family", spec)) for spec in DEFAULT_CORPUS_SPECS]


def load_corpus(directory) -> list:
    """Every ``.table``, ``.perm`` and ``.family`` file in ``directory``, by name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory {directory} not found")
    entries = [entry_from_file(p) for p in sorted(directory.iterdir()) if p.suffix in GROUP_FILE_SUFFIXES]
    names = [e.name for e in entries]
    dup = {n for n in names if names.count(n) > 1}
    if dup:
        raise ValueError(f"duplicate corpus names: {sorted(dup)}")
    return entries
