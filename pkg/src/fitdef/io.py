"""Reading and writing group files.

Cayley table file::

    n
    <row 0: n space-separated indices>
    ...
    <row n-1>

Element 0 must be the identity.  Permutation file::

    d
    <generator: d space-separated 0-indexed images>
    ...

Blank trailing lines are allowed; any other trailing content is rejected.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GroupConstructionError, GroupFileError
from .group import DEFAULT_MAX_ORDER, FiniteGroup, PermutationSpec, from_cayley_table, from_permutations


def _lines(text):
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _ints(line, lineno):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GroupFileError(f"line {lineno}: expected integers, got {line.strip()!r}") from None


def _header(lines):
    if not lines:
        raise GroupFileError("empty group file")
    head = _ints(lines[0], 1)
    if len(head) != 1 or head[0] < 1:
        raise GroupFileError("line 1: expected a single positive integer")
    return head[0]


def parse_cayley_text(text: str, name=None) -> FiniteGroup:
    lines = _lines(text)
    n = _header(lines)
    if len(lines) != n + 1:
        raise GroupFileError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        row = _ints(line, i)
        if len(row) != n:
            raise GroupFileError(f"line {i}: expected {n} entries, found {len(row)}")
        rows.append(row)
    try:
        G = from_cayley_table(rows, name=name)
    except GroupConstructionError as exc:
        raise GroupFileError(str(exc)) from None
    if G.identity != 0:
        raise GroupFileError(f"element 0 must be the identity (identity is {G.identity})")
    return G


def parse_permutation_text(text: str) -> PermutationSpec:
    lines = _lines(text)
    d = _header(lines)
    gens = []
    for i, line in enumerate(lines[1:], start=2):
        images = _ints(line, i)
        if len(images) != d:
            raise GroupFileError(f"line {i}: expected {d} images, found {len(images)}")
        gens.append(tuple(images))
    try:
        return PermutationSpec(d, tuple(gens))
    except GroupConstructionError as exc:
        raise GroupFileError(str(exc)) from None


def format_cayley_table(G: FiniteGroup) -> str:
    if G.identity != 0:
        raise ValueError("Cayley files need the identity at index 0")
    rows = [" ".join(map(str, row)) for row in G._rows]
    return "\n".join([str(G.order), *rows]) + "\n"


def format_permutation_spec(spec: PermutationSpec) -> str:
    rows = [" ".join(map(str, g)) for g in spec.generators]
    return "\n".join([str(spec.degree), *rows]) + "\n"


def read_group_file(path, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Load a ``.perm`` permutation file or a Cayley table file (any other suffix)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".perm":
        return from_permutations(parse_permutation_text(text), max_order, name=path.stem)
    return parse_cayley_text(text, name=path.stem)
