"""Named group families and a small spec language for them.

Spec strings: ``cyclic:n``, ``dihedral:n`` (order ``2n``), ``symmetric:n``,
``alternating:n``, ``quaternion8``, ``klein4`` and
``product(<spec>, <spec>)``, nestable.  Element ordering is deterministic.
"""

from __future__ import annotations

import re

import numpy as np

from .group import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    PermutationSpec,
    direct_product,
    from_permutations,
)

FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "quaternion8", "klein4", "product")

# unit quaternions in the order 1, -1, i, -i, j, -j, k, -k
_Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
_UNIT_PRODUCTS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


class FamilyError(ValueError):
    pass


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise FamilyError("cyclic group needs n >= 1")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, labels=[str(i) for i in range(n)], name=f"cyclic:{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, order ``2n`` (``n >= 3``)."""
    if n < 3:
        raise FamilyError("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations(PermutationSpec(n, (rot, ref)), name=f"dihedral:{n}")


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise FamilyError("symmetric group needs n >= 1")
    if n < 2:
        return from_permutations(PermutationSpec(1, ()), name="symmetric:1")
    swap = (1, 0) + tuple(range(2, n))
    cyc = tuple((i + 1) % n for i in range(n))
    return from_permutations(PermutationSpec(n, (swap, cyc)), max_order, name=f"symmetric:{n}")


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise FamilyError("alternating group needs n >= 1")
    gens = []
    for j in range(2, n):
        p = list(range(n))
        p[0], p[1], p[j] = 1, j, 0  # 3-cycle (0 1 j)
        gens.append(tuple(p))
    return from_permutations(PermutationSpec(n, tuple(gens)), max_order, name=f"alternating:{n}")


def quaternion8() -> FiniteGroup:
    def split(label):
        return (-1, label[1:]) if label.startswith("-") else (1, label)

    table = []
    for a in _Q8_LABELS:
        sa, ua = split(a)
        row = []
        for b in _Q8_LABELS:
            sb, ub = split(b)
            s, u = _UNIT_PRODUCTS[(ua, ub)]
            s *= sa * sb
            row.append(_Q8_LABELS.index(u if s > 0 else "-" + u if u != "1" else "-1"))
        table.append(row)
    return FiniteGroup(table, labels=_Q8_LABELS, name="quaternion8")


def klein4() -> FiniteGroup:
    G = direct_product(cyclic(2), cyclic(2), name="klein4")
    return G


def family(name: str, params=(), max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a member of a named family.

    ``params`` is an int for the parametrized families, nothing for
    ``quaternion8`` / ``klein4``, and a pair of groups or spec strings for
    ``product``.
    """
    if isinstance(params, int):
        params = (params,)
    params = tuple(params)
    if name == "product":
        if len(params) != 2:
            raise FamilyError("product needs exactly two factors")
        left, right = (p if isinstance(p, FiniteGroup) else parse_family_spec(p, max_order) for p in params)
        label = f"product({left.name},{right.name})"
        return direct_product(left, right, max_order, name=label)
    if name in ("quaternion8", "klein4"):
        if params:
            raise FamilyError(f"{name} takes no parameters")
        return quaternion8() if name == "quaternion8" else klein4()
    if name not in FAMILIES:
        raise FamilyError(f"unknown family {name!r}")
    if len(params) != 1 or not isinstance(params[0], int):
        raise FamilyError(f"{name} needs one integer parameter")
    n = params[0]
    if name == "cyclic":
        if n > max_order:
            raise FamilyError(f"cyclic:{n} exceeds maximum order {max_order}")
        return cyclic(n)
    if name == "dihedral":
        if 2 * n > max_order:
            raise FamilyError(f"dihedral:{n} exceeds maximum order {max_order}")
        return dihedral(n)
    builder = symmetric if name == "symmetric" else alternating
    try:
        return builder(n, max_order)
    except Exception as exc:
        raise FamilyError(str(exc)) from None


_SIMPLE = re.compile(r"^(cyclic|dihedral|symmetric|alternating):(\d+)$")


def split_top_level(text):
    depth, parts, start = 0, [], 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_family_spec(text: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    spec = "".join(text.split())
    if spec in ("quaternion8", "klein4"):
        return family(spec)
    m = _SIMPLE.match(spec)
    if m:
        return family(m.group(1), int(m.group(2)), max_order)
    if spec.startswith("product(") and spec.endswith(")"):
        parts = split_top_level(spec[len("product("):-1])
        if len(parts) == 2 and all(parts):
            return family("product", parts, max_order)
    raise FamilyError(f"cannot parse family spec {text!r}")


def is_family_spec(text: str) -> bool:
    spec = "".join(text.split())
    return spec in ("quaternion8", "klein4") or bool(_SIMPLE.match(spec)) or spec.startswith("product(")
