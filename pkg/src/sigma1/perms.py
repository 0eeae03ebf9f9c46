"""Permutations as tuples of 0-based point images."""

from __future__ import annotations

import math

from .errors import ValidationError

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def validate(p, degree: int | None = None) -> Perm:
    """Check that p is a bijection on {0..len(p)-1} and return it as a tuple."""
    try:
        images = tuple(int(x) for x in p)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"permutation images must be integers, got {p!r}") from exc
    if degree is not None and len(images) != degree:
        raise ValidationError(f"expected degree {degree}, got {len(images)}")
    n = len(images)
    if n == 0:
        raise ValidationError("permutation must have positive degree")
    if sorted(images) != list(range(n)):
        raise ValidationError(f"images are not a bijection on 0..{n - 1}: {images!r}")
    return images


def compose(p: Perm, q: Perm) -> Perm:
    """Product `p then q`: the result maps x to q[p[x]]."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, j in enumerate(p):
        result[j] = i
    return tuple(result)


def perm_order(p: Perm) -> int:
    """Multiplicative order, via the lcm of cycle lengths."""
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        cursor = start
        while not seen[cursor]:
            seen[cursor] = True
            cursor = p[cursor]
            length += 1
        order = math.lcm(order, length)
    return order


def from_cycles(degree: int, *cycles) -> Perm:
    """Build a permutation from disjoint cycles; unmentioned points are fixed."""
    images = list(range(degree))
    touched = set()
    for cycle in cycles:
        cycle = list(cycle)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if a in touched or not (0 <= a < degree):
                raise ValidationError(f"bad cycle decomposition at point {a}")
            touched.add(a)
            images[a] = b
    return validate(images, degree)


def cycle_string(p: Perm) -> str:
    """Disjoint-cycle notation, fixed points omitted; identity prints as '()'."""
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        cursor = start
        while not seen[cursor]:
            seen[cursor] = True
            cycle.append(cursor)
            cursor = p[cursor]
        if len(cycle) > 1:
            parts.append("(" + " ".join(str(x) for x in cycle) + ")")
    return "".join(parts) if parts else "()"
