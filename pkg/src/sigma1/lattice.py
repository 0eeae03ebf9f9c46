"""Complete subgroup lattices via join closure over cyclic seeds.

The enumeration seeds with every cyclic subgroup, then repeatedly joins known
subgroups with cyclic generators until no new subgroup appears.  Joins are
computed for one representative per conjugacy class only; each discovered
subgroup is completed to its full conjugacy orbit, which keeps the set closed
under all joins (conjugating a join conjugates its arguments).  Subgroups are
bitsets over element indices, so deduplication and ordering are canonical.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import PreconditionError, SizeLimitError, ValidationError
from .groups import MUL_TABLE_MAX_ORDER, Group

DEFAULT_MAX_LATTICE_ORDER = 400


def max_lattice_order(override: int | None = None) -> int:
    """Effective lattice bound: explicit override, else environment, else default."""
    if override is not None:
        return int(override)
    return int(os.environ.get("SIGMA1_MAX_LATTICE_ORDER", DEFAULT_MAX_LATTICE_ORDER))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of `parent`, stored as a bitset over parent element indices."""

    parent: Group
    members: int
    order: int
    is_normal: bool
    gens: tuple[int, ...] = ()

    def member_indices(self) -> tuple[int, ...]:
        out = []
        mask = self.members
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def contains(self, other: "Subgroup") -> bool:
        return other.members | self.members == self.members

    def is_cyclic(self) -> bool:
        orders = self.parent.element_orders
        return any(orders[i] == self.order for i in self.member_indices())

    def as_group(self) -> Group:
        """The subgroup as a standalone permutation group on the parent's points."""
        parent = self.parent
        elements = tuple(parent.elements[i] for i in self.member_indices())
        gens = self.gens or _greedy_subgroup_gens(parent, self.member_indices())
        return Group(parent.degree, tuple(parent.elements[i] for i in gens), elements)


def _greedy_subgroup_gens(g: Group, members: tuple[int, ...]) -> tuple[int, ...]:
    from .groups import closure_indices

    orders = g.element_orders
    chosen: list[int] = []
    covered = {0}
    for x in sorted(members, key=lambda i: (-orders[i], i)):
        if x in covered:
            continue
        chosen.append(x)
        covered = set(closure_indices(g, chosen))
        if len(covered) == len(members):
            break
    return tuple(chosen)


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups, referenced by lattice indices."""

    order: int
    size: int
    representative: int
    member_ids: tuple[int, ...]
    is_normal: bool


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups of a group, canonically ordered, with the conjugacy partition."""

    parent: Group
    subgroups: tuple[Subgroup, ...]
    classes: tuple[SubgroupClass, ...]
    class_of: tuple[int, ...]
    maximal_ids: frozenset[int]
    id_of_members: dict = field(repr=False)

    @property
    def trivial_id(self) -> int:
        return 0

    @property
    def whole_id(self) -> int:
        return len(self.subgroups) - 1

    def subgroup_id(self, members: int) -> int | None:
        return self.id_of_members.get(members)


def _cyclic_atoms(g: Group) -> list[tuple[int, int, int]]:
    """All nontrivial cyclic subgroups as (members, order, generator) triples.

    Each cyclic subgroup is walked exactly once: after walking <x>, every
    member whose element order equals |<x>| generates the same subgroup.
    """
    orders = g.element_orders
    claimed = bytearray(g.order)
    atoms = []
    for x in range(1, g.order):
        if claimed[x]:
            continue
        mask = 1  # identity bit
        cursor = x
        size = 1
        while cursor != 0:
            mask |= 1 << cursor
            if orders[cursor] == orders[x]:
                claimed[cursor] = 1
            cursor = g.mul(cursor, x)
            size += 1
        atoms.append((mask, orders[x], x))
    atoms.sort(key=lambda a: (a[1], a[0]))
    return atoms


def _conjugate_mask(g: Group, mask: int, c: int) -> int:
    out = 0
    cinv = g.inverses[c]
    while mask:
        low = mask & -mask
        x = low.bit_length() - 1
        mask ^= low
        out |= 1 << g.mul(g.mul(cinv, x), c)
    return out


def _join(
    g: Group,
    mask: int,
    elems: tuple[int, ...],
    order: int,
    gens: tuple[int, ...],
    atom_mask: int,
    atom_order: int,
    atom_gen: int,
    whole_mask: int,
    order_divisors: list[int],
    rows: list,
) -> tuple[int, tuple[int, ...]]:
    """Subgroup generated by an existing subgroup and one cyclic generator.

    Runs a breadth-first search on right cosets of the existing subgroup and
    bails out to the whole group as soon as no proper divisor of |G| can still
    accommodate the coset count (Lagrange).
    """
    join_gens = gens + (atom_gen,)
    lcm = math.lcm(order, atom_order)
    base = (mask | atom_mask).bit_count()
    candidates = [d for d in order_divisors if d % lcm == 0 and d >= base]
    if not candidates or candidates == [g.order]:
        return whole_mask, join_gens
    max_proper = max(d for d in candidates if d < g.order)

    a_rows = [rows[a] for a in elems]
    seen = {min(row[0] for row in a_rows)}
    reps = [0]
    queue = deque([0])
    count = 1
    while queue:
        t = queue.popleft()
        trow = rows[t]
        for s in join_gens:
            u = trow[s]
            key = min(row[u] for row in a_rows)
            if key not in seen:
                count += 1
                if count * order > max_proper:
                    return whole_mask, join_gens
                seen.add(key)
                reps.append(u)
                queue.append(u)
    out = 0
    for t in reps:
        for row in a_rows:
            out |= 1 << row[t]
    return out, join_gens


def all_subgroups(g: Group, max_order: int | None = None) -> SubgroupLattice:
    """Enumerate the complete subgroup lattice of g.

    Results are cached on the group, so repeated invariant computations share
    one enumeration.
    """
    if g._lattice is not None:
        return g._lattice
    bound = max_lattice_order(max_order)
    if g.order > bound:
        raise SizeLimitError(
            f"group order {g.order} exceeds the lattice bound {bound}"
        )
    if g.order > MUL_TABLE_MAX_ORDER:
        raise SizeLimitError(
            f"lattice enumeration needs an index table; order {g.order} exceeds "
            f"{MUL_TABLE_MAX_ORDER}"
        )
    rows = g.mul_table
    whole_mask = (1 << g.order) - 1
    order_divisors = [d for d in range(1, g.order + 1) if g.order % d == 0]
    atoms = _cyclic_atoms(g)

    info: dict[int, tuple[int, tuple[int, ...]]] = {}  # members -> (order, gens)
    class_members: list[list[int]] = []
    worklist: deque[int] = deque()

    def add_orbit(mask: int, gens: tuple[int, ...], enqueue: bool = True) -> None:
        if mask in info:
            return
        order = mask.bit_count()
        orbit = [mask]
        gens_of = {mask: gens}
        info[mask] = (order, gens)
        cursor = 0
        while cursor < len(orbit):
            m = orbit[cursor]
            cursor += 1
            for c in g.generator_indices:
                m2 = _conjugate_mask(g, m, c)
                if m2 not in gens_of:
                    gens_of[m2] = tuple(g.conjugate(x, c) for x in gens_of[m])
                    orbit.append(m2)
                    info[m2] = (order, gens_of[m2])
        class_members.append(orbit)
        if enqueue:
            rep = min(orbit)
            if rep != whole_mask and rep != 1:
                worklist.append(rep)

    add_orbit(1, (), enqueue=False)
    for mask, order, gen in atoms:
        add_orbit(mask, (gen,))

    while worklist:
        mask = worklist.popleft()
        order, gens = info[mask]
        elems = _mask_indices(mask)
        for atom_mask, atom_order, atom_gen in atoms:
            if atom_mask | mask == mask:
                continue
            joined, join_gens = _join(
                g, mask, elems, order, gens,
                atom_mask, atom_order, atom_gen,
                whole_mask, order_divisors, rows,
            )
            add_orbit(joined, join_gens)

    if whole_mask not in info:  # trivial group: whole == trivial already present
        add_orbit(whole_mask, tuple(g.generator_indices), enqueue=False)

    ordered_masks = sorted(info, key=lambda m: (info[m][0], m))
    id_of = {m: i for i, m in enumerate(ordered_masks)}

    class_records = []
    class_of = [0] * len(ordered_masks)
    raw_classes = sorted(
        ([id_of[m] for m in orbit] for orbit in class_members),
        key=lambda ids: min(ids),
    )
    for cid, ids in enumerate(raw_classes):
        ids = sorted(ids)
        for i in ids:
            class_of[i] = cid
        mask0 = ordered_masks[ids[0]]
        class_records.append(
            SubgroupClass(
                order=info[mask0][0],
                size=len(ids),
                representative=ids[0],
                member_ids=tuple(ids),
                is_normal=len(ids) == 1,
            )
        )

    subgroups = tuple(
        Subgroup(
            parent=g,
            members=m,
            order=info[m][0],
            is_normal=class_records[class_of[i]].is_normal,
            gens=info[m][1],
        )
        for i, m in enumerate(ordered_masks)
    )

    maximal = set()
    n = len(subgroups)
    for i in range(n - 1):
        h = subgroups[i]
        is_max = True
        for j in range(i + 1, n - 1):
            k = subgroups[j]
            if k.order > h.order and h.members | k.members == k.members:
                is_max = False
                break
        if is_max and g.order > 1:
            maximal.add(i)

    lattice = SubgroupLattice(
        parent=g,
        subgroups=subgroups,
        classes=tuple(class_records),
        class_of=tuple(class_of),
        maximal_ids=frozenset(maximal),
        id_of_members=id_of,
    )
    if subgroups[0].order != 1 or subgroups[-1].order != g.order:
        raise RuntimeError("lattice must contain the trivial subgroup and the group")
    g._lattice = lattice
    return lattice


def _mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def conjugacy_classes(lattice: SubgroupLattice) -> tuple[SubgroupClass, ...]:
    """The conjugacy partition, sorted by (order, representative bitset)."""
    return lattice.classes


def maximal_subgroups(lattice: SubgroupLattice) -> frozenset[int]:
    """Indices of subgroups H with H != G and no K strictly between H and G."""
    return lattice.maximal_ids


def is_normal(g: Group, h: Subgroup) -> bool:
    """True iff conjugation by every generator of g fixes the member bitset."""
    if h.parent is not g:
        raise ValidationError("subgroup does not belong to the given group")
    return all(_conjugate_mask(g, h.members, c) == h.members for c in g.generator_indices)


def sylow_subgroups(lattice: SubgroupLattice, p: int) -> tuple[int, ...]:
    """Indices of the subgroups of order p^k, the largest p-power dividing |G|."""
    g = lattice.parent
    if p < 2 or g.order % p != 0:
        raise PreconditionError(f"{p} does not divide the group order {g.order}")
    pk = 1
    while g.order % (pk * p) == 0:
        pk *= p
    return tuple(i for i, s in enumerate(lattice.subgroups) if s.order == pk)


def normalizer(g: Group, h: Subgroup) -> Subgroup:
    """The largest subgroup of g in which h is normal."""
    if h.parent is not g:
        raise ValidationError("subgroup does not belong to the given group")
    members = h.member_indices()
    norm_mask = 0
    for c in range(g.order):
        cinv = g.inverses[c]
        for x in members:
            if not (h.members >> g.mul(g.mul(cinv, x), c)) & 1:
                break
        else:
            norm_mask |= 1 << c
    order = norm_mask.bit_count()
    sub = Subgroup(
        parent=g,
        members=norm_mask,
        order=order,
        is_normal=all(
            _conjugate_mask(g, norm_mask, c) == norm_mask for c in g.generator_indices
        ),
        gens=_greedy_subgroup_gens(g, _mask_indices(norm_mask)),
    )
    return sub
