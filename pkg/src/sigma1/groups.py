"""Concrete finite groups: closure, products, quotients, isomorphism testing.

Every group is carried by permutations with a canonical element order
(lexicographic on image tuples), so equal constructions are bit-identical
across runs.  Index-level multiplication tables are built lazily for groups
of order at most MUL_TABLE_MAX_ORDER.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import perms
from .errors import ActionError, PreconditionError, SizeLimitError, ValidationError
from .perms import Perm

DEFAULT_MAX_GROUP_ORDER = 20000
DEFAULT_MAX_ISO_ORDER = 64
MUL_TABLE_MAX_ORDER = 2048


def max_group_order(override: int | None = None) -> int:
    """Effective construction bound: explicit override, else environment, else default."""
    if override is not None:
        return int(override)
    return int(os.environ.get("SIGMA1_MAX_GROUP_ORDER", DEFAULT_MAX_GROUP_ORDER))


class Group:
    """An immutable finite permutation group.

    Do not call the constructor directly; use `close_generators`,
    `direct_product`, `semidirect_product`, `quotient_group`, or the
    builders in `sigma1.constructions`.
    """

    __slots__ = (
        "degree",
        "generators",
        "elements",
        "order",
        "index",
        "generator_indices",
        "_mul_table",
        "_inverses",
        "_element_orders",
        "_lattice",
    )

    def __init__(
        self,
        degree: int,
        generators: tuple[Perm, ...],
        elements: tuple[Perm, ...],
        mul_table: list[list[int]] | None = None,
    ):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.order = len(elements)
        self.index = {p: i for i, p in enumerate(elements)}
        if elements[0] != perms.identity(degree):
            raise ValidationError("canonical element order must start with the identity")
        self.generator_indices = tuple(self.index[g] for g in generators)
        self._mul_table = mul_table
        self._inverses = None
        self._element_orders = None
        self._lattice = None

    # -- index-level arithmetic -------------------------------------------------

    @property
    def mul_table(self) -> list[list[int]] | None:
        """Full index-level multiplication table; None above MUL_TABLE_MAX_ORDER."""
        if self._mul_table is None and self.order <= MUL_TABLE_MAX_ORDER:
            index = self.index
            els = self.elements
            self._mul_table = [
                [index[perms.compose(p, q)] for q in els] for p in els
            ]
        return self._mul_table

    def mul(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j] (elements[i] applied first)."""
        table = self.mul_table
        if table is not None:
            return table[i][j]
        return self.index[perms.compose(self.elements[i], self.elements[j])]

    @property
    def inverses(self) -> tuple[int, ...]:
        if self._inverses is None:
            inv = [0] * self.order
            for i, p in enumerate(self.elements):
                inv[i] = self.index[perms.inverse(p)]
            self._inverses = tuple(inv)
        return self._inverses

    @property
    def element_orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            self._element_orders = tuple(perms.perm_order(p) for p in self.elements)
        return self._element_orders

    def conjugate(self, h: int, g: int) -> int:
        """Index of g^-1 * h * g."""
        return self.mul(self.mul(self.inverses[g], h), g)

    def commutator(self, a: int, b: int) -> int:
        """Index of a^-1 * b^-1 * a * b."""
        inv = self.inverses
        return self.mul(self.mul(self.mul(inv[a], inv[b]), a), b)

    def __repr__(self) -> str:
        return f"Group(order={self.order}, degree={self.degree})"


def _sorted_group(
    degree: int,
    generators: Iterable[Perm],
    elements: Iterable[Perm],
    mul_table: list[list[int]] | None = None,
) -> Group:
    return Group(degree, tuple(generators), tuple(sorted(elements)), mul_table)


def close_generators(
    degree: int, gens: Sequence[Perm], max_order: int | None = None
) -> Group:
    """Close a generator set under composition; elements come out canonically sorted."""
    if degree < 1:
        raise ValidationError("degree must be at least 1")
    cap = max_group_order(max_order)
    gens = tuple(perms.validate(g, degree) for g in gens)
    ident = perms.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = perms.compose(p, g)
            if q not in seen:
                if len(seen) >= cap:
                    raise SizeLimitError(
                        f"closure exceeds the maximum group order {cap}"
                    )
                seen.add(q)
                queue.append(q)
    return _sorted_group(degree, gens, seen)


def _product_table(g: Group, h: Group) -> list[list[int]] | None:
    """Multiplication table of a direct product, assembled from factor tables."""
    order = g.order * h.order
    if order > MUL_TABLE_MAX_ORDER:
        return None
    tg = np.asarray(g.mul_table, dtype=np.int32)
    th = np.asarray(h.mul_table, dtype=np.int32)
    full = tg[:, None, :, None] * np.int32(h.order) + th[None, :, None, :]
    return full.reshape(order, order).tolist()


def direct_product(g: Group, h: Group, max_order: int | None = None) -> Group:
    """Product acting on the disjoint union of the two point sets."""
    cap = max_group_order(max_order)
    order = g.order * h.order
    if order > cap:
        raise SizeLimitError(f"product order {order} exceeds the maximum {cap}")
    dg = g.degree
    shifted = [tuple(x + dg for x in q) for q in h.elements]
    # nested iteration in canonical factor order keeps the result lex-sorted
    elements = [p + q for p in g.elements for q in shifted]
    idh = tuple(range(dg, dg + h.degree))
    idg = perms.identity(dg)
    gens = [p + idh for p in g.generators]
    gens += [idg + tuple(x + dg for x in q) for q in h.generators]
    return Group(dg + h.degree, tuple(gens), tuple(elements), _product_table(g, h))


@dataclass(frozen=True)
class Automorphism:
    """A multiplication-preserving bijection of a group, as an element-index map."""

    source: Group
    images: tuple[int, ...]

    def __post_init__(self):
        g = self.source
        if sorted(self.images) != list(range(g.order)):
            raise ActionError("automorphism images are not a bijection on element indices")
        images = self.images
        # spot-check on generators first, then verify on the full closure
        for a in g.generator_indices:
            for b in g.generator_indices:
                if images[g.mul(a, b)] != g.mul(images[a], images[b]):
                    raise ActionError("map does not preserve multiplication on generators")
        for a in range(g.order):
            for b in range(g.order):
                if images[g.mul(a, b)] != g.mul(images[a], images[b]):
                    raise ActionError("map does not preserve multiplication")

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))


def identity_automorphism(g: Group) -> Automorphism:
    return Automorphism(g, tuple(range(g.order)))


def _realize_regular(pair_table: np.ndarray, gen_ids: Sequence[int]) -> Group:
    """Turn an index-level multiplication table into a sorted permutation group.

    The right-regular action x -> x*g is faithful; element i acts by the
    permutation pair_table[:, i] on the fixed point labels 0..n-1.
    """
    n = pair_table.shape[0]
    columns = pair_table.T.tolist()
    pool = [int(v) for v in range(n)]  # share int objects across tuples
    element_perms = [tuple(pool[v] for v in col) for col in columns]
    new_to_old = sorted(range(n), key=element_perms.__getitem__)
    old_to_new = np.empty(n, dtype=np.int32)
    for new, old in enumerate(new_to_old):
        old_to_new[old] = new
    table = old_to_new[pair_table[np.ix_(new_to_old, new_to_old)]].tolist()
    elements = tuple(element_perms[old] for old in new_to_old)
    gens = tuple(element_perms[g] for g in gen_ids)
    return Group(n, gens, elements, table)


def semidirect_product(
    n: Group,
    k: Group,
    action: Mapping[Perm, Automorphism],
    max_order: int | None = None,
) -> Group:
    """Outer semidirect product N x| K for a K-generator action on N.

    Pairs (a, b) multiply as (a1, b1)(a2, b2) = (a1 * alpha_{b1}(a2), b1 * b2);
    the result is realized as a permutation group via its regular
    representation on |N| * |K| points.
    """
    cap = max_group_order(max_order)
    order = n.order * k.order
    if order > cap:
        raise SizeLimitError(f"product order {order} exceeds the maximum {cap}")
    if n.order > MUL_TABLE_MAX_ORDER or order > MUL_TABLE_MAX_ORDER:
        raise SizeLimitError(
            f"semidirect products are supported up to order {MUL_TABLE_MAX_ORDER}"
        )
    gen_maps = []
    for g in k.generators:
        if g not in action:
            raise ActionError(f"action is missing an automorphism for generator {g!r}")
        aut = action[g]
        if aut.source is not n:
            raise ActionError("action automorphisms must act on the normal factor")
        gen_maps.append(np.asarray(aut.images, dtype=np.int32))

    # extend the generator assignment over all of K along a BFS spanning tree
    alpha = np.empty((k.order, n.order), dtype=np.int32)
    defined = [False] * k.order
    alpha[0] = np.arange(n.order, dtype=np.int32)
    defined[0] = True
    queue = deque([0])
    while queue:
        b = queue.popleft()
        for gi, gidx in enumerate(k.generator_indices):
            b2 = k.mul(b, gidx)
            if not defined[b2]:
                # homomorphism into Aut(N) under function composition:
                # alpha(b*g) maps x to alpha_b(alpha_g(x))
                alpha[b2] = alpha[b][gen_maps[gi]]
                defined[b2] = True
                queue.append(b2)
    # relation check: the assignment must be consistent on every (element, generator)
    for b in range(k.order):
        for gi, gidx in enumerate(k.generator_indices):
            expected = alpha[b][gen_maps[gi]]
            if not np.array_equal(alpha[k.mul(b, gidx)], expected):
                raise ActionError("action does not extend to a homomorphism on K")

    nt = np.asarray(n.mul_table, dtype=np.int32)
    kt = np.asarray(k.mul_table, dtype=np.int32)
    ko = np.int32(k.order)
    idx = np.arange(order, dtype=np.int32)
    n_part, k_part = idx // ko, idx % ko
    pair_table = np.empty((order, order), dtype=np.int32)
    for i in range(order):
        a1, b1 = int(n_part[i]), int(k_part[i])
        pair_table[i] = nt[a1, alpha[b1][n_part]] * ko + kt[b1, k_part]

    gen_ids = [int(n.generator_indices[i]) * k.order for i in range(len(n.generators))]
    gen_ids += [int(b) for b in k.generator_indices]
    return _realize_regular(pair_table, gen_ids)


def quotient_group(g: Group, n: "Subgroup") -> Group:  # noqa: F821
    """G/N as a permutation group on the cosets of N, acted on by right multiplication."""
    from .lattice import is_normal  # local import to avoid a module cycle

    if n.parent is not g:
        raise ValidationError("subgroup does not belong to the given group")
    if not is_normal(g, n):
        raise PreconditionError("quotient requires a normal subgroup")
    members = n.member_indices()
    coset_key = {}
    for x in range(g.order):
        if x in coset_key:
            continue
        key = min(g.mul(a, x) for a in members)
        for a in members:
            coset_key[g.mul(a, x)] = key
    keys = sorted(set(coset_key.values()))
    rank = {key: i for i, key in enumerate(keys)}
    count = len(keys)
    element_perms = sorted(
        {tuple(rank[coset_key[g.mul(key, c)]] for key in keys) for c in keys}
    )
    if len(element_perms) != count:
        raise ValidationError("coset action is not well-defined; subgroup is not normal")
    gens = []
    for gi in g.generator_indices:
        p = tuple(rank[coset_key[g.mul(key, coset_key[gi])]] for key in keys)
        if p != perms.identity(count) or count == 1:
            gens.append(p)
    seen = set()
    gens = [p for p in gens if not (p in seen or seen.add(p))]
    return Group(count, tuple(gens), tuple(element_perms))


def closure_indices(g: Group, seeds: Iterable[int]) -> tuple[int, ...]:
    """Sorted element indices of the subgroup generated by the seed indices."""
    members = [0]
    present = {0}
    for s in seeds:
        if s not in present:
            members.append(s)
            present.add(s)
    pos = 1
    while pos < len(members):
        x = members[pos]
        pos += 1
        for i in range(len(members)):
            y = members[i]
            for z in (g.mul(x, y), g.mul(y, x)):
                if z not in present:
                    members.append(z)
                    present.add(z)
    return tuple(sorted(present))


def generating_set(g: Group) -> tuple[int, ...]:
    """A small (greedy, deterministic) generating sequence of element indices."""
    if g.order == 1:
        return ()
    orders = g.element_orders
    candidates = sorted(range(g.order), key=lambda i: (-orders[i], i))
    gens: list[int] = []
    current = {0}
    for c in candidates:
        if c in current:
            continue
        gens.append(c)
        current = set(closure_indices(g, gens))
        if len(current) == g.order:
            break
    return tuple(gens)


def _invariant_fingerprint(g: Group) -> tuple:
    orders = tuple(sorted(g.element_orders))
    gens = g.generator_indices
    abelian = all(g.mul(a, b) == g.mul(b, a) for a in gens for b in gens)
    center = sum(
        1
        for x in range(g.order)
        if all(g.mul(x, a) == g.mul(a, x) for a in gens)
    )
    return (g.order, orders, abelian, center)


def are_isomorphic(g: Group, h: Group, max_order: int | None = None) -> bool:
    """Decide isomorphism by invariant prefilter plus backtracking on generator images."""
    cap = DEFAULT_MAX_ISO_ORDER if max_order is None else int(max_order)
    if g.order != h.order:
        return False
    if g.order > cap:
        raise SizeLimitError(
            f"isomorphism testing is supported up to order {cap}, got {g.order}"
        )
    if _invariant_fingerprint(g) != _invariant_fingerprint(h):
        return False
    if g.order == 1:
        return True

    gens = generating_set(g)
    g_orders = g.element_orders
    h_orders = h.element_orders
    candidates = [
        [x for x in range(h.order) if h_orders[x] == g_orders[gen]] for gen in gens
    ]

    def extend(mapping: dict[int, int], used: set[int], depth: int) -> bool:
        if depth == len(gens):
            if len(mapping) != g.order:
                return False
            return all(
                mapping[g.mul(a, b)] == h.mul(mapping[a], mapping[b])
                for a in range(g.order)
                for b in range(g.order)
            )
        for target in candidates[depth]:
            if target in used:
                continue
            new_map = dict(mapping)
            new_used = set(used)
            if _grow_partial(g, h, new_map, new_used, gens[depth], target):
                if extend(new_map, new_used, depth + 1):
                    return True
        return False

    def _grow_partial(g, h, mapping, used, gen, target) -> bool:
        """Extend mapping to the closure of dom(mapping) + gen; fail on any conflict."""
        if target in used:
            return False
        mapping[gen] = target
        used.add(target)
        frontier = [gen]
        domain = list(mapping)
        while frontier:
            x = frontier.pop()
            for y in list(domain):
                for a, b in ((x, y), (y, x)):
                    z = g.mul(a, b)
                    w = h.mul(mapping[a], mapping[b])
                    if z in mapping:
                        if mapping[z] != w:
                            return False
                    else:
                        if w in used:
                            return False
                        mapping[z] = w
                        used.add(w)
                        frontier.append(z)
                        domain.append(z)
        return True

    return extend({0: 0}, {0}, 0)
