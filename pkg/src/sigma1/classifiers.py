"""Structure predicates and exact verdicts against the sigma1 bounds.

Supersolvability and nilpotency are each decided by two independent criteria
(a lattice-level test and a series/chain oracle); a disagreement means an
implementation bug and raises immediately.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime
from .groups import Group, quotient_group
from .invariants import derived_series, lower_central_series, sigma1
from .lattice import all_subgroups, sylow_subgroups


class Bound(enum.Enum):
    TWO = "TWO"
    TWO_PLUS_4_OVER_N = "TWO_PLUS_4_OVER_N"
    TWO_PLUS_11_OVER_N = "TWO_PLUS_11_OVER_N"
    THREE = "THREE"


class Verdict(enum.Enum):
    BELOW = "BELOW"
    EQUAL = "EQUAL"
    ABOVE = "ABOVE"


def bound_value(bound: Bound, order: int) -> Fraction:
    if bound is Bound.TWO:
        return Fraction(2)
    if bound is Bound.TWO_PLUS_4_OVER_N:
        return 2 + Fraction(4, order)
    if bound is Bound.TWO_PLUS_11_OVER_N:
        return 2 + Fraction(11, order)
    return Fraction(3)


def bound_verdict(g: Group, bound: Bound, max_lattice: int | None = None) -> Verdict:
    """Exact trichotomy of sigma1(g) against the named bound at n = |g|."""
    value = sigma1(g, max_lattice)
    target = bound_value(bound, g.order)
    if value < target:
        return Verdict.BELOW
    if value == target:
        return Verdict.EQUAL
    return Verdict.ABOVE


def is_cyclic(g: Group) -> bool:
    return max(g.element_orders) == g.order


def is_abelian(g: Group) -> bool:
    gens = g.generator_indices
    return all(g.mul(a, b) == g.mul(b, a) for a in gens for b in gens)


def is_p_group(g: Group) -> bool:
    return len(factorize(g.order).pairs) == 1


def nilpotent_via_sylow(g: Group, max_lattice: int | None = None) -> bool:
    """Every Sylow subgroup is normal, i.e. unique."""
    lat = all_subgroups(g, max_lattice)
    primes = [p for p, _ in factorize(g.order).pairs]
    return all(len(sylow_subgroups(lat, p)) == 1 for p in primes)


def nilpotent_via_lower_central(g: Group) -> bool:
    return lower_central_series(g)[-1].order == 1


def is_nilpotent(g: Group, max_lattice: int | None = None) -> bool:
    primary = nilpotent_via_sylow(g, max_lattice)
    oracle = nilpotent_via_lower_central(g)
    if primary != oracle:
        raise RuntimeError(
            f"nilpotency criteria disagree on a group of order {g.order}: "
            f"sylow={primary}, lower-central={oracle}"
        )
    return primary


def is_solvable(g: Group) -> bool:
    return derived_series(g)[-1].order == 1


def supersolvable_via_prime_index(g: Group, max_lattice: int | None = None) -> bool:
    """Every maximal subgroup has prime index."""
    lat = all_subgroups(g, max_lattice)
    return all(
        is_prime(g.order // lat.subgroups[i].order) for i in lat.maximal_ids
    )


def supersolvable_via_normal_chain(g: Group, max_lattice: int | None = None) -> bool:
    """A chain 1 = N0 < ... < Nk = G of normal subgroups with cyclic factors exists."""
    lat = all_subgroups(g, max_lattice)
    normals = [s for s in lat.subgroups if s.is_normal]
    normals.sort(key=lambda s: (s.order, s.members))
    whole = normals[-1]

    def cyclic_factor(small, large) -> bool:
        """large/small is cyclic iff some coset generates it, i.e. has order = index."""
        index = large.order // small.order
        if index == 1:
            return True
        small_mask = small.members
        for x in large.member_indices():
            if (small_mask >> x) & 1:
                continue
            steps = 1  # smallest m with x^m inside `small` is the coset order
            cursor = x
            while not (small_mask >> cursor) & 1:
                cursor = g.mul(cursor, x)
                steps += 1
            if steps == index:
                return True
        return False

    reachable = {normals[0].members}
    frontier = [normals[0]]
    while frontier:
        current = frontier.pop()
        if current.members == whole.members:
            return True
        for candidate in normals:
            if candidate.members in reachable:
                continue
            if candidate.order <= current.order:
                continue
            if current.members | candidate.members != candidate.members:
                continue
            if cyclic_factor(current, candidate):
                reachable.add(candidate.members)
                frontier.append(candidate)
    return whole.members in reachable


def is_supersolvable(g: Group, max_lattice: int | None = None) -> bool:
    primary = supersolvable_via_prime_index(g, max_lattice)
    oracle = supersolvable_via_normal_chain(g, max_lattice)
    if primary != oracle:
        raise RuntimeError(
            f"supersolvability criteria disagree on a group of order {g.order}: "
            f"prime-index={primary}, normal-chain={oracle}"
        )
    return primary


def has_cyclic_maximal_subgroup(g: Group, max_lattice: int | None = None) -> bool:
    lat = all_subgroups(g, max_lattice)
    return any(lat.subgroups[i].is_cyclic() for i in lat.maximal_ids)


@dataclass(frozen=True)
class NonnormalMaximalShape:
    """Shape report for non-nilpotent groups with sigma1 below 3."""

    applies: bool
    unique_nonnormal_class: bool
    class_members_cyclic: bool


def unique_nonnormal_maximal_profile(
    g: Group, max_lattice: int | None = None
) -> NonnormalMaximalShape:
    """Whether exactly one non-normal maximal class exists and is made of cyclic groups."""
    lat = all_subgroups(g, max_lattice)
    applies = sigma1(g, max_lattice) < 3 and not is_nilpotent(g, max_lattice)
    nonnormal_maximal = [
        cls
        for cls in lat.classes
        if not cls.is_normal and cls.representative in lat.maximal_ids
    ]
    unique = len(nonnormal_maximal) == 1
    cyclic = bool(nonnormal_maximal) and all(
        lat.subgroups[cls.representative].is_cyclic() for cls in nonnormal_maximal
    )
    return NonnormalMaximalShape(applies, unique, cyclic)


@dataclass(frozen=True)
class StructuralProfile:
    """One-group summary of structure flags, sigma1, and bound verdicts."""

    order: int
    is_cyclic: bool
    is_abelian: bool
    is_p_group: bool
    is_nilpotent: bool
    is_supersolvable: bool
    is_solvable: bool
    has_cyclic_maximal: bool
    nonnormal_maximal_class_count: int
    sigma1: Fraction
    bound_verdicts: dict[str, str]


def structural_profile(g: Group, max_lattice: int | None = None) -> StructuralProfile:
    lat = all_subgroups(g, max_lattice)
    nonnormal_maximal = sum(
        1
        for cls in lat.classes
        if not cls.is_normal and cls.representative in lat.maximal_ids
    )
    profile = StructuralProfile(
        order=g.order,
        is_cyclic=is_cyclic(g),
        is_abelian=is_abelian(g),
        is_p_group=is_p_group(g),
        is_nilpotent=is_nilpotent(g, max_lattice),
        is_supersolvable=is_supersolvable(g, max_lattice),
        is_solvable=is_solvable(g),
        has_cyclic_maximal=has_cyclic_maximal_subgroup(g, max_lattice),
        nonnormal_maximal_class_count=nonnormal_maximal,
        sigma1=sigma1(g, max_lattice),
        bound_verdicts={
            bound.value: bound_verdict(g, bound, max_lattice).value for bound in Bound
        },
    )
    flags = (
        profile.is_cyclic,
        profile.is_abelian,
        profile.is_nilpotent,
        profile.is_supersolvable,
        profile.is_solvable,
    )
    for earlier, later in zip(flags, flags[1:]):
        if earlier and not later:
            raise RuntimeError(
                f"implication chain violated for a group of order {g.order}"
            )
    return profile
