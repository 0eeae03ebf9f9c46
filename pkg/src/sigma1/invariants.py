"""Exact subgroup-order sums and commutator series.

All ratios are `fractions.Fraction` values, so comparisons against bounds like
2 + 11/n are exact.  Python integers are unbounded, which rules out silent
overflow in the sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .groups import Group, closure_indices
from .lattice import Subgroup, SubgroupLattice, all_subgroups

Rational = Fraction


@dataclass(frozen=True)
class Sigma1Breakdown:
    """Per-order subgroup counts behind one sigma1 value."""

    group_order: int
    counts: dict[int, int]
    total: int
    sigma1: Fraction


def sigma1(g: Group, max_lattice: int | None = None) -> Fraction:
    """Sum of |H| over all subgroups H, divided by |G|, as an exact fraction."""
    lat = all_subgroups(g, max_lattice)
    return Fraction(sum(s.order for s in lat.subgroups), g.order)


def sigma1_breakdown(g: Group, max_lattice: int | None = None) -> Sigma1Breakdown:
    lat = all_subgroups(g, max_lattice)
    counts: dict[int, int] = {}
    for s in lat.subgroups:
        counts[s.order] = counts.get(s.order, 0) + 1
    counts = dict(sorted(counts.items()))
    total = sum(order * count for order, count in counts.items())
    return Sigma1Breakdown(g.order, counts, total, Fraction(total, g.order))


def cyclic_subgroup_sum(g: Group, max_lattice: int | None = None) -> int:
    """Sum of |H| over the cyclic subgroups of g; always at least |G|."""
    lat = all_subgroups(g, max_lattice)
    return sum(s.order for s in lat.subgroups if s.is_cyclic())


def nonnormal_maximal_class_sum(lattice: SubgroupLattice, class_id: int) -> int:
    """Sum of |H| over one conjugacy class of non-normal maximal subgroups."""
    if not 0 <= class_id < len(lattice.classes):
        raise PreconditionError(f"no conjugacy class with id {class_id}")
    cls = lattice.classes[class_id]
    if cls.is_normal:
        raise PreconditionError("class is normal; the class sum applies to non-normal classes")
    if cls.representative not in lattice.maximal_ids:
        raise PreconditionError("class members are not maximal subgroups")
    return cls.order * cls.size


def _commutator_subgroup(g: Group, left: tuple[int, ...], right: tuple[int, ...]) -> Subgroup:
    """Subgroup generated by all commutators [a, b] with a in left, b in right."""
    seeds = sorted({g.commutator(a, b) for a in left for b in right} - {0})
    members = closure_indices(g, seeds)
    mask = 0
    for i in members:
        mask |= 1 << i
    from .lattice import _conjugate_mask, _greedy_subgroup_gens

    return Subgroup(
        parent=g,
        members=mask,
        order=len(members),
        is_normal=all(
            _conjugate_mask(g, mask, c) == mask for c in g.generator_indices
        ),
        gens=_greedy_subgroup_gens(g, members),
    )


def _whole_subgroup(g: Group) -> Subgroup:
    from .lattice import _greedy_subgroup_gens

    mask = (1 << g.order) - 1
    return Subgroup(
        parent=g,
        members=mask,
        order=g.order,
        is_normal=True,
        gens=g.generator_indices or _greedy_subgroup_gens(g, tuple(range(g.order))),
    )


def derived_series(g: Group) -> list[Subgroup]:
    """G >= G' >= G'' >= ... down to stabilization."""
    series = [_whole_subgroup(g)]
    current = tuple(range(g.order))
    while True:
        nxt = _commutator_subgroup(g, current, current)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)
        if nxt.order == 1:
            return series
        current = nxt.member_indices()


def lower_central_series(g: Group) -> list[Subgroup]:
    """gamma_1 = G, gamma_{k+1} = [gamma_k, G], down to stabilization."""
    everything = tuple(range(g.order))
    series = [_whole_subgroup(g)]
    current = everything
    while True:
        nxt = _commutator_subgroup(g, current, everything)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)
        if nxt.order == 1:
            return series
        current = nxt.member_indices()
