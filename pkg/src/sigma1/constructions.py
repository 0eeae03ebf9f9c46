"""Builders for named groups, the (Cp x Cp) x| Cq family, and the small-group catalog."""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import perms
from .arith import is_prime
from .errors import ParseError, SizeLimitError, ValidationError
from .groups import (
    Automorphism,
    Group,
    are_isomorphic,
    close_generators,
    direct_product,
    semidirect_product,
)
from .invariants import sigma1
from .lattice import max_lattice_order


def cyclic(n: int, max_order: int | None = None) -> Group:
    """Cyclic group of order n as the rotation group on n points."""
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    from .groups import MUL_TABLE_MAX_ORDER, max_group_order

    cap = max_group_order(max_order)
    if n > cap:
        raise SizeLimitError(f"order {n} exceeds the maximum group order {cap}")
    elements = tuple(tuple(range(a, n)) + tuple(range(a)) for a in range(n))
    gens = (elements[1],) if n > 1 else ()
    table = None
    if n <= MUL_TABLE_MAX_ORDER:
        ids = list(range(n))
        table = [ids[i:] + ids[:i] for i in range(n)]
    return Group(n, gens, elements, table)


def dihedral(n: int, max_order: int | None = None) -> Group:
    """Dihedral group of order 2n (for n <= 2 this degenerates to C2 and C2xC2)."""
    if n < 1:
        raise ValidationError(f"dihedral parameter must be positive, got {n}")
    if n == 1:
        return cyclic(2, max_order)
    if n == 2:
        return direct_product(cyclic(2), cyclic(2), max_order)
    rotation = tuple((x + 1) % n for x in range(n))
    reflection = tuple((n - x) % n for x in range(n))
    return close_generators(n, [rotation, reflection], max_order)


def dicyclic(n: int, max_order: int | None = None) -> Group:
    """Dicyclic group of order 4n: <a, b | a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1>."""
    if n < 1:
        raise ValidationError(f"dicyclic parameter must be positive, got {n}")
    from .groups import MUL_TABLE_MAX_ORDER, _realize_regular, max_group_order

    order = 4 * n
    cap = max_group_order(max_order)
    if order > cap or order > MUL_TABLE_MAX_ORDER:
        raise SizeLimitError(f"dicyclic order {order} exceeds the supported bounds")
    two_n = 2 * n
    table = np.empty((order, order), dtype=np.int32)
    for i1 in range(two_n):
        for j1 in range(2):
            row = table[i1 * 2 + j1]
            for i2 in range(two_n):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % two_n, j2
                    else:
                        i, j = (i1 - i2 + n * j2) % two_n, 1 - j2
                    row[i2 * 2 + j2] = i * 2 + j
    return _realize_regular(table, [2, 1])  # a = (1, 0), b = (0, 1)


def symmetric3(max_order: int | None = None) -> Group:
    return close_generators(3, [perms.from_cycles(3, (0, 1)), perms.from_cycles(3, (0, 1, 2))], max_order)


def symmetric4(max_order: int | None = None) -> Group:
    return close_generators(4, [perms.from_cycles(4, (0, 1)), perms.from_cycles(4, (0, 1, 2, 3))], max_order)


def alternating4(max_order: int | None = None) -> Group:
    gens = [perms.from_cycles(4, (0, 1), (2, 3)), perms.from_cycles(4, (0, 1, 2))]
    return close_generators(4, gens, max_order)


def frobenius56(max_order: int | None = None) -> Group:
    """The order-56 Frobenius group (C2)^3 x| C7, as affine maps of GF(8).

    Points are field elements encoded in bits over x^3 + x + 1; the translation
    by 1 and multiplication by x generate all 8 translations and the order-7
    multiplier, which cycles the seven involution directions in one orbit.
    """

    def times_x(v: int) -> int:
        return ((v << 1) & 0b111) ^ (0b011 if v & 0b100 else 0)

    translate = tuple(v ^ 1 for v in range(8))
    multiply = tuple(times_x(v) for v in range(8))
    group = close_generators(8, [translate, multiply], max_order)
    if group.order != 56:
        raise RuntimeError("Frobenius construction produced the wrong order")
    return group


def elementary_abelian_square(p: int, max_order: int | None = None) -> Group:
    """Cp x Cp for a prime p."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    return direct_product(cyclic(p), cyclic(p), max_order)


def _multiplicative_order(a: int, p: int) -> int:
    value = a % p
    order = 1
    while value != 1:
        value = value * a % p
        order += 1
    return order


def zp_rtimes_zn(p: int, n: int, max_order: int | None = None) -> Group:
    """Cp x| Cn with Cn acting by x -> a*x for the smallest a of order n mod p."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if n < 2:
        raise ValidationError("the acting cyclic factor must have order at least 2")
    if (p - 1) % n != 0:
        raise ValidationError(f"{n} does not divide p - 1 = {p - 1}")
    a = next(x for x in range(2, p) if _multiplicative_order(x, p) == n)
    base = cyclic(p)
    acting = cyclic(n)
    images = tuple(a * v % p for v in range(p))
    action = {acting.generators[0]: Automorphism(base, images)}
    return semidirect_product(base, acting, action, max_order)


class ActionMode(enum.Enum):
    IRREDUCIBLE = "IRREDUCIBLE"
    SCALAR = "SCALAR"


def _mat_mul(m1, m2, p):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g) % p, (a * f + b * h) % p), ((c * e + d * g) % p, (c * f + d * h) % p)


def _mat_pow(m, k, p):
    out = ((1, 0), (0, 1))
    for _ in range(k):
        out = _mat_mul(out, m, p)
    return out


def _has_eigenvalue(m, p):
    (a, b), (c, d) = m
    return any(((a - lam) * (d - lam) - b * c) % p == 0 for lam in range(p))


def _order_q_matrix(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lexicographically first 2x2 matrix mod p of multiplicative order q with
    no eigenvalue in the base field."""
    identity = ((1, 0), (0, 1))
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    m = ((a, b), (c, d))
                    if m == identity:
                        continue
                    if _mat_pow(m, q, p) != identity:
                        continue
                    if _has_eigenvalue(m, p):
                        continue
                    return m
    raise RuntimeError(f"no fixed-point-free matrix of order {q} exists mod {p}")


def pxp_rtimes_zq(
    p: int, q: int, mode: ActionMode = ActionMode.IRREDUCIBLE, max_order: int | None = None
) -> Group:
    """(Cp x Cp) x| Cq of order p^2 * q.

    IRREDUCIBLE needs q | p+1 and q not dividing p-1; the action matrix then
    fixes no line, so no subgroup of order p*q exists.  SCALAR needs q | p-1
    and acts by the scalar matrix lambda*I, which fixes every line.
    """
    if not is_prime(p) or not is_prime(q):
        raise ValidationError(f"both parameters must be prime, got {p} and {q}")
    if mode is ActionMode.IRREDUCIBLE:
        if (p + 1) % q != 0:
            raise ValidationError(f"IRREDUCIBLE needs {q} | p + 1 = {p + 1}")
        if (p - 1) % q == 0:
            raise ValidationError(f"IRREDUCIBLE needs {q} not dividing p - 1 = {p - 1}")
        matrix = _order_q_matrix(p, q)
    else:
        if (p - 1) % q != 0:
            raise ValidationError(f"SCALAR needs {q} | p - 1 = {p - 1}")
        lam = next(x for x in range(2, p) if _multiplicative_order(x, p) == q)
        matrix = ((lam, 0), (0, lam))
    base = elementary_abelian_square(p)
    acting = cyclic(q)
    (m00, m01), (m10, m11) = matrix
    images = tuple(
        ((u * m00 + v * m10) % p) * p + ((u * m01 + v * m11) % p)
        for u in range(p)
        for v in range(p)
    )
    action = {acting.generators[0]: Automorphism(base, images)}
    return semidirect_product(base, acting, action, max_order)


@dataclass(frozen=True)
class FamilyMember:
    """One term of the non-supersolvable family with sigma1 tending to 2."""

    q: int
    p: int
    order: int
    sigma1: Fraction
    materialized: bool
    group: Group | None


def _odd_primes(count: int) -> list[int]:
    out = []
    candidate = 3
    while len(out) < count:
        if is_prime(candidate):
            out.append(candidate)
        candidate += 2
    return out


def _smallest_partner_prime(q: int) -> int:
    p = 2
    while True:
        if is_prime(p) and (p + 1) % q == 0:
            return p
        p += 1


def family_gn(count: int, max_lattice: int | None = None) -> list[FamilyMember]:
    """First `count` family members (Cp x Cp) x| Cq over the odd primes q.

    p is the smallest prime with q | p + 1.  Members whose order fits within
    the lattice bound are materialized and their enumerated sigma1 must agree
    with the closed form 2 + (2 + 1/p + 1/p^2)/q; the rest are reported from
    the closed form alone.
    """
    if count < 1:
        raise ValidationError("count must be at least 1")
    bound = max_lattice_order(max_lattice)
    members = []
    for q in _odd_primes(count):
        p = _smallest_partner_prime(q)
        order = p * p * q
        closed_form = 2 + Fraction(2 * p * p + p + 1, p * p * q)
        if order <= bound:
            group = pxp_rtimes_zq(p, q, ActionMode.IRREDUCIBLE)
            enumerated = sigma1(group, bound)
            if enumerated != closed_form:
                raise RuntimeError(
                    f"enumerated sigma1 {enumerated} disagrees with the closed form "
                    f"{closed_form} for (p, q) = ({p}, {q})"
                )
            members.append(FamilyMember(q, p, order, enumerated, True, group))
        else:
            members.append(FamilyMember(q, p, order, closed_form, False, None))
    return members


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog group with its canonical label and construction recipe."""

    name: str
    group: Group
    order: int
    provenance: str


# Isomorphism-class counts for orders 1..15, from the standard classification
# of finite groups of small order (external data, enforced at build time).
CATALOG_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1)

_CATALOG_RECIPES: dict[int, tuple[str, ...]] = {
    1: ("C1",),
    2: ("C2",),
    3: ("C3",),
    4: ("C4", "C2xC2"),
    5: ("C5",),
    6: ("C6", "S3"),
    7: ("C7",),
    8: ("C8", "C2xC4", "C2xC2xC2", "D4", "Q8"),
    9: ("C9", "C3xC3"),
    10: ("C10", "D5"),
    11: ("C11",),
    12: ("C12", "C2xC6", "D6", "A4", "Dic3"),
    13: ("C13",),
    14: ("C14", "D7"),
    15: ("C15",),
}


@functools.lru_cache(maxsize=None)
def catalog(max_order: int = 15) -> tuple[CatalogEntry, ...]:
    """Complete, duplicate-free catalog of the groups of order <= max_order."""
    if not 1 <= max_order <= 15:
        raise ValidationError("the catalog covers orders 1 through 15")
    entries = []
    for order in range(1, max_order + 1):
        recipes = _CATALOG_RECIPES[order]
        if len(recipes) != CATALOG_COUNTS[order - 1]:
            raise RuntimeError(f"catalog recipe count mismatch at order {order}")
        slice_entries = []
        for expr in recipes:
            group = build(expr)
            if group.order != order:
                raise RuntimeError(f"recipe {expr!r} built order {group.order}, not {order}")
            slice_entries.append(CatalogEntry(expr, group, order, expr))
        for i in range(len(slice_entries)):
            for j in range(i + 1, len(slice_entries)):
                if are_isomorphic(slice_entries[i].group, slice_entries[j].group):
                    raise RuntimeError(
                        f"catalog entries {slice_entries[i].name} and "
                        f"{slice_entries[j].name} are isomorphic"
                    )
        entries.extend(slice_entries)
    return tuple(entries)


_ATOM_CYCLIC = re.compile(r"C(\d+)$")
_ATOM_DIHEDRAL = re.compile(r"D(\d+)$")
_ATOM_DICYCLIC = re.compile(r"Dic(\d+)$")
_ATOM_ELEMENTARY = re.compile(r"E(\d+)$")
_ATOM_ZP_ZN = re.compile(r"C(\d+):C(\d+)$")
_ATOM_PXP_ZQ = re.compile(r"E(\d+):C(\d+)$")


def _square_root_of_prime_square(n: int) -> int:
    root = int(n**0.5)
    for candidate in (root - 1, root, root + 1):
        if candidate >= 2 and candidate * candidate == n and is_prime(candidate):
            return candidate
    raise ParseError(f"E{n} is not a prime square")


def _build_atom(token: str, max_order: int | None) -> Group:
    if token == "Q8":
        return dicyclic(2, max_order)
    if token == "A4":
        return alternating4(max_order)
    if token == "S3":
        return symmetric3(max_order)
    if token == "S4":
        return symmetric4(max_order)
    if token == "F8":
        return frobenius56(max_order)
    if m := _ATOM_ZP_ZN.match(token):
        return zp_rtimes_zn(int(m.group(1)), int(m.group(2)), max_order)
    if m := _ATOM_PXP_ZQ.match(token):
        p = _square_root_of_prime_square(int(m.group(1)))
        q = int(m.group(2))
        if not is_prime(q):
            raise ParseError(f"{q} is not prime in {token!r}")
        return pxp_rtimes_zq(p, q, ActionMode.IRREDUCIBLE, max_order)
    if m := _ATOM_CYCLIC.match(token):
        return cyclic(int(m.group(1)), max_order)
    if m := _ATOM_DIHEDRAL.match(token):
        return dihedral(int(m.group(1)), max_order)
    if m := _ATOM_DICYCLIC.match(token):
        return dicyclic(int(m.group(1)), max_order)
    if m := _ATOM_ELEMENTARY.match(token):
        return elementary_abelian_square(_square_root_of_prime_square(int(m.group(1))), max_order)
    raise ParseError(f"unrecognized atom {token!r}")


def build(expr: str, max_order: int | None = None) -> Group:
    """Build a group from the expression grammar.

    expr := atom ("x" atom)*, a left-associative direct product.  Atoms:
    C<n>, D<n> (order 2n), Q8, Dic<n> (order 4n), A4, S4, S3, F8,
    E<p^2> (elementary abelian), C<p>:C<n>, and E<p^2>:C<q>.
    """
    if not isinstance(expr, str) or not expr:
        raise ParseError("expression must be a nonempty string")
    tokens = expr.split("x")
    if any(not t for t in tokens):
        raise ParseError(f"empty factor in {expr!r}")
    group = _build_atom(tokens[0], max_order)
    for token in tokens[1:]:
        group = direct_product(group, _build_atom(token, max_order), max_order)
    return group
