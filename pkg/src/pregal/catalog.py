"""Named constructions of small permutation groups and model fixtures.

The builders return groups in their natural degree.  ``groups_of_order``
covers every isomorphism type up to order 8, which is what the regular
subgroup search needs, and ``identify`` names a group by matching it
against the builders.
"""

from __future__ import annotations

from typing import Optional

from .errors import DegreeMismatch
from .permgroup import Perm, PermGroup, closure, is_isomorphic


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise DegreeMismatch("cyclic group needs n >= 1")
    if n == 1:
        return PermGroup(1, (), (Perm.identity(1),))
    return closure(n, [Perm.from_cycles(n, [tuple(range(n))])])


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise DegreeMismatch("symmetric group needs n >= 1")
    if n == 1:
        return PermGroup(1, (), (Perm.identity(1),))
    if n == 2:
        return closure(2, [Perm.from_cycles(2, [(0, 1)])])
    return closure(n, [Perm.from_cycles(n, [tuple(range(n))]), Perm.from_cycles(n, [(0, 1)])])


def alternating(n: int) -> PermGroup:
    if n < 3:
        if n < 1:
            raise DegreeMismatch("alternating group needs n >= 1")
        return PermGroup(n, (), (Perm.identity(n),))
    if n == 3:
        return closure(3, [Perm.from_cycles(3, [(0, 1, 2)])])
    three = Perm.from_cycles(n, [(0, 1, 2)])
    if n % 2 == 1:
        big = Perm.from_cycles(n, [tuple(range(n))])
    else:
        big = Perm.from_cycles(n, [tuple(range(1, n))])
    return closure(n, [three, big])


def dihedral(n: int) -> PermGroup:
    """Symmetries of the regular n-gon (order 2n), acting on its vertices."""
    if n < 3:
        raise DegreeMismatch("dihedral group needs n >= 3")
    rot = Perm.from_cycles(n, [tuple(range(n))])
    refl = Perm(tuple((n - i) % n for i in range(n)))
    return closure(n, [rot, refl])


def klein_four() -> PermGroup:
    return closure(4, [Perm.from_cycles(4, [(0, 1), (2, 3)]), Perm.from_cycles(4, [(0, 2), (1, 3)])])


def quaternion8() -> PermGroup:
    """Q8 in its regular action on 8 points."""
    i = Perm.from_cycles(8, [(0, 2, 1, 3), (4, 6, 5, 7)])
    j = Perm.from_cycles(8, [(0, 4, 1, 5), (2, 7, 3, 6)])
    return closure(8, [i, j])


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    """A x B acting on the disjoint union of the two point sets."""
    da, db = a.degree, b.degree
    gens = []
    for g in a.generators:
        gens.append(Perm(tuple(g.images) + tuple(da + i for i in range(db))))
    for g in b.generators:
        gens.append(Perm(tuple(range(da)) + tuple(da + x for x in g.images)))
    return closure(da + db, gens, max_elements=a.order * b.order)


def embed_left(a: PermGroup, p: Perm, total_degree: int) -> Perm:
    return Perm(tuple(p.images) + tuple(range(a.degree, total_degree)))


def embed_right(offset: int, p: Perm, total_degree: int) -> Perm:
    return Perm(tuple(range(offset)) + tuple(offset + x for x in p.images))


def elementary_abelian_8() -> PermGroup:
    return direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))


def groups_of_order(n: int) -> tuple:
    """(name, group) for every isomorphism type of order n <= 8."""
    table = {
        1: (("C1", lambda: cyclic(1)),),
        2: (("C2", lambda: cyclic(2)),),
        3: (("C3", lambda: cyclic(3)),),
        4: (("C4", lambda: cyclic(4)), ("V4", klein_four)),
        5: (("C5", lambda: cyclic(5)),),
        6: (("C6", lambda: cyclic(6)), ("S3", lambda: symmetric(3))),
        7: (("C7", lambda: cyclic(7)),),
        8: (
            ("C8", lambda: cyclic(8)),
            ("C4xC2", lambda: direct_product(cyclic(4), cyclic(2))),
            ("C2xC2xC2", elementary_abelian_8),
            ("D8", lambda: dihedral(4)),
            ("Q8", quaternion8),
        ),
    }
    if n not in table:
        raise DegreeMismatch(f"no catalog of abstract groups of order {n}")
    return tuple((name, build()) for name, build in table[n])


_NAMED = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "C7": lambda: cyclic(7),
    "C8": lambda: cyclic(8),
    "C9": lambda: cyclic(9),
    "C10": lambda: cyclic(10),
    "C11": lambda: cyclic(11),
    "C12": lambda: cyclic(12),
    "V4": klein_four,
    "C4xC2": lambda: direct_product(cyclic(4), cyclic(2)),
    "C2xC2xC2": elementary_abelian_8,
    "D8": lambda: dihedral(4),
    "D10": lambda: dihedral(5),
    "D12": lambda: dihedral(6),
    "Q8": quaternion8,
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "S5": lambda: symmetric(5),
    "S6": lambda: symmetric(6),
    "A4": lambda: alternating(4),
    "A5": lambda: alternating(5),
    "A6": lambda: alternating(6),
    "S3xC2": lambda: direct_product(symmetric(3), cyclic(2)),
    "S3xS3": lambda: direct_product(symmetric(3), symmetric(3)),
    "A4xC2": lambda: direct_product(alternating(4), cyclic(2)),
    "C3xC3": lambda: direct_product(cyclic(3), cyclic(3)),
    "C5xC5": lambda: direct_product(cyclic(5), cyclic(5)),
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
}

_cache: dict = {}


def named_group(name: str) -> PermGroup:
    if name not in _NAMED:
        raise DegreeMismatch(f"unknown catalog group {name!r}")
    if name not in _cache:
        _cache[name] = _NAMED[name]()
    return _cache[name]


def catalog_names() -> tuple:
    return tuple(sorted(_NAMED))


#: order -> names worth trying when identifying a group
_IDENTIFY_ORDER = {
    1: ("C1",),
    2: ("C2",),
    3: ("C3",),
    4: ("C4", "V4"),
    5: ("C5",),
    6: ("C6", "S3"),
    7: ("C7",),
    8: ("C8", "C4xC2", "C2xC2xC2", "D8", "Q8"),
    9: ("C9", "C3xC3"),
    10: ("C10", "D10"),
    11: ("C11",),
    12: ("C12", "D12", "A4"),
    24: ("S4",),
    25: ("C5xC5",),
    36: ("S3xS3",),
    60: ("A5",),
    120: ("S5",),
    360: ("A6",),
    720: ("S6",),
}


def identify(group: PermGroup) -> str:
    """Best-effort isomorphism-type name; falls back to the bare order."""
    for name in _IDENTIFY_ORDER.get(group.order, ()):
        if is_isomorphic(group, named_group(name)):
            return name
    return f"group_of_order_{group.order}"
