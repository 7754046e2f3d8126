"""Finite permutation groups with fully materialized element sets.

Everything here works at desk scale: groups are stored as sorted tuples of
permutations, and the expensive operations (subgroup enumeration,
automorphism search) run over explicit multiplication tables.  Permutations
act on the points 0..degree-1 and compose like functions: ``(p * q)(i) ==
p(q(i))``, so ``q`` is applied first.

All outputs are canonical: element lists are sorted lexicographically by
image tuples, subgroup lists by (order, element list), conjugacy classes by
(element order, class size, representative).  Repeated calls on equal inputs
produce identical objects.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    BoundExceeded,
    DegreeMismatch,
    NotAHomomorphism,
    NotNormal,
    NotSimple,
    NotSubgroup,
)

#: cap on materialized group order (closure refuses to grow past this)
DEFAULT_MAX_ELEMENTS = 10_000

#: cap on the order of a group whose full subgroup lattice may be enumerated
SUBGROUP_ENUM_BOUND = 2_000

#: cap on the order of a group whose automorphisms may be searched
AUT_BOUND = 720

#: largest symmetric-group degree that brute-force normalizer search accepts
SYMMETRIC_SEARCH_DEGREE = 8


class Perm:
    """An element of a finite symmetric group, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build a permutation of the given degree from 0-based cycles."""
        images = list(range(degree))
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise DegreeMismatch(f"point {point} out of range for degree {degree}")
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {tuple(cycle)}")
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        if sorted(images) != list(range(degree)):
            raise ValueError("cycles overlap")
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # function composition: self applied after other
        if len(self.images) != len(other.images):
            raise DegreeMismatch("cannot compose permutations of different degrees")
        s = self.images
        return Perm.__new_unchecked(tuple(s[i] for i in other.images))

    @classmethod
    def __new_unchecked(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        return p

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm.__new_unchecked(tuple(inv))

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(len(self.images))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, by: "Perm") -> "Perm":
        """Return ``by * self * by^-1``."""
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = _lcm(n, len(cycle))
        return n

    def cycles(self) -> tuple:
        """Nontrivial cycles, each starting at its least point, sorted."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_type(self) -> tuple:
        """Full partition of the degree by cycle lengths, descending."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (len(self.images) - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __le__(self, other: "Perm") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        if self.is_identity():
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in self.cycles())


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def closure(
    degree: int,
    generators: Iterable[Perm],
    *,
    max_elements: Optional[int] = None,
) -> "PermGroup":
    """Materialize the group generated by ``generators``.

    Breadth-first product saturation; raises :class:`BoundExceeded` as soon
    as the element count would pass ``max_elements``.
    """
    bound = DEFAULT_MAX_ELEMENTS if max_elements is None else max_elements
    generators = tuple(generators)
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
    identity = Perm.identity(degree)
    gens = [g for g in generators if not g.is_identity()]
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(
                            f"group closure passed {bound} elements",
                            bound=bound,
                            reached=len(seen) + 1,
                        )
                    seen.add(y)
                    new.append(y)
        frontier = new
    return PermGroup(degree, generators, tuple(sorted(seen)))


class PermGroup:
    """A fully materialized permutation group.

    Use :func:`closure` (or :meth:`PermGroup.generate`) rather than the raw
    constructor; the constructor trusts that ``elements`` is closed.
    """

    __slots__ = ("degree", "generators", "elements", "_index", "_hash", "_mul", "_orders")

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._hash = None
        self._mul = None
        self._orders = None

    @classmethod
    def generate(cls, degree: int, generators: Iterable[Perm], **kw) -> "PermGroup":
        return closure(degree, generators, **kw)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in self._index

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, self.elements))
        return self._hash

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def index_of(self, p: Perm) -> int:
        return self._index[p]

    def multiplication_table(self):
        """Index-level multiplication table; cached.  mul[i][j] = idx(e_i * e_j)."""
        if self._mul is None:
            idx = self._index
            els = self.elements
            self._mul = [[idx[a * b] for b in els] for a in els]
        return self._mul

    def element_orders(self):
        if self._orders is None:
            self._orders = tuple(p.order() for p in self.elements)
        return self._orders

    def exponent(self) -> int:
        n = 1
        for o in set(self.element_orders()):
            n = _lcm(n, o)
        return n

    def subgroup(self, elements: Iterable[Perm]) -> "Subgroup":
        """Wrap a set of elements as a subgroup after checking closure."""
        elems = tuple(sorted(set(elements)))
        if not elems:
            raise NotSubgroup("a subgroup must contain the identity")
        for p in elems:
            if p not in self._index:
                raise NotSubgroup(f"{p!r} is not an element of the parent group")
        elem_set = set(elems)
        if Perm.identity(self.degree) not in elem_set:
            raise NotSubgroup("missing identity")
        for a in elems:
            for b in elems:
                if a * b not in elem_set:
                    raise NotSubgroup(f"not closed: {a!r} * {b!r}")
        return Subgroup(self, elems)

    def generated_subgroup(self, generators: Iterable[Perm]) -> "Subgroup":
        """Subgroup generated inside this group by the given elements."""
        gens = tuple(generators)
        for p in gens:
            if p not in self._index:
                raise NotSubgroup(f"{p!r} is not an element of the parent group")
        sub = closure(self.degree, gens, max_elements=self.order)
        return Subgroup(self, sub.elements)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.elements)

    def point_stabilizer(self, point: int) -> "Subgroup":
        if not 0 <= point < self.degree:
            raise DegreeMismatch(f"point {point} out of range for degree {self.degree}")
        return Subgroup(self, tuple(p for p in self.elements if p(point) == point))

    def orbits(self) -> tuple:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for g in self.generators:
                    y = g(x)
                    if y not in orbit:
                        orbit.add(y)
                        queue.append(y)
            for x in orbit:
                seen[x] = True
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def center(self) -> "Subgroup":
        gens = self.generators
        members = [p for p in self.elements if all(p * g == g * p for g in gens)]
        return Subgroup(self, tuple(members))


class Subgroup:
    """A subgroup of a fixed parent :class:`PermGroup`, stored by elements."""

    __slots__ = ("parent", "elements", "_set", "_hash")

    def __init__(self, parent: PermGroup, elements: Sequence[Perm]):
        self.parent = parent
        self.elements = tuple(sorted(elements))
        self._set = frozenset(self.elements)
        self._hash = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.parent.degree

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, p: Perm) -> bool:
        return p in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.parent.degree, self.elements))
        return self._hash

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def generating_set(self) -> tuple:
        return generating_sequence(self.elements, self.degree)

    def as_group(self) -> PermGroup:
        return PermGroup(self.degree, self.generating_set(), self.elements)

    def is_normal(self) -> bool:
        gens = self.generating_set()
        for g in self.parent.generators:
            gi = g.inverse()
            for h in gens:
                if g * h * gi not in self._set:
                    return False
        return True

    def conjugate_by(self, g: Perm) -> "Subgroup":
        gi = g.inverse()
        return Subgroup(self.parent, tuple(g * h * gi for h in self.elements))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(self._set & other._set))

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other._set <= self._set


def generating_sequence(elements: Iterable[Perm], degree: int) -> tuple:
    """A short irredundant generating sequence, chosen canonically.

    Scans the elements in descending order and keeps those that enlarge the
    generated subgroup.  Descending order tends to pick high-order elements
    first, which keeps the sequence short.
    """
    elems = sorted(set(elements), reverse=True)
    total = len(elems)
    if total == 1:
        return ()
    chosen = []
    have = {Perm.identity(degree)}
    for p in elems:
        if p in have:
            continue
        chosen.append(p)
        have = set(closure(degree, chosen, max_elements=total).elements)
        if len(have) == total:
            break
    return tuple(chosen)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class of a :class:`PermGroup`."""

    parent: PermGroup
    representative: Perm
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def element_order(self) -> int:
        return self.representative.order()

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, p: Perm) -> bool:
        return p in self.member_set()

    def __repr__(self) -> str:
        return f"ConjClass(rep={self.representative!r}, size={self.size})"


def conjugacy_classes(group: PermGroup) -> tuple:
    """Conjugacy classes, sorted by (element order, size, representative)."""
    gens = group.generators or (group.identity,)
    gen_invs = [(g, g.inverse()) for g in gens]
    unseen = set(group.elements)
    classes = []
    for p in group.elements:
        if p not in unseen:
            continue
        orbit = {p}
        queue = deque([p])
        while queue:
            x = queue.popleft()
            for g, gi in gen_invs:
                y = g * x * gi
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        unseen -= orbit
        members = tuple(sorted(orbit))
        classes.append(ConjClass(group, members[0], members))
    classes.sort(key=lambda c: (c.element_order, c.size, c.representative.images))
    return tuple(classes)


def class_of(group: PermGroup, p: Perm, classes: Optional[tuple] = None) -> ConjClass:
    if classes is None:
        classes = conjugacy_classes(group)
    for c in classes:
        if p in c.member_set():
            return c
    raise NotSubgroup(f"{p!r} is not an element of the group")


def class_labels(classes: Sequence[ConjClass]) -> tuple:
    """Stable labels like ``1A, 2A, 2B, 3A`` in canonical class order."""
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    counts: dict = {}
    labels = []
    for c in classes:
        k = c.element_order
        i = counts.get(k, 0)
        counts[k] = i + 1
        suffix = letters[i] if i < len(letters) else f"x{i}"
        labels.append(f"{k}{suffix}")
    return tuple(labels)


def class_power(cls_: ConjClass, m: int, classes: Optional[tuple] = None) -> ConjClass:
    """The class of ``g^m`` for ``g`` in the given class (well defined)."""
    return class_of(cls_.parent, cls_.representative ** m, classes)


# ---------------------------------------------------------------------------
# normalizer / centralizer


def normalizer(group: PermGroup, sub: Subgroup) -> Subgroup:
    """Normalizer of ``sub`` in ``group`` by direct scan."""
    _require_subgroup_of(group, sub)
    gens = sub.generating_set() or (group.identity,)
    members = []
    target = sub._set
    for g in group.elements:
        gi = g.inverse()
        if all(g * h * gi in target for h in gens):
            members.append(g)
    return Subgroup(group, tuple(members))


def centralizer(group: PermGroup, family) -> Subgroup:
    """Centralizer in ``group`` of a set of permutations (or a subgroup)."""
    if isinstance(family, Subgroup):
        targets = family.generating_set() or (family.parent.identity,)
    elif isinstance(family, PermGroup):
        targets = family.generators or (family.identity,)
    else:
        targets = tuple(family)
    members = [g for g in group.elements if all(g * t == t * g for t in targets)]
    return Subgroup(group, tuple(members))


def _require_subgroup_of(group: PermGroup, sub: Subgroup) -> None:
    if sub.degree != group.degree:
        raise DegreeMismatch("subgroup degree differs from group degree")
    if not all(p in group for p in sub.elements):
        raise NotSubgroup("not a subgroup of the given group")


# ---------------------------------------------------------------------------
# subgroup enumeration


def all_subgroups(
    group: PermGroup,
    order_filter: Optional[int] = None,
    *,
    enum_bound: Optional[int] = None,
) -> tuple:
    """All subgroups, or exactly those of order ``order_filter``.

    Cyclic seeds are grown by single-element extensions until no new
    subgroup appears.  With a filter, every chain toward an order-n subgroup
    stays inside orders dividing n (Lagrange), so non-divisor intermediate
    subgroups are pruned and closures abort early past n elements.
    """
    bound = SUBGROUP_ENUM_BOUND if enum_bound is None else enum_bound
    n = group.order
    if n > bound:
        raise BoundExceeded(
            f"subgroup enumeration limited to order {bound}", bound=bound, reached=n
        )
    if order_filter is not None and (order_filter <= 0 or n % order_filter != 0):
        return ()

    mul = group.multiplication_table()
    e = group.index_of(group.identity)
    orders = group.element_orders()
    target = order_filter
    cap = n if target is None else target

    def admissible(size: int) -> bool:
        return target is None or target % size == 0

    def close_indices(seed: frozenset, gens: tuple) -> Optional[frozenset]:
        # right-multiplication saturation within the parent; None past cap
        have = set(seed)
        frontier = list(seed)
        while frontier:
            new = []
            for x in frontier:
                row = mul[x]
                for g in gens:
                    y = row[g]
                    if y not in have:
                        if len(have) >= cap:
                            return None
                        have.add(y)
                        new.append(y)
            frontier = new
        return frozenset(have)

    # seed with every cyclic subgroup
    found: dict = {}  # frozenset -> generating index tuple
    queue: deque = deque()
    triv = frozenset({e})
    found[triv] = ()
    queue.append(triv)
    for i in range(n):
        if i == e or not admissible(orders[i]):
            continue
        powers = {e}
        x = i
        while x != e:
            powers.add(x)
            x = mul[x][i]
        fs = frozenset(powers)
        if fs not in found:
            found[fs] = (i,)
            queue.append(fs)

    while queue:
        h = queue.popleft()
        h_gens = found[h]
        if not admissible(len(h) * 2):
            # no extension of h can stay within the filter: any proper
            # extension has order a multiple of 2*|h| dividing the target
            pass
        marked = set(h)
        h_list = list(h)
        for g in range(n):
            if g in marked:
                continue
            k = close_indices(h | {g}, h_gens + (g,))
            if k is not None and admissible(len(k)) and k not in found:
                found[k] = h_gens + (g,)
                queue.append(k)
            # skip the rest of the double coset HgH: same extension
            for h1 in h_list:
                t = mul[h1][g]
                row = mul[t]
                for h2 in h_list:
                    marked.add(row[h2])

    elems = group.elements
    subs = [Subgroup(group, tuple(elems[i] for i in fs)) for fs in found]
    if target is not None:
        subs = [s for s in subs if s.order == target]
    subs.sort(key=lambda s: (s.order, tuple(p.images for p in s.elements)))
    return tuple(subs)


# ---------------------------------------------------------------------------
# homomorphisms


class GroupMap:
    """A verified homomorphism between materialized permutation groups.

    The mapping is stored on every element of the domain.  Construction via
    :meth:`from_generator_images` assigns images along the Cayley graph of
    the domain and checks every edge, which makes the result a homomorphism
    by induction on word length; :meth:`from_mapping` checks the same edges
    on a caller-supplied table.
    """

    __slots__ = ("domain", "codomain", "mapping", "_hash")

    def __init__(self, domain: PermGroup, codomain: PermGroup, mapping: dict):
        self.domain = domain
        self.codomain = codomain
        self.mapping = mapping
        self._hash = None

    @classmethod
    def from_generator_images(
        cls,
        domain: PermGroup,
        codomain: PermGroup,
        gen_images: Sequence[Perm],
    ) -> "GroupMap":
        gens = domain.generators
        if len(gen_images) != len(gens):
            raise NotAHomomorphism("one image per domain generator required")
        for h in gen_images:
            if h not in codomain:
                raise NotAHomomorphism("generator image outside the codomain")
        mapping = _extend_by_edges(domain, gens, gen_images)
        if mapping is None:
            raise NotAHomomorphism("generator images do not satisfy the domain relations")
        return cls(domain, codomain, mapping)

    @classmethod
    def from_mapping(cls, domain: PermGroup, codomain: PermGroup, mapping: dict) -> "GroupMap":
        if set(mapping) != set(domain.elements):
            raise NotAHomomorphism("mapping must cover exactly the domain elements")
        for v in mapping.values():
            if v not in codomain:
                raise NotAHomomorphism("image outside the codomain")
        if not mapping[domain.identity].is_identity():
            raise NotAHomomorphism("identity must map to identity")
        gens = domain.generators or (domain.identity,)
        for x in domain.elements:
            fx = mapping[x]
            for g in gens:
                if mapping[x * g] != fx * mapping[g]:
                    raise NotAHomomorphism(f"edge fails at {x!r} * {g!r}")
        return cls(domain, codomain, mapping)

    def __call__(self, p: Perm) -> Perm:
        return self.mapping[p]

    def image_elements(self) -> tuple:
        return tuple(sorted(set(self.mapping.values())))

    def image(self) -> PermGroup:
        elems = self.image_elements()
        return PermGroup(
            self.codomain.degree, generating_sequence(elems, self.codomain.degree), elems
        )

    def kernel(self) -> Subgroup:
        members = tuple(p for p in self.domain.elements if self.mapping[p].is_identity())
        return Subgroup(self.domain, members)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == self.domain.order

    def is_surjective(self) -> bool:
        return len(set(self.mapping.values())) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, inner: "GroupMap") -> "GroupMap":
        """self after inner."""
        mapping = {p: self.mapping[inner.mapping[p]] for p in inner.domain.elements}
        return GroupMap(inner.domain, self.codomain, mapping)

    def inverse(self) -> "GroupMap":
        if not self.is_bijective():
            raise NotAHomomorphism("only bijective maps invert")
        return GroupMap(
            self.codomain, self.domain, {v: k for k, v in self.mapping.items()}
        )

    def sort_key(self) -> tuple:
        return tuple(self.mapping[p].images for p in self.domain.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMap)
            and self.domain == other.domain
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.domain.degree, self.sort_key()))
        return self._hash

    def __repr__(self) -> str:
        return f"GroupMap({self.domain!r} -> {self.codomain!r})"


def _extend_by_edges(domain: PermGroup, gens, gen_images) -> Optional[dict]:
    """Assign images over the Cayley graph; None on any edge conflict."""
    if not gens:
        if domain.order == 1:
            return {domain.identity: Perm.identity(domain.degree)}
        return None
    deg = gen_images[0].degree
    mapping = {domain.identity: Perm.identity(deg)}
    frontier = [domain.identity]
    while frontier:
        new = []
        for x in frontier:
            fx = mapping[x]
            for g, h in zip(gens, gen_images):
                y = x * g
                fy = fx * h
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    new.append(y)
                elif known != fy:
                    return None
        frontier = new
    if len(mapping) != domain.order:
        return None  # generators of the domain group must generate it
    return mapping


def trivial_map(domain: PermGroup, codomain: PermGroup) -> GroupMap:
    ident = Perm.identity(codomain.degree)
    return GroupMap(domain, codomain, {p: ident for p in domain.elements})


def identity_map(group: PermGroup) -> GroupMap:
    return GroupMap(group, group, {p: p for p in group.elements})


# ---------------------------------------------------------------------------
# automorphisms and isomorphism testing


def _order_class_profile(group: PermGroup, classes) -> dict:
    """element -> (order, size of its conjugacy class)"""
    profile = {}
    for c in classes:
        key = (c.element_order, c.size)
        for p in c.members:
            profile[p] = key
    return profile


def _candidate_images(domain, codomain, gens, extra_word_checks=True):
    """Per-generator candidate image lists matched on (order, class size)."""
    dom_classes = conjugacy_classes(domain)
    cod_classes = conjugacy_classes(codomain)
    dom_profile = _order_class_profile(domain, dom_classes)
    cod_profile = _order_class_profile(codomain, cod_classes)
    out = []
    for g in gens:
        key = dom_profile[g]
        out.append(tuple(p for p in codomain.elements if cod_profile[p] == key))
    return out


_PROBE_WORDS = ((0, 1), (0, 1, 1), (0, 0, 1), (0, 1, 0, 1))


def _word_order(seq) -> int:
    acc = seq[0]
    for p in seq[1:]:
        acc = acc * p
    return acc.order()


def _image_search_iter(domain: PermGroup, codomain: PermGroup):
    """Yield isomorphisms domain -> codomain in candidate order.

    Generator images are screened by (order, class size) and by the orders
    of a few short probe words before the full Cayley-graph extension runs.
    """
    if domain.order != codomain.order:
        return
    gens = generating_sequence(domain.elements, domain.degree)
    if not gens:  # trivial group
        yield GroupMap(domain, codomain, {domain.identity: codomain.identity})
        return
    candidates = _candidate_images(domain, codomain, gens)
    if any(not c for c in candidates):
        return
    k = len(gens)
    probes = []
    for word in _PROBE_WORDS:
        if max(word) < k:
            probes.append((word, _word_order([gens[i] for i in word])))
    for images in itertools.product(*candidates):
        ok = True
        for word, target in probes:
            if _word_order([images[i] for i in word]) != target:
                ok = False
                break
        if not ok:
            continue
        mapping = _extend_by_edges_with_gens(domain, gens, images)
        if mapping is None:
            continue
        if len(set(mapping.values())) != domain.order:
            continue
        yield GroupMap(domain, codomain, mapping)


def _image_search(domain: PermGroup, codomain: PermGroup, find_all: bool):
    """All isomorphisms domain -> codomain, sorted (or at most one)."""
    if not find_all:
        for m in _image_search_iter(domain, codomain):
            return [m]
        return []
    results = list(_image_search_iter(domain, codomain))
    results.sort(key=GroupMap.sort_key)
    return results


def _extend_by_edges_with_gens(domain, gens, gen_images):
    deg = gen_images[0].degree
    mapping = {domain.identity: Perm.identity(deg)}
    frontier = [domain.identity]
    while frontier:
        new = []
        for x in frontier:
            fx = mapping[x]
            for g, h in zip(gens, gen_images):
                y = x * g
                fy = fx * h
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    new.append(y)
                elif known != fy:
                    return None
        frontier = new
    if len(mapping) != domain.order:
        return None
    return mapping


def automorphism_group(group: PermGroup, *, aut_bound: Optional[int] = None) -> tuple:
    """All automorphisms, as a canonically sorted tuple of GroupMap."""
    return tuple(sorted(iterate_automorphisms(group, aut_bound=aut_bound), key=GroupMap.sort_key))


def iterate_automorphisms(group: PermGroup, *, aut_bound: Optional[int] = None):
    """Automorphisms one at a time, in raw search order (not sorted).

    Useful when a property of the automorphism group can be decided early,
    without enumerating everything.
    """
    bound = AUT_BOUND if aut_bound is None else aut_bound
    if group.order > bound:
        raise BoundExceeded(
            f"automorphism search limited to order {bound}", bound=bound, reached=group.order
        )
    return _image_search_iter(group, group)


def inner_automorphisms(group: PermGroup) -> tuple:
    """Conjugation maps, one per element (with duplicates removed)."""
    out = {}
    for g in group.elements:
        gi = g.inverse()
        mapping = {x: g * x * gi for x in group.elements}
        m = GroupMap(group, group, mapping)
        out[m.sort_key()] = m
    return tuple(out[k] for k in sorted(out))


def is_inner(group: PermGroup, auto: GroupMap) -> Optional[Perm]:
    """The smallest ``h`` with ``auto = conj_h`` if there is one, else None."""
    gens = generating_sequence(group.elements, group.degree) or (group.identity,)
    for h in group.elements:
        hi = h.inverse()
        if all(auto(g) == h * g * hi for g in gens):
            return h
    return None


def outer_order(group: PermGroup, *, aut_bound: Optional[int] = None) -> int:
    """|Aut/Inn| = |Aut| * |Z| / |G|."""
    auts = automorphism_group(group, aut_bound=aut_bound)
    z = group.center().order
    return len(auts) * z // group.order


def is_isomorphic(a: PermGroup, b: PermGroup) -> bool:
    """Abstract isomorphism test: invariant screening, then image search."""
    if a.order != b.order:
        return False
    if sorted(a.element_orders()) != sorted(b.element_orders()):
        return False
    ca = sorted((c.element_order, c.size) for c in conjugacy_classes(a))
    cb = sorted((c.element_order, c.size) for c in conjugacy_classes(b))
    if ca != cb:
        return False
    return bool(_image_search(a, b, find_all=False))


def find_isomorphism(a: PermGroup, b: PermGroup) -> Optional[GroupMap]:
    if a.order != b.order:
        return None
    maps = _image_search(a, b, find_all=False)
    return maps[0] if maps else None


# ---------------------------------------------------------------------------
# derived groups and constructions


def regular_representation(group: PermGroup) -> GroupMap:
    """Left-translation embedding of the group into S_{|G|}.

    The image acts on element indices in canonical order; with functional
    composition this is a homomorphism: x -> (index of g*x).
    """
    idx = group._index
    elems = group.elements
    deg = group.order
    mapping = {}
    for g in elems:
        mapping[g] = Perm(tuple(idx[g * x] for x in elems))
    image_elems = tuple(sorted(mapping.values()))
    image = PermGroup(
        deg, tuple(mapping[g] for g in group.generators), image_elems
    )
    return GroupMap(group, image, mapping)


def automorphism_permutation_group(group: PermGroup, *, aut_bound: Optional[int] = None):
    """Aut(G) as a permutation group on the element indices of G.

    Returns ``(perm_group, autos)`` with ``autos[i]`` the GroupMap whose
    permutation is ``perm_group.elements[i]``... the correspondence is by
    matching permutation, not position; use the returned dict instead.
    """
    autos = automorphism_group(group, aut_bound=aut_bound)
    idx = group._index
    elems = group.elements
    pairs = {}
    for a in autos:
        p = Perm(tuple(idx[a(x)] for x in elems))
        pairs[p] = a
    perms = tuple(sorted(pairs))
    gens = generating_sequence(perms, group.order)
    pg = PermGroup(group.order, gens, perms)
    return pg, pairs


def coset_action(group: PermGroup, sub: Subgroup) -> GroupMap:
    """Left-translation action of ``group`` on the cosets of ``sub``.

    Cosets are indexed by least representative in canonical order; the
    kernel of the returned map is the core of ``sub`` in ``group``.
    """
    _require_subgroup_of(group, sub)
    cosets = left_cosets(group, sub)
    coset_index = {}
    for i, c in enumerate(cosets):
        for p in c:
            coset_index[p] = i
    deg = len(cosets)
    reps = [c[0] for c in cosets]
    mapping = {}
    for g in group.elements:
        mapping[g] = Perm(tuple(coset_index[g * r] for r in reps))
    elems = tuple(sorted(set(mapping.values())))
    image = PermGroup(deg, tuple(mapping[g] for g in group.generators), elems)
    return GroupMap(group, image, mapping)


def quotient_group(group: PermGroup, normal: Subgroup):
    """The quotient by a normal subgroup, as the left-coset action image.

    Returns ``(quotient, projection)``; the projection is a GroupMap with
    kernel exactly ``normal``.
    """
    if not normal.is_normal():
        raise NotNormal("quotient requires a normal subgroup")
    act = coset_action(group, normal)
    return act.image(), act


def left_cosets(group: PermGroup, sub: Subgroup) -> tuple:
    """Left cosets g*sub, each a sorted tuple, ordered by least member."""
    _require_subgroup_of(group, sub)
    seen = set()
    cosets = []
    for g in group.elements:
        if g in seen:
            continue
        coset = tuple(sorted(g * h for h in sub.elements))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: c[0].images)
    return tuple(cosets)


def product_set(a: Iterable[Perm], b: Iterable[Perm]) -> frozenset:
    return frozenset(x * y for x in a for y in b)


def normal_closure(group: PermGroup, seeds: Iterable[Perm]) -> Subgroup:
    """Smallest normal subgroup of ``group`` containing ``seeds``."""
    gens = list(seeds)
    current = closure(group.degree, gens, max_elements=group.order)
    while True:
        extra = []
        for g in group.generators:
            gi = g.inverse()
            for h in current.generators or (group.identity,):
                c = g * h * gi
                if c not in current:
                    extra.append(c)
        if not extra:
            return Subgroup(group, current.elements)
        gens.extend(extra)
        current = closure(group.degree, gens, max_elements=group.order)


def is_simple(group: PermGroup) -> bool:
    """True iff the group is simple (normal closure of every class is all)."""
    if group.order == 1:
        return False
    for c in conjugacy_classes(group):
        if c.representative.is_identity():
            continue
        if normal_closure(group, [c.representative]).order != group.order:
            return False
    return True


def require_simple(group: PermGroup) -> None:
    if not is_simple(group):
        raise NotSimple(f"group of order {group.order} is not simple")


# ---------------------------------------------------------------------------
# symmetric-group searches (small degree only)


def symmetric_normalizer(sub_elements: Sequence[Perm], degree: int, *, degree_bound=None) -> tuple:
    """All elements of S_degree normalizing the given subgroup, as a tuple.

    Brute force over the full symmetric group; refuses degrees past
    SYMMETRIC_SEARCH_DEGREE.
    """
    bound = SYMMETRIC_SEARCH_DEGREE if degree_bound is None else degree_bound
    if degree > bound:
        raise BoundExceeded(
            f"symmetric-group search limited to degree {bound}", bound=bound, reached=degree
        )
    target = frozenset(p.images for p in sub_elements)
    gens = generating_sequence(sub_elements, degree) or (Perm.identity(degree),)
    out = []
    # work on raw image tuples; Perm validation would dominate the loop
    for images in itertools.permutations(range(degree)):
        inv = [0] * degree
        for i, j in enumerate(images):
            inv[j] = i
        ok = True
        for g in gens:
            conj = tuple(images[g.images[inv[i]]] for i in range(degree))
            if conj not in target:
                ok = False
                break
        if ok:
            out.append(Perm(images))
    return tuple(out)


def symmetric_group_on(degree: int) -> PermGroup:
    """S_degree materialized (small degrees only; order = degree!)."""
    order = math.factorial(degree)
    if order > DEFAULT_MAX_ELEMENTS:
        raise BoundExceeded(
            "symmetric group too large to materialize",
            bound=DEFAULT_MAX_ELEMENTS,
            reached=order,
        )
    if degree == 1:
        return PermGroup(1, (), (Perm.identity(1),))
    gens = [Perm.from_cycles(degree, [tuple(range(degree))]), Perm.from_cycles(degree, [(0, 1)])]
    elems = tuple(sorted(Perm(images) for images in itertools.permutations(range(degree))))
    return PermGroup(degree, tuple(gens), elems)
