"""Extension models and their complement-based classification.

An extension of fields with a chosen Galois closure is modeled by the pair
(gamma, gamma_e): the closure's automorphism group and the subgroup fixing
the extension.  Core-freeness of gamma_e encodes that the closure is no
larger than it has to be.  Everything else in this module is driven by the
complements of gamma_e in gamma: their existence, their normality, the
fields they fix, and the regular subgroups they induce on the coset space.
"""

import itertools
from dataclasses import dataclass, field

from .catalog import direct_product, groups_of_order
from .errors import (
    BoundExceeded,
    HypothesisFailed,
    NotAHomomorphism,
    NotCoreFree,
    NotNormal,
    NotNormalComplement,
)
from .permgroup import (
    GroupMap,
    Perm,
    PermGroup,
    Subgroup,
    _require_subgroup_of,
    all_subgroups,
    automorphism_group,
    centralizer,
    coset_action,
    generating_sequence,
    identity_map,
    is_inner,
    is_isomorphic,
    iterate_automorphisms,
    outer_order,
    product_set,
    quotient_group,
    regular_representation,
    trivial_map,
)

# Regular-subgroup searches walk the conjugates of a regular representation
# inside the full symmetric group on the coset space; past this degree the
# transversal (degree-1)! is out of reach.
REGULAR_SEARCH_BOUND = 8

# Cap on the number of candidate generator-image tuples tried while looking
# for a homomorphic section of the central quotient.
SECTION_SEARCH_BOUND = 20_000


def subgroup_core(group: PermGroup, sub: Subgroup) -> Subgroup:
    """Largest subgroup of ``sub`` that is normal in ``group``.

    An element of ``sub`` belongs to the core exactly when all its
    conjugates stay inside ``sub``; those elements form a subgroup.
    """
    _require_subgroup_of(group, sub)
    members = [
        x for x in sub.elements if all(g * x * g.inverse() in sub for g in group.elements)
    ]
    return Subgroup(group, members)


@dataclass(frozen=True)
class ExtensionModel:
    """A degree-d extension presented inside its Galois closure.

    ``gamma`` plays Gal(closure/base) and ``gamma_e`` the subgroup fixing
    the extension; the model refuses a ``gamma_e`` with nontrivial core,
    since that would mean the ambient group is not the closure's group.
    """

    gamma: PermGroup
    gamma_e: Subgroup
    label: str = field(default="", compare=False)
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        _require_subgroup_of(self.gamma, self.gamma_e)
        core = subgroup_core(self.gamma, self.gamma_e)
        if core.order != 1:
            raise NotCoreFree(
                f"gamma_e contains a normal subgroup of gamma of order {core.order}"
            )
        object.__setattr__(self, "degree", self.gamma.order // self.gamma_e.order)

    @classmethod
    def quotient_by_core(cls, gamma: PermGroup, gamma_e: Subgroup, label: str = "") -> "ExtensionModel":
        """Build a valid model from a possibly non-core-free pair.

        The coset action of ``gamma`` on ``gamma_e`` has the core as kernel,
        so its image together with a point stabilizer is always core-free.
        """
        act = coset_action(gamma, gamma_e)
        image = act.image()
        return cls(image, image.point_stabilizer(0), label)

    def translation_action(self) -> GroupMap:
        """Left-translation action of gamma on the cosets of gamma_e (cached)."""
        cached = getattr(self, "_translation", None)
        if cached is None:
            cached = coset_action(self.gamma, self.gamma_e)
            object.__setattr__(self, "_translation", cached)
        return cached

    @property
    def is_galois(self) -> bool:
        return self.gamma_e.order == 1

    def __repr__(self) -> str:
        tag = self.label or f"order {self.gamma.order} / {self.gamma_e.order}"
        return f"ExtensionModel({tag}, degree={self.degree})"


# ---------------------------------------------------------------------------
# complements


def is_complement(gamma: PermGroup, u: Subgroup, v: Subgroup) -> bool:
    """Whether every element of gamma factors uniquely as (u element)(v element).

    For finite groups that holds exactly when the orders multiply up and the
    two subgroups meet trivially; the condition is symmetric in u and v.
    """
    _require_subgroup_of(gamma, u)
    _require_subgroup_of(gamma, v)
    if u.order * v.order != gamma.order:
        return False
    return u.intersection(v).order == 1


def complements(gamma: PermGroup, u: Subgroup, *, enum_bound=None) -> tuple:
    """All complements of u in gamma, in canonical order."""
    _require_subgroup_of(gamma, u)
    target = gamma.order // u.order
    candidates = all_subgroups(gamma, order_filter=target, enum_bound=enum_bound)
    return tuple(v for v in candidates if u.intersection(v).order == 1)


def normal_complements(gamma: PermGroup, u: Subgroup, *, enum_bound=None) -> tuple:
    return tuple(v for v in complements(gamma, u, enum_bound=enum_bound) if v.is_normal())


def _iso_class_representatives(subs) -> tuple:
    """First member of each isomorphism class, keeping canonical order."""
    reps = []
    for s in subs:
        g = s.as_group()
        if not any(is_isomorphic(g, r.as_group()) for r in reps):
            reps.append(s)
    return tuple(reps)


@dataclass(frozen=True)
class PreGaloisReport:
    """Classification of one extension model by its complements."""

    model: ExtensionModel
    complements: tuple
    normal_complements: tuple
    potential_groups: tuple
    pre_galois_groups: tuple
    is_potentially_galois: bool
    is_pre_galois: bool


def analyze(model: ExtensionModel, *, enum_bound=None) -> PreGaloisReport:
    """Full complement survey of a model.

    ``potential_groups`` and ``pre_galois_groups`` keep one representative
    per isomorphism class, in the canonical order the complements come in.
    """
    comps = complements(model.gamma, model.gamma_e, enum_bound=enum_bound)
    ncomps = tuple(v for v in comps if v.is_normal())
    return PreGaloisReport(
        model=model,
        complements=comps,
        normal_complements=ncomps,
        potential_groups=_iso_class_representatives(comps),
        pre_galois_groups=_iso_class_representatives(ncomps),
        is_potentially_galois=bool(comps),
        is_pre_galois=bool(ncomps),
    )


@dataclass(frozen=True)
class MinimalField:
    """A minimal field over the base, described by the subgroup fixing it.

    The field itself is the fixed field of ``fixed_group`` inside the
    closure; its degree over the base is the subgroup's index.
    """

    fixed_group: Subgroup
    degree: int


def minimal_fields(model: ExtensionModel, *, enum_bound=None) -> tuple:
    """One minimal field per complement, each re-verified before reporting."""
    out = []
    for g in complements(model.gamma, model.gamma_e, enum_bound=enum_bound):
        if not is_complement(model.gamma, model.gamma_e, g):
            raise HypothesisFailed("complement failed re-verification")
        out.append(MinimalField(fixed_group=g, degree=g.index))
    return tuple(out)


def composite_minimalization(delta: PermGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    """Subgroup generated by a and b inside delta; b must be normal.

    With delta modeling the Galois group of a compositum, a the subgroup
    fixing the outside field and b the (normal) subgroup fixing the closure,
    the result fixes the unique minimal subfield of the outside field.
    """
    _require_subgroup_of(delta, a)
    _require_subgroup_of(delta, b)
    if not b.is_normal():
        raise NotNormal("the subgroup fixing the closure must be normal")
    return delta.generated_subgroup(a.generating_set() + b.generating_set())


# ---------------------------------------------------------------------------
# semidirect products


def _validate_action(n: PermGroup, a: PermGroup, action: dict) -> None:
    if set(action) != set(a.elements):
        raise NotAHomomorphism("action must assign an automorphism to every element")
    for f in action.values():
        if not isinstance(f, GroupMap) or f.domain != n or f.codomain != n:
            raise NotAHomomorphism("action values must be maps from n to n")
        if not f.is_bijective():
            raise NotAHomomorphism("action values must be bijective")
    if action[a.identity] != identity_map(n):
        raise NotAHomomorphism("identity must act trivially")
    for x in a.elements:
        for y in a.elements:
            if action[x * y] != action[x].compose(action[y]):
                raise NotAHomomorphism(f"action is not multiplicative at {x!r} * {y!r}")


def trivial_action(n: PermGroup, a: PermGroup) -> dict:
    e = identity_map(n)
    return {x: e for x in a.elements}


def action_from_generator_images(n: PermGroup, a: PermGroup, gen_images) -> dict:
    """Extend automorphisms given on a's generators to all of a.

    Images are pushed along the Cayley graph; conflicts mean the assignment
    is not a homomorphism into Aut(n).
    """
    gen_images = tuple(gen_images)
    if len(gen_images) != len(a.generators):
        raise NotAHomomorphism("one automorphism per generator required")
    act = {a.identity: identity_map(n)}
    frontier = [a.identity]
    while frontier:
        new = []
        for x in frontier:
            fx = act[x]
            for g, f in zip(a.generators, gen_images):
                y = x * g
                fy = fx.compose(f)
                known = act.get(y)
                if known is None:
                    act[y] = fy
                    new.append(y)
                elif known != fy:
                    raise NotAHomomorphism("generator automorphisms conflict")
        frontier = new
    _validate_action(n, a, act)
    return act


@dataclass(frozen=True)
class SemidirectProduct:
    """A faithful permutation model of a semidirect product.

    The group acts on pairs (x, alpha) by left translation; the designated
    ``normal_part`` is the copy of n and ``complement_part`` the copy of a.
    """

    group: PermGroup
    normal_part: Subgroup
    complement_part: Subgroup
    embed_normal: GroupMap
    embed_acting: GroupMap
    action: dict = field(compare=False, repr=False)
    pair_table: dict = field(compare=False, repr=False)

    def pair(self, x: Perm, alpha: Perm) -> Perm:
        return self.pair_table[(x, alpha)]


def semidirect_product(n: PermGroup, a: PermGroup, action: dict) -> SemidirectProduct:
    """Semidirect product of n by a along a validated action a -> Aut(n).

    The returned group permutes the |n|*|a| pairs (x, alpha) by left
    translation, so the construction is faithful and the two factors embed
    as the designated subgroups.
    """
    _validate_action(n, a, action)
    pairs = [(x, alpha) for x in n.elements for alpha in a.elements]
    index = {p: i for i, p in enumerate(pairs)}
    deg = len(pairs)

    table = {}
    for x, alpha in pairs:
        act = action[alpha]
        images = tuple(index[(x * act(y), alpha * beta)] for y, beta in pairs)
        table[(x, alpha)] = Perm(images)

    n_id = n.identity
    a_id = a.identity
    gens = [table[(g, a_id)] for g in n.generators] + [table[(n_id, h)] for h in a.generators]
    group = PermGroup(deg, tuple(gens), tuple(sorted(table.values())))

    normal_part = group.subgroup(table[(x, a_id)] for x in n.elements)
    complement_part = group.subgroup(table[(n_id, alpha)] for alpha in a.elements)
    if not normal_part.is_normal():
        raise HypothesisFailed("designated copy of n failed the normality check")
    embed_normal = GroupMap.from_mapping(n, group, {x: table[(x, a_id)] for x in n.elements})
    embed_acting = GroupMap.from_mapping(a, group, {h: table[(n_id, h)] for h in a.elements})
    return SemidirectProduct(
        group=group,
        normal_part=normal_part,
        complement_part=complement_part,
        embed_normal=embed_normal,
        embed_acting=embed_acting,
        action=dict(action),
        pair_table=table,
    )


# ---------------------------------------------------------------------------
# splitting a semidirect product into a direct one


@dataclass(frozen=True)
class SplitCertificate:
    """Witness that a semidirect product is actually direct.

    ``a_star`` is the replacement complement commuting with the normal
    part elementwise; ``isomorphism`` maps the plain direct-product model
    onto the semidirect group.
    """

    semidirect: SemidirectProduct
    a_star: Subgroup
    section: GroupMap
    direct_model: PermGroup
    isomorphism: GroupMap
    checks: tuple


def _find_section(g: PermGroup, proj: GroupMap):
    """Homomorphic section of the projection onto the central quotient."""
    q = proj.codomain
    if q.order == 1:
        return trivial_map(q, g)
    qgens = generating_sequence(q.elements, q.degree)
    qdom = PermGroup(q.degree, qgens, q.elements)
    fibers = []
    for qi in qgens:
        fibers.append([x for x in g.elements if proj(x) == qi])
    total = 1
    for f in fibers:
        total *= len(f)
    if total > SECTION_SEARCH_BOUND:
        raise BoundExceeded(
            "section search space too large", bound=SECTION_SEARCH_BOUND, reached=total
        )
    for images in itertools.product(*fibers):
        try:
            s = GroupMap.from_generator_images(qdom, g, images)
        except NotAHomomorphism:
            continue
        if all(proj(s(x)) == x for x in qdom.elements):
            return s
    return None


def split_to_direct(g: PermGroup, a: PermGroup, action: dict) -> SplitCertificate:
    """Turn g semidirect a into g direct a, with an explicit isomorphism.

    Requires every automorphism of g to be inner and the central extension
    of g over its center to split; both hypotheses are verified, and the
    witness complement is checked exhaustively before being returned.
    """
    sd = semidirect_product(g, a, action)
    if outer_order(g) != 1:
        raise HypothesisFailed("g has outer automorphisms")
    _, proj = quotient_group(g, g.center())
    section = _find_section(g, proj)
    if section is None:
        raise HypothesisFailed("central extension of g does not split")

    # conj by t(alpha) realizes the action of alpha, and t is a homomorphism
    t = {}
    for alpha in a.elements:
        c = is_inner(g, action[alpha])
        if c is None:
            raise HypothesisFailed("action is not by inner automorphisms")
        t[alpha] = section(proj(c))

    a_star = sd.group.subgroup(sd.pair(t[alpha], alpha.inverse()) for alpha in a.elements)

    direct_model = direct_product(g, a)
    iso_table = {}
    for e in direct_model.elements:
        x = Perm(e.images[: g.degree])
        alpha = Perm(tuple(v - g.degree for v in e.images[g.degree :]))
        iso_table[e] = sd.pair(x * t[alpha].inverse(), alpha)
    isomorphism = GroupMap.from_mapping(direct_model, sd.group, iso_table)

    normal_elems = sd.normal_part.elements
    checks = (
        ("trivial_intersection", a_star.intersection(sd.normal_part).order == 1),
        (
            "centralizes_normal_part",
            all(x * y == y * x for x in a_star.elements for y in normal_elems),
        ),
        (
            "generates_with_normal_part",
            len(product_set(normal_elems, a_star.elements)) == sd.group.order,
        ),
        ("isomorphism_bijective", isomorphism.is_bijective()),
    )
    for name, ok in checks:
        if not ok:
            raise HypothesisFailed(f"certificate verification failed: {name}")
    return SplitCertificate(
        semidirect=sd,
        a_star=a_star,
        section=section,
        direct_model=direct_model,
        isomorphism=isomorphism,
        checks=checks,
    )


def is_complete_group(g: PermGroup, *, aut_bound=None) -> bool:
    """True iff g has trivial center and no outer automorphisms.

    The search stops at the first non-inner automorphism, so incomplete
    groups are detected long before the automorphism group is exhausted.
    """
    if g.center().order != 1:
        return False
    for auto in iterate_automorphisms(g, aut_bound=aut_bound):
        if is_inner(g, auto) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# the anti-isomorphism between two normal complements


@dataclass(frozen=True)
class AntiIsomorphism:
    """The translation map between two normal complements of the same subgroup.

    Each x in the first complement is moved into the second by a unique
    right factor from u; the transcript records every property checked.
    """

    mapping: dict = field(compare=False)
    intersection: Subgroup = None
    transcript: tuple = ()

    def check(self, name: str) -> bool:
        for key, ok in self.transcript:
            if key == name:
                return ok
        raise KeyError(name)


def anti_isomorphism(gamma: PermGroup, u: Subgroup, g: Subgroup, g2: Subgroup) -> AntiIsomorphism:
    """Map each x in g to the unique element of (x u) lying in g2.

    Both g and g2 must be normal complements of u.  The returned transcript
    verifies uniqueness, bijectivity, the twisted multiplication rule
    phi(xy) = (x phi(y) x^-1) phi(x), that the intersection is fixed
    pointwise, and that the induced map on the quotients by the
    intersection reverses products.
    """
    for cand in (g, g2):
        if not is_complement(gamma, u, cand):
            raise NotNormalComplement("not a complement of u")
        if not cand.is_normal():
            raise NotNormalComplement("complement is not normal in gamma")

    phi = {}
    unique_ok = True
    for x in g.elements:
        hits = [x * y for y in u.elements if x * y in g2]
        if len(hits) != 1:
            unique_ok = False
            break
        phi[x] = hits[0]
    if not unique_ok:
        raise HypothesisFailed("translation factor is not unique")

    bijective = set(phi.values()) == set(g2.elements)
    cocycle = all(
        phi[x1 * x2] == (x1 * phi[x2] * x1.inverse()) * phi[x1]
        for x1 in g.elements
        for x2 in g.elements
    )

    inter = g.intersection(g2)
    fixes = all(phi[x] == x for x in inter.elements)

    induced_ok = _induced_quotient_anti_isomorphism(phi, g, g2, inter)

    transcript = (
        ("unique_translation_factor", unique_ok),
        ("bijective", bijective),
        ("cocycle_identity", cocycle),
        ("fixes_intersection", fixes),
        ("induced_quotient_anti_isomorphism", induced_ok),
    )
    return AntiIsomorphism(mapping=phi, intersection=inter, transcript=transcript)


def _induced_quotient_anti_isomorphism(phi, g: Subgroup, g2: Subgroup, inter: Subgroup) -> bool:
    gg = g.as_group()
    gg2 = g2.as_group()
    i1 = gg.subgroup(inter.elements)
    i2 = gg2.subgroup(inter.elements)
    if not (i1.is_normal() and i2.is_normal()):
        return False
    q1, p1 = quotient_group(gg, i1)
    q2, p2 = quotient_group(gg2, i2)
    induced = {}
    for x in g.elements:
        key = p1(x)
        val = p2(phi[x])
        if induced.setdefault(key, val) != val:
            return False  # not well defined
    if set(induced) != set(q1.elements) or set(induced.values()) != set(q2.elements):
        return False
    if len(set(induced.values())) != q1.order:
        return False
    return all(
        induced[c1 * c2] == induced[c2] * induced[c1]
        for c1 in q1.elements
        for c2 in q1.elements
    )


# ---------------------------------------------------------------------------
# regular subgroups on the coset space


@dataclass(frozen=True)
class HopfStructure:
    """A regular subgroup of the coset-space symmetric group, normalized by
    the translation image; the flag marks those sitting inside it."""

    group: PermGroup
    structure_name: str
    inside_translation_image: bool


def _conjugates_of_regular_representations(d: int) -> dict:
    """All regular subgroups of the symmetric group on d points.

    Keyed by frozenset of image tuples, valued by the abstract type name.
    Every regular subgroup is conjugate to the regular representation of
    its abstract type, and since regular subgroups are transitive every
    conjugacy representative is reached by some point-0-fixing conjugator.
    """
    found = {}
    rest = list(range(1, d))
    for name, abstract in groups_of_order(d):
        reg = [p.images for p in regular_representation(abstract).image().elements]
        for tail in itertools.permutations(rest):
            sigma = (0,) + tail
            inv = [0] * d
            for i, j in enumerate(sigma):
                inv[j] = i
            conj = frozenset(tuple(sigma[r[inv[i]]] for i in range(d)) for r in reg)
            if conj not in found:
                found[conj] = name
    return found


def hopf_regular_subgroups(model: ExtensionModel, *, degree_bound=None) -> tuple:
    """Regular subgroups of Perm(coset space) normalized by the translations.

    These classify the Hopf-Galois structures on the extension; the ones
    inside the translation image correspond exactly to the normal
    complements of gamma_e.
    """
    d = model.degree
    bound = REGULAR_SEARCH_BOUND if degree_bound is None else degree_bound
    if d > bound:
        raise BoundExceeded(
            f"regular-subgroup search limited to degree {bound}", bound=bound, reached=d
        )
    lam = model.translation_action()
    lam_tuples = frozenset(p.images for p in lam.image_elements())
    lam_gens = []
    for gen in model.gamma.generators:
        img = lam(gen)
        lam_gens.append((img.images, img.inverse().images))

    structures = []
    for conj, name in _conjugates_of_regular_representations(d).items():
        ok = True
        for ga, gi in lam_gens:
            moved = {tuple(ga[t[gi[i]]] for i in range(d)) for t in conj}
            if moved != conj:
                ok = False
                break
        if not ok:
            continue
        elems = tuple(sorted(Perm(t) for t in conj))
        group = PermGroup(d, generating_sequence(elems, d) or (Perm.identity(d),), elems)
        structures.append(
            HopfStructure(
                group=group,
                structure_name=name,
                inside_translation_image=conj <= lam_tuples,
            )
        )
    structures.sort(key=lambda s: s.group.elements)
    return tuple(structures)


def faithful_action_check(model: ExtensionModel, g: Subgroup) -> bool:
    """Whether gamma_e acts faithfully on a normal complement by conjugation.

    The kernel of that action is the intersection of gamma_e with the
    centralizer of g, so the check is simply that this meets trivially.
    """
    if not (is_complement(model.gamma, model.gamma_e, g) and g.is_normal()):
        raise NotNormalComplement("g must be a normal complement of gamma_e")
    cen = centralizer(model.gamma, g)
    return model.gamma_e.intersection(cen).order == 1


# ---------------------------------------------------------------------------
# fixture library


def fixture_models() -> tuple:
    """A small library of extension models used across tests and the CLI."""
    from . import catalog

    def cyc(group, *cycles):
        return group.generated_subgroup([Perm.from_cycles(group.degree, cycles)])

    s3 = catalog.named_group("S3")
    s4 = catalog.named_group("S4")
    s5 = catalog.named_group("S5")
    s6 = catalog.named_group("S6")
    a4 = catalog.named_group("A4")
    a5 = catalog.named_group("A5")
    a6 = catalog.named_group("A6")
    d8 = catalog.named_group("D8")
    q8 = catalog.named_group("Q8")

    models = [
        ExtensionModel(s3, cyc(s3, (0, 1)), "S3/C2"),
        ExtensionModel(s4, s4.point_stabilizer(3), "S4/S3"),
        ExtensionModel(s4, cyc(s4, (0, 1, 2, 3)), "S4/C4"),
        ExtensionModel(d8, cyc(d8, (1, 3)), "D8/C2"),
        ExtensionModel(a4, cyc(a4, (0, 1, 2)), "A4/C3"),
        ExtensionModel(a4, cyc(a4, (0, 1), (2, 3)), "A4/C2"),
        ExtensionModel(s5, s5.point_stabilizer(4), "S5/S4"),
        ExtensionModel(a5, a5.point_stabilizer(4), "A5/A4"),
        ExtensionModel(a5, cyc(a5, (0, 1), (2, 3)), "A5/C2"),
        ExtensionModel(catalog.named_group("C4"), catalog.named_group("C4").trivial_subgroup(), "C4/1"),
        ExtensionModel(catalog.named_group("V4"), catalog.named_group("V4").trivial_subgroup(), "V4/1"),
        ExtensionModel(s3, s3.trivial_subgroup(), "S3/1"),
        ExtensionModel(catalog.named_group("C6"), catalog.named_group("C6").trivial_subgroup(), "C6/1"),
        ExtensionModel(q8, q8.trivial_subgroup(), "Q8/1"),
        ExtensionModel(s6, cyc(s6, (0, 1, 2, 3, 4, 5)), "S6/C6"),
        ExtensionModel(a6, cyc(a6, (0, 2, 4), (1, 3, 5)), "A6/C3"),
    ]
    return tuple(models)


def fixture_model(label: str) -> ExtensionModel:
    for m in fixture_models():
        if m.label == label:
            return m
    raise KeyError(label)
