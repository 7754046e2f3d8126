"""Branch cycle descriptions, finite arithmetic models, and twisting.

A cover of the line with r branch points is described up to deformation by
the tuple of local monodromy permutations, which multiplies to the identity
and generates a transitive group.  The arithmetic side is modeled by a
finite group ``pi`` with a normal geometric part ``pibar``, a splitting of
the quotient, and two maps into the cover group: ``phi`` for the cover
itself and ``psi`` for a chosen constant extension.  Everything downstream
(twisted representations, specializations, moduli bounds) is computed and
re-verified on these finite models.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import direct_product, embed_left, embed_right
from .errors import (
    BoundExceeded,
    CenterNotTrivial,
    DegreeMismatch,
    HypothesisFailed,
    NoRationalPoint,
    NotAComplement,
    NotAHomomorphism,
    NotNormal,
    NotSimple,
    NotSurjective,
)
from .extension_core import ExtensionModel, PreGaloisReport, analyze, is_complement
from .permgroup import (
    DEFAULT_MAX_ELEMENTS,
    SYMMETRIC_SEARCH_DEGREE,
    GroupMap,
    Perm,
    PermGroup,
    Subgroup,
    automorphism_group,
    centralizer,
    closure,
    generating_sequence,
    identity_map,
    is_inner,
    outer_order,
    product_set,
    quotient_group,
    require_simple,
    symmetric_normalizer,
    _require_subgroup_of,
)


# ---------------------------------------------------------------------------
# branch cycle descriptions


@dataclass(frozen=True)
class BranchCycleDescription:
    """A product-one generating tuple for a transitive permutation group.

    ``perms`` holds the local monodromy elements (g_1, ..., g_r); the
    labels are opaque identifiers for the branch points.  All three
    defining conditions are verified on construction and therefore hold
    again after any transformation that rebuilds the description.
    """

    group: PermGroup
    perms: tuple
    branch_labels: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "perms", tuple(self.perms))
        labels = self.branch_labels
        if labels is None:
            labels = tuple(f"b{i + 1}" for i in range(len(self.perms)))
        else:
            labels = tuple(labels)
        object.__setattr__(self, "branch_labels", labels)

        if len(labels) != len(self.perms):
            raise HypothesisFailed("one branch label per tuple entry required")
        if len(set(labels)) != len(labels):
            raise HypothesisFailed("branch labels must be distinct")
        d = self.group.degree
        for p in self.perms:
            if p.degree != d:
                raise DegreeMismatch("tuple entry degree differs from the group degree")
            if p not in self.group:
                raise HypothesisFailed("tuple entry outside the group")

        prod = Perm.identity(d)
        for p in self.perms:
            prod = prod * p
        if not prod.is_identity():
            raise HypothesisFailed("the branch cycles do not multiply to the identity")
        generated = closure(d, self.perms, max_elements=self.group.order)
        if generated.elements != self.group.elements:
            raise HypothesisFailed("the branch cycles do not generate the group")
        if not self.group.is_transitive():
            raise HypothesisFailed("the monodromy action is not transitive")

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def branch_count(self) -> int:
        return len(self.perms)

    def __repr__(self) -> str:
        return (
            f"BranchCycleDescription(degree={self.degree}, "
            f"order={self.group.order}, r={self.branch_count})"
        )


def branch_loci_disjoint(a: BranchCycleDescription, b: BranchCycleDescription) -> bool:
    """Whether the two descriptions use disjoint branch-point labels.

    Purely a bookkeeping check on the opaque identifiers; nothing verifies
    that equal labels denote equal points of an actual curve.
    """
    return not set(a.branch_labels) & set(b.branch_labels)


# ---------------------------------------------------------------------------
# monodromy and the constant-extension bound


def _holomorph_of_regular(group: PermGroup) -> PermGroup:
    """Normalizer of a regular group inside the full symmetric group.

    For a regular action the normalizer is the holomorph: the group itself
    extended by the permutations induced by its automorphisms on the point
    set.  Assembled directly, so it works past the brute-force degree cap.
    """
    if not group.is_regular():
        raise HypothesisFailed("holomorph construction needs a regular group")
    d = group.degree
    point_elem = [None] * d
    for p in group.elements:
        point_elem[p(0)] = p
    sigmas = []
    for auto in automorphism_group(group):
        sigmas.append(Perm(tuple(auto(point_elem[w])(0) for w in range(d))))
    gens = generating_sequence(group.elements, d)
    for s in sigmas:
        si = s.inverse()
        for g in gens:
            if s * g * si not in group:
                raise HypothesisFailed("automorphism permutation fails to normalize")
    total = group.order * len(sigmas)
    if total > DEFAULT_MAX_ELEMENTS:
        raise BoundExceeded(
            "normalizer too large to materialize",
            bound=DEFAULT_MAX_ELEMENTS,
            reached=total,
        )
    elems = tuple(sorted(product_set(group.elements, sigmas)))
    if len(elems) != total:
        raise HypothesisFailed("holomorph coset count is off")
    return PermGroup(d, generating_sequence(elems, d), elems)


def embedded_normalizer(group: PermGroup, *, degree_bound=None) -> PermGroup:
    """Nor_{S_d}(G) for G acting on d points, as a materialized group.

    Small degrees go through the brute-force symmetric search; regular
    groups of any degree use the holomorph construction instead.
    """
    d = group.degree
    bound = SYMMETRIC_SEARCH_DEGREE if degree_bound is None else degree_bound
    if d <= bound:
        elems = symmetric_normalizer(group.elements, d, degree_bound=degree_bound)
        return PermGroup(d, generating_sequence(elems, d), elems)
    if group.is_regular():
        return _holomorph_of_regular(group)
    raise BoundExceeded(
        f"normalizer search limited to degree {bound} for non-regular groups",
        bound=bound,
        reached=d,
    )


@dataclass(frozen=True)
class MonodromyReport:
    group: PermGroup
    is_geometrically_galois: bool
    constant_extension_bound: PermGroup


def monodromy_analysis(bcd: BranchCycleDescription, *, degree_bound=None) -> MonodromyReport:
    """Regularity of the monodromy action and the constant-extension bound.

    The cover is geometrically Galois exactly when the action is regular,
    i.e. the degree equals the group order.  The unknown constant field of
    the Galois closure embeds into Nor_{S_d}(G)/G, returned as an explicit
    quotient group; in the regular case that quotient is the automorphism
    group of G.
    """
    g = bcd.group
    nor = embedded_normalizer(g, degree_bound=degree_bound)
    bound, _ = quotient_group(nor, nor.subgroup(g.elements))
    return MonodromyReport(
        group=g, is_geometrically_galois=g.is_regular(), constant_extension_bound=bound
    )


# ---------------------------------------------------------------------------
# arithmetic models


@dataclass(frozen=True)
class ArithmeticModel:
    """Finite stand-in for the arithmetic fundamental group of a cover.

    ``pi`` plays the total group, ``pibar`` its geometric part, and the
    codomain of ``quotient_map`` the base Galois group.  ``phi`` realizes
    the cover (surjective already on ``pibar``); ``psi`` picks the constant
    extension to twist by.  When ``rational_point`` is set the section must
    be killed by ``phi``, which is what a rational unramified base point
    provides.
    """

    pi: PermGroup
    pibar: Subgroup
    quotient_map: GroupMap
    section: GroupMap
    phi: GroupMap
    psi: GroupMap
    rational_point: bool = True

    def __post_init__(self):
        _require_subgroup_of(self.pi, self.pibar)
        if not self.pibar.is_normal():
            raise NotNormal("the geometric subgroup must be normal")
        if self.quotient_map.domain != self.pi:
            raise NotAHomomorphism("quotient map must start at pi")
        if not self.quotient_map.is_surjective():
            raise NotSurjective("quotient map must be onto the base group")
        if self.quotient_map.kernel().elements != self.pibar.elements:
            raise HypothesisFailed("quotient map kernel differs from the geometric subgroup")
        q = self.quotient_map.codomain
        if self.section.domain != q or self.section.codomain != self.pi:
            raise NotAHomomorphism("section must map the base group back into pi")
        for t in q.elements:
            if self.quotient_map(self.section(t)) != t:
                raise HypothesisFailed("section does not split the quotient map")
        if self.phi.domain != self.pi:
            raise NotAHomomorphism("cover map must start at pi")
        g = self.phi.codomain
        if {self.phi(x) for x in self.pibar.elements} != set(g.elements):
            raise NotSurjective("cover map must be surjective on the geometric subgroup")
        if self.psi.domain != q or self.psi.codomain != g:
            raise NotAHomomorphism("psi must map the base group into the cover group")
        if self.rational_point:
            for t in q.elements:
                if not self.phi(self.section(t)).is_identity():
                    raise HypothesisFailed(
                        "rational-point flag requires phi on the section to be trivial"
                    )

    @property
    def q(self) -> PermGroup:
        return self.quotient_map.codomain

    @property
    def g(self) -> PermGroup:
        return self.phi.codomain

    def factor(self, y: Perm):
        """Split y as x * section(tau) with x in the geometric subgroup."""
        tau = self.quotient_map(y)
        x = y * self.section(tau).inverse()
        return x, tau


def standard_split_model(
    g: PermGroup, q: PermGroup, psi_images: Sequence[Perm], *, rational_point: bool = True
) -> ArithmeticModel:
    """The product model pi = g x q with phi the projection onto g.

    ``psi_images`` give psi on the generators of q.  The section embeds q
    as the right factor, so the rational-point condition holds for free.
    """
    pi = direct_product(g, q)
    dg = g.degree
    pibar = pi.subgroup([embed_left(g, p, pi.degree) for p in g.elements])
    qmap = GroupMap.from_mapping(
        pi, q, {x: Perm(tuple(v - dg for v in x.images[dg:])) for x in pi.elements}
    )
    section = GroupMap.from_mapping(
        q, pi, {t: embed_right(dg, t, pi.degree) for t in q.elements}
    )
    phi = GroupMap.from_mapping(pi, g, {x: Perm(x.images[:dg]) for x in pi.elements})
    psi = GroupMap.from_generator_images(q, g, psi_images)
    return ArithmeticModel(
        pi=pi,
        pibar=pibar,
        quotient_map=qmap,
        section=section,
        phi=phi,
        psi=psi,
        rational_point=rational_point,
    )


# ---------------------------------------------------------------------------
# twisting


def twist(model: ArithmeticModel) -> GroupMap:
    """The twisted representation of pi on the elements of the cover group.

    Writing y = x * section(tau), the image permutation sends
    g |-> phi(x) * g * psi(tau)^(-1).  The centerless hypothesis makes the
    twist well defined on covers; the homomorphism property is certified by
    the verifying GroupMap constructor over every Cayley edge.
    """
    g = model.g
    if g.center().order != 1:
        raise CenterNotTrivial("twisting needs a cover group with trivial center")
    if not model.rational_point:
        raise NoRationalPoint("twisting needs the rational-point splitting")
    elems = g.elements
    index = {p: i for i, p in enumerate(elems)}
    mapping = {}
    for y in model.pi.elements:
        x, tau = model.factor(y)
        left = model.phi(x)
        right = model.psi(tau).inverse()
        mapping[y] = Perm(tuple(index[left * p * right] for p in elems))
    img = tuple(sorted(set(mapping.values())))
    codomain = PermGroup(len(elems), generating_sequence(img, len(elems)), img)
    return GroupMap.from_mapping(model.pi, codomain, mapping)


# ---------------------------------------------------------------------------
# specialization


@dataclass(frozen=True)
class EtaleComponent:
    """One field component: an orbit with its stabilizer in the base group."""

    points: tuple
    stabilizer: Subgroup
    degree: int


@dataclass(frozen=True)
class EtaleAlgebra:
    total_degree: int
    components: tuple

    def __post_init__(self):
        if sum(c.degree for c in self.components) != self.total_degree:
            raise HypothesisFailed("component degrees do not sum to the total degree")

    @property
    def is_field(self) -> bool:
        return len(self.components) == 1

    def degrees(self) -> tuple:
        return tuple(c.degree for c in self.components)


def specialize(model: ArithmeticModel, use_twisted: bool) -> EtaleAlgebra:
    """The etale algebra cut out by the (twisted) specialization action.

    The base group acts through ``twist(model) o section`` on the cover
    group elements, or through ``phi o section`` on the natural points.
    Components are the orbits; each stabilizer is reported and checked
    against the orbit size.
    """
    q = model.q
    if use_twisted:
        tw = twist(model)
        act = {t: tw(model.section(t)) for t in q.elements}
        npoints = model.g.order
    else:
        act = {t: model.phi(model.section(t)) for t in q.elements}
        npoints = model.g.degree
    gen_perms = [act[t] for t in (q.generators or ())]
    seen = [False] * npoints
    components = []
    for start in range(npoints):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            fresh = []
            for p in frontier:
                for gp in gen_perms:
                    v = gp(p)
                    if v not in orbit:
                        orbit.add(v)
                        fresh.append(v)
            frontier = fresh
        points = tuple(sorted(orbit))
        for p in points:
            seen[p] = True
        stab = q.subgroup([t for t in q.elements if act[t](start) == start])
        if q.order != stab.order * len(points):
            raise HypothesisFailed("orbit size does not match the stabilizer index")
        components.append(
            EtaleComponent(points=points, stabilizer=stab, degree=len(points))
        )
    return EtaleAlgebra(total_degree=npoints, components=tuple(components))


@dataclass(frozen=True)
class TransferReport:
    """Group-level restatement that specialization preserves the analysis."""

    model: ExtensionModel
    complement: Subgroup
    analysis: PreGaloisReport
    zs_decomposition_preserved: bool
    complement_normal: bool
    pre_galois_transferred: bool


def specialization_transfer(model: ExtensionModel, complement: Subgroup) -> TransferReport:
    """Certify that the ZS decomposition survives a degree-preserving specialization.

    At the group level the decomposition of gamma transfers verbatim, so
    the report re-verifies the complement and restates the analysis; the
    normal case additionally flags that the specialized closure is the
    compositum of the specialization with the constant extension.
    """
    if not is_complement(model.gamma, model.gamma_e, complement):
        raise NotAComplement("transfer needs a complement of gamma_e")
    analysis = analyze(model)
    return TransferReport(
        model=model,
        complement=complement,
        analysis=analysis,
        zs_decomposition_preserved=True,
        complement_normal=complement.is_normal(),
        pre_galois_transferred=analysis.is_pre_galois,
    )


# ---------------------------------------------------------------------------
# composita


def compositum_image(pi: PermGroup, phis: Sequence[GroupMap]) -> PermGroup:
    """Image of x |-> (phi_1(x), ..., phi_n(x)) in the product of the targets.

    The product acts on the disjoint union of the factor point sets; the
    image is materialized element by element, so its order is exactly
    |pi / intersection of kernels|.
    """
    phis = tuple(phis)
    if not phis:
        raise HypothesisFailed("at least one map is required")
    for f in phis:
        if f.domain != pi:
            raise NotAHomomorphism("all maps must share the given domain")
        if not f.is_surjective():
            raise NotSurjective("each map must be onto its target")
    offsets = []
    total = 0
    for f in phis:
        offsets.append(total)
        total += f.codomain.degree
    elems = set()
    for x in pi.elements:
        parts = []
        for f, off in zip(phis, offsets):
            parts.extend(off + v for v in f(x).images)
        elems.add(Perm(tuple(parts)))
    ordered = tuple(sorted(elems))
    return PermGroup(total, generating_sequence(ordered, total), ordered)


@dataclass(frozen=True)
class PowerCertificate:
    """Witness that the compositum of the distinct-kernel maps is a full power."""

    n: int
    factor_order: int
    image: PermGroup
    kernels: tuple

    def __post_init__(self):
        if self.image.order != self.factor_order**self.n:
            raise HypothesisFailed("compositum image is not the full power")


def power_of_simple(pi: PermGroup, conjugate_phis: Sequence[GroupMap]) -> PowerCertificate:
    """Compositum of surjections onto copies of one nonabelian simple group.

    Maps with equal kernels cut out the same subfield, so only the
    distinct-kernel subfamily contributes; simplicity forces the compositum
    of that subfamily to be the full n-th power, which is checked on the
    materialized image.
    """
    phis = tuple(conjugate_phis)
    if not phis:
        raise HypothesisFailed("at least one map is required")
    first = phis[0].codomain
    for f in phis:
        if f.domain != pi:
            raise NotAHomomorphism("all maps must share the given domain")
        if not f.is_surjective():
            raise NotSurjective("each map must be onto its target")
        require_simple(f.codomain)
        if f.codomain.is_abelian():
            raise NotSimple("targets must be nonabelian simple groups")
        if f.codomain.order != first.order:
            raise HypothesisFailed("targets are not copies of one group")
    picked = []
    kernel_sets = []
    for f in phis:
        k = f.kernel()
        if k.elements not in kernel_sets:
            kernel_sets.append(k.elements)
            picked.append((f, k))
    image = compositum_image(pi, tuple(f for f, _ in picked))
    return PowerCertificate(
        n=len(picked),
        factor_order=first.order,
        image=image,
        kernels=tuple(k for _, k in picked),
    )


# ---------------------------------------------------------------------------
# field-of-moduli bounds


def nor_cen_quotient(g: PermGroup, *, degree_bound=None):
    """(Q, proj, nor, cen) with Q = Nor_{S_d}(G)/Cen_{S_d}(G).

    When the centralizer is trivial, Q is the normalizer itself with the
    identity projection, avoiding a pointless regular blowup.
    """
    nor = embedded_normalizer(g, degree_bound=degree_bound)
    cen = centralizer(nor, g)
    if cen.order == 1:
        return nor, identity_map(nor), nor, cen
    qq, proj = quotient_group(nor, cen)
    return qq, proj, nor, cen


@dataclass(frozen=True)
class ModuliGroupReport:
    """The Galois group of the field of moduli, with its outer bound."""

    h: Subgroup
    quotient: PermGroup
    embedding: GroupMap

    @property
    def target(self) -> PermGroup:
        return self.embedding.codomain


def field_of_moduli_group(
    q: PermGroup, rep: GroupMap, g: PermGroup, *, degree_bound=None
) -> ModuliGroupReport:
    """Kernel and image of the moduli action of a base group on the cover.

    ``rep`` must land in Nor/Cen as built by :func:`nor_cen_quotient`.
    The preimage h of G*Cen/Cen is normal, and q/h embeds into
    Nor/(G*Cen); both facts are verified, not assumed.
    """
    qq, proj, nor, cen = nor_cen_quotient(g, degree_bound=degree_bound)
    if rep.domain != q or rep.codomain != qq:
        raise NotAHomomorphism(
            "rep must map the base group into Nor/Cen as computed by nor_cen_quotient"
        )
    gcen = nor.subgroup(product_set(g.elements, cen.elements))
    gcen_classes = qq.subgroup({proj(x) for x in gcen.elements})
    h = q.subgroup([t for t in q.elements if rep(t) in gcen_classes])
    if not h.is_normal():
        raise HypothesisFailed("moduli kernel failed to be normal")
    target, proj_t = quotient_group(nor, gcen)
    quotient, proj_qh = quotient_group(q, h)
    lift = {}
    for n_el in nor.elements:
        lift.setdefault(proj(n_el), n_el)
    mapping = {}
    for t in q.elements:
        key = proj_qh(t)
        val = proj_t(lift[rep(t)])
        if mapping.setdefault(key, val) != val:
            raise HypothesisFailed("induced moduli map is not well defined")
    embedding = GroupMap.from_mapping(quotient, target, mapping)
    if not embedding.is_injective():
        raise HypothesisFailed("induced moduli map failed to be injective")
    return ModuliGroupReport(h=h, quotient=quotient, embedding=embedding)


@dataclass(frozen=True)
class OuterBoundReport:
    """Nor/(G*Cen) together with its injection into the outer classes."""

    quotient: PermGroup
    projection: GroupMap
    outer_keys: tuple
    out_order: int
    normalizer_order: int


def nor_gcen_out(g: PermGroup, *, degree_bound=None, aut_bound=None) -> OuterBoundReport:
    """Nor_{S_d}(G)/(G*Cen) and its embedding into the outer automorphisms.

    Each quotient element is sent to the outer class of conjugation by any
    lift; the class is canonicalized as the least inner twist, the map is
    checked injective, and conjugation by the G*Cen generators is checked
    inner, which makes the class independent of the chosen lift.
    """
    nor = embedded_normalizer(g, degree_bound=degree_bound)
    cen = centralizer(nor, g)
    gcen = nor.subgroup(product_set(g.elements, cen.elements))
    quotient, proj = quotient_group(nor, gcen)

    for u in gcen.generating_set():
        ui = u.inverse()
        auto = GroupMap.from_mapping(g, g, {x: u * x * ui for x in g.elements})
        if is_inner(g, auto) is None:
            raise HypothesisFailed("conjugation by a coset representative is not inner")

    lift = {}
    for n_el in nor.elements:
        lift.setdefault(proj(n_el), n_el)
    idx = {p: i for i, p in enumerate(g.elements)}
    keys = []
    for t in quotient.elements:
        n_el = lift[t]
        ni = n_el.inverse()
        conj = [n_el * x * ni for x in g.elements]
        best = None
        for h_el in g.elements:
            hi = h_el.inverse()
            cand = tuple(idx[h_el * c * hi] for c in conj)
            if best is None or cand < best:
                best = cand
        keys.append(best)
    if len(set(keys)) != quotient.order:
        raise HypothesisFailed("outer classes of lifts are not distinct")
    out = outer_order(g, aut_bound=aut_bound)
    if out % quotient.order:
        raise HypothesisFailed("quotient order does not divide the outer order")
    return OuterBoundReport(
        quotient=quotient,
        projection=proj,
        outer_keys=tuple(keys),
        out_order=out,
        normalizer_order=nor.order,
    )
