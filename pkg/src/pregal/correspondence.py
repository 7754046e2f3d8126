"""Index-preserving bijections between subgroup families in a ZS-product.

When gamma factors as a ZS-product G * A (each element a unique product),
the subgroups H of G whose product set H*A is again a group correspond
one-to-one with the subgroups of gamma containing A, by H -> H*A backward
H' -> G meet H'.  With A the stabilizer of an extension model this is the
potential Galois correspondence: rows pair subgroups of the potential
Galois group with the subfields they fix.
"""

from dataclasses import dataclass

from .errors import (
    HypothesisFailed,
    NotAComplement,
    NotCharacteristic,
    NotNormalComplement,
    NotZSProduct,
)
from .extension_core import ExtensionModel, is_complement
from .permgroup import (
    GroupMap,
    PermGroup,
    Subgroup,
    all_subgroups,
    automorphism_group,
    product_set,
    quotient_group,
)


def _product_commutes(h: Subgroup, a: Subgroup) -> bool:
    return product_set(h.elements, a.elements) == product_set(a.elements, h.elements)


def subgroup_family(gamma: PermGroup, g: Subgroup, a: Subgroup, *, enum_bound=None) -> tuple:
    """The H <= g whose product set with a is a group, canonical order."""
    out = []
    for h in all_subgroups(g.as_group(), enum_bound=enum_bound):
        lifted = gamma.subgroup(h.elements)
        if _product_commutes(lifted, a):
            out.append(lifted)
    return tuple(out)


def over_family(gamma: PermGroup, a: Subgroup, *, enum_bound=None) -> tuple:
    """Subgroups of gamma containing a, canonical order."""
    return tuple(
        hp for hp in all_subgroups(gamma, enum_bound=enum_bound) if hp.contains_subgroup(a)
    )


@dataclass(frozen=True)
class ZSBijection:
    """The two mutually inverse maps of the subgroup correspondence.

    ``family`` lists the H <= g with H*a a group; ``overgroups`` the
    subgroups of gamma containing a.  ``forward_pairs`` and
    ``backward_pairs`` store the two maps as aligned pairs.
    """

    gamma: PermGroup
    g: Subgroup
    a: Subgroup
    family: tuple
    overgroups: tuple
    forward_pairs: tuple
    backward_pairs: tuple

    def forward(self, h: Subgroup) -> Subgroup:
        for x, y in self.forward_pairs:
            if x == h:
                return y
        raise KeyError(f"{h!r} is not in the subgroup family")

    def backward(self, hp: Subgroup) -> Subgroup:
        for x, y in self.backward_pairs:
            if x == hp:
                return y
        raise KeyError(f"{hp!r} does not contain the distinguished subgroup")


def zs_subgroup_bijection(gamma: PermGroup, g: Subgroup, a: Subgroup, *, enum_bound=None) -> ZSBijection:
    """Construct and fully verify the correspondence for gamma = g * a.

    Both directions are materialized, checked to be mutually inverse, and
    checked index preserving: |gamma| / |H*a| = |g| / |H| on the way out
    and |g| / |g meet H'| = |gamma| / |H'| on the way back.
    """
    if not is_complement(gamma, g, a):
        raise NotZSProduct("gamma is not the ZS-product of the given subgroups")
    family = subgroup_family(gamma, g, a, enum_bound=enum_bound)
    overs = over_family(gamma, a, enum_bound=enum_bound)

    forward_pairs = []
    for h in family:
        hp = gamma.subgroup(product_set(h.elements, a.elements))
        if gamma.order * h.order != g.order * hp.order:
            raise HypothesisFailed("index preservation failed in the forward map")
        forward_pairs.append((h, hp))
    backward_pairs = []
    for hp in overs:
        h = g.intersection(hp)
        if gamma.order * h.order != g.order * hp.order:
            raise HypothesisFailed("index preservation failed in the backward map")
        backward_pairs.append((hp, h))

    forward = dict(forward_pairs)
    backward = dict(backward_pairs)
    if sorted(forward.values(), key=lambda s: s.elements) != sorted(
        overs, key=lambda s: s.elements
    ):
        raise HypothesisFailed("forward map does not land onto the overgroup family")
    for h, hp in forward_pairs:
        if backward[hp] != h:
            raise HypothesisFailed("backward(forward(H)) differs from H")
    for hp, h in backward_pairs:
        if h not in forward or forward[h] != hp:
            raise HypothesisFailed("forward(backward(H')) differs from H'")

    return ZSBijection(
        gamma=gamma,
        g=g,
        a=a,
        family=family,
        overgroups=overs,
        forward_pairs=tuple(forward_pairs),
        backward_pairs=tuple(backward_pairs),
    )


@dataclass(frozen=True)
class CorrespondenceRow:
    """One subgroup of the potential Galois group and the field it cuts out.

    ``field_subgroup`` fixes the subfield; ``subdegree`` is the degree of
    the extension over that subfield, which equals |h|.
    """

    h: Subgroup
    field_subgroup: Subgroup
    subdegree: int


@dataclass(frozen=True)
class CorrespondenceTable:
    model: ExtensionModel
    complement: Subgroup
    rows: tuple


def correspondence_table(model: ExtensionModel, complement: Subgroup, *, enum_bound=None) -> CorrespondenceTable:
    """The subgroup-to-subfield table for one chosen complement.

    Every row is re-verified: the field subgroup is the product set, the
    roundtrip returns h, and the subdegree equals |h|.
    """
    if not is_complement(model.gamma, model.gamma_e, complement):
        raise NotAComplement("the chosen subgroup is not a complement of gamma_e")
    bij = zs_subgroup_bijection(model.gamma, complement, model.gamma_e, enum_bound=enum_bound)
    rows = []
    for h, hp in bij.forward_pairs:
        if bij.backward(hp) != h:
            raise HypothesisFailed("table roundtrip failed")
        rows.append(CorrespondenceRow(h=h, field_subgroup=hp, subdegree=h.order))
    return CorrespondenceTable(model=model, complement=complement, rows=tuple(rows))


@dataclass(frozen=True)
class DescentCertificate:
    """Witness that a characteristic subgroup descends to a sub-extension.

    The quotient is the group of the smaller extension cut out by h; the
    projection realizes it as a quotient of the chosen complement.
    """

    model: ExtensionModel
    complement: Subgroup
    h: Subgroup
    h_normal_in_gamma: bool
    field_subgroup: Subgroup
    quotient: PermGroup
    projection: GroupMap


def characteristic_descent(model: ExtensionModel, complement: Subgroup, h: Subgroup) -> DescentCertificate:
    """Descend a characteristic subgroup of a normal complement.

    Characteristic subgroups of a normal subgroup are normal in the whole
    group, so h times gamma_e really is a subgroup and the quotient
    complement/h is the group of the sub-extension fixed by h.
    """
    if not is_complement(model.gamma, model.gamma_e, complement) or not complement.is_normal():
        raise NotNormalComplement("descent needs a normal complement")
    cg = complement.as_group()
    h_in_c = cg.subgroup(h.elements)
    for auto in automorphism_group(cg):
        if {auto(x) for x in h_in_c.elements} != set(h_in_c.elements):
            raise NotCharacteristic("subgroup moved by an automorphism of the complement")

    h_in_gamma = model.gamma.subgroup(h.elements)
    field_subgroup = model.gamma.subgroup(
        product_set(h_in_gamma.elements, model.gamma_e.elements)
    )
    quotient, projection = quotient_group(cg, h_in_c)
    return DescentCertificate(
        model=model,
        complement=complement,
        h=h_in_gamma,
        h_normal_in_gamma=h_in_gamma.is_normal(),
        field_subgroup=field_subgroup,
        quotient=quotient,
        projection=projection,
    )


@dataclass(frozen=True)
class CrossCorrespondence:
    """Bijection between the subgroup families of two complements."""

    model: ExtensionModel
    source: Subgroup
    target: Subgroup
    pairs: tuple

    def apply(self, h: Subgroup) -> Subgroup:
        for x, y in self.pairs:
            if x == h:
                return y
        raise KeyError(f"{h!r} is not in the source family")


def cross_correspondence(model: ExtensionModel, l_complement: Subgroup, l2_complement: Subgroup, *, enum_bound=None) -> CrossCorrespondence:
    """Map H to (H * gamma_e) meet G' between two complement families.

    Verified bijective and index preserving; the composite through the
    overgroup family gives the same map by construction of the two
    one-sided bijections.
    """
    for cand in (l_complement, l2_complement):
        if not is_complement(model.gamma, model.gamma_e, cand):
            raise NotAComplement("both arguments must be complements of gamma_e")
    gamma = model.gamma
    a = model.gamma_e
    family = subgroup_family(gamma, l_complement, a, enum_bound=enum_bound)
    target_family = set(subgroup_family(gamma, l2_complement, a, enum_bound=enum_bound))

    pairs = []
    seen = set()
    for h in family:
        ha = product_set(h.elements, a.elements)
        image = l2_complement.intersection(gamma.subgroup(ha))
        if image not in target_family:
            raise HypothesisFailed("cross image left the target family")
        if l_complement.order * image.order != l2_complement.order * h.order:
            raise HypothesisFailed("cross correspondence broke index preservation")
        if image in seen:
            raise HypothesisFailed("cross correspondence is not injective")
        seen.add(image)
        pairs.append((h, image))
    if len(seen) != len(target_family):
        raise HypothesisFailed("cross correspondence is not onto the target family")
    return CrossCorrespondence(
        model=model, source=l_complement, target=l2_complement, pairs=tuple(pairs)
    )
