"""Tests for branch cycle descriptions, twisting, and moduli bounds."""

import dataclasses

import pytest

from pregal.catalog import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    klein_four,
    symmetric,
)
from pregal.errors import (
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
from pregal.extension_core import analyze, complements, fixture_model
from pregal.geometric import (
    ArithmeticModel,
    BranchCycleDescription,
    EtaleAlgebra,
    _holomorph_of_regular,
    branch_loci_disjoint,
    compositum_image,
    embedded_normalizer,
    field_of_moduli_group,
    monodromy_analysis,
    nor_cen_quotient,
    nor_gcen_out,
    power_of_simple,
    specialization_transfer,
    specialize,
    standard_split_model,
    twist,
)
from pregal.permgroup import (
    GroupMap,
    Perm,
    PermGroup,
    automorphism_group,
    closure,
    is_isomorphic,
    regular_representation,
    trivial_map,
)


def product_one_triple(group, g1, g2):
    return (g1, g2, (g1 * g2).inverse())


def bcd_for(group, g1, g2, labels=None):
    return BranchCycleDescription(
        group=group, perms=product_one_triple(group, g1, g2), branch_labels=labels
    )


def regular_copy(group):
    return regular_representation(group).image()


def regular_bcd(group, g1, g2):
    lam = regular_representation(group)
    perms = tuple(lam(p) for p in product_one_triple(group, g1, g2))
    return BranchCycleDescription(group=lam.image(), perms=perms)


def projections(prod, a, b):
    da = a.degree
    p1 = GroupMap.from_mapping(prod, a, {x: Perm(x.images[:da]) for x in prod.elements})
    p2 = GroupMap.from_mapping(
        prod, b, {x: Perm(tuple(v - da for v in x.images[da:])) for x in prod.elements}
    )
    return p1, p2


class TestBranchCycleDescription:
    def test_valid_triple(self):
        s3 = symmetric(3)
        bcd = bcd_for(s3, Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)]))
        assert bcd.degree == 3
        assert bcd.branch_count == 3
        assert bcd.branch_labels == ("b1", "b2", "b3")

    def test_rejects_bad_product(self):
        s3 = symmetric(3)
        t = Perm.from_cycles(3, [(0, 1)])
        with pytest.raises(HypothesisFailed, match="identity"):
            BranchCycleDescription(group=s3, perms=(t, t, t))

    def test_rejects_non_generating(self):
        s3 = symmetric(3)
        t = Perm.from_cycles(3, [(0, 1)])
        with pytest.raises(HypothesisFailed, match="generate"):
            BranchCycleDescription(group=s3, perms=(t, t))

    def test_rejects_intransitive(self):
        c2 = closure(4, [Perm.from_cycles(4, [(0, 1), (2, 3)])])
        t = Perm.from_cycles(4, [(0, 1), (2, 3)])
        with pytest.raises(HypothesisFailed, match="transitive"):
            BranchCycleDescription(group=c2, perms=(t, t))

    def test_rejects_entry_outside_group(self):
        c3 = cyclic(3)
        t = Perm.from_cycles(3, [(0, 1)])
        with pytest.raises(HypothesisFailed, match="outside"):
            BranchCycleDescription(group=c3, perms=(t, t))

    def test_rejects_degree_mismatch(self):
        s3 = symmetric(3)
        with pytest.raises(DegreeMismatch):
            BranchCycleDescription(
                group=s3, perms=(Perm.from_cycles(4, [(0, 1)]), Perm.from_cycles(4, [(0, 1)]))
            )

    def test_label_validation(self):
        s3 = symmetric(3)
        gens = product_one_triple(
            s3, Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)])
        )
        with pytest.raises(HypothesisFailed, match="label"):
            BranchCycleDescription(group=s3, perms=gens, branch_labels=("x", "y"))
        with pytest.raises(HypothesisFailed, match="distinct"):
            BranchCycleDescription(group=s3, perms=gens, branch_labels=("x", "x", "y"))

    def test_disjoint_label_check(self):
        s3 = symmetric(3)
        a = bcd_for(
            s3,
            Perm.from_cycles(3, [(0, 1)]),
            Perm.from_cycles(3, [(1, 2)]),
            labels=("p", "q", "r"),
        )
        b = bcd_for(
            s3,
            Perm.from_cycles(3, [(0, 1)]),
            Perm.from_cycles(3, [(1, 2)]),
            labels=("s", "t", "u"),
        )
        assert branch_loci_disjoint(a, b)
        assert not branch_loci_disjoint(a, a)


class TestMonodromyAnalysis:
    def test_c4_regular(self):
        c4 = cyclic(4)
        rot = Perm.from_cycles(4, [(0, 1, 2, 3)])
        bcd = BranchCycleDescription(group=c4, perms=(rot, rot.inverse()))
        report = monodromy_analysis(bcd)
        assert report.is_geometrically_galois
        assert report.constant_extension_bound.order == 2
        assert report.constant_extension_bound.order == len(automorphism_group(c4))

    def test_a5_natural_not_galois(self):
        a5 = alternating(5)
        bcd = bcd_for(a5, Perm.from_cycles(5, [(0, 1, 2, 3, 4)]), Perm.from_cycles(5, [(0, 1, 2)]))
        report = monodromy_analysis(bcd)
        assert not report.is_geometrically_galois
        assert report.constant_extension_bound.order == 2  # S5 / A5

    def test_s3_regular_bound_order_six(self):
        s3 = symmetric(3)
        bcd = regular_bcd(s3, Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)]))
        report = monodromy_analysis(bcd)
        assert report.is_geometrically_galois
        assert report.constant_extension_bound.order == 6
        assert is_isomorphic(report.constant_extension_bound, s3)

    def test_regular_bound_matches_automorphism_count(self):
        cases = [
            (cyclic(4), Perm.from_cycles(4, [(0, 1, 2, 3)]), Perm.from_cycles(4, [(0, 3, 2, 1)])),
            (
                klein_four(),
                Perm.from_cycles(4, [(0, 1), (2, 3)]),
                Perm.from_cycles(4, [(0, 2), (1, 3)]),
            ),
            (symmetric(3), Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)])),
        ]
        for group, g1, g2 in cases:
            if group.is_regular():
                perms = product_one_triple(group, g1, g2)
                bcd = BranchCycleDescription(group=group, perms=perms)
            else:
                bcd = regular_bcd(group, g1, g2)
            report = monodromy_analysis(bcd)
            assert report.constant_extension_bound.order == len(automorphism_group(group))

    def test_holomorph_agrees_with_brute_force(self):
        for reg in (cyclic(4), klein_four(), regular_copy(symmetric(3))):
            assert _holomorph_of_regular(reg) == embedded_normalizer(reg)

    def test_a4_regular_uses_holomorph_past_degree_cap(self):
        a4 = alternating(4)
        bcd = regular_bcd(a4, Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(0, 1, 3)]))
        assert bcd.degree == 12
        report = monodromy_analysis(bcd)
        assert report.is_geometrically_galois
        assert report.constant_extension_bound.order == len(automorphism_group(a4))

    def test_nonregular_large_degree_is_bounded(self):
        d18 = dihedral(9)
        rot = Perm.from_cycles(9, [tuple(range(9))])
        refl = Perm(tuple((9 - i) % 9 for i in range(9)))
        bcd = bcd_for(d18, rot, refl)
        with pytest.raises(BoundExceeded):
            monodromy_analysis(bcd)


def s3c2_model(psi_to_transposition=True, rational_point=True):
    s3 = symmetric(3)
    c2 = cyclic(2)
    image = Perm.from_cycles(3, [(0, 1)]) if psi_to_transposition else Perm.identity(3)
    return standard_split_model(s3, c2, [image], rational_point=rational_point)


def crooked_section_model(rational_point):
    """Section sent to ((0 1), swap): phi does not kill it."""
    s3 = symmetric(3)
    c2 = cyclic(2)
    base = standard_split_model(s3, c2, [Perm.from_cycles(3, [(0, 1)])])
    crooked = GroupMap.from_generator_images(
        c2, base.pi, [Perm.from_cycles(5, [(0, 1), (3, 4)])]
    )
    return dataclasses.replace(base, section=crooked, rational_point=rational_point)


class TestArithmeticModel:
    def test_standard_model_shape(self):
        model = s3c2_model()
        assert model.q.order == 2
        assert model.g == symmetric(3)
        assert model.pi.order == 12
        assert model.pibar.order == 6
        for y in model.pi.elements:
            x, tau = model.factor(y)
            assert x in model.pibar
            assert x * model.section(tau) == y

    def test_rejects_non_normal_geometric_part(self):
        model = s3c2_model()
        bad = model.pi.generated_subgroup([Perm.from_cycles(5, [(0, 1)])])
        with pytest.raises(NotNormal):
            dataclasses.replace(model, pibar=bad)

    def test_rejects_kernel_mismatch(self):
        model = s3c2_model()
        small = model.pi.generated_subgroup([Perm.from_cycles(5, [(3, 4)])])
        assert small.is_normal()
        with pytest.raises(HypothesisFailed, match="kernel"):
            dataclasses.replace(model, pibar=small)

    def test_rejects_non_splitting_section(self):
        model = s3c2_model()
        with pytest.raises(HypothesisFailed, match="split"):
            dataclasses.replace(model, section=trivial_map(model.q, model.pi))

    def test_rejects_cover_map_not_surjective_on_geometric_part(self):
        model = s3c2_model()
        with pytest.raises(NotSurjective):
            dataclasses.replace(model, phi=trivial_map(model.pi, model.g))

    def test_rejects_psi_into_wrong_group(self):
        model = s3c2_model()
        with pytest.raises(NotAHomomorphism):
            dataclasses.replace(model, psi=trivial_map(model.q, model.pi))

    def test_rational_point_flag_is_checked(self):
        with pytest.raises(HypothesisFailed, match="rational"):
            crooked_section_model(rational_point=True)
        model = crooked_section_model(rational_point=False)
        assert not model.rational_point


class TestTwist:
    def test_trivial_psi_gives_left_translation(self):
        model = s3c2_model(psi_to_transposition=False)
        tw = twist(model)
        elems = model.g.elements
        index = {p: i for i, p in enumerate(elems)}
        for y in model.pi.elements:
            expected = Perm(tuple(index[model.phi(y) * p] for p in elems))
            assert tw(y) == expected

    def test_section_acts_by_right_translation(self):
        model = s3c2_model()
        tw = twist(model)
        gen = model.q.generators[0]
        moved = tw(model.section(gen))
        elems = model.g.elements
        index = {p: i for i, p in enumerate(elems)}
        swap = Perm.from_cycles(3, [(0, 1)])
        assert moved == Perm(tuple(index[p * swap] for p in elems))
        assert len(closure(6, [moved]).orbits()) == 3

    def test_twist_is_homomorphism_on_all_pairs(self):
        model = s3c2_model()
        tw = twist(model)
        for y1 in model.pi.elements:
            for y2 in model.pi.elements:
                assert tw(y1 * y2) == tw(y1) * tw(y2)

    def test_kernel_identity(self):
        for psi_flag in (True, False):
            model = s3c2_model(psi_to_transposition=psi_flag)
            tw = twist(model)
            ker_phi = set(model.phi.kernel().elements)
            ker_lifted_psi = {
                y for y in model.pi.elements if model.psi(model.quotient_map(y)).is_identity()
            }
            assert set(tw.kernel().elements) == ker_phi & ker_lifted_psi

    def test_faithful_when_kernels_meet_trivially(self):
        model = s3c2_model()
        tw = twist(model)
        assert tw.kernel().order == 1
        assert tw.image().order == model.pi.order

    def test_center_must_be_trivial(self):
        c4 = cyclic(4)
        model = standard_split_model(c4, cyclic(2), [Perm.identity(4)])
        with pytest.raises(CenterNotTrivial):
            twist(model)

    def test_requires_rational_point(self):
        model = crooked_section_model(rational_point=False)
        with pytest.raises(NoRationalPoint):
            twist(model)


class TestSpecialize:
    def test_twisted_three_components_of_degree_two(self):
        model = s3c2_model()
        alg = specialize(model, use_twisted=True)
        assert isinstance(alg, EtaleAlgebra)
        assert alg.total_degree == 6
        assert alg.degrees() == (2, 2, 2)
        assert not alg.is_field
        for comp in alg.components:
            assert comp.stabilizer.order == 1

    def test_untwisted_with_rational_point_fully_splits(self):
        model = s3c2_model()
        alg = specialize(model, use_twisted=False)
        assert alg.degrees() == (1, 1, 1)
        for comp in alg.components:
            assert comp.stabilizer.order == model.q.order

    def test_untwisted_crooked_section_orbits(self):
        model = crooked_section_model(rational_point=False)
        alg = specialize(model, use_twisted=False)
        assert alg.total_degree == 3
        assert alg.degrees() == (2, 1)
        assert alg.components[0].points == (0, 1)
        assert [c.stabilizer.order for c in alg.components] == [1, 2]

    def test_single_component_iff_transitive(self):
        s3 = symmetric(3)
        model = standard_split_model(
            s3, s3, [Perm.from_cycles(3, [(0, 1, 2)]), Perm.from_cycles(3, [(0, 1)])]
        )
        alg = specialize(model, use_twisted=True)
        assert alg.is_field
        assert alg.degrees() == (6,)
        assert alg.components[0].stabilizer.order == 1
        act = {t: twist(model)(model.section(t)) for t in model.q.elements}
        moved = closure(6, list(act.values()))
        assert moved.is_transitive() == alg.is_field

    def test_component_count_matches_psi_image_index(self):
        """Twisted components = index of the psi image, each of equal degree."""
        model = s3c2_model()
        alg = specialize(model, use_twisted=True)
        h_order = model.psi.image().order
        assert len(alg.components) == model.g.order // h_order
        assert all(c.degree == h_order for c in alg.components)

    def test_twisted_errors_propagate(self):
        c4 = cyclic(4)
        model = standard_split_model(c4, cyclic(2), [Perm.identity(4)])
        with pytest.raises(CenterNotTrivial):
            specialize(model, use_twisted=True)
        crooked = crooked_section_model(rational_point=False)
        with pytest.raises(NoRationalPoint):
            specialize(crooked, use_twisted=True)

    def test_deterministic(self):
        model = s3c2_model()
        assert specialize(model, True) == specialize(model, True)


class TestSpecializationTransfer:
    def test_restates_analysis(self):
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        report = specialization_transfer(model, v4)
        assert report.analysis == analyze(model)
        assert report.zs_decomposition_preserved
        assert report.complement_normal
        assert report.pre_galois_transferred

    def test_non_normal_complement(self):
        model = fixture_model("S4/S3")
        c4 = next(c for c in complements(model.gamma, model.gamma_e) if not c.is_normal())
        report = specialization_transfer(model, c4)
        assert not report.complement_normal
        assert report.pre_galois_transferred  # the model still has a normal complement

    def test_rejects_non_complement(self):
        model = fixture_model("S4/S3")
        a4 = model.gamma.generated_subgroup(
            [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])]
        )
        with pytest.raises(NotAComplement):
            specialization_transfer(model, a4)


class TestCompositum:
    def test_single_identity_map(self):
        a5 = alternating(5)
        from pregal.permgroup import identity_map

        assert compositum_image(a5, [identity_map(a5)]) == a5

    def test_two_projections_give_full_product(self):
        a5 = alternating(5)
        prod = direct_product(a5, a5)
        p1, p2 = projections(prod, a5, a5)
        image = compositum_image(prod, [p1, p2])
        assert image.order == 3600
        assert image == prod

    def test_diagonal_image(self):
        a5 = alternating(5)
        from pregal.permgroup import identity_map

        ident = identity_map(a5)
        image = compositum_image(a5, [ident, ident])
        assert image.order == 60
        assert image.degree == 10
        assert is_isomorphic(image, a5)

    def test_rejects_non_surjective(self):
        a5 = alternating(5)
        s5 = symmetric(5)
        inclusion = GroupMap.from_mapping(a5, s5, {x: x for x in a5.elements})
        with pytest.raises(NotSurjective):
            compositum_image(a5, [inclusion])

    def test_rejects_foreign_domain(self):
        a5 = alternating(5)
        s3 = symmetric(3)
        from pregal.permgroup import identity_map

        with pytest.raises(NotAHomomorphism):
            compositum_image(a5, [identity_map(s3)])


class TestPowerOfSimple:
    def test_two_distinct_kernels(self):
        a5 = alternating(5)
        prod = direct_product(a5, a5)
        p1, p2 = projections(prod, a5, a5)
        cert = power_of_simple(prod, [p1, p2])
        assert cert.n == 2
        assert cert.factor_order == 60
        assert cert.image.order == 3600
        assert [k.order for k in cert.kernels] == [60, 60]

    def test_equal_kernels_collapse(self):
        a5 = alternating(5)
        from pregal.permgroup import identity_map

        ident = identity_map(a5)
        conj = Perm.from_cycles(5, [(0, 1, 2, 3, 4)])
        auto = GroupMap.from_mapping(
            a5, a5, {x: conj * x * conj.inverse() for x in a5.elements}
        )
        cert = power_of_simple(a5, [ident, auto])
        assert cert.n == 1
        assert cert.image.order == 60

    def test_three_maps_two_sharing_a_kernel(self):
        a5 = alternating(5)
        prod = direct_product(a5, a5)
        p1, p2 = projections(prod, a5, a5)
        conj = Perm.from_cycles(5, [(0, 1, 2, 3, 4)])
        auto = GroupMap.from_mapping(
            a5, a5, {x: conj * x * conj.inverse() for x in a5.elements}
        )
        p3 = auto.compose(p2)
        assert p3.kernel().elements == p2.kernel().elements
        cert = power_of_simple(prod, [p1, p2, p3])
        assert cert.n == 2
        assert cert.image.order == 3600

    def test_rejects_composite_target(self):
        s4 = symmetric(4)
        from pregal.permgroup import identity_map

        with pytest.raises(NotSimple):
            power_of_simple(s4, [identity_map(s4)])

    def test_rejects_abelian_simple_target(self):
        c5 = cyclic(5)
        from pregal.permgroup import identity_map

        with pytest.raises(NotSimple):
            power_of_simple(c5, [identity_map(c5)])


class TestFieldOfModuli:
    def test_trivial_rep(self):
        g = regular_copy(cyclic(4))
        qq, _, _, _ = nor_cen_quotient(g)
        q = cyclic(2)
        report = field_of_moduli_group(q, trivial_map(q, qq), g)
        assert report.h.order == q.order
        assert report.quotient.order == 1

    def test_c4_regular_nontrivial_rep(self):
        g = regular_copy(cyclic(4))
        qq, _, nor, cen = nor_cen_quotient(g)
        assert nor.order == 8
        assert cen.order == 4
        assert qq.order == 2
        q = cyclic(2)
        nontrivial = next(p for p in qq.elements if not p.is_identity())
        rep = GroupMap.from_generator_images(q, qq, [nontrivial])
        report = field_of_moduli_group(q, rep, g)
        assert report.h.order == 1
        assert report.quotient.order == 2
        assert report.target.order == 2
        assert report.embedding.is_bijective()

    def test_a6_in_s6(self):
        a6 = alternating(6)
        qq, _, nor, cen = nor_cen_quotient(a6)
        assert cen.order == 1
        assert nor.order == 720  # the full symmetric group normalizes
        q = cyclic(2)
        rep = GroupMap.from_generator_images(q, qq, [Perm.from_cycles(6, [(0, 1)])])
        report = field_of_moduli_group(q, rep, a6)
        assert report.h.order == 1
        assert report.quotient.order == 2
        assert report.target.order == 2

    def test_rejects_wrong_codomain(self):
        g = regular_copy(cyclic(4))
        q = cyclic(2)
        with pytest.raises(NotAHomomorphism):
            field_of_moduli_group(q, trivial_map(q, g), g)


class TestNorGcenOut:
    def test_a6_bound_is_strictly_smaller_than_out(self):
        report = nor_gcen_out(alternating(6))
        assert report.normalizer_order == 720
        assert report.quotient.order == 2
        assert report.out_order == 4
        assert report.quotient.order < report.out_order
        assert len(set(report.outer_keys)) == 2

    def test_regular_representations_reach_equality(self):
        for group in (cyclic(4), klein_four(), symmetric(3)):
            report = nor_gcen_out(regular_copy(group))
            assert report.quotient.order == report.out_order
            assert len(set(report.outer_keys)) == report.quotient.order

    def test_natural_symmetric_groups_are_trivial(self):
        for n in (4, 5):
            report = nor_gcen_out(symmetric(n))
            assert report.quotient.order == 1
            assert report.out_order == 1
