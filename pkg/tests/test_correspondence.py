"""Tests for the subgroup correspondence of ZS-products."""

import pytest

from pregal.catalog import named_group
from pregal.correspondence import (
    CorrespondenceRow,
    CorrespondenceTable,
    characteristic_descent,
    correspondence_table,
    cross_correspondence,
    over_family,
    subgroup_family,
    zs_subgroup_bijection,
)
from pregal.errors import (
    NotAComplement,
    NotCharacteristic,
    NotNormalComplement,
    NotSubgroup,
    NotZSProduct,
)
from pregal.extension_core import complements, fixture_model, fixture_models
from pregal.permgroup import Perm, all_subgroups, product_set


def membership_three_ways(gamma, h, a) -> bool:
    """Decide H*A == A*H by three independent routes and insist they agree."""
    ha = product_set(h.elements, a.elements)
    ah = product_set(a.elements, h.elements)
    way_sets = ha == ah
    way_closed = all(x * y in ha for x in ha for y in ha)
    try:
        gamma.subgroup(ha)
        way_subgroup = True
    except NotSubgroup:
        way_subgroup = False
    assert way_sets == way_closed == way_subgroup
    return way_sets


def oracle_family(gamma, g, a):
    out = []
    for h in all_subgroups(g.as_group()):
        lifted = gamma.subgroup(h.elements)
        if membership_three_ways(gamma, lifted, a):
            out.append(lifted)
    return out


class TestSubgroupFamily:
    def test_s4_family_over_point_stabilizer(self):
        """Only the trivial and full subgroups of the biregular V4 qualify."""
        s4 = named_group("S4")
        v4 = s4.subgroup(
            [
                Perm.identity(4),
                Perm.from_cycles(4, [(0, 1), (2, 3)]),
                Perm.from_cycles(4, [(0, 2), (1, 3)]),
                Perm.from_cycles(4, [(0, 3), (1, 2)]),
            ]
        )
        a = s4.point_stabilizer(3)
        family = subgroup_family(s4, v4, a)
        assert [h.order for h in family] == [1, 4]
        # each order-2 subgroup moves the stabilized point when it conjugates a
        for sub in all_subgroups(v4.as_group(), order_filter=2):
            lifted = s4.subgroup(sub.elements)
            assert not membership_three_ways(s4, lifted, a)
        # the unique-product property itself holds for every subgroup
        for sub in all_subgroups(v4.as_group()):
            ha = product_set(sub.elements, a.elements)
            assert len(ha) == sub.order * a.order

    def test_matches_three_way_oracle(self):
        for label in ("S4/S3", "D8/C2", "A4/C3"):
            model = fixture_model(label)
            for comp in complements(model.gamma, model.gamma_e):
                fam = subgroup_family(model.gamma, comp, model.gamma_e)
                assert list(fam) == oracle_family(model.gamma, comp, model.gamma_e)

    def test_trivial_and_full_always_belong(self):
        for model in fixture_models():
            if model.gamma.order > 60:
                continue
            for comp in complements(model.gamma, model.gamma_e):
                fam = subgroup_family(model.gamma, comp, model.gamma_e)
                orders = [h.order for h in fam]
                assert 1 in orders
                assert comp.order in orders

    def test_over_family_s4(self):
        s4 = named_group("S4")
        a = s4.point_stabilizer(3)
        overs = over_family(s4, a)
        # the point stabilizer is maximal, so only itself and the whole group
        assert [hp.order for hp in overs] == [6, 24]
        trivial = s4.trivial_subgroup()
        assert len(over_family(s4, trivial)) == len(all_subgroups(s4))


def _is_cyclic(sub) -> bool:
    return any(p.order() == sub.order for p in sub.elements)


class TestZSBijection:
    def test_d8_three_member_family(self):
        """The central rotation subgroup joins the family, unlike in S4."""
        model = fixture_model("D8/C2")
        c4 = next(
            c for c in complements(model.gamma, model.gamma_e) if _is_cyclic(c)
        )
        bij = zs_subgroup_bijection(model.gamma, c4, model.gamma_e)
        assert [h.order for h in bij.family] == [1, 2, 4]
        assert [hp.order for hp in bij.overgroups] == [2, 4, 8]
        center = model.gamma.center()
        assert bij.family[1].elements == center.elements

    def test_forward_backward_dictionaries(self):
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        bij = zs_subgroup_bijection(model.gamma, v4, model.gamma_e)
        for h, hp in bij.forward_pairs:
            assert bij.forward(h) == hp
            assert bij.backward(hp) == h
            assert hp.contains_subgroup(model.gamma_e)
        with pytest.raises(KeyError):
            bij.forward(model.gamma.subgroup([model.gamma.identity, Perm.from_cycles(4, [(0, 1)])]))
        with pytest.raises(KeyError):
            bij.backward(model.gamma.trivial_subgroup())

    def test_index_preservation(self):
        for label in ("S4/S3", "D8/C2", "A4/C3", "S3/C2"):
            model = fixture_model(label)
            for comp in complements(model.gamma, model.gamma_e):
                bij = zs_subgroup_bijection(model.gamma, comp, model.gamma_e)
                for h, hp in bij.forward_pairs:
                    assert model.gamma.order // hp.order == comp.order // h.order

    def test_rejects_non_zs_pairs(self):
        s4 = named_group("S4")
        a = s4.point_stabilizer(3)
        v4 = s4.subgroup(
            [
                Perm.identity(4),
                Perm.from_cycles(4, [(0, 1), (2, 3)]),
                Perm.from_cycles(4, [(0, 2), (1, 3)]),
                Perm.from_cycles(4, [(0, 3), (1, 2)]),
            ]
        )
        c2 = s4.generated_subgroup([Perm.from_cycles(4, [(0, 1)])])
        with pytest.raises(NotZSProduct):
            zs_subgroup_bijection(s4, v4, c2)  # 4 * 2 != 24
        a4 = s4.generated_subgroup(
            [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])]
        )
        with pytest.raises(NotZSProduct):
            zs_subgroup_bijection(s4, a4, a)  # overlapping factors

    def test_galois_degeneration_full_lattice(self):
        """With trivial stabilizer the correspondence is the classical one."""
        model = fixture_model("V4/1")
        whole = model.gamma.subgroup(model.gamma.elements)
        bij = zs_subgroup_bijection(model.gamma, whole, model.gamma_e)
        assert len(bij.family) == len(all_subgroups(model.gamma)) == 5
        for h, hp in bij.forward_pairs:
            assert h == hp

    def test_bijection_is_deterministic(self):
        model = fixture_model("D8/C2")
        comp = complements(model.gamma, model.gamma_e)[0]
        one = zs_subgroup_bijection(model.gamma, comp, model.gamma_e)
        two = zs_subgroup_bijection(model.gamma, comp, model.gamma_e)
        assert one.forward_pairs == two.forward_pairs
        assert one.backward_pairs == two.backward_pairs


class TestCorrespondenceTable:
    def test_d8_rows(self):
        model = fixture_model("D8/C2")
        c4 = next(
            c for c in complements(model.gamma, model.gamma_e) if _is_cyclic(c)
        )
        table = correspondence_table(model, c4)
        assert isinstance(table, CorrespondenceTable)
        assert [row.subdegree for row in table.rows] == [1, 2, 4]
        middle = table.rows[1]
        assert middle.h.order == 2
        assert middle.field_subgroup.order == 4
        assert middle.field_subgroup.contains_subgroup(model.gamma_e)

    def test_rows_are_verified_roundtrips(self):
        for label in ("S4/S3", "D8/C2", "A4/C3", "S3/C2", "Q8/1"):
            model = fixture_model(label)
            for comp in complements(model.gamma, model.gamma_e):
                table = correspondence_table(model, comp)
                for row in table.rows:
                    assert isinstance(row, CorrespondenceRow)
                    assert row.subdegree == row.h.order
                    assert comp.intersection(row.field_subgroup) == row.h
                    quotient_index = model.gamma.order // row.field_subgroup.order
                    assert quotient_index == comp.order // row.h.order

    def test_rows_in_canonical_order(self):
        model = fixture_model("S3/1")
        whole = model.gamma.subgroup(model.gamma.elements)
        table = correspondence_table(model, whole)
        assert len(table.rows) == 6  # the full subgroup lattice of S3
        keys = [(row.h.order, row.h.elements) for row in table.rows]
        assert keys == sorted(keys)

    def test_rejects_non_complement(self):
        model = fixture_model("S4/S3")
        a4 = model.gamma.generated_subgroup(
            [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])]
        )
        with pytest.raises(NotAComplement):
            correspondence_table(model, a4)


class TestCharacteristicDescent:
    def test_d8_rotation_square(self):
        model = fixture_model("D8/C2")
        c4 = next(
            c for c in complements(model.gamma, model.gamma_e) if _is_cyclic(c)
        )
        h = model.gamma.subgroup(model.gamma.center().elements)
        cert = characteristic_descent(model, c4, h)
        assert cert.h_normal_in_gamma
        assert cert.quotient.order == 2
        assert cert.field_subgroup.order == 4
        assert cert.projection.is_surjective()
        assert cert.projection.kernel().order == 2

    def test_trivial_and_full_descents(self):
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        bottom = characteristic_descent(model, v4, model.gamma.trivial_subgroup())
        assert bottom.quotient.order == v4.order
        assert bottom.field_subgroup.order == model.gamma_e.order
        top = characteristic_descent(model, v4, v4)
        assert top.quotient.order == 1
        assert top.field_subgroup.order == model.gamma.order

    def test_rejects_moved_subgroup(self):
        """Normal in the complement is not enough; automorphisms must fix it."""
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        h = model.gamma.generated_subgroup([Perm.from_cycles(4, [(0, 1), (2, 3)])])
        with pytest.raises(NotCharacteristic):
            characteristic_descent(model, v4, h)

    def test_rejects_non_normal_complement(self):
        model = fixture_model("S4/S3")
        c4 = next(
            c for c in complements(model.gamma, model.gamma_e) if not c.is_normal()
        )
        with pytest.raises(NotNormalComplement):
            characteristic_descent(model, c4, model.gamma.trivial_subgroup())

    def test_descent_field_subgroup_is_forward_image(self):
        model = fixture_model("D8/C2")
        c4 = next(
            c for c in complements(model.gamma, model.gamma_e) if _is_cyclic(c)
        )
        bij = zs_subgroup_bijection(model.gamma, c4, model.gamma_e)
        h = bij.family[1]
        cert = characteristic_descent(model, c4, h)
        assert cert.field_subgroup == bij.forward(h)


class TestCrossCorrespondence:
    def test_d8_between_the_two_normal_complements(self):
        model = fixture_model("D8/C2")
        comps = complements(model.gamma, model.gamma_e)
        c4 = next(c for c in comps if _is_cyclic(c))
        v4 = next(c for c in comps if not _is_cyclic(c))
        cross = cross_correspondence(model, c4, v4)
        assert len(cross.pairs) == 3
        center = model.gamma.center()
        mids = [(h, img) for h, img in cross.pairs if h.order == 2]
        assert len(mids) == 1
        h, img = mids[0]
        assert h.elements == center.elements
        assert img.elements == center.elements

    def test_same_complement_is_identity(self):
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        cross = cross_correspondence(model, v4, v4)
        for h, img in cross.pairs:
            assert h == img

    def test_agrees_with_composed_bijections(self):
        """The direct formula equals going up one ladder and down the other."""
        for label in ("D8/C2", "S4/S3", "A4/C3"):
            model = fixture_model(label)
            comps = complements(model.gamma, model.gamma_e)
            for source in comps:
                for target in comps:
                    cross = cross_correspondence(model, source, target)
                    up = zs_subgroup_bijection(model.gamma, source, model.gamma_e)
                    down = zs_subgroup_bijection(model.gamma, target, model.gamma_e)
                    for h, img in cross.pairs:
                        assert down.backward(up.forward(h)) == img
                        assert cross.apply(h) == img

    def test_index_preservation_across(self):
        model = fixture_model("S4/S3")
        comps = complements(model.gamma, model.gamma_e)
        for source in comps:
            for target in comps:
                cross = cross_correspondence(model, source, target)
                for h, img in cross.pairs:
                    assert source.order // h.order == target.order // img.order

    def test_rejects_non_complement(self):
        model = fixture_model("S4/S3")
        v4 = next(c for c in complements(model.gamma, model.gamma_e) if c.is_normal())
        with pytest.raises(NotAComplement):
            cross_correspondence(model, v4, model.gamma.trivial_subgroup())
