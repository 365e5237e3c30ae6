"""
Tests for the pointed service.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connspace.core.exceptions import NotAMorphism
from connspace.models.space import PointedConnSpace, PointMap
from connspace.services.catalog_service import catalog_service
from connspace.services.construction_service import construction_service
from connspace.services.pointed_service import pointed_service
from connspace.services.space_service import space_service


def pointed(space, base=0):
    return PointedConnSpace(space=space, base=base)


def small_pointed_spaces():
    return [
        pointed(catalog_service.discrete(1)),
        pointed(catalog_service.discrete(2)),
        pointed(catalog_service.brunnian(2)),
    ]


def all_pointed_spaces(max_points):
    return [
        pointed(space, base)
        for n in range(1, max_points + 1)
        for space in catalog_service.enumerate_spaces(n)
        for base in range(n)
    ]


@pytest.fixture
def pb2(b2):
    return pointed(b2)


@pytest.fixture
def pb3(b3):
    return pointed(b3)


class TestWedge:
    def test_zero_object(self):
        zero = pointed_service.zero_object()
        assert zero.size == 1
        assert zero.base == 0
        assert zero.space.members == (0, 1)

    def test_wedge_with_zero(self, pb3):
        wedge = pointed_service.wedge(pb3, pointed_service.zero_object())
        assert wedge.base == 0
        assert space_service.is_isomorphic(wedge.space, pb3.space) is not None

    def test_wedge_of_two_brunnian_pairs(self, pb2):
        wedge = pointed_service.wedge(pb2, pb2)
        assert wedge.size == 3
        assert wedge.base == 0
        assert wedge.space.structure.nontrivial() == (0b011, 0b101, 0b111)

    def test_wedge_subset(self, pb3, pb2):
        # row of the base of pb3 plus the column of the base of pb2
        assert pointed_service.wedge_subset(pb3, pb2) == 0b010111

    @pytest.mark.parametrize("left, right", [("b2", "b2"), ("b3", "b2"), ("b2", "b3")])
    def test_wedge_inside_the_tensor(self, request, left, right):
        x1 = pointed(request.getfixturevalue(left))
        x2 = pointed(request.getfixturevalue(right))
        inside = pointed_service.wedge_in_tensor(x1, x2)
        wedge = pointed_service.wedge(x1, x2)
        assert inside.base == 0
        assert space_service.is_isomorphic(inside.space, wedge.space) is not None

    def test_pointed_product_and_tensor_bases(self, pb2, pb3):
        x2 = pointed(pb3.space, 2)
        assert pointed_service.pointed_product(pb2, x2).base == 2
        assert pointed_service.pointed_tensor(pb2, x2).base == 2
        assert pointed_service.pointed_tensor(pb2, x2).size == 6

    def test_pointed_quotient(self, pb3):
        collapsed = pointed_service.pointed_quotient(pointed(pb3.space, 1), 0b011)
        assert collapsed.base == 0
        assert collapsed.space.members == (0, 1, 2, 3)


class TestSmash:
    def test_smash_with_zero_is_a_point(self, pb3):
        smash = pointed_service.smash(pb3, pointed_service.zero_object())
        assert smash.size == 1
        assert smash.base == 0

    def test_smash_of_two_brunnian_pairs(self, pb2):
        smash = pointed_service.smash(pb2, pb2)
        assert smash.space.members == (0, 1, 2, 3)
        assert smash.base == 0

    def test_smash_is_symmetric(self, pb2, pb3):
        left = pointed_service.smash(pb2, pb3)
        right = pointed_service.smash(pb3, pb2)
        assert space_service.is_isomorphic(left.space, right.space) is not None

    def test_projection_collapses_the_wedge(self, pb2):
        projection = pointed_service.smash_projection(pb2, pb2)
        assert projection.table == (0, 0, 0, 1)

    def test_smash_map_of_identity(self, pb2, pb3):
        identity = PointMap.identity(pb3.space.ground)
        mapped = pointed_service.smash_map(pb2, identity, pb3, pb3)
        assert mapped.table == tuple(range(mapped.source.size))

    def test_smash_map_needs_the_base_point(self, pb2):
        swap = PointMap.identity(pb2.space.ground).model_copy(update={"table": (1, 0)})
        with pytest.raises(NotAMorphism):
            pointed_service.smash_map(pb2, swap, pb2, pb2)


class TestPointedHom:
    def test_maps_out_of_zero(self, pb3):
        hom = pointed_service.pointed_hom(pointed_service.zero_object(), pb3)
        assert hom.size == 1

    def test_based_maps_between_brunnian_pairs(self, pb2):
        assert pointed_service.based_morphisms(pb2, pb2) == [(0, 0), (0, 1)]
        hom = pointed_service.pointed_hom(pb2, pb2)
        assert hom.base == 0
        assert 0b11 in hom.space

    def test_hom_map_of_identity(self, pb2, pb3):
        identity = PointMap.identity(pb3.space.ground)
        mapped = pointed_service.pointed_hom_map(pb2, identity, pb3, pb3)
        assert mapped.table == tuple(range(len(pointed_service.based_morphisms(pb2, pb3))))

    @pytest.mark.parametrize("x, y, z", list(itertools.product(small_pointed_spaces(), repeat=3)))
    def test_curry_round_trip_and_counts(self, x, y, z):
        smash = pointed_service.smash(x, y)
        morphisms = pointed_service.based_morphisms(smash, z)
        for table in morphisms:
            psi = PointMap.from_table(table, z.size)
            curried = pointed_service.pointed_curry(psi, x, y, z)
            assert pointed_service.pointed_uncurry(curried, x, y, z).table == psi.table
        hom = pointed_service.pointed_hom(x, z)
        assert len(morphisms) == len(pointed_service.based_morphisms(y, hom))

    def test_counts_with_a_brunnian_triple(self, pb2, pb3):
        for x, y, z in [(pb2, pb2, pb3), (pb3, pb2, pb2)]:
            smash = pointed_service.smash(x, y)
            hom = pointed_service.pointed_hom(x, z)
            assert len(pointed_service.based_morphisms(smash, z)) == len(
                pointed_service.based_morphisms(y, hom)
            )

    def test_curry_of_the_collapse_map(self, pb2, pb3):
        smash = pointed_service.smash(pb2, pb2)
        collapse = PointMap.from_table([pb3.base] * smash.size, pb3.size)
        curried = pointed_service.pointed_curry(collapse, pb2, pb2, pb3)
        hom = pointed_service.pointed_hom(pb2, pb3)
        assert set(curried.table) == {hom.base}

    def test_uncurry_needs_the_base_point(self, pb2):
        maps = pointed_service.based_morphisms(pb2, pb2)
        phi = PointMap.from_table([1, 1], len(maps))
        with pytest.raises(NotAMorphism):
            pointed_service.pointed_uncurry(phi, pb2, pb2, pb2)


class TestPointedLaws:
    def test_smash_cardinality(self):
        pool = all_pointed_spaces(3)
        for x, y in itertools.product(pool, repeat=2):
            assert pointed_service.smash(x, y).size == x.size * y.size - x.size - y.size + 2

    def test_both_wedges_agree(self):
        pool = all_pointed_spaces(3)
        for x, y in itertools.product(pool, repeat=2):
            inside = pointed_service.wedge_in_tensor(x, y)
            wedge = pointed_service.wedge(x, y)
            assert inside.size == wedge.size == x.size + y.size - 1
            assert space_service.is_isomorphic(inside.space, wedge.space) is not None

    def test_products_do_not_distribute_over_wedges(self, pb2):
        zero = pointed_service.zero_object()
        left = pointed_service.pointed_product(pb2, pointed_service.wedge(zero, zero))
        side = pointed_service.pointed_product(pb2, zero)
        right = pointed_service.wedge(side, side)
        assert left.size == 2
        assert right.size == 3

    @pytest.mark.parametrize("x, y, y2", list(itertools.product(small_pointed_spaces(), repeat=3)))
    def test_smash_map_is_natural(self, x, y, y2):
        source = pointed_service.smash_projection(x, y)
        target = pointed_service.smash_projection(x, y2)
        smash_y = pointed_service.smash(x, y)
        smash_y2 = pointed_service.smash(x, y2)
        for table in pointed_service.based_morphisms(y, y2):
            u = PointMap.from_table(table, y2.size)
            mapped = pointed_service.smash_map(x, u, y, y2)
            for p, q in itertools.product(range(x.size), range(y.size)):
                assert mapped(source(p * y.size + q)) == target(p * y2.size + u(q))
            assert mapped(smash_y.base) == smash_y2.base
            assert construction_service.is_morphism(mapped, smash_y.space, smash_y2.space)

    @pytest.mark.parametrize("x, y, z", list(itertools.product(small_pointed_spaces(), repeat=3)))
    def test_currying_is_natural(self, x, y, z):
        smash = pointed_service.smash(x, y)
        for psi_table in pointed_service.based_morphisms(smash, z):
            psi = PointMap.from_table(psi_table, z.size)
            curried = pointed_service.pointed_curry(psi, x, y, z)
            for y2 in small_pointed_spaces():
                for u_table in pointed_service.based_morphisms(y2, y):
                    u = PointMap.from_table(u_table, y.size)
                    smashed_u = pointed_service.smash_map(x, u, y2, y)
                    pulled = PointMap.from_table([psi(i) for i in smashed_u.table], z.size)
                    expected = tuple(curried(u(q)) for q in range(y2.size))
                    assert pointed_service.pointed_curry(pulled, x, y2, z).table == expected
            for z2 in small_pointed_spaces():
                for v_table in pointed_service.based_morphisms(z, z2):
                    v = PointMap.from_table(v_table, z2.size)
                    hom_v = pointed_service.pointed_hom_map(x, v, z, z2)
                    pushed = PointMap.from_table([v(value) for value in psi.table], z2.size)
                    expected = tuple(hom_v(index) for index in curried.table)
                    assert pointed_service.pointed_curry(pushed, x, y, z2).table == expected

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_adjunction_on_three_points(self, data):
        pool = all_pointed_spaces(3)
        x, y, z = (data.draw(st.sampled_from(pool)) for _ in range(3))
        smash = pointed_service.smash(x, y)
        morphisms = pointed_service.based_morphisms(smash, z)
        for table in morphisms:
            psi = PointMap.from_table(table, z.size)
            curried = pointed_service.pointed_curry(psi, x, y, z)
            assert pointed_service.pointed_uncurry(curried, x, y, z).table == psi.table
        hom = pointed_service.pointed_hom(x, z)
        assert len(morphisms) == len(pointed_service.based_morphisms(y, hom))
