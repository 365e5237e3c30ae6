"""
Tests for morphisms, induced structures, limits, colimits and the tensor product.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connspace.core.bitset import singleton
from connspace.core.exceptions import GroundMismatch, InvalidPartition
from connspace.models.space import Arrow, Diagram, GroundSet, Partition, PointMap, SubsetFamily
from connspace.services.catalog_service import catalog_service
from connspace.services.construction_service import box_mask, construction_service, project_pair
from connspace.services.generation_service import generation_service
from connspace.services.space_service import space_service
from tests.oracles import all_tables
from tests.strategies import families, spaces


def labelled(space, labels):
    return space.relabeled(list(labels))


def small_integral_spaces(max_points):
    for n in range(1, max_points + 1):
        yield from catalog_service.enumerate_spaces(n, integral=True)


class TestMorphisms:
    def test_identity(self, v3):
        assert construction_service.is_morphism(PointMap.identity(v3.ground), v3, v3)

    def test_constant_map_into_integral_space(self, b3, v3):
        constant = PointMap.constant(b3.ground, v3.ground, 2)
        assert construction_service.is_morphism(constant, b3, v3)

    def test_surjection_onto_discrete_space(self, b3):
        discrete = catalog_service.discrete(2)
        f = PointMap.between(b3, discrete, [0, 0, 1])
        assert not construction_service.is_morphism(f, b3, discrete)

    def test_map_must_match_spaces(self, b3, v3):
        with pytest.raises(GroundMismatch):
            construction_service.is_morphism(PointMap.from_table([0, 0], 3), b3, v3)


class TestInducedStructures:
    def test_pushforward_along_identity(self, path3):
        pushed = construction_service.pushforward(PointMap.identity(path3.ground), path3)
        assert pushed.structure == path3.structure

    def test_pushforward_collapsing_b3(self, b3):
        pushed = construction_service.pushforward(PointMap.from_table([0, 0, 1], 2), b3)
        assert pushed.members == (0, 1, 2, 3)

    def test_pushforward_of_discrete(self):
        pushed = construction_service.pushforward(PointMap.from_table([0, 1, 1], 2), catalog_service.discrete(3))
        assert pushed.structure == catalog_service.discrete(2).structure

    def test_pullback_along_identity(self, v3):
        pulled = construction_service.pullback(PointMap.identity(v3.ground), v3)
        assert pulled.structure == v3.structure

    def test_pullback_of_indiscrete(self):
        pulled = construction_service.pullback(PointMap.from_table([0, 0, 1], 2), catalog_service.indiscrete(2))
        assert pulled.structure == catalog_service.indiscrete(3).structure

    def test_pullback_of_discrete_keeps_fibres(self):
        pulled = construction_service.pullback(PointMap.from_table([0, 0, 1], 2), catalog_service.discrete(2))
        assert pulled.members == (0, 1, 2, 4, 3)

    def test_pushforward_makes_the_map_a_morphism(self, path3):
        f = PointMap.from_table([0, 1, 0], 2)
        pushed = construction_service.pushforward(f, path3)
        assert construction_service.is_morphism(f, path3, pushed)


class TestRegularMorphisms:
    def test_subspace_inclusion_is_an_embedding(self, v3):
        sub = construction_service.subspace(v3, 0b101)
        inclusion = PointMap.between(sub, v3, [0, 2])
        assert construction_service.is_regular_mono(inclusion, sub, v3)
        assert not construction_service.is_regular_epi(inclusion, sub, v3)

    def test_equalizer_projection_is_an_embedding(self, v3):
        target = catalog_service.indiscrete(2)
        f = PointMap.between(v3, target, [0, 0, 1])
        g = PointMap.between(v3, target, [0, 1, 1])
        equalizer = construction_service.equalizer(f, g, v3, target)
        assert construction_service.is_regular_mono(equalizer.projections[0], equalizer.space, v3)

    def test_quotient_map(self, b3):
        partition = Partition.from_pairs(3, [(0, 1)])
        quotient = construction_service.quotient(b3, partition)
        f = PointMap.between(b3, quotient, partition.assignment())
        assert construction_service.is_regular_epi(f, b3, quotient)
        assert not construction_service.is_regular_mono(f, b3, quotient)

    def test_coequalizer_leg_is_a_quotient_map(self, v3, point):
        f = PointMap.between(point, v3, [0])
        g = PointMap.between(point, v3, [2])
        coequalizer = construction_service.coequalizer(f, g, point, v3)
        assert construction_service.is_regular_epi(coequalizer.coprojections[1], v3, coequalizer.space)

    def test_bijection_that_is_neither(self, b3):
        discrete = catalog_service.discrete(3)
        identity = PointMap.between(discrete, b3, [0, 1, 2])
        assert construction_service.is_morphism(identity, discrete, b3)
        assert not construction_service.is_regular_mono(identity, discrete, b3)
        assert not construction_service.is_regular_epi(identity, discrete, b3)

    def test_regular_on_both_sides_means_isomorphism(self):
        pool = list(small_integral_spaces(3))
        for x, y in itertools.product(pool, repeat=2):
            for table in all_tables(x.size, y.size):
                f = PointMap.between(x, y, table)
                mono = construction_service.is_regular_mono(f, x, y)
                epi = construction_service.is_regular_epi(f, x, y)
                if mono or epi:
                    assert construction_service.is_morphism(f, x, y)
                bijective = f.is_injective() and f.is_surjective()
                isomorphism = bijective and space_service.relabel(x, table).structure == y.structure
                assert (mono and epi) == isomorphism


class TestProducts:
    def test_product_with_a_point(self, v3, point):
        product = construction_service.product(v3, point)
        assert space_service.is_isomorphic(product, v3) is not None

    def test_projections_are_morphisms(self, v3, b2):
        product = construction_service.product(v3, b2)
        first = PointMap.between(product, v3, [i // b2.size for i in range(product.size)])
        second = PointMap.between(product, b2, [i % b2.size for i in range(product.size)])
        assert construction_service.is_morphism(first, product, v3)
        assert construction_service.is_morphism(second, product, b2)

    def test_product_labels(self, b2):
        product = construction_service.product(labelled(b2, "ab"), labelled(b2, "xy"))
        assert product.ground.labels == ("a.x", "a.y", "b.x", "b.y")

    def test_coproduct_of_brunnian_spaces(self, b2, b3):
        union = construction_service.coproduct(b2, b3)
        assert union.size == 5
        assert union.structure.nontrivial() == (0b00011, 0b11100)

    def test_coproduct_with_empty_space(self, v3):
        assert construction_service.coproduct(v3, catalog_service.discrete(0)).structure == v3.structure

    def test_coproduct_primes_repeated_labels(self, b2):
        union = construction_service.coproduct(labelled(b2, "ab"), labelled(b2, "ab"))
        assert union.ground.labels == ("a", "b", "a'", "b'")

    def test_box_helpers(self):
        assert box_mask(0b10, 0b011, 3) == 0b011000
        assert project_pair(0b011000, 2, 3) == (0b10, 0b011)


class TestInducedStructureLaws:
    @pytest.mark.parametrize("integral", [True, False])
    def test_morphism_pushforward_and_pullback_agree(self, integral):
        pool = [space for n in range(1, 4) for space in catalog_service.enumerate_spaces(n, integral)]
        for x, y in itertools.product(pool, repeat=2):
            for table in all_tables(x.size, y.size):
                f = PointMap.between(x, y, table)
                morphism = construction_service.is_morphism(f, x, y)
                pushed = construction_service.pushforward(f, x).structure.as_set()
                pulled = construction_service.pullback(f, y).structure.as_set()
                assert morphism == (pushed <= y.structure.as_set())
                assert morphism == (x.structure.as_set() <= pulled)

    @settings(max_examples=100, deadline=None)
    @given(families(min_size=1, max_size=3), st.data())
    def test_pushforward_of_a_generated_space(self, drawn, data):
        ground, generators = drawn
        integral = data.draw(st.booleans())
        target = GroundSet(size=data.draw(st.integers(min_value=1, max_value=3)))
        table = data.draw(st.lists(st.integers(0, target.size - 1), min_size=ground.size, max_size=ground.size))
        f = PointMap(source=ground, target=target, table=tuple(table))
        pushed = construction_service.pushforward(f, generation_service.generate(ground, generators, integral))
        images = SubsetFamily.of(f.image(m) for m in generators.members)
        assert pushed == generation_service.generate(target, images, integral)

    @settings(max_examples=100, deadline=None)
    @given(spaces(max_size=3), st.integers(min_value=1, max_value=4), st.data())
    def test_pullback_is_a_valid_structure(self, space, size, data):
        table = data.draw(st.lists(st.integers(0, space.size - 1), min_size=size, max_size=size))
        f = PointMap(source=GroundSet(size=size), target=space.ground, table=tuple(table))
        pulled = construction_service.pullback(f, space)
        assert space_service.find_violation(pulled.ground, pulled.structure, pulled.integral) is None
        assert construction_service.is_morphism(f, pulled, space)


class TestQuotientAndSubspace:
    def test_identity_partition(self, path3):
        quotient = construction_service.quotient(path3, Partition.discrete(3))
        assert space_service.is_isomorphic(quotient, path3) is not None

    def test_collapse_everything(self, path3):
        quotient = construction_service.quotient(path3, Partition.collapsing(3, 0b111))
        assert quotient.members == (0, 1)

    def test_collapse_two_points_of_b3(self, b3):
        quotient = construction_service.quotient(b3, Partition(size=3, blocks=(0b011, 0b100)))
        assert quotient.members == (0, 1, 2, 3)

    def test_quotient_labels(self, b3):
        quotient = construction_service.quotient(labelled(b3, "abc"), Partition(size=3, blocks=(0b101, 0b010)))
        assert quotient.ground.labels == ("a+c", "b")

    def test_partition_size_must_match(self, b3):
        with pytest.raises(InvalidPartition):
            construction_service.quotient(b3, Partition.discrete(2))

    def test_merge_partition(self):
        assert construction_service.merge_partition(4, [[0, 2], [1, 3]]).blocks == (0b0101, 0b1010)
        with pytest.raises(InvalidPartition):
            construction_service.merge_partition(2, [[0, 5]])

    def test_full_subspace(self, v3):
        assert construction_service.subspace(v3, 0b111).structure == v3.structure

    def test_subspace_of_b3(self, b3):
        assert construction_service.subspace(b3, 0b011).structure == catalog_service.discrete(2).structure

    def test_subspace_of_v3(self, v3):
        assert construction_service.subspace(v3, 0b011).structure == catalog_service.v_space(2).structure

    def test_image_space(self, v3, b2):
        f = PointMap.between(b2, v3, [0, 1])
        assert construction_service.image_space(f, b2, v3).structure == catalog_service.v_space(2).structure


class TestColimits:
    def test_no_arrows_gives_coproduct(self, b2, v3):
        colimit = construction_service.colimit(Diagram(objects=(b2, v3)))
        assert colimit.space.structure == construction_service.coproduct(b2, v3).structure

    def test_gluing_two_intervals(self):
        star = catalog_service.discrete(1).relabeled(["*"])
        a_side = labelled(catalog_service.indiscrete(2), ["*", "a"])
        b_side = labelled(catalog_service.indiscrete(2), ["*", "b"])
        inclusion = PointMap.from_table([0], 2)
        diagram = Diagram(
            objects=(star, a_side, b_side),
            arrows=(Arrow(source=0, target=1, map=inclusion), Arrow(source=0, target=2, map=inclusion)),
        )
        colimit = construction_service.colimit(diagram)
        expected = generation_service.generate(GroundSet(size=3), SubsetFamily.of([0b011, 0b101]))
        assert colimit.space.structure == expected.structure
        assert colimit.coprojections[1].table == (0, 1)
        assert colimit.coprojections[2].table == (0, 2)

    def test_products_do_not_preserve_colimits(self):
        star = catalog_service.discrete(1).relabeled(["*"])
        a_side = labelled(catalog_service.indiscrete(2), ["*", "a"])
        b_side = labelled(catalog_service.indiscrete(2), ["*", "b"])
        chain = generation_service.generate(GroundSet(size=3, labels=("1", "2", "3")), SubsetFamily.of([0b011, 0b110]))

        glued = generation_service.generate(
            GroundSet(size=3, labels=("*", "a", "b")), SubsetFamily.of([0b011, 0b101])
        )
        product = construction_service.product(glued, chain)
        witness = product.ground.mask_of(["a.1", "*.3", "b.2"])
        assert witness in product

        inclusion = PointMap.from_table([0, 1, 2], 6)
        diagram = Diagram(
            objects=(
                construction_service.product(star, chain),
                construction_service.product(a_side, chain),
                construction_service.product(b_side, chain),
            ),
            arrows=(Arrow(source=0, target=1, map=inclusion), Arrow(source=0, target=2, map=inclusion)),
        )
        colimit = construction_service.colimit(diagram)
        legs = colimit.coprojections
        same_set = (1 << legs[1](3)) | (1 << legs[0](2)) | (1 << legs[2](4))
        assert colimit.space.size == 9
        assert same_set not in colimit.space

    def test_gluing_is_universal_among_cocones(self):
        star = catalog_service.discrete(1)
        interval = catalog_service.indiscrete(2)
        inclusion = PointMap.from_table([0], 2)
        diagram = Diagram(
            objects=(star, interval, interval),
            arrows=(Arrow(source=0, target=1, map=inclusion), Arrow(source=0, target=2, map=inclusion)),
        )
        colimit = construction_service.colimit(diagram)
        legs = colimit.coprojections
        for target in small_integral_spaces(3):
            for cocone in itertools.product(*(all_tables(space.size, target.size) for space in diagram.objects)):
                if not cocone[1][0] == cocone[2][0] == cocone[0][0]:
                    continue
                factorizations = [
                    u
                    for u in all_tables(colimit.space.size, target.size)
                    if all(tuple(u[leg(p)] for p in range(leg.source.size)) == g for leg, g in zip(legs, cocone))
                ]
                assert len(factorizations) == 1
                mediating = PointMap.between(colimit.space, target, factorizations[0])
                is_cocone = all(
                    construction_service.is_morphism(PointMap.between(space, target, g), space, target)
                    for space, g in zip(diagram.objects, cocone)
                )
                assert construction_service.is_morphism(mediating, colimit.space, target) == is_cocone

    def test_coequalizer_is_a_quotient(self, v3, point):
        f = PointMap.between(point, v3, [0])
        g = PointMap.between(point, v3, [2])
        coequalizer = construction_service.coequalizer(f, g, point, v3)
        quotient = construction_service.quotient(v3, Partition.from_pairs(3, [(0, 2)]))
        assert coequalizer.space.structure == quotient.structure
        assert coequalizer.coprojections[1].table == (0, 1, 0)

    def test_pushout_of_points(self, point, b2):
        f = PointMap.between(point, b2, [0])
        pushout = construction_service.pushout(f, f, point, b2, b2)
        assert pushout.space.size == 3
        assert pushout.space.structure.nontrivial() == (0b011, 0b101, 0b111)


class TestLimits:
    def test_no_arrows_gives_product(self, v3, b2):
        limit = construction_service.limit(Diagram(objects=(v3, b2)))
        assert limit.space.structure == construction_service.product(v3, b2).structure

    def test_single_object(self, path3):
        assert construction_service.limit(Diagram(objects=(path3,))).space.structure == path3.structure

    def test_equalizer_is_the_agreement_subspace(self, v3):
        target = catalog_service.indiscrete(2)
        f = PointMap.between(v3, target, [0, 0, 1])
        g = PointMap.between(v3, target, [0, 1, 1])
        equalizer = construction_service.equalizer(f, g, v3, target)
        assert equalizer.space.structure == construction_service.subspace(v3, 0b101).structure
        assert equalizer.projections[0].table == (0, 2)

    def test_pullback_space(self, b2, point):
        to_point = PointMap.between(b2, point, [0, 0])
        pulled = construction_service.pullback_space(to_point, to_point, b2, b2, point)
        assert pulled.space.structure == construction_service.product(b2, b2).structure

    def test_factor_through_limit(self, v3, b2):
        limit = construction_service.limit(Diagram(objects=(v3, b2)))
        mediating = construction_service.factor_through_limit(limit.projections, limit)
        assert mediating == tuple(range(limit.space.size))

    def test_factor_through_limit_without_cone(self, v3):
        target = catalog_service.indiscrete(2)
        f = PointMap.between(v3, target, [0, 0, 1])
        g = PointMap.between(v3, target, [0, 1, 1])
        equalizer = construction_service.equalizer(f, g, v3, target)
        legs = [PointMap.identity(v3.ground), f]
        assert construction_service.factor_through_limit(legs, equalizer) is None


class TestTensor:
    def test_boxes_are_connected(self, v3, b2):
        tensor = construction_service.tensor(v3, b2)
        for k1, k2 in itertools.product(v3.members, b2.members):
            assert box_mask(k1, k2, b2.size) in tensor

    def test_identity_to_the_product_is_a_morphism(self, v3, b2):
        tensor = construction_service.tensor(v3, b2)
        product = construction_service.product(v3, b2)
        assert construction_service.is_morphism(PointMap.identity(tensor.ground), tensor, product)

    def test_tensor_is_finer_than_the_product(self):
        pool = list(small_integral_spaces(3))
        for x1, x2 in itertools.product(pool, repeat=2):
            tensor = construction_service.tensor(x1, x2)
            product = construction_service.product(x1, x2)
            assert tensor.structure.as_set() <= product.structure.as_set()

    def test_clamped_addition(self):
        segment = catalog_service.order_space(3)
        table = [min(p + q, 2) for p in range(3) for q in range(3)]
        addition = PointMap.from_table(table, 3)
        tensor = construction_service.tensor(segment, segment)
        product = construction_service.product(segment, segment)
        assert construction_service.is_morphism(addition, tensor, segment)
        assert not construction_service.is_morphism(addition, product, segment)
        assert construction_service.is_partially_connecting(addition, segment, segment, segment)

    def test_clamped_addition_on_five_points(self):
        segment = catalog_service.order_space(5)
        addition = PointMap.from_table([min(p + q, 4) for p in range(5) for q in range(5)], 5)
        assert construction_service.is_partially_connecting(addition, segment, segment, segment)
        # {(0, 0), (1, 1)} projects onto {0, 1} twice and adds up to {0, 2}
        diagonal = singleton(0) | singleton(1 * 5 + 1)
        first, second = project_pair(diagonal, 5, 5)
        assert first in segment and second in segment
        assert addition.image(diagonal) not in segment

    def test_partial_map_with_a_disconnected_row(self, b3, point):
        f = PointMap.from_table([0, 1], 3)
        assert not construction_service.is_partially_connecting(f, point, catalog_service.indiscrete(2), b3)

    def test_tensor_map_is_a_morphism(self, b2, v3, point):
        g = PointMap.between(v3, point, [0, 0, 0])
        mapped = construction_service.tensor_map(b2, g)
        source = construction_service.tensor(b2, v3)
        target = construction_service.tensor(b2, point)
        assert construction_service.is_morphism(mapped, source, target)

    def test_partially_connecting_maps_are_tensor_morphisms(self):
        pool = list(small_integral_spaces(2))
        for x1, x2, y in itertools.product(pool, repeat=3):
            tensor = construction_service.tensor(x1, x2)
            for table in all_tables(tensor.size, y.size):
                f = PointMap.from_table(table, y.size)
                assert construction_service.is_partially_connecting(f, x1, x2, y) == (
                    construction_service.is_morphism(f, tensor, y)
                )

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_partially_connecting_maps_on_three_points(self, data):
        pool = list(small_integral_spaces(3))
        x1, x2, y = (data.draw(st.sampled_from(pool)) for _ in range(3))
        tensor = construction_service.tensor(x1, x2)
        table = data.draw(
            st.lists(st.integers(min_value=0, max_value=y.size - 1), min_size=tensor.size, max_size=tensor.size)
        )
        f = PointMap.from_table(table, y.size)
        assert construction_service.is_partially_connecting(f, x1, x2, y) == (
            construction_service.is_morphism(f, tensor, y)
        )
