"""
Service for morphisms, induced structures, limits, colimits and the tensor product.
"""

import itertools
import logging
import math
from typing import List, Optional, Sequence, Tuple

from connspace.config import get_settings
from connspace.core.bitset import full_mask, is_subset, iter_indexes, iter_submasks, singleton
from connspace.core.exceptions import GroundMismatch, InvalidPartition, SearchTooLarge
from connspace.core.labels import class_labels, disjoint_labels, pair_labels, tuple_labels
from connspace.models.space import (
    Arrow,
    Colimit,
    ConnSpace,
    Diagram,
    GroundSet,
    Limit,
    Partition,
    PointMap,
    SubsetFamily,
)
from connspace.services.generation_service import generation_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)


def box_mask(rows: int, columns: int, width: int) -> int:
    """Subset rows x columns of a row-major product whose second factor has width points."""
    mask = 0
    for row in iter_indexes(rows):
        mask |= columns << (row * width)
    return mask


def project_pair(mask: int, height: int, width: int) -> Tuple[int, int]:
    """Both projections of a subset of a row-major height x width product."""
    first = 0
    second = 0
    row_mask = full_mask(width)
    for row in range(height):
        bits = (mask >> (row * width)) & row_mask
        if bits:
            first |= singleton(row)
            second |= bits
    return first, second


class ConstructionService:
    """Service for the categorical constructions on connectivity spaces."""

    def __init__(self):
        self.logger = logger

    def _check_map(self, f: PointMap, x: ConnSpace, y: ConnSpace) -> None:
        if f.source.size != x.size or f.target.size != y.size:
            raise GroundMismatch(
                f"map {f.source.size}->{f.target.size} does not match spaces {x.size}->{y.size}"
            )

    def _check_same_flag(self, *spaces: ConnSpace) -> None:
        if len({space.integral for space in spaces}) > 1:
            raise GroundMismatch("spaces differ in their integral flag")

    # ===========================================
    # MORPHISMS AND INDUCED STRUCTURES
    # ===========================================

    def is_morphism(self, f: PointMap, x: ConnSpace, y: ConnSpace) -> bool:
        self._check_map(f, x, y)
        return f.preserves(x, y)

    def pushforward(self, f: PointMap, space: ConnSpace) -> ConnSpace:
        """Finest structure on the target making f a morphism."""
        if f.source.size != space.size:
            raise GroundMismatch(f"map source has {f.source.size} points, space has {space.size}")
        images = SubsetFamily.of(f.image(member) for member in space.members)
        return generation_service.generate(f.target, images, space.integral)

    def pullback(self, f: PointMap, space: ConnSpace) -> ConnSpace:
        """Coarsest structure on the source making f a morphism."""
        if f.target.size != space.size:
            raise GroundMismatch(f"map target has {f.target.size} points, space has {space.size}")
        space_service.check_carrier(f.source.size)
        members = [k for k in iter_submasks(f.source.full_mask) if f.image(k) in space]
        return space_service.build(f.source, members, space.integral)

    def is_regular_mono(self, f: PointMap, x: ConnSpace, y: ConnSpace) -> bool:
        """Embeddings: injective, and a subset of x is connected iff its image is."""
        self._check_map(f, x, y)
        if not f.is_injective() or x.integral != y.integral:
            return False
        return self.pullback(f, y).structure == x.structure

    def is_regular_epi(self, f: PointMap, x: ConnSpace, y: ConnSpace) -> bool:
        """Quotient maps: surjective, and y carries the structure generated by the images."""
        self._check_map(f, x, y)
        if not f.is_surjective() or x.integral != y.integral:
            return False
        return self.pushforward(f, x).structure == y.structure

    # ===========================================
    # PRODUCTS AND SUMS
    # ===========================================

    def product(self, c1: ConnSpace, c2: ConnSpace) -> ConnSpace:
        """Cartesian product; point (i, j) is i * |c2| + j."""
        self._check_same_flag(c1, c2)
        size = c1.size * c2.size
        space_service.check_carrier(size, "product carrier")
        ground = GroundSet(size=size, labels=pair_labels(c1.ground, c2.ground))
        members = []
        for mask in iter_submasks(full_mask(size)):
            first, second = project_pair(mask, c1.size, c2.size)
            if first in c1 and second in c2:
                members.append(mask)
        return space_service.build(ground, members, c1.integral)

    def coproduct(self, c1: ConnSpace, c2: ConnSpace) -> ConnSpace:
        """Disjoint union; the points of c2 are shifted by |c1|."""
        self._check_same_flag(c1, c2)
        ground = GroundSet(size=c1.size + c2.size, labels=disjoint_labels([c1.ground, c2.ground]))
        members = list(c1.members) + [m << c1.size for m in c2.members]
        return space_service.build(ground, members, c1.integral)

    def tensor(self, x1: ConnSpace, x2: ConnSpace) -> ConnSpace:
        """Structure generated by the boxes K1 x K2 on the row-major product carrier."""
        size = x1.size * x2.size
        space_service.check_carrier(size, "tensor carrier")
        ground = GroundSet(size=size, labels=pair_labels(x1.ground, x2.ground))
        boxes = {box_mask(k1, k2, x2.size) for k1 in x1.members for k2 in x2.members}
        integral = x1.integral and x2.integral
        return generation_service.generate(ground, SubsetFamily.of(boxes), integral)

    def tensor_map(self, x: ConnSpace, g: PointMap) -> PointMap:
        """X (x) g: (p, q) -> (p, g(q))."""
        width = g.source.size
        target_width = g.target.size
        table = [p * target_width + g(q) for p in range(x.size) for q in range(width)]
        source = GroundSet(size=x.size * width, labels=pair_labels(x.ground, g.source))
        target = GroundSet(size=x.size * target_width, labels=pair_labels(x.ground, g.target))
        return PointMap(source=source, target=target, table=tuple(table))

    def is_partially_connecting(self, f: PointMap, x1: ConnSpace, x2: ConnSpace, y: ConnSpace) -> bool:
        """True iff every f(p, -) and every f(-, q) is a morphism."""
        if f.source.size != x1.size * x2.size or f.target.size != y.size:
            raise GroundMismatch("map does not go from the product carrier to the target space")
        for p in range(x1.size):
            row = [f(p * x2.size + q) for q in range(x2.size)]
            if not PointMap(source=x2.ground, target=y.ground, table=tuple(row)).preserves(x2, y):
                return False
        for q in range(x2.size):
            column = [f(p * x2.size + q) for p in range(x1.size)]
            if not PointMap(source=x1.ground, target=y.ground, table=tuple(column)).preserves(x1, y):
                return False
        return True

    # ===========================================
    # QUOTIENTS AND SUBSPACES
    # ===========================================

    def quotient(self, c: ConnSpace, partition: Partition) -> ConnSpace:
        """Carrier = blocks, structure pushed forward along the block assignment."""
        if partition.size != c.size:
            raise InvalidPartition(f"partition of {partition.size} points for a space of {c.size}")
        target = GroundSet(size=len(partition.blocks), labels=class_labels(c.ground, partition.blocks))
        assign = PointMap(source=c.ground, target=target, table=partition.assignment())
        return self.pushforward(assign, c)

    def subspace(self, c: ConnSpace, subset: int) -> ConnSpace:
        """Induced structure on the points of subset, reindexed in order."""
        if not c.ground.fits(subset):
            raise GroundMismatch(f"subset {subset:#b} does not fit a space of {c.size} points")
        points = list(iter_indexes(subset))
        position = {point: i for i, point in enumerate(points)}
        labels = None
        if c.ground.labels is not None:
            labels = tuple(c.label(p) for p in points)
        members = []
        for member in c.members:
            if is_subset(member, subset):
                members.append(sum(singleton(position[p]) for p in iter_indexes(member)))
        return space_service.build(GroundSet(size=len(points), labels=labels), members, c.integral)

    def image_space(self, f: PointMap, x: ConnSpace, y: ConnSpace) -> ConnSpace:
        """The subspace of y induced on f(|x|)."""
        self._check_map(f, x, y)
        return self.subspace(y, f.image(x.carrier))

    # ===========================================
    # LIMITS AND COLIMITS
    # ===========================================

    def colimit(self, diagram: Diagram) -> Colimit:
        """Disjoint union glued along the arrows, structure generated by the coprojected sets."""
        offsets = []
        total = 0
        for space in diagram.objects:
            offsets.append(total)
            total += space.size
        space_service.check_carrier(total, "colimit disjoint union")

        pairs = []
        for arrow in diagram.arrows:
            for p in range(arrow.map.source.size):
                pairs.append((offsets[arrow.source] + p, offsets[arrow.target] + arrow.map(p)))
        partition = Partition.from_pairs(total, pairs)
        assignment = partition.assignment()

        union_ground = GroundSet(size=total, labels=disjoint_labels([s.ground for s in diagram.objects]))
        target = GroundSet(size=len(partition.blocks), labels=class_labels(union_ground, partition.blocks))
        coprojections = []
        images = set()
        for space, offset in zip(diagram.objects, offsets):
            table = tuple(assignment[offset + p] for p in range(space.size))
            coprojection = PointMap(source=space.ground, target=target, table=table)
            coprojections.append(coprojection)
            images.update(coprojection.image(member) for member in space.members)

        space = generation_service.generate(target, SubsetFamily.of(images), diagram.integral)
        self.logger.debug(f"Colimit of {len(diagram.objects)} objects has {space.size} points")
        return Colimit(space=space, coprojections=tuple(coprojections))

    def limit(self, diagram: Diagram) -> Limit:
        """Commuting tuples of the product, structure by connected projections."""
        sizes = [space.size for space in diagram.objects]
        candidates = math.prod(sizes)
        bound = get_settings().max_search
        if candidates > bound:
            raise SearchTooLarge("limit tuple search", candidates, bound)

        points: List[Tuple[int, ...]] = [
            point
            for point in itertools.product(*(range(size) for size in sizes))
            if all(point[a.target] == a.map(point[a.source]) for a in diagram.arrows)
        ]
        space_service.check_carrier(len(points), "limit carrier")

        grounds = [space.ground for space in diagram.objects]
        ground = GroundSet(size=len(points), labels=tuple_labels(grounds, points))
        legs = [
            PointMap(source=ground, target=space.ground, table=tuple(point[i] for point in points))
            for i, space in enumerate(diagram.objects)
        ]
        members = [
            mask
            for mask in iter_submasks(ground.full_mask)
            if all(p.image(mask) in space for p, space in zip(legs, diagram.objects))
        ]
        space = space_service.build(ground, members, diagram.integral)
        return Limit(space=space, projections=tuple(legs))

    def equalizer(self, f: PointMap, g: PointMap, a: ConnSpace, b: ConnSpace) -> Limit:
        return self.limit(Diagram(objects=(a, b), arrows=(Arrow(source=0, target=1, map=f), Arrow(source=0, target=1, map=g))))

    def coequalizer(self, f: PointMap, g: PointMap, a: ConnSpace, b: ConnSpace) -> Colimit:
        """Colimit of the parallel pair f, g : a -> b; the coprojection of b comes second."""
        return self.colimit(Diagram(objects=(a, b), arrows=(Arrow(source=0, target=1, map=f), Arrow(source=0, target=1, map=g))))

    def pushout(self, f: PointMap, g: PointMap, c: ConnSpace, a: ConnSpace, b: ConnSpace) -> Colimit:
        """Colimit of the span a <- c -> b, objects ordered (c, a, b)."""
        return self.colimit(Diagram(objects=(c, a, b), arrows=(Arrow(source=0, target=1, map=f), Arrow(source=0, target=2, map=g))))

    def pullback_space(self, f: PointMap, g: PointMap, a: ConnSpace, b: ConnSpace, c: ConnSpace) -> Limit:
        """Limit of the cospan a -> c <- b, objects ordered (a, b, c)."""
        return self.limit(Diagram(objects=(a, b, c), arrows=(Arrow(source=0, target=2, map=f), Arrow(source=1, target=2, map=g))))

    def merge_partition(self, size: int, merges: Sequence[Sequence[int]]) -> Partition:
        """Partition whose blocks join each listed group of points."""
        pairs = []
        for group in merges:
            for point in group:
                if not 0 <= point < size:
                    raise InvalidPartition(f"point {point} is outside a ground set of {size} points")
                pairs.append((group[0], point))
        return Partition.from_pairs(size, pairs)

    def factor_through_limit(self, legs: Sequence[PointMap], cone_limit: Limit) -> Optional[Tuple[int, ...]]:
        """Mediating map into a limit for a cone with one leg per object, or None."""
        positions = {
            tuple(p(i) for p in cone_limit.projections): i for i in range(cone_limit.space.size)
        }
        table = []
        for s in range(legs[0].source.size):
            point = tuple(leg(s) for leg in legs)
            if point not in positions:
                return None
            table.append(positions[point])
        return tuple(table)


# Global service instance
construction_service = ConstructionService()
