"""
Service for validating connectivity spaces, their components and isomorphisms.
"""

import bisect
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from connspace.config import get_settings
from connspace.core.bitset import count_bits, highest_index, iter_indexes, relabel_mask, singleton
from connspace.core.exceptions import (
    FamilySizeLimitExceeded,
    InvalidStructure,
    MissingEmptySet,
    MissingSingleton,
    NotIntegral,
    NotUnionClosed,
    SizeLimitExceeded,
)
from connspace.models.space import ConnSpace, GroundSet, Partition, PointMap, SubsetFamily

logger = logging.getLogger(__name__)


class SpaceService:
    """Service for the core operations on finite connectivity spaces."""

    def __init__(self):
        self.logger = logger

    # ===========================================
    # GUARDS
    # ===========================================

    def check_carrier(self, size: int, what: str = "carrier") -> None:
        limit = get_settings().max_carrier
        if size > limit:
            self.logger.warning(f"Refusing {what} of {size} points (max_carrier={limit})")
            raise SizeLimitExceeded(what, size, limit)

    def check_family(self, size: int) -> None:
        limit = get_settings().max_family
        if size > limit:
            self.logger.warning(f"Refusing family of {size} members (max_family={limit})")
            raise FamilySizeLimitExceeded("family", size, limit)

    # ===========================================
    # VALIDATION
    # ===========================================

    def find_violation(
        self, ground: GroundSet, family: SubsetFamily, integral: bool
    ) -> Optional[InvalidStructure]:
        """Return the first violated structure invariant, or None for a valid family."""
        for member in family.members:
            if not ground.fits(member):
                return InvalidStructure(
                    f"subset {member:#b} does not fit a ground set of {ground.size} points"
                )
        if 0 not in family:
            return MissingEmptySet()
        members = family.members
        for i, first in enumerate(members):
            if not first:
                continue
            for second in members[i + 1:]:
                if first & second and (first | second) not in family:
                    return NotUnionClosed(first, second, ground.labels)
        if integral:
            for point in range(ground.size):
                if singleton(point) not in family:
                    return MissingSingleton(point, ground.label(point))
        return None

    def validate(self, ground: GroundSet, family: SubsetFamily, integral: bool = True) -> ConnSpace:
        """Build a ConnSpace, raising the first violated invariant with its witness."""
        self.check_carrier(ground.size)
        self.check_family(len(family))
        violation = self.find_violation(ground, family, integral)
        if violation is not None:
            self.logger.debug(f"Structure rejected: {violation}")
            raise violation
        return ConnSpace(ground=ground, structure=family, integral=integral)

    def build(self, ground: GroundSet, members: Iterable[int], integral: bool) -> ConnSpace:
        """Wrap a family already closed by construction."""
        family = SubsetFamily.of(members)
        self.check_family(len(family))
        return ConnSpace(ground=ground, structure=family, integral=integral)

    # ===========================================
    # MEMBERSHIP AND COMPONENTS
    # ===========================================

    def is_connected_subset(self, space: ConnSpace, subset: int) -> bool:
        if not space.ground.fits(subset):
            raise InvalidStructure(
                f"subset {subset:#b} does not fit a ground set of {space.size} points"
            )
        return subset in space

    def is_connected_space(self, space: ConnSpace) -> bool:
        """A nonempty space whose whole carrier is connected."""
        return space.size > 0 and space.carrier in space

    def connected_components(self, space: ConnSpace) -> Partition:
        """Maximal connected subsets of an integral space."""
        if not space.integral:
            raise NotIntegral("connected_components")
        parent = list(range(space.size))

        def find(point: int) -> int:
            while parent[point] != point:
                parent[point] = parent[parent[point]]
                point = parent[point]
            return point

        for member in space.structure.nontrivial():
            points = list(iter_indexes(member))
            root = find(points[0])
            for point in points[1:]:
                other = find(point)
                if other != root:
                    parent[other] = root

        blocks: Dict[int, int] = defaultdict(int)
        for point in range(space.size):
            blocks[find(point)] |= singleton(point)
        return Partition(size=space.size, blocks=tuple(blocks.values()))

    # ===========================================
    # ISOMORPHISM
    # ===========================================

    def degree_profile(self, space: ConnSpace, point: int) -> Tuple[int, ...]:
        """Number of connected sets of each cardinality containing the point."""
        profile = [0] * (space.size + 1)
        for member in space.members:
            if member >> point & 1:
                profile[count_bits(member)] += 1
        return tuple(profile)

    def _family_signature(self, space: ConnSpace) -> Tuple[int, ...]:
        histogram = [0] * (space.size + 1)
        for member in space.members:
            histogram[count_bits(member)] += 1
        return tuple(histogram)

    def _check_iso_size(self, size: int) -> None:
        limit = get_settings().max_iso_carrier
        if size > limit:
            self.logger.warning(f"Refusing isomorphism search on {size} points (max_iso_carrier={limit})")
            raise SizeLimitExceeded("isomorphism search carrier", size, limit)

    def is_isomorphic(self, a: ConnSpace, b: ConnSpace) -> Optional[PointMap]:
        """Find a bijection g with g(kappa(a)) = kappa(b), or None."""
        if a.size != b.size or len(a.structure) != len(b.structure):
            return None
        if self._family_signature(a) != self._family_signature(b):
            return None
        self._check_iso_size(a.size)

        size = a.size
        profiles_a = [self.degree_profile(a, p) for p in range(size)]
        profiles_b = [self.degree_profile(b, p) for p in range(size)]
        if sorted(profiles_a) != sorted(profiles_b):
            return None

        # members of a checked once their highest point is assigned
        closing: List[List[int]] = [[] for _ in range(size)]
        for member in a.members:
            if member:
                closing[highest_index(member)].append(member)

        table = [-1] * size
        used = [False] * size

        def extend(point: int) -> bool:
            if point == size:
                return True
            for candidate in range(size):
                if used[candidate] or profiles_b[candidate] != profiles_a[point]:
                    continue
                table[point] = candidate
                if all(relabel_mask(m, table) in b.structure for m in closing[point]):
                    used[candidate] = True
                    if extend(point + 1):
                        return True
                    used[candidate] = False
            table[point] = -1
            return False

        if not extend(0):
            return None
        return PointMap(source=a.ground, target=b.ground, table=tuple(table))

    def twin_classes(self, space: ConnSpace) -> List[int]:
        """Representative of each point, two points being twins when swapping them fixes the structure."""
        representative = list(range(space.size))
        for second in range(space.size):
            for first in range(second):
                if representative[first] != first:
                    continue
                table = list(range(space.size))
                table[first], table[second] = second, first
                if all(relabel_mask(m, table) in space.structure for m in space.members):
                    representative[second] = first
                    break
        return representative

    def canonical_form(self, space: ConnSpace) -> ConnSpace:
        """Least relabelling of the structure in the canonical member order, over all bijections.

        Positions are filled from 0 upwards. A member inside the placed points
        has its final image, every other member lands at or above the next
        power of two, which bounds each partial relabelling from below.
        """
        self._check_iso_size(space.size)
        size = space.size
        twins = self.twin_classes(space)
        by_size: Dict[int, List[int]] = defaultdict(list)
        for member in space.members:
            by_size[count_bits(member)].append(member)
        cardinalities = sorted(by_size)

        def bound(known: Dict[int, List[int]], placed: int) -> List[int]:
            floor = 1 << placed
            flat: List[int] = []
            for cardinality in cardinalities:
                images = known[cardinality]
                flat.extend(images)
                flat.extend([floor] * (len(by_size[cardinality]) - len(images)))
            return flat

        table = [-1] * size
        best: Optional[List[int]] = None

        def extend(placed: int, assigned: int, known: Dict[int, List[int]]) -> None:
            nonlocal best
            if placed == size:
                best = bound(known, placed)
                return
            options = []
            seen = set()
            for point in range(size):
                if assigned >> point & 1 or twins[point] in seen:
                    continue
                seen.add(twins[point])
                grown = assigned | singleton(point)
                table[point] = placed
                step = {cardinality: list(images) for cardinality, images in known.items()}
                for member in space.members:
                    if member >> point & 1 and member & ~grown == 0:
                        bisect.insort(step[count_bits(member)], relabel_mask(member, table))
                table[point] = -1
                options.append((bound(step, placed + 1), point, step))
            options.sort(key=lambda option: option[0])
            for key, point, step in options:
                if best is not None and key >= best:
                    break
                table[point] = placed
                extend(placed + 1, assigned | singleton(point), step)
                table[point] = -1

        extend(0, 0, {cardinality: ([0] if cardinality == 0 else []) for cardinality in cardinalities})
        return ConnSpace(
            ground=GroundSet(size=size),
            structure=SubsetFamily.of(best or ()),
            integral=space.integral,
        )

    def relabel(self, space: ConnSpace, table: Sequence[int]) -> ConnSpace:
        """Transport the structure along the bijection point -> table[point]."""
        labels = None
        if space.ground.labels is not None:
            new_labels = [""] * space.size
            for point, target in enumerate(table):
                new_labels[target] = space.label(point)
            labels = tuple(new_labels)
        return ConnSpace(
            ground=GroundSet(size=space.size, labels=labels),
            structure=SubsetFamily.of(relabel_mask(m, table) for m in space.members),
            integral=space.integral,
        )


# Global service instance
space_service = SpaceService()
