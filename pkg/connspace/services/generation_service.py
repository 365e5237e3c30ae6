"""
Service for generated connectivity structures and the structure lattice.
"""

import logging
from typing import Iterable, List, Set

from connspace.core.bitset import singleton
from connspace.core.exceptions import GroundMismatch, InvalidStructure
from connspace.models.space import ConnSpace, GroundSet, SubsetFamily
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)


class GenerationService:
    """Service computing the finest structure containing a family."""

    def __init__(self):
        self.logger = logger

    def _check_fit(self, ground: GroundSet, members: Iterable[int]) -> None:
        for member in members:
            if not ground.fits(member):
                raise InvalidStructure(
                    f"subset {member:#b} does not fit a ground set of {ground.size} points"
                )

    def phi(self, ground: GroundSet, family: SubsetFamily) -> SubsetFamily:
        """One round: the family, the empty set, and every union of members sharing a point."""
        self._check_fit(ground, family.members)
        result: Set[int] = set(family.members)
        result.add(0)
        for point in range(ground.size):
            through = [m for m in family.members if m >> point & 1]
            # every partial union still contains the point
            unions: Set[int] = set(through)
            frontier = list(through)
            while frontier:
                current = frontier.pop()
                for member in through:
                    union = current | member
                    if union not in unions:
                        unions.add(union)
                        frontier.append(union)
            result.update(unions)
            space_service.check_family(len(result))
        return SubsetFamily.of(result)

    def close(self, members: Iterable[int]) -> Set[int]:
        """Pairwise overlapping-union closure, seeded with the given members and the empty set."""
        closed: Set[int] = {0}
        existing: List[int] = []
        worklist = list(members)
        rounds = 0
        while worklist:
            candidate = worklist.pop()
            if candidate in closed:
                continue
            closed.add(candidate)
            rounds += 1
            space_service.check_family(len(closed))
            for other in existing:
                if other & candidate:
                    union = other | candidate
                    if union not in closed:
                        worklist.append(union)
            existing.append(candidate)
        self.logger.debug(f"Closure reached a fixed point after {rounds} insertions")
        return closed

    def generate(self, ground: GroundSet, generators: SubsetFamily, integral: bool = True) -> ConnSpace:
        """The finest structure (integral if requested) containing the generators."""
        self._check_fit(ground, generators.members)
        space_service.check_carrier(ground.size)
        seeds = list(generators.members)
        if integral:
            seeds = [singleton(p) for p in range(ground.size)] + seeds
        closed = self.close(seeds)
        return ConnSpace(ground=ground, structure=SubsetFamily.of(closed), integral=integral)

    def _check_compatible(self, a: ConnSpace, b: ConnSpace) -> None:
        if a.size != b.size:
            raise GroundMismatch(f"ground sets differ in size ({a.size} != {b.size})")
        if a.integral != b.integral:
            raise GroundMismatch("spaces differ in their integral flag")

    def structure_meet(self, a: ConnSpace, b: ConnSpace) -> ConnSpace:
        """Intersection of two structures on the same ground set."""
        self._check_compatible(a, b)
        members = a.structure.as_set() & b.structure.as_set()
        return ConnSpace(ground=a.ground, structure=SubsetFamily.of(members), integral=a.integral)

    def structure_join(self, a: ConnSpace, b: ConnSpace) -> ConnSpace:
        """Structure generated by the union of two structures."""
        self._check_compatible(a, b)
        members = a.structure.as_set() | b.structure.as_set()
        return self.generate(a.ground, SubsetFamily.of(members), a.integral)

    def join_all(self, spaces: List[ConnSpace]) -> ConnSpace:
        if not spaces:
            raise ValueError("join of an empty list of structures")
        result = spaces[0]
        for space in spaces[1:]:
            result = self.structure_join(result, space)
        return result

    def meet_all(self, spaces: List[ConnSpace]) -> ConnSpace:
        if not spaces:
            raise ValueError("meet of an empty list of structures")
        result = spaces[0]
        for space in spaces[1:]:
            result = self.structure_meet(result, space)
        return result


# Global service instance
generation_service = GenerationService()
