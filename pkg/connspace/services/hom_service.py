"""
Service for hom-spaces, the tensor-hom adjunction and finite homotopy.
"""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from connspace.config import get_settings
from connspace.core.bitset import highest_index, image_mask, indexes, iter_submasks, singleton
from connspace.core.exceptions import (
    GroundMismatch,
    HomTooLarge,
    InvalidPoint,
    NotAMorphism,
    NotIntegral,
    SearchTooLarge,
)
from connspace.core.labels import distinct_or_none
from connspace.models.space import ConnSpace, GroundSet, HomSpace, PointMap
from connspace.services.construction_service import construction_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)

Table = Tuple[int, ...]


class HomService:
    """Service for morphism sets and the spaces built on them."""

    def __init__(self):
        self.logger = logger

    def _require_integral(self, operation: str, *spaces: ConnSpace) -> None:
        if not all(space.integral for space in spaces):
            raise NotIntegral(operation)

    def _require_morphism(self, f: PointMap, x: ConnSpace, y: ConnSpace, what: str) -> None:
        if f.source.size != x.size or f.target.size != y.size:
            raise GroundMismatch(f"{what} does not go from {x.size} to {y.size} points")
        for member in x.members:
            if f.image(member) not in y:
                raise NotAMorphism(
                    f"{what} maps the connected set {x.describe(member)} onto "
                    f"{y.describe(f.image(member))}, which is not connected",
                    witness=member,
                )

    # ===========================================
    # MORPHISM ENUMERATION
    # ===========================================

    def iter_morphisms(self, x: ConnSpace, y: ConnSpace) -> Iterator[Table]:
        """Morphism tables x -> y in lexicographic order."""
        candidates = y.size ** x.size
        limit = get_settings().max_hom
        if candidates > limit:
            self.logger.warning(f"Refusing hom enumeration of {candidates} candidate maps (max_hom={limit})")
            raise HomTooLarge("hom enumeration", candidates, limit)

        closing: List[List[int]] = [[] for _ in range(x.size)]
        for member in x.members:
            if member:
                closing[highest_index(member)].append(member)

        table = [0] * x.size

        def extend(point: int) -> Iterator[Table]:
            if point == x.size:
                yield tuple(table)
                return
            for value in range(y.size):
                table[point] = value
                if all(image_mask(member, table) in y for member in closing[point]):
                    yield from extend(point + 1)

        yield from extend(0)

    def hom_morphisms(self, x: ConnSpace, y: ConnSpace) -> List[Table]:
        return list(self.iter_morphisms(x, y))

    def is_hom_connected(
        self, x: ConnSpace, y: ConnSpace, maps: Sequence[Sequence[int]], pointwise: bool = True
    ) -> bool:
        """Whether a set of morphisms is connected in the hom-space.

        The pointwise criterion looks at the values at each point of x; the full
        definition evaluates the set on every connected subset of x.
        """
        if pointwise:
            for point in range(x.size):
                values = 0
                for table in maps:
                    values |= singleton(table[point])
                if values not in y:
                    return False
            return True
        for member in x.members:
            values = 0
            for table in maps:
                values |= image_mask(member, table)
            if values not in y:
                return False
        return True

    def hom_space(self, x: ConnSpace, y: ConnSpace, pointwise: bool = True) -> HomSpace:
        """The space of morphisms x -> y."""
        self._require_integral("hom_space", x, y)
        maps = self.hom_morphisms(x, y)
        space_service.check_carrier(len(maps), "hom-space carrier")
        ground = GroundSet(size=len(maps), labels=self.map_labels(x, y, maps))
        members = [
            mask
            for mask in iter_submasks(ground.full_mask)
            if self.is_hom_connected(x, y, [maps[i] for i in indexes(mask)], pointwise)
        ]
        self.logger.debug(f"Hom-space of {len(maps)} morphisms has {len(members)} connected sets")
        space = space_service.build(ground, members, integral=True)
        return HomSpace(space=space, maps=tuple(maps))

    def map_labels(self, x: ConnSpace, y: ConnSpace, maps: Sequence[Table]) -> Optional[Tuple[str, ...]]:
        if x.ground.labels is None and y.ground.labels is None:
            return None
        return distinct_or_none(
            [",".join(f"{x.label(p)}={y.label(q)}" for p, q in enumerate(table)) or "*" for table in maps]
        )

    def hom_map(self, x: ConnSpace, g: PointMap, y: ConnSpace, y2: ConnSpace) -> PointMap:
        """Cnct(X, g): phi -> g o phi between the hom carriers."""
        self._require_morphism(g, y, y2, "map")
        source = self.hom_morphisms(x, y)
        target = self.hom_morphisms(x, y2)
        position = {table: i for i, table in enumerate(target)}
        table = [position[tuple(g(v) for v in phi)] for phi in source]
        return PointMap.from_table(table, len(target))

    # ===========================================
    # TENSOR-HOM ADJUNCTION
    # ===========================================

    def curry(self, psi: PointMap, x: ConnSpace, y: ConnSpace, z: ConnSpace) -> PointMap:
        """y -> the morphism psi(-, y), as a map into the carrier of Cnct(x, z)."""
        self._require_integral("curry", x, y, z)
        tensor = construction_service.tensor(x, y)
        self._require_morphism(psi, tensor, z, "psi")
        maps = self.hom_morphisms(x, z)
        position = {table: i for i, table in enumerate(maps)}
        table = [position[tuple(psi(p * y.size + q) for p in range(x.size))] for q in range(y.size)]
        return PointMap(
            source=y.ground,
            target=GroundSet(size=len(maps), labels=self.map_labels(x, z, maps)),
            table=tuple(table),
        )

    def uncurry(self, phi: PointMap, x: ConnSpace, y: ConnSpace, z: ConnSpace) -> PointMap:
        """(p, q) -> phi(q)(p) on the row-major tensor carrier."""
        self._require_integral("uncurry", x, y, z)
        maps = self.hom_morphisms(x, z)
        if phi.source.size != y.size or phi.target.size != len(maps):
            raise GroundMismatch("phi does not go from y to the carrier of Cnct(x, z)")
        table = [maps[phi(q)][p] for p in range(x.size) for q in range(y.size)]
        return PointMap.from_table(table, z.size)

    # ===========================================
    # HOMOTOPY
    # ===========================================

    def _check_time(self, time: ConnSpace, start: int, end: int) -> None:
        if not time.integral or time.size == 0:
            raise NotIntegral("homotopy time space")
        for point in (start, end):
            if not 0 <= point < time.size:
                raise InvalidPoint(f"time point {point} is not a point of a {time.size}-point space")

    def verify_homotopy(
        self,
        h: PointMap,
        f: PointMap,
        g: PointMap,
        time: ConnSpace,
        x: ConnSpace,
        y: ConnSpace,
        start: int = 0,
        end: Optional[int] = None,
    ) -> bool:
        """Check h(start, -) = f, h(end, -) = g and both families of partial maps."""
        end = time.size - 1 if end is None else end
        self._check_time(time, start, end)
        if h.source.size != time.size * x.size or h.target.size != y.size:
            raise GroundMismatch("h does not go from the time-by-space carrier to y")
        if f.source.size != x.size or g.source.size != x.size:
            raise GroundMismatch("endpoint maps do not start at x")
        if any(h(start * x.size + p) != f(p) for p in range(x.size)):
            return False
        if any(h(end * x.size + p) != g(p) for p in range(x.size)):
            return False
        return construction_service.is_partially_connecting(h, time, x, y)

    def homotopic(
        self,
        f: PointMap,
        g: PointMap,
        time: ConnSpace,
        x: ConnSpace,
        y: ConnSpace,
        start: int = 0,
        end: Optional[int] = None,
        via_hom_space: bool = False,
    ) -> Optional[PointMap]:
        """Search for a homotopy from f to g over the time space.

        Rows h(t, -) range over the morphisms x -> y. With via_hom_space the
        time-tracks are checked as a morphism into the materialised hom-space,
        otherwise pointwise on the image sets.
        """
        end = time.size - 1 if end is None else end
        self._check_time(time, start, end)
        self._require_integral("homotopic", x, y)
        self._require_morphism(f, x, y, "f")
        self._require_morphism(g, x, y, "g")
        if start == end and f.table != g.table:
            return None

        candidates = y.size ** (time.size * x.size)
        limit = get_settings().max_search
        if candidates > limit:
            self.logger.warning(f"Refusing homotopy search over {candidates} maps (max_search={limit})")
            raise SearchTooLarge("homotopy search", candidates, limit)

        if via_hom_space:
            hom = self.hom_space(x, y)
            maps = list(hom.maps)

            def connected(rows: List[Table]) -> bool:
                return sum(singleton(hom.index_of(r)) for r in set(rows)) in hom.space

        else:
            maps = self.hom_morphisms(x, y)

            def connected(rows: List[Table]) -> bool:
                return self.is_hom_connected(x, y, rows)

        closing: List[List[int]] = [[] for _ in range(time.size)]
        for member in time.members:
            if member:
                closing[highest_index(member)].append(member)

        rows: List[Table] = [()] * time.size

        def extend(t: int) -> bool:
            if t == time.size:
                return True
            if t == start:
                options = [f.table]
            elif t == end:
                options = [g.table]
            else:
                options = maps
            for option in options:
                rows[t] = option
                if all(connected([rows[s] for s in indexes(member)]) for member in closing[t]):
                    if extend(t + 1):
                        return True
            return False

        if not extend(0):
            return None
        table = [rows[t][p] for t in range(time.size) for p in range(x.size)]
        return PointMap.from_table(table, y.size)

    def is_contractible(
        self, x: ConnSpace, time: ConnSpace, start: int = 0, end: Optional[int] = None
    ) -> Optional[Tuple[int, PointMap]]:
        """A point c and a homotopy from the identity to the constant map onto c."""
        identity = PointMap.identity(x.ground)
        for point in range(x.size):
            constant = PointMap.constant(x.ground, x.ground, point)
            witness = self.homotopic(identity, constant, time, x, x, start, end)
            if witness is not None:
                return point, witness
        return None


# Global service instance
hom_service = HomService()
