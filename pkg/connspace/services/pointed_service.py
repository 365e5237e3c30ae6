"""
Service for pointed integral connectivity spaces: wedge, smash and pointed hom-spaces.
"""

import logging
from typing import List, Tuple

from connspace.core.bitset import count_bits, full_mask, indexes, iter_submasks, singleton
from connspace.core.exceptions import GroundMismatch, NotAMorphism
from connspace.models.space import ConnSpace, GroundSet, Partition, PointedConnSpace, PointMap, SubsetFamily
from connspace.services.construction_service import construction_service
from connspace.services.hom_service import Table, hom_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)


class PointedService:
    """Service for the closed monoidal structure of pointed spaces."""

    def __init__(self):
        self.logger = logger

    def zero_object(self) -> PointedConnSpace:
        space = ConnSpace(ground=GroundSet(size=1), structure=SubsetFamily.of([0, 1]), integral=True)
        return PointedConnSpace(space=space, base=0)

    def _require_based(self, f: PointMap, x: PointedConnSpace, y: PointedConnSpace, what: str) -> None:
        if f.source.size != x.size or f.target.size != y.size:
            raise GroundMismatch(f"{what} does not go from {x.size} to {y.size} points")
        if f(x.base) != y.base:
            raise NotAMorphism(f"{what} does not send the base point to the base point")
        for member in x.space.members:
            if f.image(member) not in y.space:
                raise NotAMorphism(
                    f"{what} maps the connected set {x.space.describe(member)} onto a disconnected set",
                    witness=member,
                )

    # ===========================================
    # PRODUCTS, QUOTIENTS AND SUMS
    # ===========================================

    def pointed_product(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointedConnSpace:
        space = construction_service.product(x1.space, x2.space)
        return PointedConnSpace(space=space, base=x1.base * x2.size + x2.base)

    def pointed_tensor(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointedConnSpace:
        space = construction_service.tensor(x1.space, x2.space)
        return PointedConnSpace(space=space, base=x1.base * x2.size + x2.base)

    def pointed_quotient(self, x: PointedConnSpace, subset: int) -> PointedConnSpace:
        """X/T: collapse subset to one point; the base is the class of the base point."""
        partition = Partition.collapsing(x.size, subset)
        space = construction_service.quotient(x.space, partition)
        return PointedConnSpace(space=space, base=partition.assignment()[x.base])

    def wedge(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointedConnSpace:
        """Coproduct with the two base points identified."""
        total = x1.size + x2.size
        coproduct = construction_service.coproduct(x1.space, x2.space)
        partition = Partition.from_pairs(total, [(x1.base, x1.size + x2.base)])
        space = construction_service.quotient(coproduct, partition)
        return PointedConnSpace(space=space, base=partition.assignment()[x1.base])

    def wedge_subset(self, x1: PointedConnSpace, x2: PointedConnSpace) -> int:
        """Points (p, b2) and (b1, q) of the row-major product carrier."""
        width = x2.size
        mask = full_mask(width) << (x1.base * width)
        for p in range(x1.size):
            mask |= singleton(p * width + x2.base)
        return mask

    def wedge_in_tensor(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointedConnSpace:
        """The wedge as the subspace of the tensor product induced on the wedge subset."""
        tensor = construction_service.tensor(x1.space, x2.space)
        subset = self.wedge_subset(x1, x2)
        base_position = x1.base * x2.size + x2.base
        base = count_bits(subset & full_mask(base_position))
        return PointedConnSpace(space=construction_service.subspace(tensor, subset), base=base)

    # ===========================================
    # SMASH PRODUCT
    # ===========================================

    def smash_projection(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointMap:
        """Quotient map from the tensor carrier onto the smash carrier."""
        return self._smash(x1, x2)[1]

    def smash(self, x1: PointedConnSpace, x2: PointedConnSpace) -> PointedConnSpace:
        """Tensor product with the wedge collapsed to the base point."""
        return self._smash(x1, x2)[0]

    def _smash(self, x1: PointedConnSpace, x2: PointedConnSpace) -> Tuple[PointedConnSpace, PointMap]:
        tensor = construction_service.tensor(x1.space, x2.space)
        partition = Partition.collapsing(tensor.size, self.wedge_subset(x1, x2))
        space = construction_service.quotient(tensor, partition)
        assignment = partition.assignment()
        projection = PointMap(source=tensor.ground, target=space.ground, table=assignment)
        base = assignment[x1.base * x2.size + x2.base]
        self.logger.debug(f"Smash of {x1.size} and {x2.size} points has {space.size} points")
        return PointedConnSpace(space=space, base=base), projection

    def smash_map(
        self, x: PointedConnSpace, u: PointMap, y: PointedConnSpace, y2: PointedConnSpace
    ) -> PointMap:
        """X ^ u: (p, q)~ -> (p, u(q))~."""
        self._require_based(u, y, y2, "u")
        source = self.smash_projection(x, y)
        target = self.smash_projection(x, y2)
        table = [0] * source.target.size
        for p in range(x.size):
            for q in range(y.size):
                table[source(p * y.size + q)] = target(p * y2.size + u(q))
        return PointMap(source=source.target, target=target.target, table=tuple(table))

    # ===========================================
    # POINTED HOM-SPACES
    # ===========================================

    def based_morphisms(self, x: PointedConnSpace, y: PointedConnSpace) -> List[Table]:
        return [m for m in hom_service.iter_morphisms(x.space, y.space) if m[x.base] == y.base]

    def pointed_hom(self, x: PointedConnSpace, y: PointedConnSpace) -> PointedConnSpace:
        """Based morphisms with the structure induced from the hom-space."""
        maps = self.based_morphisms(x, y)
        space_service.check_carrier(len(maps), "pointed hom-space carrier")
        ground = GroundSet(size=len(maps), labels=hom_service.map_labels(x.space, y.space, maps))
        members = [
            mask
            for mask in iter_submasks(ground.full_mask)
            if hom_service.is_hom_connected(x.space, y.space, [maps[i] for i in indexes(mask)])
        ]
        space = space_service.build(ground, members, integral=True)
        base = maps.index(tuple([y.base] * x.size))
        return PointedConnSpace(space=space, base=base)

    def pointed_hom_map(
        self, x: PointedConnSpace, v: PointMap, z: PointedConnSpace, z2: PointedConnSpace
    ) -> PointMap:
        """pCnct(X, v): phi -> v o phi between the pointed hom carriers."""
        self._require_based(v, z, z2, "v")
        source = self.based_morphisms(x, z)
        target = self.based_morphisms(x, z2)
        position = {table: i for i, table in enumerate(target)}
        table = [position[tuple(v(value) for value in phi)] for phi in source]
        return PointMap.from_table(table, len(target))

    def pointed_curry(
        self, psi: PointMap, x: PointedConnSpace, y: PointedConnSpace, z: PointedConnSpace
    ) -> PointMap:
        """y -> psi((-, y)~) as a map into the carrier of pCnct(x, z)."""
        smash, projection = self._smash(x, y)
        self._require_based(psi, smash, z, "psi")
        maps = self.based_morphisms(x, z)
        position = {table: i for i, table in enumerate(maps)}
        table = [
            position[tuple(psi(projection(p * y.size + q)) for p in range(x.size))]
            for q in range(y.size)
        ]
        return PointMap(source=y.space.ground, target=GroundSet(size=len(maps)), table=tuple(table))

    def pointed_uncurry(
        self, phi: PointMap, x: PointedConnSpace, y: PointedConnSpace, z: PointedConnSpace
    ) -> PointMap:
        """(p, q)~ -> phi(q)(p) on the smash carrier."""
        maps = self.based_morphisms(x, z)
        if phi.source.size != y.size or phi.target.size != len(maps):
            raise GroundMismatch("phi does not go from y to the carrier of pCnct(x, z)")
        base_map = maps.index(tuple([z.base] * x.size))
        if phi(y.base) != base_map:
            raise NotAMorphism("phi does not send the base point to the constant map")
        projection = self.smash_projection(x, y)
        table = [0] * projection.target.size
        for p in range(x.size):
            for q in range(y.size):
                table[projection(p * y.size + q)] = maps[phi(q)][p]
        return PointMap.from_table(table, z.size)


# Global service instance
pointed_service = PointedService()
