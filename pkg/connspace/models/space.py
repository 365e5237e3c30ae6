"""
Pydantic models for ground sets, subset families and connectivity spaces.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from connspace.core.bitset import (
    count_bits,
    full_mask,
    image_mask,
    iter_indexes,
    lowest_index,
    preimage_mask,
    singleton,
    sort_members,
)
from connspace.core.exceptions import UnknownLabel


class GroundSet(BaseModel):
    """A finite carrier: points 0..size-1, optionally labelled."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=0)
    labels: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_labels(self) -> "GroundSet":
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError(
                    f"expected {self.size} labels, got {len(self.labels)}"
                )
            if len(set(self.labels)) != self.size:
                raise ValueError("point labels must be pairwise distinct")
        return self

    @property
    def full_mask(self) -> int:
        return full_mask(self.size)

    def label(self, point: int) -> str:
        return self.labels[point] if self.labels is not None else str(point)

    def label_list(self) -> List[str]:
        return [self.label(point) for point in range(self.size)]

    def index_of(self, label: str) -> int:
        try:
            return self.label_list().index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= singleton(self.index_of(label))
        return mask

    def fits(self, mask: int) -> bool:
        return mask >= 0 and mask & ~self.full_mask == 0

    def describe(self, mask: int) -> str:
        return "{" + " ".join(self.label(p) for p in iter_indexes(mask)) + "}"

    def unlabeled(self) -> "GroundSet":
        return GroundSet(size=self.size)


class SubsetFamily(BaseModel):
    """Deduplicated family of subsets in canonical order (cardinality, then value)."""

    model_config = ConfigDict(frozen=True)

    members: Tuple[int, ...] = ()

    _lookup: Optional[FrozenSet[int]] = PrivateAttr(default=None)

    @field_validator("members")
    @classmethod
    def _canonical(cls, members: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(member < 0 for member in members):
            raise ValueError("subset bitmasks must be non-negative")
        return sort_members(members)

    @classmethod
    def of(cls, members: Iterable[int]) -> "SubsetFamily":
        return cls(members=tuple(members))

    def __contains__(self, mask: object) -> bool:
        if self._lookup is None:
            self._lookup = frozenset(self.members)
        return mask in self._lookup

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def as_set(self) -> FrozenSet[int]:
        if self._lookup is None:
            self._lookup = frozenset(self.members)
        return self._lookup

    def nontrivial(self) -> Tuple[int, ...]:
        """Members with at least two points (the A-bullet sub-family)."""
        return tuple(m for m in self.members if count_bits(m) >= 2)

    def nonempty(self) -> Tuple[int, ...]:
        return tuple(m for m in self.members if m)

    def sort_key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((count_bits(m), m) for m in self.members)


class ConnSpace(BaseModel):
    """A finite connectivity space: carrier, structure and integral flag."""

    model_config = ConfigDict(frozen=True)

    ground: GroundSet
    structure: SubsetFamily
    integral: bool = True

    @model_validator(mode="after")
    def _check_members(self) -> "ConnSpace":
        for member in self.structure.members:
            if not self.ground.fits(member):
                raise ValueError(
                    f"subset {member:#b} does not fit a ground set of {self.ground.size} points"
                )
        if 0 not in self.structure:
            raise ValueError("structure must contain the empty set")
        if self.integral:
            for point in range(self.ground.size):
                if singleton(point) not in self.structure:
                    raise ValueError(f"integral structure is missing point {point}")
        return self

    @property
    def size(self) -> int:
        return self.ground.size

    @property
    def carrier(self) -> int:
        return self.ground.full_mask

    @property
    def members(self) -> Tuple[int, ...]:
        return self.structure.members

    def __contains__(self, mask: object) -> bool:
        return mask in self.structure

    def label(self, point: int) -> str:
        return self.ground.label(point)

    def describe(self, mask: int) -> str:
        return self.ground.describe(mask)

    def unlabeled(self) -> "ConnSpace":
        return ConnSpace(ground=self.ground.unlabeled(), structure=self.structure, integral=self.integral)

    def relabeled(self, labels: Optional[Sequence[str]]) -> "ConnSpace":
        ground = GroundSet(size=self.size, labels=tuple(labels) if labels is not None else None)
        return ConnSpace(ground=ground, structure=self.structure, integral=self.integral)


class PointMap(BaseModel):
    """A function between two ground sets, given by its table."""

    model_config = ConfigDict(frozen=True)

    source: GroundSet
    target: GroundSet
    table: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_table(self) -> "PointMap":
        if len(self.table) != self.source.size:
            raise ValueError(
                f"table has {len(self.table)} entries for a source of {self.source.size} points"
            )
        for value in self.table:
            if not 0 <= value < self.target.size:
                raise ValueError(f"table entry {value} is not a target point")
        return self

    @classmethod
    def from_table(cls, table: Sequence[int], target_size: int) -> "PointMap":
        return cls(source=GroundSet(size=len(table)), target=GroundSet(size=target_size), table=tuple(table))

    @classmethod
    def between(cls, source: ConnSpace, target: ConnSpace, table: Sequence[int]) -> "PointMap":
        return cls(source=source.ground, target=target.ground, table=tuple(table))

    @classmethod
    def identity(cls, ground: GroundSet) -> "PointMap":
        return cls(source=ground, target=ground, table=tuple(range(ground.size)))

    @classmethod
    def constant(cls, source: GroundSet, target: GroundSet, point: int) -> "PointMap":
        return cls(source=source, target=target, table=(point,) * source.size)

    def __call__(self, point: int) -> int:
        return self.table[point]

    def image(self, mask: int) -> int:
        return image_mask(mask, self.table)

    def preimage(self, mask: int) -> int:
        return preimage_mask(mask, self.table)

    def then(self, other: "PointMap") -> "PointMap":
        """Composite other o self."""
        if other.source.size != self.target.size:
            raise ValueError("maps are not composable")
        return PointMap(
            source=self.source,
            target=other.target,
            table=tuple(other.table[value] for value in self.table),
        )

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.target.size))

    def preserves(self, source: ConnSpace, target: ConnSpace) -> bool:
        """True iff every connected set of source maps onto a connected set of target."""
        return all(self.image(member) in target.structure for member in source.members)

    def describe(self) -> str:
        return ",".join(
            f"{self.source.label(p)}={self.target.label(q)}" for p, q in enumerate(self.table)
        )


class Partition(BaseModel):
    """A partition of 0..size-1 into disjoint nonempty blocks, ordered by least point."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=0)
    blocks: Tuple[int, ...]

    @field_validator("blocks")
    @classmethod
    def _order_blocks(cls, blocks: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(blocks, key=lowest_index))

    @model_validator(mode="after")
    def _check_blocks(self) -> "Partition":
        seen = 0
        for block in self.blocks:
            if block <= 0:
                raise ValueError("partition blocks must be nonempty")
            if block & seen:
                raise ValueError("partition blocks must be pairwise disjoint")
            seen |= block
        if seen != full_mask(self.size):
            raise ValueError("partition blocks must cover the ground set")
        return self

    @classmethod
    def discrete(cls, size: int) -> "Partition":
        return cls(size=size, blocks=tuple(singleton(p) for p in range(size)))

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[Tuple[int, int]]) -> "Partition":
        """Partition generated by the equivalence relation spanned by the pairs."""
        parent = list(range(size))

        def find(point: int) -> int:
            while parent[point] != point:
                parent[point] = parent[parent[point]]
                point = parent[point]
            return point

        for first, second in pairs:
            root_a, root_b = find(first), find(second)
            if root_a != root_b:
                parent[max(root_a, root_b)] = min(root_a, root_b)

        blocks: Dict[int, int] = {}
        for point in range(size):
            root = find(point)
            blocks[root] = blocks.get(root, 0) | singleton(point)
        return cls(size=size, blocks=tuple(blocks.values()))

    @classmethod
    def collapsing(cls, size: int, subset: int) -> "Partition":
        """Partition with subset as one block and singletons elsewhere."""
        blocks = [singleton(p) for p in range(size) if not subset >> p & 1]
        if subset:
            blocks.append(subset)
        return cls(size=size, blocks=tuple(blocks))

    def assignment(self) -> Tuple[int, ...]:
        """Block index of every point."""
        table = [0] * self.size
        for index, block in enumerate(self.blocks):
            for point in iter_indexes(block):
                table[point] = index
        return tuple(table)


class Arrow(BaseModel):
    """One arrow of a diagram, between object indices."""

    model_config = ConfigDict(frozen=True)

    source: int = Field(ge=0)
    target: int = Field(ge=0)
    map: PointMap


class Diagram(BaseModel):
    """A finite free diagram of connectivity spaces and morphisms."""

    model_config = ConfigDict(frozen=True)

    objects: Tuple[ConnSpace, ...]
    arrows: Tuple[Arrow, ...] = ()

    @model_validator(mode="after")
    def _check_arrows(self) -> "Diagram":
        if len({space.integral for space in self.objects}) > 1:
            raise ValueError("diagram objects must share the same integral flag")
        for arrow in self.arrows:
            if arrow.source >= len(self.objects) or arrow.target >= len(self.objects):
                raise ValueError(f"arrow {arrow.source}->{arrow.target} refers to a missing object")
            source = self.objects[arrow.source]
            target = self.objects[arrow.target]
            if arrow.map.source.size != source.size or arrow.map.target.size != target.size:
                raise ValueError(f"arrow {arrow.source}->{arrow.target} has mismatched ground sets")
            if not arrow.map.preserves(source, target):
                raise ValueError(f"arrow {arrow.source}->{arrow.target} is not a connectivity morphism")
        return self

    @property
    def integral(self) -> bool:
        return all(space.integral for space in self.objects)


class PointedConnSpace(BaseModel):
    """An integral connectivity space with a distinguished base point."""

    model_config = ConfigDict(frozen=True)

    space: ConnSpace
    base: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_base(self) -> "PointedConnSpace":
        if not self.space.integral:
            raise ValueError("pointed spaces must be integral")
        if self.base >= self.space.size:
            raise ValueError(f"base point {self.base} is not a point of the space")
        return self

    @property
    def size(self) -> int:
        return self.space.size


class Limit(BaseModel):
    """Limit of a diagram with its projections, one per object."""

    model_config = ConfigDict(frozen=True)

    space: ConnSpace
    projections: Tuple[PointMap, ...]


class Colimit(BaseModel):
    """Colimit of a diagram with its coprojections, one per object."""

    model_config = ConfigDict(frozen=True)

    space: ConnSpace
    coprojections: Tuple[PointMap, ...]


class HomSpace(BaseModel):
    """The space of morphisms X -> Y; point i is the morphism maps[i]."""

    model_config = ConfigDict(frozen=True)

    space: ConnSpace
    maps: Tuple[Tuple[int, ...], ...]

    _positions: Optional[Dict[Tuple[int, ...], int]] = PrivateAttr(default=None)

    def index_of(self, table: Sequence[int]) -> int:
        if self._positions is None:
            self._positions = {m: i for i, m in enumerate(self.maps)}
        return self._positions[tuple(table)]
