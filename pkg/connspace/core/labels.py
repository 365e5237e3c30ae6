"""
Point labels for constructed spaces.
"""

from typing import List, Optional, Sequence, Tuple

from connspace.core.bitset import iter_indexes
from connspace.models.space import GroundSet


def distinct_or_none(labels: Sequence[str]) -> Optional[Tuple[str, ...]]:
    """The labels as a tuple, or None when they collide or are not single tokens."""
    if len(set(labels)) != len(labels):
        return None
    if any(not label or any(ch.isspace() or ch in "{}#" for ch in label) for label in labels):
        return None
    return tuple(labels)


def is_labeled(*grounds: GroundSet) -> bool:
    return any(ground.labels is not None for ground in grounds)


def pair_labels(first: GroundSet, second: GroundSet) -> Optional[Tuple[str, ...]]:
    """Row-major labels a.b of a product carrier."""
    if not is_labeled(first, second):
        return None
    return distinct_or_none(
        [f"{first.label(i)}.{second.label(j)}" for i in range(first.size) for j in range(second.size)]
    )


def tuple_labels(grounds: Sequence[GroundSet], points: Sequence[Tuple[int, ...]]) -> Optional[Tuple[str, ...]]:
    if not grounds or not is_labeled(*grounds):
        return None
    return distinct_or_none(
        [".".join(g.label(p) for g, p in zip(grounds, point)) for point in points]
    )


def disjoint_labels(grounds: Sequence[GroundSet]) -> Optional[Tuple[str, ...]]:
    """Concatenated labels, priming later copies until they are distinct."""
    if not grounds or not is_labeled(*grounds):
        return None
    labels: List[str] = []
    seen = set()
    for ground in grounds:
        for point in range(ground.size):
            label = ground.label(point)
            while label in seen:
                label += "'"
            seen.add(label)
            labels.append(label)
    return distinct_or_none(labels)


def class_labels(ground: GroundSet, blocks: Sequence[int]) -> Optional[Tuple[str, ...]]:
    """Labels a+b of the blocks of a partition."""
    if ground.labels is None:
        return None
    return distinct_or_none(["+".join(ground.label(p) for p in iter_indexes(block)) for block in blocks])
