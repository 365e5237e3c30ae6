"""
Integer bitmask helpers.

A subset of a ground set with n points is an int whose bit i is set when
point i belongs to the subset.
"""

from __future__ import annotations

import sys
from typing import Iterable, Iterator, List, Sequence, Tuple


def make_bitset(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


if sys.version_info >= (3, 10):

    def count_bits(value: int) -> int:
        """Count the number of set bits using native int.bit_count() (Python 3.10+)."""
        return value.bit_count()

else:

    def count_bits(value: int) -> int:
        """Count the number of set bits using bin().count('1') (Python 3.9)."""
        return bin(value).count("1")


def iter_indexes(value: int) -> Iterator[int]:
    index = 0
    while value:
        if value & 1:
            yield index
        value >>= 1
        index += 1


def indexes(value: int) -> List[int]:
    return list(iter_indexes(value))


def full_mask(size: int) -> int:
    return (1 << size) - 1


def singleton(point: int) -> int:
    return 1 << point


def lowest_index(value: int) -> int:
    return (value & -value).bit_length() - 1


def highest_index(value: int) -> int:
    return value.bit_length() - 1


def is_subset(inner: int, outer: int) -> bool:
    return inner & ~outer == 0


def is_proper_subset(inner: int, outer: int) -> bool:
    return inner != outer and inner & ~outer == 0


def member_key(value: int) -> Tuple[int, int]:
    """Sort key of the canonical member order: cardinality, then numeric value."""
    return count_bits(value), value


def sort_members(values: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(values), key=member_key))


def iter_submasks(value: int) -> Iterator[int]:
    """Yield every submask of value, including 0 and value itself."""
    sub = value
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & value


def image_mask(value: int, table: Sequence[int]) -> int:
    """Image of a subset under a point table (table[i] is the target of point i)."""
    image = 0
    for idx in iter_indexes(value):
        image |= 1 << table[idx]
    return image


def preimage_mask(value: int, table: Sequence[int]) -> int:
    pre = 0
    for idx, target in enumerate(table):
        if value >> target & 1:
            pre |= 1 << idx
    return pre


def relabel_mask(value: int, permutation: Sequence[int]) -> int:
    return image_mask(value, permutation)
