"""
Tests for the bitmask helpers.
"""

from hypothesis import given
from hypothesis import strategies as st

from connspace.core.bitset import (
    count_bits,
    full_mask,
    highest_index,
    image_mask,
    indexes,
    is_proper_subset,
    is_subset,
    iter_submasks,
    lowest_index,
    make_bitset,
    preimage_mask,
    sort_members,
)


def test_make_bitset_and_indexes():
    assert make_bitset([0, 2]) == 0b101
    assert make_bitset([]) == 0
    assert indexes(0b1010) == [1, 3]
    assert count_bits(0b1011) == 3


def test_lowest_and_highest_index():
    assert lowest_index(0b1100) == 2
    assert highest_index(0b1100) == 3


def test_subset_predicates():
    assert is_subset(0b001, 0b011)
    assert is_subset(0b011, 0b011)
    assert not is_proper_subset(0b011, 0b011)
    assert is_proper_subset(0, 0b1)
    assert not is_subset(0b100, 0b011)


def test_iter_submasks_lists_every_submask_once():
    assert list(iter_submasks(0b101)) == [0b101, 0b100, 0b001, 0]
    assert list(iter_submasks(0)) == [0]


def test_canonical_member_order():
    assert sort_members([3, 1, 0, 4, 3]) == (0, 1, 4, 3)


def test_image_and_preimage():
    assert image_mask(0b011, [2, 2]) == 0b100
    assert preimage_mask(0b100, [2, 0, 2]) == 0b101
    assert preimage_mask(0, [1, 1]) == 0


@given(st.integers(min_value=0, max_value=8))
def test_full_mask_has_every_point(size):
    assert count_bits(full_mask(size)) == size
    assert len(list(iter_submasks(full_mask(size)))) == 2 ** size
