from math import comb

import pytest
from hypothesis import given, strategies as st

from spinor_grass.partitions import (
    BoxOverflowError,
    DuplicatePartError,
    FrobeniusCoords,
    PartIndexError,
    PartRangeError,
    Partition,
    StrictPartition,
    box_partitions,
    count_greater,
    frobenius_join,
    frobenius_split,
    particle_positions,
    partition_from_json,
    partition_from_positions,
    partition_to_json,
    plucker_insert,
    plucker_remove,
    pseudosymmetric,
    rect_complement,
    strict_from_json,
    strict_insert,
    strict_partitions_bounded,
    strict_remove,
    strict_to_json,
)


def test_partition_normalization_and_validation():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    assert Partition(()).length == 0
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        StrictPartition((2, 2))
    assert StrictPartition((3, 0)).parts == (3, 0)  # trailing zero is a real part


def test_particle_positions_examples():
    assert particle_positions(Partition(()), 3) == (3, 2, 1)
    assert particle_positions(Partition((2, 1)), 3) == (5, 3, 1)
    n = 4
    assert particle_positions(Partition((n,) * n), n) == (8, 7, 6, 5)
    with pytest.raises(BoxOverflowError):
        particle_positions(Partition((4,)), 3)


def test_particle_positions_bijection():
    for n in range(1, 6):
        seen = set()
        for lam in box_partitions(n):
            pos = particle_positions(lam, n)
            assert all(pos[i] > pos[i + 1] for i in range(n - 1))
            assert 1 <= pos[-1] and pos[0] <= 2 * n
            seen.add(frozenset(pos))
            assert partition_from_positions(pos, n) == lam
        assert len(seen) == comb(2 * n, n)


def test_frobenius_examples():
    assert frobenius_split(Partition(())).rank == 0
    fro = frobenius_split(Partition((1,)))
    assert fro.alpha.parts == (0,) and fro.beta.parts == (0,)
    fro = frobenius_split(Partition((3, 3, 1)))
    assert fro.alpha.parts == (2, 1) and fro.beta.parts == (2, 0)


def test_frobenius_round_trip_box():
    for n in range(1, 7):
        for lam in box_partitions(n):
            fro = frobenius_split(lam)
            assert frobenius_join(fro.alpha, fro.beta) == lam


def test_frobenius_coords_validation():
    with pytest.raises(ValueError):
        FrobeniusCoords(StrictPartition((1,)), StrictPartition(()))


def test_pseudosymmetric_examples():
    assert rect_complement(StrictPartition((2, 0)), 3).parts == (2, 0)
    assert pseudosymmetric(StrictPartition(()), 4) == Partition(())
    n = 4
    full = StrictPartition(tuple(range(n - 1, -1, -1)))
    assert pseudosymmetric(full, n) == Partition((n,) * n)
    with pytest.raises(PartRangeError):
        pseudosymmetric(StrictPartition((4,)), 4)


def test_pseudosymmetric_properties():
    for n in range(1, 6):
        for alpha in strict_partitions_bounded(n - 1):
            lam = pseudosymmetric(alpha, n)
            assert lam.fits_box(n)
            fro = frobenius_split(lam)
            assert fro.alpha == alpha
            assert fro.beta == rect_complement(alpha, n)


def test_plucker_remove_examples():
    out, part = plucker_remove(Partition((3, 2, 2)), 2)
    assert out == Partition((4, 2)) and part == 2
    out, part = plucker_remove(Partition((2,)), 3, length=3)
    assert out == Partition((3, 1)) and part == 0
    with pytest.raises(PartIndexError):
        plucker_remove(Partition((3, 2, 2)), 4)


def test_plucker_insert_examples():
    out = plucker_insert(Partition((2,)), 3)
    assert out == (Partition((4, 2)), 1)
    assert plucker_insert(Partition((2,)), 0) is None
    # middle-case insertion: u between the first two thresholds
    out = plucker_insert(Partition((5, 1)), 2)
    assert out == (Partition((4, 4, 1)), 2)
    # empty partition: first case applies vacuously
    assert plucker_insert(Partition(()), 4) == (Partition((5,)), 1)
    # deep-negative u always collides with a padded threshold
    assert plucker_insert(Partition(()), -2) is None
    assert plucker_insert(Partition((1,)), -3) is None


def test_strict_surgery_examples():
    alpha = StrictPartition((4, 2))
    assert strict_insert(alpha, 3) == (StrictPartition((4, 3, 2)), 2)
    assert strict_remove(alpha, 1) == (StrictPartition((2,)), 4)
    assert count_greater(alpha, 3) == 1
    with pytest.raises(DuplicatePartError):
        strict_insert(alpha, 4)
    with pytest.raises(PartIndexError):
        strict_remove(alpha, 3)


@given(st.sets(st.integers(0, 9), max_size=6), st.integers(0, 9))
def test_strict_insert_remove_inverse(parts, m):
    alpha = StrictPartition(tuple(sorted(parts, reverse=True)))
    if m in parts:
        with pytest.raises(DuplicatePartError):
            strict_insert(alpha, m)
        return
    grown, pos = strict_insert(alpha, m)
    back, part = strict_remove(grown, pos)
    assert back == alpha and part == m


def test_label_counts():
    for n in range(1, 8):
        labels = list(strict_partitions_bounded(n - 1))
        assert len(labels) == 2 ** n
        assert sum(1 for a in labels if a.length % 2 == 0) == 2 ** (n - 1)


def test_json_round_trips():
    lam = Partition((3, 1))
    assert partition_from_json(partition_to_json(lam)) == lam
    alpha = StrictPartition((3, 0))
    assert strict_from_json(strict_to_json(alpha)) == alpha
    assert strict_to_json(alpha) == [3, 0]  # the trailing zero is significant
