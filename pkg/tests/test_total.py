from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from visicube import oracles
from visicube.cube import VertexSet, is_total_mv_direct
from visicube.errors import PreconditionError
from visicube.total import (avoids_distance2, balls_tile, build_AB, counting_upper_check,
                            distance2_violation, hamming_code, min_distance, position_norm,
                            total_mv_partition, weight_classes)

from helpers import vs


def test_distance2_examples():
    assert avoids_distance2(vs(3, "000", "111"))
    assert distance2_violation(vs(3, "000", "011")) is not None
    assert avoids_distance2(VertexSet(3)) and avoids_distance2(vs(3, "101"))


def test_hamming_examples():
    assert hamming_code(2) == vs(3, "000", "111")
    c3 = hamming_code(3)
    assert len(c3) == 16 and min_distance(c3) == 3 and balls_tile(c3)
    with pytest.raises(PreconditionError):
        hamming_code(1)


def test_position_norm_examples():
    assert position_norm(0b110) == 5
    assert position_norm(0) == 0
    assert position_norm(0b1001) == 5


def test_weight_class_examples():
    classes, best = weight_classes(4, 2)
    assert best == 1 and classes[1].members == vs(4, "1001", "0110")
    classes, best = weight_classes(5, 0)
    assert len(classes[best]) == 1


def test_build_ab_examples():
    ab = build_AB(3)
    assert len(ab.group_a) + len(ab.group_b) >= 3 and len(ab.larger()) >= 2
    ab7 = build_AB(7)
    assert len(ab7.larger()) * 7 >= 2 ** 6
    ab1 = build_AB(1)
    assert ab1.group_a.members >= {0} and len(ab1.group_b) == 0


def test_partition_examples():
    p4 = total_mv_partition(4)
    assert len(p4) <= 8 and sum(map(len, p4)) == 16
    assert len(total_mv_partition(1)) <= 2


def test_counting_examples():
    assert counting_upper_check(hamming_code(3))
    assert counting_upper_check(vs(3, "000", "111"))
    with pytest.raises(PreconditionError):
        counting_upper_check(vs(3, "000", "011"))


def test_weight_classes_cover_layers():
    for n in range(1, 10):
        for w in range(n + 1):
            classes, best = weight_classes(n, w)
            assert sum(len(c) for c in classes) == comb(n, w)
            assert len(classes[best]) * n >= comb(n, w)


@settings(max_examples=120, deadline=None)
@given(st.sets(st.integers(0, 15), max_size=8))
def test_distance2_characterization_q4(members):
    m = VertexSet(4, members)
    assert avoids_distance2(m) == is_total_mv_direct(m) == oracles.total_mv_by_paths(members, 4)
    assert avoids_distance2(m) == (not oracles.has_distance2_pair(members))
