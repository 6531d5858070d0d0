from math import ceil

from visicube import oracles
from visicube.cube import is_mv_set
from visicube.exact import (can_extend, chromatic_mv, chromatic_total_mv, max_mv, max_total_mv)
from visicube.total import avoids_distance2


def test_max_mv_examples():
    assert max_mv(1).value == 2
    assert max_mv(2).value == 3
    r3 = max_mv(3)
    assert r3.optimal and r3.value == oracles.brute_force_max_mv(3)[0]
    assert oracles.mv_by_paths(r3.certificate.members)


def test_max_mv_q4():
    r = max_mv(4)
    assert r.optimal and r.value == 9 and is_mv_set(r.certificate)


def test_max_mv_budget_reports_incumbent():
    r = max_mv(6, budget_ms=200)
    assert not r.optimal and len(r.certificate) == r.value and is_mv_set(r.certificate)


def test_can_extend_agrees_with_full_check():
    cur = [0, 3]
    assert can_extend(cur, set(cur), 5) == is_mv_set(__import__("visicube").VertexSet(3, cur + [5]))


def test_max_total_examples():
    assert [max_total_mv(n).value for n in (1, 2, 3)] == [2, 2, 2]
    for n in range(2, 7):
        r = max_total_mv(n)
        assert avoids_distance2(r.certificate)
        assert ceil(2 ** (n - 1) / n) <= r.value <= 2 ** n // n


def test_chromatic_examples():
    assert chromatic_mv(1).value == 1
    assert chromatic_mv(2).value == 2
    r3 = chromatic_mv(3)
    assert r3.optimal and r3.value >= ceil(8 / max_mv(3).value)
    assert all(is_mv_set(c) for c in r3.classes())


def test_chromatic_total_examples():
    assert chromatic_total_mv(1).value == 1
    assert chromatic_total_mv(2).value == 2
    r3 = chromatic_total_mv(3)
    assert 3 <= r3.value <= 6
    assert sum(len(c) for c in r3.classes()) == 8
