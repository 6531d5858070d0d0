import random
from fractions import Fraction
from itertools import combinations

import pytest

from visicube import oracles
from visicube.construction import (best_construction, best_mlambda, build_mlambda, claim1_path,
                                   construct, empty_supplier, euler_product_lower, find_hole,
                                   from_vertex_set, full_supplier, theorem1_constant_check,
                                   theorem2_bound, through_point_path, witness_path)
from visicube.cube import VertexSet, is_mv_set, is_shortest_path
from visicube.daisy import LayerFamily
from visicube.errors import InvalidFamilyError, PreconditionError

from helpers import S


def test_build_examples():
    m = build_mlambda(6, 3, 0, empty_supplier)
    assert m == VertexSet.from_layers(6, [0, 6])
    assert is_mv_set(build_mlambda(7, 3, 1))
    with pytest.raises(PreconditionError):
        build_mlambda(2, 3, 0)


def test_full_middle_layers_are_rejected():
    with pytest.raises(InvalidFamilyError) as exc:
        construct(6, 3, 0, full_supplier)
    assert exc.value.witness is not None


def test_best_is_largest_residue():
    k = best_construction(7, 3)
    assert len(k) == max(len(construct(7, 3, lam)) for lam in range(3))
    assert len(best_mlambda(7, 3)) == len(k)


def test_n_equals_d_residue_zero():
    assert construct(3, 3, 0).members == VertexSet.from_layers(3, [0, 3])


def test_find_hole_examples():
    assert find_hole(0, S(1, 2, 3, 4, 5, 6), LayerFamily(6, 3), 3) == S(1, 2, 3)
    full = LayerFamily.full(6, 3)
    f = LayerFamily(6, 3, full.members - {S(4, 5, 6)})
    assert find_hole(0, S(1, 2, 3, 4, 5, 6), f, 3) == S(4, 5, 6)
    with pytest.raises(PreconditionError):
        find_hole(S(1, 2, 3), S(1, 2, 3, 4, 5, 6), LayerFamily(6, 3), 3)


def test_claim1_examples():
    assert claim1_path(S(1), S(2), 1, 4) == [S(1), S(1, 2), S(2)]
    assert claim1_path(S(1), S(1, 2, 3, 4), 1, 4) == [S(1), S(1, 2), S(1, 2, 3), S(1, 2, 3, 4)]
    assert claim1_path(S(1), S(2, 3, 4, 5), 1, 4) == [
        S(1), S(1, 2), S(1, 2, 3), S(2, 3), S(2, 3, 4), S(2, 3, 4, 5)]


def test_claim1_paths_avoid_both_layers():
    n = 6
    for r in range(0, n - 2):
        m = VertexSet.from_layers(n, [r, r + 3])
        for a, b in combinations(sorted(m.members), 2):
            lo, hi = sorted((a, b), key=int.bit_count)
            p = claim1_path(lo, hi, r, r + 3)
            assert is_shortest_path(p, lo, hi)
            assert not any(x in m for x in p[1:-1])


def test_through_point_examples():
    assert through_point_path(0, S(1, 2), S(1)) == [0, S(1), S(1, 2)]
    assert through_point_path(S(1), S(2), S(1, 2)) == [S(1), S(1, 2), S(2)]
    assert through_point_path(0, S(1, 2), 0) == [0, S(1), S(1, 2)]


def test_witness_path_examples():
    k = construct(9, 3, 0)
    a, b = 0, (1 << 9) - 1
    p = witness_path(a, b, k)
    assert is_shortest_path(p, a, b) and not any(x in k.members for x in p[1:-1])
    assert witness_path(a, a, k) == [a]
    f = sorted(k.families[3].members)
    assert witness_path(f[0], f[1], k) == claim1_path(f[0], f[1], 3, 6)


def test_witness_paths_for_all_pairs_small():
    for n in (6, 7, 8):
        for lam in range(3):
            k = construct(n, 3, lam)
            for a, b in combinations(sorted(k.members.members), 2):
                p = witness_path(a, b, k)
                assert is_shortest_path(p, a, b)
                assert not any(x in k.members for x in p[1:-1])


def test_witness_paths_agree_with_enumeration():
    k = construct(6, 3, 1)
    rng = random.Random(1)
    pairs = rng.sample(list(combinations(sorted(k.members.members), 2)), 40)
    for a, b in pairs:
        assert oracles.visible_by_paths(a, b, k.members.members)


def test_from_vertex_set_round_trip():
    k = construct(8, 3, 2)
    back = from_vertex_set(k.members, 3)
    assert back.lam == 2 and back.members == k.members
    with pytest.raises(PreconditionError):
        from_vertex_set(VertexSet(8, [0, 1]), 3)


def test_theorem2_bound_examples():
    assert theorem2_bound(7, 3, {3: 33, 4: 33}).total == Fraction(124, 3)
    assert theorem2_bound(3, 3, {}).total == Fraction(14, 3)
    with pytest.raises(PreconditionError):
        theorem2_bound(7, 3, {3: 33})


def test_bound_equals_average_construction_size():
    for n in (6, 7, 8, 9):
        ks = [construct(n, 3, lam) for lam in range(3)]
        ex = {r: len(f) for k in ks for r, f in k.families.items() if 3 <= r <= n - 3}
        assert theorem2_bound(n, 3, ex).total == Fraction(sum(map(len, ks)), 3)


def test_euler_product_examples():
    assert euler_product_lower(3, 20) > Fraction(56, 100)
    assert Fraction(2887, 10000) < euler_product_lower(2, 30) < Fraction(2889, 10000)
    assert euler_product_lower(3, 1) == Fraction(5, 9)


def test_euler_product_lower_bounds_are_monotone_in_k():
    vals = [euler_product_lower(3, k) for k in range(1, 12)]
    assert vals == sorted(vals)


def test_theorem1_constant():
    assert theorem1_constant_check()
    assert not theorem1_constant_check(Fraction(15, 75))
