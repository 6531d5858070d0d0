from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from visicube import oracles
from visicube.daisy import (DaisyPattern, LayerFamily, TuranRecord, contains_daisy, expand,
                            greedy_daisy_free, monotonicity_check, monotonicity_violation,
                            turan_exact)
from visicube.cube import layer
from visicube.errors import PreconditionError

from helpers import S


def test_expand_examples():
    assert sorted(expand(DaisyPattern(3, 2, 2, 1, S(1), S(1, 2, 3)))) == [S(1, 2), S(1, 3)]
    assert list(expand(DaisyPattern(3, 3, 3, 3, 0, S(1, 2, 3)))) == [S(1, 2, 3)]
    big = expand(DaisyPattern(7, 3, 6, 3, 0, S(1, 2, 3, 4, 5, 6)))
    assert len(big) == 20 and all(not x & S(7) for x in big)


def test_pattern_validation():
    with pytest.raises(PreconditionError):
        DaisyPattern(3, 2, 2, 1, S(2), S(1, 3, 4))


def test_contains_daisy_examples():
    assert contains_daisy(LayerFamily(6, 3), 6, 3) is None
    w = contains_daisy(LayerFamily.full(6, 3), 6, 3)
    assert (w.stem, w.crown) == (0, S(1, 2, 3, 4, 5, 6))
    f = LayerFamily(3, 2, [S(1, 2), S(1, 3)])
    w = contains_daisy(f, 2, 1)
    assert (w.stem, w.crown) == (S(1), S(1, 2, 3))
    assert set(expand(w).members) <= f.members


def test_turan_small_examples():
    assert turan_exact(3, 2, 2, 1).value == 1
    rec = turan_exact(4, 3, 3, 1)
    assert rec.value == comb(4, 3)
    assert turan_exact(7, 3, 6, 3).value == 33


def test_turan_matches_subfamily_oracle():
    for n, r, s, t in [(3, 2, 2, 1), (4, 2, 2, 1), (5, 2, 2, 1), (4, 2, 3, 2), (4, 3, 1, 1)]:
        rec = turan_exact(n, r, s, t)
        assert rec.optimal
        assert rec.value == oracles.turan_by_subfamilies(n, r, s, t)
        assert contains_daisy(rec.extremal_family, s, t) is None if r + s - t <= n else True


def test_turan_budget_returns_incumbent():
    rec = turan_exact(8, 4, 2, 1, budget_ms=1)
    assert contains_daisy(rec.extremal_family, 2, 1) is None
    assert rec.value == len(rec.extremal_family)


def test_greedy_examples():
    assert list(greedy_daisy_free(3, 2, 2, 1)) == [S(1, 2)]
    g = greedy_daisy_free(7, 3, 6, 3)
    assert len(g) >= 28 and contains_daisy(g, 6, 3) is None
    for x in set(layer(7, 3)) - g.members:
        assert contains_daisy(LayerFamily(7, 3, g.members | {x}), 6, 3) is not None
    assert len(greedy_daisy_free(4, 3, 3, 1)) == comb(4, 3)


def test_seeded_greedy_is_reproducible():
    assert greedy_daisy_free(7, 3, 6, 3, seed=5) == greedy_daisy_free(7, 3, 6, 3, seed=5)


def test_monotonicity_examples():
    table = [turan_exact(n, 2, 2, 1) for n in (3, 4, 5)]
    assert monotonicity_check(table)
    assert monotonicity_check(table[:1])
    bad = list(table)
    bad[1] = TuranRecord(4, 2, 2, 1, table[1].value + 1, table[1].extremal_family)
    assert not monotonicity_check(bad)
    assert monotonicity_violation(bad) is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.data())
def test_expansion_size_is_binomial(n, data):
    s = data.draw(st.integers(1, n))
    t = data.draw(st.integers(1, s))
    r = data.draw(st.integers(t, n - s + t))
    stem = sum(1 << i for i in range(r - t))
    crown = sum(1 << i for i in range(r + s - t))
    fam = expand(DaisyPattern(n, r, s, t, stem, crown))
    assert len(fam) == comb(s, t)
    assert all(stem & x == stem and x | crown == crown for x in fam)
