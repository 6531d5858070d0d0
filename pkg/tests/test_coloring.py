import pytest

from visicube import oracles
from visicube.coloring import (Coloring, blocking_triple_witness, coloring_violation,
                               layered_coloring, lll_feasibility, monochromatic_daisy,
                               moser_tardos_repair, structure_ok, verify_coloring)
from visicube.cube import VertexSet
from visicube.errors import BudgetExhaustedError, PreconditionError

from helpers import S


def test_layered_coloring_examples():
    c = layered_coloring(8, 3, seed=1)
    assert structure_ok(c)
    assert sum(1 for v in c.classes().values() if len(v)) <= 6
    c6 = layered_coloring(6, 3)
    assert all(j == 1 for v, (lam, j) in enumerate(c6.colors) if v.bit_count() != 3)
    with pytest.raises(PreconditionError):
        layered_coloring(5, 3)


def test_repair_examples():
    c = moser_tardos_repair(layered_coloring(8, 3, seed=4), seed=4)
    assert monochromatic_daisy(c) is None and verify_coloring(c)
    again = moser_tardos_repair(c)
    assert again.colors == c.colors and again.rounds == 0
    mono = Coloring(8, tuple((v.bit_count() % 3, 1) for v in range(256)), 3)
    with pytest.raises(BudgetExhaustedError) as exc:
        moser_tardos_repair(mono, max_rounds=0)
    assert exc.value.partial is not None


def test_repair_is_deterministic():
    a = moser_tardos_repair(layered_coloring(8, 3, 9), seed=9)
    b = moser_tardos_repair(layered_coloring(8, 3, 9), seed=9)
    assert a == b


def test_verify_examples():
    l12 = VertexSet.from_layers(3, [1, 2]).members
    c = Coloring(3, tuple("x" if v in l12 else "y" for v in range(8)))
    cid, pair = coloring_violation(c)
    assert cid == "x" and pair == (S(1), S(2, 3))
    assert verify_coloring(Coloring(1, ("a", "a")))


def test_lll_examples():
    rep = lll_feasibility(8, 3, 4)
    assert rep.p == 2 ** -19 and rep.g_bound == 320
    assert abs(float(rep.criterion) - 0.00166) < 1e-5 and rep.feasible
    assert lll_feasibility(40, 5, 20).criterion < 1e-50
    with pytest.raises(PreconditionError):
        lll_feasibility(8, 3, 2)


def test_blocking_triple_examples():
    colors = tuple("a" if v.bit_count() <= 2 else "b" for v in range(16))
    a, b, j = blocking_triple_witness(Coloring(4, colors), 0, 15)
    assert (a, b, j) == (0, S(1, 2), 1)
    assert not oracles.visible_by_paths(a, b, {v for v in range(16) if colors[v] == "a"})
    c = moser_tardos_repair(layered_coloring(8, 3, 2), seed=2)
    assert blocking_triple_witness(c, 0, 255) is None
    mono = Coloring(3, ("z",) * 8)
    assert blocking_triple_witness(mono, S(3), S(1, 2)) is not None
