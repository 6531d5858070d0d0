"""Layer-pair random colorings of Q_n repaired until every class is mutual-visibility.

Layer r gets colors (r mod d, 1) and (r mod d, 2) by fair coin when it is a
middle layer (d <= r <= n-d) and the single color (r mod d, 1) otherwise.  A
class is then a layered construction whose middle families are its slices of
the middle layers, so it is a mutual-visibility set as soon as no slice holds a
whole copy of D_r(2d, d).  The repair loop resamples monochromatic daisies
(Moser-Tardos) until none remain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Hashable

from .construction import E_UPPER, is_middle
from .cube import VertexSet, check_dim, is_visible, low_bits, mv_violation, submasks_of_size
from .daisy import _petals, iter_daisies
from .errors import BudgetExhaustedError, InfeasibleScaleError, InvariantBreachError, PreconditionError

VERIFY_CAP = 9


@dataclass(frozen=True)
class Coloring:
    """Total map from the vertices of Q_n (indexed by word) to color ids."""

    n: int
    colors: tuple
    d: int | None = None
    rounds: int = 0

    def __post_init__(self):
        if len(self.colors) != 1 << self.n:
            raise PreconditionError(f"expected {1 << self.n} colors, got {len(self.colors)}")

    def color_ids(self) -> list[Hashable]:
        if self.d is not None:
            return [(lam, j) for lam in range(self.d) for j in (1, 2)]
        return sorted(set(self.colors), key=repr)

    def classes(self) -> dict[Hashable, VertexSet]:
        """Every color class, empty ones included for layered colorings."""
        buckets: dict[Hashable, list[int]] = {c: [] for c in self.color_ids()}
        for v, c in enumerate(self.colors):
            buckets.setdefault(c, []).append(v)
        return {c: VertexSet(self.n, vs) for c, vs in buckets.items()}

    def with_colors(self, colors, rounds: int) -> "Coloring":
        return Coloring(self.n, tuple(colors), self.d, rounds)


def _check_layered(n: int, d: int) -> None:
    check_dim(n)
    if d < 3 or n < 2 * d:
        raise PreconditionError(f"need n >= 2d >= 6, got n={n}, d={d}")


def layered_coloring(n: int, d: int = 3, seed: int = 0) -> Coloring:
    _check_layered(n, d)
    if n > 24:
        raise InfeasibleScaleError(f"explicit coloring of Q_{n} is too large")
    rng = random.Random(seed)
    colors = []
    for v in range(1 << n):
        r = v.bit_count()
        j = 1 + rng.getrandbits(1) if is_middle(n, d, r) else 1
        colors.append((r % d, j))
    return Coloring(n, tuple(colors), d)


def structure_ok(c: Coloring) -> bool:
    """Layer-residue colors, with middle layers alone allowed the second shade."""
    d = c.d
    if d is None:
        return False
    for v, (lam, j) in enumerate(c.colors):
        r = v.bit_count()
        if lam != r % d or j not in (1, 2):
            return False
        if j == 2 and not is_middle(c.n, d, r):
            return False
    return True


def monochromatic_daisy(c: Coloring) -> tuple[int, int, int] | None:
    """(r, stem, crown) of the colex-least monochromatic D_r(2d,d), scanning r upward."""
    n, d = c.n, c.d
    colors = c.colors
    for r in range(d, n - d + 1):
        for a, b in iter_daisies(n, r, 2 * d, d):
            petals = _petals(a, b, d)
            first = colors[next(petals)]
            if all(colors[x] == first for x in petals):
                return r, a, b
    return None


def moser_tardos_repair(c: Coloring, max_rounds: int = 10 ** 5, seed: int = 0) -> Coloring:
    """Resample the colex-least monochromatic daisy until none is left.

    Raises BudgetExhaustedError (carrying the current coloring) if violations
    remain after ``max_rounds`` resamplings.
    """
    if c.d is None:
        raise PreconditionError("repair needs a layered coloring")
    rng = random.Random(seed)
    colors = list(c.colors)
    rounds = 0
    while True:
        bad = monochromatic_daisy(c.with_colors(colors, rounds))
        if bad is None:
            return c.with_colors(colors, rounds)
        if rounds >= max_rounds:
            raise BudgetExhaustedError(
                f"monochromatic daisy remains after {rounds} rounds",
                c.with_colors(colors, rounds))
        r, a, b = bad
        lam = r % c.d
        for x in _petals(a, b, c.d):
            colors[x] = (lam, 1 + rng.getrandbits(1))
        rounds += 1


def coloring_violation(c: Coloring, max_n: int = VERIFY_CAP):
    """(class id, (u, v)) for the first class that is not mutual-visibility, or None."""
    if c.n > max_n:
        raise InfeasibleScaleError(f"exhaustive class verification capped at n={max_n}")
    for cid, cls in c.classes().items():
        bad = mv_violation(cls)
        if bad is not None:
            return cid, bad
    return None


def verify_coloring(c: Coloring, max_n: int = VERIFY_CAP) -> bool:
    return coloring_violation(c, max_n) is None


@dataclass(frozen=True)
class LLLReport:
    n: int
    d: int
    r: int
    p: Fraction
    g_bound: int
    criterion: Fraction
    coarse_bound: Fraction

    @property
    def feasible(self) -> bool:
        return self.criterion < 1

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "r": self.r,
                "p": str(self.p), "g_bound": self.g_bound,
                "criterion": float(self.criterion),
                "coarse_bound": float(self.coarse_bound),
                "feasible": self.feasible}


def lll_feasibility(n: int, d: int, r: int) -> LLLReport:
    """Local lemma arithmetic for monochromatic D_r(2d,d) copies in layer r.

    p = 2^(1 - C(2d,d)); each daisy meets at most C(2d,d) C(r,d) C(n-r,d) others;
    criterion e*p*(g+1) with e replaced by a rational upper bound.
    """
    if not d <= r <= n - d:
        raise PreconditionError(f"need d <= r <= n-d, got d={d}, r={r}, n={n}")
    size = comb(2 * d, d)
    p = Fraction(2, 2 ** size)
    g = size * comb(r, d) * comb(n - r, d)
    return LLLReport(n, d, r, p, g, E_UPPER * p * (g + 1), p * n ** (2 * d))


def blocking_triple_witness(c: Coloring, fixed: int, free: int):
    """Certificate that some class is not mutual-visibility inside a subcube.

    The subcube is {S : fixed ⊆ S ⊆ fixed ∪ free}.  If three of its layers
    i < j < k are each a single color, and the same one, then for a in layer i
    and b ⊇ a in layer k every shortest a,b-path crosses layer j of the
    subcube.  Returns (a, b, j) with the lexicographically least (i, j, k), or
    None.
    """
    if fixed & free:
        raise PreconditionError("fixed and free coordinates must be disjoint")
    if (fixed | free) >> c.n:
        raise PreconditionError("subcube exceeds the cube dimension")
    dim = free.bit_count()
    mono: dict[Hashable, list[int]] = {}
    for i in range(dim + 1):
        seen = {c.colors[fixed | s] for s in submasks_of_size(free, i)}
        if len(seen) == 1:
            mono.setdefault(seen.pop(), []).append(i)
    triples = [(ls[:3], cid) for cid, ls in mono.items() if len(ls) >= 3]
    if not triples:
        return None
    (i, j, k), cid = min(triples, key=lambda x: x[0])
    bits = list(low_bits(free))
    a = fixed
    for x in bits[:i]:
        a |= x
    b = a
    for x in bits[i:k]:
        b |= x
    cls = {v for v, col in enumerate(c.colors) if col == cid}
    if is_visible(a, b, cls):
        raise InvariantBreachError("blocking triple did not block")
    return a, b, j
