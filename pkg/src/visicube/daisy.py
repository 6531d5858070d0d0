"""Daisies D_r(s,t) inside a layer, daisy-free families and small Turán numbers."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

from .cube import (VertexSet, check_dim, interval_members, layer, low_bits,
                   submasks_of_size, to_bits)
from .errors import PreconditionError


class LayerFamily(VertexSet):
    """A set of weight-``r`` vertices of Q_n."""

    __slots__ = ("r",)

    def __init__(self, n: int, r: int, members: Iterable[int] = ()):
        super().__init__(n, members)
        if not 0 <= r <= n:
            raise PreconditionError(f"layer index {r} outside [0, {n}]")
        for v in self.members:
            if v.bit_count() != r:
                raise PreconditionError(
                    f"{to_bits(v, n)} has weight {v.bit_count()}, expected {r}")
        self.r = r

    def __repr__(self) -> str:
        return f"LayerFamily(n={self.n}, r={self.r}, size={len(self)})"

    @classmethod
    def full(cls, n: int, r: int) -> "LayerFamily":
        return cls(n, r, layer(n, r))


def _check_params(n: int, r: int, s: int, t: int, fits: bool = True) -> None:
    check_dim(n)
    if min(r, s, t) < 1 or min(r, s) < t:
        raise PreconditionError(f"need positive r,s,t with min(r,s) >= t; got {(r, s, t)}")
    if r > n:
        raise PreconditionError(f"r={r} exceeds n={n}")
    if fits and r + s - t > n:
        raise PreconditionError(f"crown size r+s-t={r + s - t} exceeds n={n}")


@dataclass(frozen=True)
class DaisyPattern:
    n: int
    r: int
    s: int
    t: int
    stem: int
    crown: int

    def __post_init__(self):
        _check_params(self.n, self.r, self.s, self.t)
        if self.stem & ~self.crown:
            raise PreconditionError("stem must be contained in crown")
        if self.stem.bit_count() != self.r - self.t:
            raise PreconditionError(f"stem weight must be r-t={self.r - self.t}")
        if self.crown.bit_count() != self.r + self.s - self.t:
            raise PreconditionError(f"crown weight must be r+s-t={self.r + self.s - self.t}")
        if self.crown >> self.n:
            raise PreconditionError("crown has bits above dimension")

    def members(self) -> list[int]:
        return interval_members(self.stem, self.crown, self.r)

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "s": self.s, "t": self.t,
                "stem": to_bits(self.stem, self.n),
                "crown": to_bits(self.crown, self.n)}


def expand(p: DaisyPattern) -> LayerFamily:
    return LayerFamily(p.n, p.r, p.members())


def iter_daisies(n: int, r: int, s: int, t: int) -> Iterator[tuple[int, int]]:
    """(stem, crown) pairs of every D_r(s,t) copy, stems then crowns in colex."""
    full = (1 << n) - 1
    for a in submasks_of_size(full, r - t):
        for extra in submasks_of_size(full & ~a, s):
            yield a, a | extra


def daisies_through(x: int, n: int, r: int, s: int, t: int) -> Iterator[tuple[int, int]]:
    """Copies of D_r(s,t) whose expansion contains the weight-r vertex ``x``."""
    full = (1 << n) - 1
    for a in submasks_of_size(x, r - t):
        for extra in submasks_of_size(full & ~x, s - t):
            yield a, x | extra


def _petals(a: int, b: int, t: int) -> Iterator[int]:
    for c in submasks_of_size(a ^ b, t):
        yield a | c


def contains_daisy(f: LayerFamily, s: int, t: int) -> DaisyPattern | None:
    """Colex-least (stem, crown) whose whole expansion lies in ``f``."""
    n, r = f.n, f.r
    _check_params(n, r, s, t)
    members = f.members
    if len(members) < comb(s, t):
        return None
    for a, b in iter_daisies(n, r, s, t):
        if all(c in members for c in _petals(a, b, t)):
            return DaisyPattern(n, r, s, t, a, b)
    return None


def completes_daisy(x: int, members, n: int, r: int, s: int, t: int) -> tuple[int, int] | None:
    """A daisy that would be fully present once ``x`` joins ``members``."""
    for a, b in daisies_through(x, n, r, s, t):
        if all(c == x or c in members for c in _petals(a, b, t)):
            return a, b
    return None


def greedy_daisy_free(n: int, r: int, s: int, t: int, seed: int | None = None) -> LayerFamily:
    """Maximal D_r(s,t)-free family built by a single colex (or seeded) scan."""
    _check_params(n, r, s, t, fits=False)
    order = layer(n, r)
    if r + s - t > n:
        return LayerFamily(n, r, order)
    if seed is not None:
        random.Random(seed).shuffle(order)
    chosen: set[int] = set()
    for x in order:
        if completes_daisy(x, chosen, n, r, s, t) is None:
            chosen.add(x)
    return LayerFamily(n, r, chosen)


@dataclass
class TuranRecord:
    n: int
    r: int
    s: int
    t: int
    value: int
    extremal_family: LayerFamily
    optimal: bool = True
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def density(self) -> Fraction:
        return Fraction(self.value, comb(self.n, self.r))

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "s": self.s, "t": self.t,
                "value": self.value, "optimal": self.optimal,
                "density": str(self.density), "density_float": float(self.density),
                "layer_size": comb(self.n, self.r),
                "nodes_explored": self.nodes, "elapsed_s": round(self.elapsed, 6)}


def turan_exact(n: int, r: int, s: int, t: int, budget_ms: float | None = None) -> TuranRecord:
    """Exact ex(n, D_r(s,t)) by depth-first branch and bound.

    Candidates are the layer in colex order, include-branch first, so the
    first leaf is the greedy family.  A node is cut when
    ``chosen + undecided - packing <= best`` where ``packing`` counts pairwise
    disjoint daisies still completable from chosen and undecided sets, each of
    which forces one more exclusion.  On budget exhaustion the incumbent is
    returned with ``optimal=False``.
    """
    _check_params(n, r, s, t, fits=False)
    start = time.perf_counter()
    cands = layer(n, r)
    N = len(cands)
    if r + s - t > n:
        return TuranRecord(n, r, s, t, N, LayerFamily(n, r, cands), True, 1,
                           time.perf_counter() - start)
    index = {x: i for i, x in enumerate(cands)}
    daisies = []
    for a, b in iter_daisies(n, r, s, t):
        mask = 0
        for c in _petals(a, b, t):
            mask |= 1 << index[c]
        daisies.append(mask)
    by_vertex: list[list[int]] = [[] for _ in range(N)]
    for mask in daisies:
        for bit in low_bits(mask):
            by_vertex[bit.bit_length() - 1].append(mask)

    deadline = None if budget_ms is None else start + budget_ms / 1000.0
    best = [-1, 0]
    nodes = 0
    out_of_time = False

    def packing(excluded: int, undecided: int) -> int:
        used = 0
        count = 0
        for mask in daisies:
            if mask & excluded:
                continue
            rest = mask & undecided
            if rest and not rest & used:
                used |= rest
                count += 1
        return count

    # explicit stack keeps deep layers clear of the recursion limit
    stack = [(0, 0, 0)]  # (next index, chosen mask, excluded mask)
    while stack:
        i, chosen, excluded = stack.pop()
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.perf_counter() > deadline:
            out_of_time = True
            break
        count = chosen.bit_count()
        undecided = ((1 << N) - 1) & ~((1 << i) - 1)
        if count + (N - i) <= best[0]:
            continue
        if i == N:
            best[0], best[1] = count, chosen
            continue
        if count + (N - i) - packing(excluded, undecided) <= best[0]:
            continue
        bit = 1 << i
        with_x = chosen | bit
        # pushed first, popped last: exclude branch
        stack.append((i + 1, chosen, excluded | bit))
        if all(mask & ~with_x for mask in by_vertex[i]):
            stack.append((i + 1, with_x, excluded))

    fam = LayerFamily(n, r, (cands[b.bit_length() - 1] for b in low_bits(best[1])))
    return TuranRecord(n, r, s, t, best[0], fam, not out_of_time, nodes,
                       time.perf_counter() - start)


def _key(rec: TuranRecord) -> tuple:
    return (rec.n, rec.r)


def monotonicity_violation(records: list[TuranRecord]) -> tuple[TuranRecord, TuranRecord] | None:
    """First record pair breaking density monotonicity, or None.

    Checks ex(n)/C(n,r) >= ex(n+1)/C(n+1,r) for equal r, and
    ex(n,D_r)/C(n,r) >= ex(n+1,D_{r+1})/C(n+1,r+1) for records one step apart
    in both n and r.
    """
    if len(records) <= 1:
        return None
    st = {(rec.s, rec.t) for rec in records}
    if len(st) != 1:
        raise PreconditionError(f"records mix daisy shapes {sorted(st)}")
    by_key = {_key(rec): rec for rec in records}
    compared = 0
    for rec in sorted(records, key=_key):
        for nxt in (by_key.get((rec.n + 1, rec.r)), by_key.get((rec.n + 1, rec.r + 1))):
            if nxt is None:
                continue
            compared += 1
            if rec.density < nxt.density:
                return rec, nxt
    if not compared:
        raise PreconditionError("no two records are one step apart in n")
    return None


def monotonicity_check(records: list[TuranRecord]) -> bool:
    return monotonicity_violation(records) is None
