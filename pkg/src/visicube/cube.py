"""Vertices of Q_n as bit words, layers, intervals and the exact visibility oracle.

A vertex is a plain ``int``: coordinate ``j`` (1-indexed) is present iff bit
``j - 1`` is set.  Colex order on subsets coincides with integer order on these
words, so ``sorted()`` is the canonical order everywhere in the package.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, InfeasibleScaleError, PreconditionError

MAX_DIM = 62
TOTAL_DIRECT_CAP = 8


def check_dim(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_DIM:
        raise DimensionError(f"dimension must be in [1, {MAX_DIM}], got {n!r}")
    return n


def weight(v: int) -> int:
    return v.bit_count()


def dist(u: int, v: int, n: int | None = None) -> int:
    """Hamming distance; validates both words against ``n`` when given."""
    if n is not None:
        check_vertex(u, n)
        check_vertex(v, n)
    return (u ^ v).bit_count()


def check_vertex(v: int, n: int) -> int:
    if v < 0 or v >> n:
        raise DimensionError(f"vertex {v:#x} has bits above dimension {n}")
    return v


def elements(v: int) -> list[int]:
    """1-indexed coordinates present in ``v``."""
    out = []
    j = 1
    while v:
        if v & 1:
            out.append(j)
        v >>= 1
        j += 1
    return out


def from_elements(items: Iterable[int]) -> int:
    v = 0
    for j in items:
        if j < 1:
            raise PreconditionError(f"coordinates are 1-indexed, got {j}")
        v |= 1 << (j - 1)
    return v


def low_bits(v: int) -> Iterator[int]:
    """Yield the single-bit masks of ``v`` in ascending coordinate order."""
    while v:
        b = v & -v
        yield b
        v ^= b


def to_bits(v: int, n: int) -> str:
    """Text form: leftmost character is coordinate 1."""
    check_vertex(v, n)
    return "".join("1" if v >> j & 1 else "0" for j in range(n))


def from_bits(s: str) -> int:
    v = 0
    for j, ch in enumerate(s):
        if ch == "1":
            v |= 1 << j
        elif ch != "0":
            raise ValueError(f"non-binary character {ch!r} at column {j + 1}")
    return v


def _spread(i: int, positions: Sequence[int]) -> int:
    v = 0
    j = 0
    while i:
        if i & 1:
            v |= 1 << positions[j]
        i >>= 1
        j += 1
    return v


def submasks_of_size(mask: int, k: int) -> Iterator[int]:
    """All ``k``-subsets of ``mask`` in colex (increasing integer) order."""
    positions = [b.bit_length() - 1 for b in low_bits(mask)]
    m = len(positions)
    if k < 0 or k > m:
        return
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << m
    while x < limit:
        yield _spread(x, positions)
        # Gosper's hack: next word with the same popcount
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def layer(n: int, r: int) -> list[int]:
    """L_r: all weight-``r`` vertices of Q_n in colex order."""
    check_dim(n)
    if not 0 <= r <= n:
        raise PreconditionError(f"layer index {r} outside [0, {n}]")
    return list(submasks_of_size((1 << n) - 1, r))


def interval_members(a: int, b: int, r: int) -> list[int]:
    """All C with a∩b ⊆ C ⊆ a∪b and |C| = r, colex order."""
    core = a & b
    return [core | s for s in submasks_of_size(a ^ b, r - core.bit_count())]


class VertexSet:
    """Immutable set of vertices of Q_n."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[int] = ()):
        check_dim(n)
        ms = frozenset(members)
        for v in ms:
            check_vertex(v, n)
        self.n = n
        self.members = ms

    def __contains__(self, v) -> bool:
        return v in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        shown = ", ".join(to_bits(v, self.n) for v in list(self)[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"VertexSet(n={self.n}, {{{shown}{more}}}, size={len(self)})"

    def _same_dim(self, other: "VertexSet") -> None:
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def union(self, *others: "VertexSet") -> "VertexSet":
        ms = set(self.members)
        for o in others:
            self._same_dim(o)
            ms |= o.members
        return VertexSet(self.n, ms)

    def difference(self, other: "VertexSet | Iterable[int]") -> "VertexSet":
        if isinstance(other, VertexSet):
            self._same_dim(other)
            other = other.members
        return VertexSet(self.n, self.members.difference(other))

    def restrict_to_layer(self, r: int) -> "VertexSet":
        return VertexSet(self.n, (v for v in self.members if v.bit_count() == r))

    def weights(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for v in self.members:
            out[v.bit_count()] += 1
        return dict(sorted(out.items()))

    def to_bits_list(self) -> list[str]:
        return [to_bits(v, self.n) for v in self]

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, range(1 << check_dim(n)))

    @classmethod
    def from_layers(cls, n: int, rs: Iterable[int]) -> "VertexSet":
        ms: list[int] = []
        for r in rs:
            ms.extend(layer(n, r))
        return cls(n, ms)


def _members(m) -> frozenset | set:
    return m.members if isinstance(m, VertexSet) else m


def blocked_states(u: int, v: int, m) -> list[int]:
    """States S ⊆ u Δ v whose vertex u Δ S lies in m ∖ {u, v}."""
    members = _members(m)
    diff = u ^ v
    if (1 << diff.bit_count()) <= len(members):
        out = []
        s = (diff - 1) & diff
        while s:
            if u ^ s in members:
                out.append(s)
            s = (s - 1) & diff
        return out
    lo, hi = u & v, u | v
    return [x ^ u for x in members
            if x & lo == lo and x | hi == hi and x != u and x != v]


def is_visible(u: int, v: int, m) -> bool:
    """True iff some shortest u,v-path has no internal vertex in ``m``.

    Reachability over the subset lattice of u Δ v: a state is dead when it is
    blocked or all of its lower covers are dead; ``v`` is visible iff the full
    state stays alive.  Only the upward shadow of the blockers is touched.
    """
    if isinstance(m, VertexSet):
        check_vertex(u, m.n)
        check_vertex(v, m.n)
    diff = u ^ v
    if diff & (diff - 1) == 0:
        return True
    blocked = blocked_states(u, v, m)
    if not blocked:
        return True
    dead = set(blocked)
    levels: dict[int, list[int]] = defaultdict(list)
    for s in blocked:
        levels[s.bit_count()].append(s)
    k = diff.bit_count()
    seen: set[int] = set()
    for lvl in range(1, k):
        up = levels[lvl + 1]
        for s in levels[lvl]:
            for b in low_bits(diff & ~s):
                t = s | b
                if t in dead or t in seen:
                    continue
                seen.add(t)
                if all((t ^ c) in dead for c in low_bits(t)):
                    dead.add(t)
                    up.append(t)
    return diff not in dead


def visible_path(u: int, v: int, m) -> list[int] | None:
    """A shortest u,v-path with no internal vertex in ``m``, or None.

    Breadth-first over the subset lattice of u Δ v; among equal candidates the
    lowest coordinate is flipped first.
    """
    members = _members(m)
    diff = u ^ v
    if u == v:
        return [u]
    parent = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for b in low_bits(diff & ~s):
                t = s | b
                if t in parent:
                    continue
                if t != diff and (u ^ t) in members:
                    continue
                parent[t] = s
                nxt.append(t)
        frontier = nxt
    if diff not in parent:
        return None
    states = []
    s = diff
    while s is not None:
        states.append(s)
        s = parent[s]
    return [u ^ s for s in reversed(states)]


def _first_violation(args):
    members, us = args
    ordered = sorted(members)
    for u in us:
        for v in ordered:
            if v > u and not is_visible(u, v, members):
                return (u, v)
    return None


def mv_violation(m: VertexSet, workers: int = 1) -> tuple[int, int] | None:
    """Colex-least pair of ``m`` that is not m-visible, or None.

    Pairs are ordered by (u, v) with u < v, both in colex order.
    """
    ordered = list(m)
    members = m.members
    if workers <= 1 or len(ordered) < 64:
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                if not is_visible(u, v, members):
                    return (u, v)
        return None
    chunks = [(members, ordered[i::workers]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        found = [w for w in pool.map(_first_violation, chunks) if w is not None]
    return min(found) if found else None


def is_mv_set(m: VertexSet, workers: int = 1) -> bool:
    return mv_violation(m, workers) is None


def total_mv_violation(m: VertexSet, max_n: int = TOTAL_DIRECT_CAP) -> tuple[int, int] | None:
    """First pair of Q_n (colex) that is not m-visible, checked directly."""
    if m.n > max_n:
        raise InfeasibleScaleError(
            f"direct total visibility check capped at n={max_n}, got n={m.n}")
    members = m.members
    size = 1 << m.n
    for u in range(size):
        for v in range(u + 1, size):
            if not is_visible(u, v, members):
                return (u, v)
    return None


def is_total_mv_direct(m: VertexSet, max_n: int = TOTAL_DIRECT_CAP) -> bool:
    return total_mv_violation(m, max_n) is None


def is_path(path: Sequence[int]) -> bool:
    if len(set(path)) != len(path):
        return False
    return all((x ^ y).bit_count() == 1 for x, y in zip(path, path[1:]))


def is_shortest_path(path: Sequence[int], a: int, b: int) -> bool:
    return (bool(path) and path[0] == a and path[-1] == b and is_path(path)
            and len(path) - 1 == (a ^ b).bit_count())


def layer_size(n: int, r: int) -> int:
    return comb(n, r)
