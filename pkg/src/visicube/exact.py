"""Exact small-n values of μ, μ_t, χ_μ and χ_μ^total for hypercubes.

Every solver returns its certificate; callers are expected to re-verify it
with the plain predicates (``cube.is_mv_set``, ``total.avoids_distance2``).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cube import VertexSet, check_dim, is_visible, low_bits
from .errors import InfeasibleScaleError

MAX_TOTAL_N = 7
MAX_CHROMATIC_TOTAL_N = 5


@dataclass
class SolveResult:
    param: str
    n: int
    value: int
    certificate: VertexSet | list[VertexSet]
    optimal: bool
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def classes(self) -> list[VertexSet]:
        c = self.certificate
        return c if isinstance(c, list) else [c]

    def to_dict(self) -> dict:
        return {"param": self.param, "n": self.n, "value": self.value,
                "optimal": self.optimal, "nodes_explored": self.nodes,
                "elapsed_s": round(self.elapsed, 6),
                "certificate": [c.to_bits_list() for c in self.classes()]}


class _Clock:
    def __init__(self, budget_ms: float | None):
        self.start = time.perf_counter()
        self.deadline = None if budget_ms is None else self.start + budget_ms / 1000.0
        self.nodes = 0
        self.expired = False

    def tick(self) -> bool:
        """Count a node; True once the budget is spent."""
        self.nodes += 1
        if self.deadline is not None and self.nodes % 128 == 0 and time.perf_counter() > self.deadline:
            self.expired = True
        return self.expired

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _in_interval(x: int, u: int, w: int) -> bool:
    return x & u & w == u & w and x | u | w == u | w


def can_extend(current: list[int], members: set[int], v: int) -> bool:
    """Whether current ∪ {v} stays mutual-visibility, given current already is.

    A vertex outside the interval of (u, w) lies on no shortest u,w-path, so
    only pairs whose interval holds v, plus the pairs through v, can break.
    """
    members.add(v)
    try:
        for u in current:
            if not is_visible(u, v, members):
                return False
        for i, u in enumerate(current):
            for w in current[i + 1:]:
                if (u ^ w).bit_count() > 1 and _in_interval(v, u, w) and not is_visible(u, w, members):
                    return False
        return True
    finally:
        members.discard(v)


def max_mv(n: int, budget_ms: float | None = None) -> SolveResult:
    """Largest mutual-visibility set of Q_n by branch and bound.

    Vertex 0 is fixed in the set (translations are automorphisms).  Each node
    keeps the candidates that are individually compatible with the current set;
    incompatibility is permanent below the node because the property is
    hereditary.  Cut when ``|current| + |candidates| <= best``.
    """
    check_dim(n)
    clock = _Clock(budget_ms)
    size = 1 << n
    best: list = [[0]]

    def search(current: list[int], members: set[int], cands: list[int]) -> None:
        if clock.tick():
            return
        if len(current) > len(best[0]):
            best[0] = list(current)
        for idx, v in enumerate(cands):
            if len(current) + len(cands) - idx <= len(best[0]) or clock.expired:
                return
            current.append(v)
            members.add(v)
            rest = [w for w in cands[idx + 1:] if can_extend(current, members, w)]
            search(current, members, rest)
            members.discard(v)
            current.pop()

    start = [0]
    search(start, {0}, [v for v in range(1, size) if can_extend(start, {0}, v)])
    return SolveResult("mu", n, len(best[0]), VertexSet(n, best[0]), not clock.expired,
                       clock.nodes, clock.elapsed)


def distance2_graph(n: int, parity: int) -> tuple[list[int], list[list[int]]]:
    """Vertices of one weight parity and their distance-2 adjacency as index bitsets."""
    verts = [x for x in range(1 << n) if x.bit_count() % 2 == parity]
    index = {x: i for i, x in enumerate(verts)}
    flips = [(1 << i) | (1 << j) for j in range(n) for i in range(j)]
    adj = []
    for x in verts:
        mask = 0
        for f in flips:
            mask |= 1 << index[x ^ f]
        adj.append(mask)
    return verts, adj


def _clique_cover_size(p: int, adj: list[int]) -> int:
    count = 0
    while p:
        b = p & -p
        cand = p & adj[b.bit_length() - 1]
        p ^= b
        while cand:
            c = cand & -cand
            cand &= adj[c.bit_length() - 1]
            p &= ~c
        count += 1
    return count


def max_independent_set(adj: list[int], clock: _Clock) -> int:
    """Maximum independent set (as an index bitset), branching on max degree."""
    best = [0]

    def search(p: int, chosen: int) -> None:
        if clock.tick():
            return
        if not p:
            if chosen.bit_count() > best[0].bit_count():
                best[0] = chosen
            return
        if chosen.bit_count() + _clique_cover_size(p, adj) <= best[0].bit_count():
            return
        v, deg = -1, -1
        for b in low_bits(p):
            i = b.bit_length() - 1
            dv = (adj[i] & p).bit_count()
            if dv > deg:
                v, deg = i, dv
        if deg == 0:
            search(0, chosen | p)
            return
        bit = 1 << v
        search(p & ~adj[v] & ~bit, chosen | bit)
        search(p & ~bit, chosen)

    search((1 << len(adj)) - 1, 0)
    return best[0]


def max_total_mv(n: int, budget_ms: float | None = None) -> SolveResult:
    """μ_t(Q_n): a maximum distance-2-free set, one weight parity at a time."""
    check_dim(n)
    if n > MAX_TOTAL_N:
        raise InfeasibleScaleError(f"total mutual-visibility solver capped at n={MAX_TOTAL_N}")
    clock = _Clock(budget_ms)
    chosen: list[int] = []
    for parity in (0, 1):
        verts, adj = distance2_graph(n, parity)
        mis = max_independent_set(adj, clock)
        chosen.extend(verts[b.bit_length() - 1] for b in low_bits(mis))
    return SolveResult("mut", n, len(chosen), VertexSet(n, chosen), not clock.expired,
                       clock.nodes, clock.elapsed)


def _first_fit_partition(n: int) -> list[list[int]]:
    classes: list[list[int]] = []
    sets: list[set[int]] = []
    for v in range(1 << n):
        for cls, ms in zip(classes, sets):
            if can_extend(cls, ms, v):
                cls.append(v)
                ms.add(v)
                break
        else:
            classes.append([v])
            sets.append({v})
    return classes


def _partition_into(n: int, k: int, clock: _Clock) -> list[list[int]] | None:
    """Partition of Q_n into k mutual-visibility classes, or None if none exists."""
    size = 1 << n
    classes: list[list[int]] = [[] for _ in range(k)]
    sets: list[set[int]] = [set() for _ in range(k)]

    def place(v: int, used: int) -> bool:
        if clock.tick():
            return False
        if v == size:
            return True
        # classes are interchangeable: open at most one new class per vertex
        for c in range(min(used + 1, k)):
            if can_extend(classes[c], sets[c], v):
                classes[c].append(v)
                sets[c].add(v)
                if place(v + 1, max(used, c + 1)):
                    return True
                classes[c].pop()
                sets[c].discard(v)
                if clock.expired:
                    return False
        return False

    return [list(c) for c in classes] if place(0, 0) else None


def chromatic_mv(n: int, budget_ms: float | None = None) -> SolveResult:
    """χ_μ(Q_n) by iterative deepening on the number of classes."""
    check_dim(n)
    clock = _Clock(budget_ms)
    for k in range(1, (1 << n) + 1):
        found = _partition_into(n, k, clock)
        if found is not None:
            return SolveResult("chimu", n, k, [VertexSet(n, c) for c in found], True,
                               clock.nodes, clock.elapsed)
        if clock.expired:
            break
    fallback = _first_fit_partition(n)
    return SolveResult("chimu", n, len(fallback), [VertexSet(n, c) for c in fallback],
                       False, clock.nodes, clock.elapsed)


def _color_graph(adj: list[int], k: int, clock: _Clock) -> list[int] | None:
    """Proper k-coloring by backtracking in most-constrained-first order."""
    N = len(adj)
    colors = [-1] * N

    def pick() -> int:
        best, best_key = -1, None
        for v in range(N):
            if colors[v] >= 0:
                continue
            seen = {colors[u.bit_length() - 1] for u in low_bits(adj[v])} - {-1}
            key = (len(seen), (adj[v]).bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def assign(done: int, used: int) -> bool:
        if clock.tick():
            return False
        if done == N:
            return True
        v = pick()
        banned = {colors[u.bit_length() - 1] for u in low_bits(adj[v])}
        for c in range(min(used + 1, k)):
            if c in banned:
                continue
            colors[v] = c
            if assign(done + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    return list(colors) if assign(0, 0) else None


def chromatic_total_mv(n: int, budget_ms: float | None = None) -> SolveResult:
    """χ_μ^total(Q_n): chromatic number of the distance-2 graph of Q_n."""
    check_dim(n)
    if n > MAX_CHROMATIC_TOTAL_N:
        raise InfeasibleScaleError(f"total chromatic solver capped at n={MAX_CHROMATIC_TOTAL_N}")
    clock = _Clock(budget_ms)
    per_parity = []
    for parity in (0, 1):
        verts, adj = distance2_graph(n, parity)
        for k in range(1, len(verts) + 1):
            colors = _color_graph(adj, k, clock)
            if colors is not None or clock.expired:
                break
        if colors is None:
            raise InfeasibleScaleError("total chromatic search ran out of budget")
        per_parity.append((verts, colors))
    value = max(max(colors) + 1 for _, colors in per_parity)
    classes: list[list[int]] = [[] for _ in range(value)]
    for verts, colors in per_parity:
        for x, c in zip(verts, colors):
            classes[c].append(x)
    return SolveResult("chimut", n, value, [VertexSet(n, c) for c in classes], True,
                       clock.nodes, clock.elapsed)
