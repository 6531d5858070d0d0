"""Slow, independent reference checks.

Nothing here shares code with the fast paths it is used to validate: paths are
enumerated as coordinate orderings, daisies are built from itertools
combinations of coordinates, and optima come from exhaustive enumeration.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb


def _coords(x: int) -> list[int]:
    return [i for i in range(x.bit_length()) if x >> i & 1]


def shortest_paths(u: int, v: int):
    """Every shortest u,v-path in Q_n, one per ordering of the differing coordinates."""
    for order in permutations(_coords(u ^ v)):
        path = [u]
        for i in order:
            path.append(path[-1] ^ (1 << i))
        yield path


def visible_by_paths(u: int, v: int, m) -> bool:
    if u == v:
        return True
    return any(not any(x in m for x in p[1:-1]) for p in shortest_paths(u, v))


def mv_by_paths(m) -> bool:
    ms = sorted(m)
    return all(visible_by_paths(a, b, m) for a, b in combinations(ms, 2))


def total_mv_by_paths(m, n: int) -> bool:
    return all(visible_by_paths(a, b, m) for a, b in combinations(range(1 << n), 2))


def has_distance2_pair(m) -> bool:
    return any(bin(a ^ b).count("1") == 2 for a, b in combinations(sorted(m), 2))


def brute_force_max_mv(n: int) -> tuple[int, frozenset]:
    """μ(Q_n) by scanning every subset of V(Q_n) (n <= 3)."""
    if n > 3:
        raise ValueError("exhaustive subset scan only for n <= 3")
    verts = list(range(1 << n))
    best = (0, frozenset())
    for mask in range(1 << len(verts)):
        m = frozenset(v for v in verts if mask >> v & 1)
        if len(m) > best[0] and mv_by_paths(m):
            best = (len(m), m)
    return best


def _daisy_sets(n: int, r: int, s: int, t: int) -> list[frozenset]:
    ground = range(n)
    out = []
    for stem in combinations(ground, r - t):
        rest = [x for x in ground if x not in stem]
        for petal_pool in combinations(rest, s):
            members = frozenset(
                sum(1 << x for x in stem + extra) for extra in combinations(petal_pool, t))
            out.append(members)
    return out


def turan_by_hitting_set(n: int, r: int, s: int, t: int) -> tuple[int, frozenset]:
    """ex(n, D_r(s,t)) as C(n,r) minus a minimum hitting set of all daisy copies."""
    layer = [sum(1 << x for x in c) for c in combinations(range(n), r)]
    total = comb(n, r)
    if r + s - t > n:
        return total, frozenset()
    daisies = set(_daisy_sets(n, r, s, t))
    for k in range(total + 1):
        for removed in combinations(layer, k):
            rem = set(removed)
            if all(d & rem for d in daisies):
                return total - k, frozenset(rem)
    raise AssertionError("unreachable: removing the whole layer hits every daisy")


def turan_by_subfamilies(n: int, r: int, s: int, t: int) -> int:
    """ex(n, D_r(s,t)) by scanning all subfamilies of the layer (tiny layers only)."""
    layer = [sum(1 << x for x in c) for c in combinations(range(n), r)]
    if len(layer) > 16:
        raise ValueError("subfamily scan only for layers of at most 16 sets")
    daisies = _daisy_sets(n, r, s, t) if r + s - t <= n else []
    best = 0
    for mask in range(1 << len(layer)):
        fam = {x for i, x in enumerate(layer) if mask >> i & 1}
        if len(fam) > best and not any(d <= fam for d in daisies):
            best = len(fam)
    return best
