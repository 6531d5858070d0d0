"""Total mutual-visibility in Q_n: distance-2-free sets, codes and weight classes.

A set is total mutual-visibility in Q_n exactly when no two members are at
Hamming distance 2, so everything here is phrased through that predicate and
cross-checked against the direct visibility oracle in ``cube``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .cube import VertexSet, check_dim, layer, low_bits, to_bits
from .errors import InfeasibleScaleError, PreconditionError

HAMMING_MAX_M = 5


def distance2_violation(m: VertexSet) -> tuple[int, int] | None:
    """Colex-least pair of ``m`` at Hamming distance exactly 2, or None."""
    members = m.members
    n = m.n
    flips = [(1 << i) | (1 << j) for j in range(n) for i in range(j)]
    best = None
    for x in sorted(members):
        if best is not None and x > best[0]:
            break
        for f in flips:
            y = x ^ f
            if y > x and y in members and (best is None or (x, y) < best):
                best = (x, y)
    return best


def avoids_distance2(m: VertexSet) -> bool:
    return distance2_violation(m) is None


def hamming_parity_check(m: int) -> list[list[int]]:
    """m x (2^m - 1) matrix; column j holds j in binary, least significant bit in row 0."""
    n = (1 << m) - 1
    return [[(j >> row) & 1 for j in range(1, n + 1)] for row in range(m)]


def syndrome(x: int) -> int:
    """XOR of the 1-indexed positions set in x, i.e. H·x read as an integer."""
    s = 0
    for b in low_bits(x):
        s ^= b.bit_length()
    return s


def hamming_code(m: int) -> VertexSet:
    """Kernel of the parity-check matrix: the perfect code of length 2^m - 1."""
    if m < 2:
        raise PreconditionError("need m >= 2; Q_1 is covered by taking both vertices")
    if m > HAMMING_MAX_M:
        raise InfeasibleScaleError(f"enumerating 2^{(1 << m) - 1} words is capped at m={HAMMING_MAX_M}")
    n = (1 << m) - 1
    return VertexSet(n, (x for x in range(1 << n) if syndrome(x) == 0))


def min_distance(m: VertexSet) -> int | None:
    ms = sorted(m.members)
    best = None
    for i, x in enumerate(ms):
        for y in ms[i + 1:]:
            dxy = (x ^ y).bit_count()
            if best is None or dxy < best:
                best = dxy
    return best


def balls_tile(code: VertexSet) -> bool:
    """Radius-1 balls around the code words cover every word exactly once."""
    n = code.n
    hit = bytearray(1 << n)
    for x in code.members:
        for y in [x] + [x ^ (1 << i) for i in range(n)]:
            if hit[y]:
                return False
            hit[y] = 1
    return all(hit)


def position_norm(x: int) -> int:
    """Sum of the 1-indexed positions of the set coordinates."""
    return sum(b.bit_length() for b in low_bits(x))


@dataclass(frozen=True)
class WeightClass:
    n: int
    w: int
    lam: int
    members: VertexSet

    def __len__(self) -> int:
        return len(self.members)


def weight_classes(n: int, w: int) -> tuple[list[WeightClass], int]:
    """Split layer w by position norm mod n; also return the index of the largest class.

    Residues are labelled 0..n-1 (residue 0 plays the role of label n).
    """
    check_dim(n)
    if not 0 <= w <= n:
        raise PreconditionError(f"weight {w} outside [0, {n}]")
    buckets: list[list[int]] = [[] for _ in range(n)]
    for x in layer(n, w):
        buckets[position_norm(x) % n].append(x)
    classes = [WeightClass(n, w, lam, VertexSet(n, xs)) for lam, xs in enumerate(buckets)]
    best = max(range(n), key=lambda lam: (len(buckets[lam]), -lam))
    return classes, best


def _side(w: int) -> str:
    return "A" if w % 4 in (0, 1) else "B"


@dataclass(frozen=True)
class TotalMVConstruction:
    n: int
    group_a: VertexSet
    group_b: VertexSet
    best_classes: dict[int, int]

    def larger(self) -> VertexSet:
        return self.group_a if len(self.group_a) >= len(self.group_b) else self.group_b


def build_AB(n: int) -> TotalMVConstruction:
    """Union of the largest weight class for each weight, split by weight mod 4."""
    check_dim(n)
    a: list[int] = []
    b: list[int] = []
    chosen = {}
    for w in range(n + 1):
        classes, best = weight_classes(n, w)
        chosen[w] = best
        (a if _side(w) == "A" else b).extend(classes[best].members.members)
    return TotalMVConstruction(n, VertexSet(n, a), VertexSet(n, b), chosen)


def partition_labels(n: int) -> list[tuple[int, str]]:
    return [(lam, side) for lam in range(n) for side in ("A", "B")]


def total_mv_partition(n: int, keep_empty: bool = False) -> list[VertexSet]:
    """At most 2n distance-2-free classes covering Q_n exactly once.

    Class (λ, A) collects every weight class C_{w,λ} with w ≡ 0, 1 (mod 4);
    class (λ, B) those with w ≡ 2, 3.
    """
    check_dim(n)
    if n > 24:
        raise InfeasibleScaleError(f"explicit partition of Q_{n} is too large")
    buckets: dict[tuple[int, str], list[int]] = {lab: [] for lab in partition_labels(n)}
    for x in range(1 << n):
        buckets[(position_norm(x) % n, _side(x.bit_count()))].append(x)
    return [VertexSet(n, xs) for xs in buckets.values() if xs or keep_empty]


def counting_upper_check(m: VertexSet) -> bool:
    """Check both sides of the double count behind |m| <= 2^n / n.

    Every member has all C(n,2) distance-2 neighbours outside m, and every
    non-member has at most floor(n/2) distance-2 neighbours inside m.
    """
    bad = distance2_violation(m)
    if bad is not None:
        raise PreconditionError(
            f"set has a distance-2 pair {to_bits(bad[0], m.n)}, {to_bits(bad[1], m.n)}")
    n = m.n
    if n > 24:
        raise InfeasibleScaleError(f"counting over Q_{n} is too large")
    members = m.members
    flips = [(1 << i) | (1 << j) for j in range(n) for i in range(j)]
    if len(flips) != comb(n, 2):
        return False
    edges_from_m = 0
    for x in members:
        outside = sum(1 for f in flips if x ^ f not in members)
        if outside != comb(n, 2):
            return False
        edges_from_m += outside
    edges_to_rest = 0
    for y in range(1 << n):
        if y in members:
            continue
        deg = sum(1 for f in flips if y ^ f in members)
        if deg > n // 2:
            return False
        edges_to_rest += deg
    return edges_from_m == edges_to_rest and len(members) * n <= 1 << n
