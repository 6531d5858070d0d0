"""Layered mutual-visibility sets M(λ), their witness paths and bound arithmetic.

M(λ) takes every layer r ≡ λ (mod d).  Layers within d of either end of the
cube are taken whole; every other selected layer contributes a family that
contains no copy of D_r(2d, d).  Any two members of M(λ) are joined by a
shortest path that steps between consecutive selected layers through vertices
the families leave out ("holes").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .cube import VertexSet, check_dim, interval_members, is_shortest_path, low_bits, to_bits
from .daisy import LayerFamily, contains_daisy, greedy_daisy_free, turan_exact
from .errors import InvalidFamilyError, InvariantBreachError, PreconditionError

Supplier = Callable[[int, int, int], LayerFamily]

THEOREM1_CONSTANT = Fraction(14, 75)
DAISY_DENSITY_FLOOR = Fraction(56, 100)
# rational upper bound on e used in the local lemma criterion
E_UPPER = Fraction(27182818285, 10 ** 10)


def greedy_supplier(n: int, r: int, d: int) -> LayerFamily:
    return greedy_daisy_free(n, r, 2 * d, d)


def empty_supplier(n: int, r: int, d: int) -> LayerFamily:
    return LayerFamily(n, r)


def full_supplier(n: int, r: int, d: int) -> LayerFamily:
    """Whole layers; always rejected for middle layers (they contain daisies)."""
    return LayerFamily.full(n, r)


def exact_supplier(budget_ms: float | None = None) -> Supplier:
    def supply(n: int, r: int, d: int) -> LayerFamily:
        return turan_exact(n, r, 2 * d, d, budget_ms).extremal_family
    return supply


def file_supplier(source: VertexSet) -> Supplier:
    """Middle families read off a user-provided vertex set, layer by layer."""
    def supply(n: int, r: int, d: int) -> LayerFamily:
        if source.n != n:
            raise PreconditionError(f"supplier file has n={source.n}, construction n={n}")
        return LayerFamily(n, r, (v for v in source.members if v.bit_count() == r))
    return supply


SUPPLIERS: dict[str, Supplier] = {
    "greedy": greedy_supplier,
    "empty": empty_supplier,
    "exact": exact_supplier(),
}


def is_middle(n: int, d: int, r: int) -> bool:
    return d <= r <= n - d


@dataclass(frozen=True)
class LayeredConstruction:
    n: int
    d: int
    lam: int
    families: dict[int, LayerFamily]
    members: VertexSet = field(repr=False)

    @property
    def selected_layers(self) -> list[int]:
        return sorted(self.families)

    def __len__(self) -> int:
        return len(self.members)

    def layer_sizes(self) -> dict[int, int]:
        return {r: len(f) for r, f in sorted(self.families.items())}


def _check_nd(n: int, d: int) -> None:
    check_dim(n)
    if d < 3:
        raise PreconditionError(f"d must be at least 3, got {d}")
    if n < d:
        raise PreconditionError(f"need n >= d, got n={n}, d={d}")


def construct(n: int, d: int, lam: int, supplier: Supplier = greedy_supplier) -> LayeredConstruction:
    """Build M(λ) and validate its layer invariants."""
    _check_nd(n, d)
    lam %= d
    families: dict[int, LayerFamily] = {}
    for r in range(lam, n + 1, d):
        if is_middle(n, d, r):
            f = supplier(n, r, d)
            if f.n != n or f.r != r:
                raise InvalidFamilyError(f"supplier returned family for (n={f.n}, r={f.r}), wanted ({n}, {r})")
            witness = contains_daisy(f, 2 * d, d)
            if witness is not None:
                raise InvalidFamilyError(
                    f"family at layer {r} contains D_{r}({2 * d},{d}) with stem "
                    f"{to_bits(witness.stem, n)} and crown {to_bits(witness.crown, n)}",
                    witness)
        else:
            f = LayerFamily.full(n, r)
        families[r] = f
    members = VertexSet(n, (v for f in families.values() for v in f.members))
    return LayeredConstruction(n, d, lam, families, members)


def from_vertex_set(vs: VertexSet, d: int = 3) -> LayeredConstruction:
    """Read a layered set back from its vertices (e.g. a file written by build-mv).

    All weights must share one residue mod d and every middle slice must be
    D_r(2d,d)-free.  Boundary layers may be partial: routes never enter them.
    """
    n = vs.n
    _check_nd(n, d)
    residues = {v.bit_count() % d for v in vs.members}
    if len(residues) != 1:
        raise PreconditionError(f"set weights span residues {sorted(residues)} mod {d}")
    lam = residues.pop()
    families = {}
    for r in range(lam, n + 1, d):
        f = LayerFamily(n, r, (v for v in vs.members if v.bit_count() == r))
        if is_middle(n, d, r) and contains_daisy(f, 2 * d, d) is not None:
            raise InvalidFamilyError(f"layer {r} of the set contains D_{r}({2 * d},{d})")
        families[r] = f
    return LayeredConstruction(n, d, lam, families, vs)


def build_mlambda(n: int, d: int, lam: int, supplier: Supplier = greedy_supplier) -> VertexSet:
    return construct(n, d, lam, supplier).members


def best_construction(n: int, d: int, supplier: Supplier = greedy_supplier) -> LayeredConstruction:
    """Largest M(λ) over all residues; the smaller λ wins ties."""
    best = None
    for lam in range(d):
        k = construct(n, d, lam, supplier)
        if best is None or len(k) > len(best):
            best = k
    return best


def best_mlambda(n: int, d: int, supplier: Supplier = greedy_supplier) -> VertexSet:
    return best_construction(n, d, supplier).members


def find_hole(a: int, b: int, f: LayerFamily, d: int) -> int:
    """Colex-least C ∉ f with a∩b ⊆ C ⊆ a∪b and |C| = f.r."""
    r = f.r
    if a.bit_count() > r - d or b.bit_count() < r + d:
        raise PreconditionError(
            f"need |a| <= {r - d} and |b| >= {r + d}; got {a.bit_count()}, {b.bit_count()}")
    for c in interval_members(a, b, r):
        if c not in f.members:
            return c
    raise InvariantBreachError(
        f"no hole in layer {r} between {to_bits(a, f.n)} and {to_bits(b, f.n)}; "
        f"family is not D_{r}({2 * d},{d})-free")


def _same_layer_up(a: int, b: int) -> list[int]:
    # add b_1, then alternately add b_{i+1} / drop a_i, finally drop a_k
    adds = list(low_bits(b & ~a))
    drops = list(low_bits(a & ~b))
    cur = a | adds[0]
    path = [a, cur]
    for i in range(len(adds) - 1):
        cur |= adds[i + 1]
        path.append(cur)
        cur &= ~drops[i]
        path.append(cur)
    path.append(cur & ~drops[-1])
    return path


def _same_layer_down(a: int, b: int) -> list[int]:
    # complement image of _same_layer_up: drop a_1, then drop a_{i+1} / add b_i
    adds = list(low_bits(b & ~a))
    drops = list(low_bits(a & ~b))
    cur = a & ~drops[0]
    path = [a, cur]
    for i in range(len(drops) - 1):
        cur &= ~drops[i + 1]
        path.append(cur)
        cur |= adds[i]
        path.append(cur)
    path.append(cur | adds[-1])
    return path


def _rising(a: int, b: int) -> list[int]:
    # |a| < |b|: add b_1, alternate add/drop while a∖b lasts, then add the rest
    adds = list(low_bits(b & ~a))
    drops = list(low_bits(a & ~b))
    cur = a | adds[0]
    path = [a, cur]
    for i, x in enumerate(drops):
        cur |= adds[i + 1]
        path.append(cur)
        cur &= ~x
        path.append(cur)
    for y in adds[len(drops) + 1:]:
        cur |= y
        path.append(cur)
    return path


def claim1_path(a: int, b: int, r: int, r2: int) -> list[int]:
    """Shortest a,b-path strictly between layers r and r2 (r + 3 <= r2).

    Pairs in the lower layer go up through r+1, r+2; pairs in the upper layer
    use the mirrored route through r2-1, r2-2.
    """
    if r < 0 or r + 3 > r2:
        raise PreconditionError(f"need 0 <= r and r + 3 <= r2, got r={r}, r2={r2}")
    wa, wb = a.bit_count(), b.bit_count()
    if wa not in (r, r2) or wb not in (r, r2):
        raise PreconditionError(f"endpoint weights {wa}, {wb} not in layers {r}, {r2}")
    if a == b:
        raise PreconditionError("endpoints must be distinct")
    if wa == wb == r:
        return _same_layer_up(a, b)
    if wa == wb:
        return _same_layer_down(a, b)
    if wa == r:
        return _rising(a, b)
    return _rising(b, a)[::-1]


def through_point_path(a: int, b: int, c: int) -> list[int]:
    """Shortest a,b-path through c, flipping coordinates in ascending order per half."""
    if (a & b) & ~c or c & ~(a | b):
        raise PreconditionError("c must satisfy a∩b ⊆ c ⊆ a∪b")
    path = [a]
    cur = a
    for x in low_bits(a ^ c):
        cur ^= x
        path.append(cur)
    for x in low_bits(c ^ b):
        cur ^= x
        path.append(cur)
    return path


def witness_path(a: int, b: int, k: LayeredConstruction) -> list[int]:
    """Shortest a,b-path whose internal vertices avoid all of M(λ)."""
    members = k.members.members
    if a not in members or b not in members:
        raise PreconditionError("both endpoints must belong to the construction")
    if a == b:
        return [a]
    if a.bit_count() > b.bit_count():
        return witness_path(b, a, k)[::-1]
    path = _route(a, b, k)
    lo, hi = a.bit_count(), b.bit_count()
    if not is_shortest_path(path, a, b):
        raise InvariantBreachError("witness route is not a shortest path")
    for x in path[1:-1]:
        if x in members:
            raise InvariantBreachError(f"witness route passes member {to_bits(x, k.n)}")
    if lo < hi and not all(lo < x.bit_count() < hi for x in path[1:-1]):
        raise InvariantBreachError("witness route leaves the layers between its endpoints")
    return path


def _route(a: int, b: int, k: LayeredConstruction) -> list[int]:
    ra, rb = a.bit_count(), b.bit_count()
    n, d = k.n, k.d
    gap = rb - ra
    if gap == 0:
        # the topmost selected layer has nothing above it to climb into
        if ra + d > n and ra - d >= 0:
            return _same_layer_down(a, b)
        return _same_layer_up(a, b)
    if gap == d:
        return _rising(a, b)
    hole = find_hole(a, b, k.families[ra + d], d)
    return _rising(a, hole) + _route(hole, b, k)[1:]


@dataclass
class BoundReport:
    n: int
    d: int
    middle: dict[int, int]
    boundary: dict[int, int]
    total: Fraction
    comparison: Fraction

    @property
    def boundary_overlap(self) -> bool:
        """The doubled boundary sum counts some layers twice when n < 2d - 1."""
        return self.n < 2 * self.d - 1

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d,
                "middle": {str(r): v for r, v in self.middle.items()},
                "boundary": {str(r): v for r, v in self.boundary.items()},
                "total": str(self.total), "total_float": float(self.total),
                "comparison_14_75_2n": str(self.comparison),
                "exceeds_comparison": self.total > self.comparison,
                "boundary_overlap": self.boundary_overlap}


def theorem2_bound(n: int, d: int, ex_values: dict[int, int]) -> BoundReport:
    """(1/d) * (sum of ex_r over d <= r <= n-d  +  2 * sum of C(n, r) over r < d)."""
    _check_nd(n, d)
    middle = {}
    for r in range(d, n - d + 1):
        if r not in ex_values:
            raise PreconditionError(f"missing layer value for r={r}")
        middle[r] = int(ex_values[r])
    boundary = {r: comb(n, r) for r in range(d)}
    total = Fraction(sum(middle.values()) + 2 * sum(boundary.values()), d)
    return BoundReport(n, d, middle, boundary, total, THEOREM1_CONSTANT * 2 ** n)


def averaged_construction_size(constructions: list[LayeredConstruction]) -> Fraction:
    """Mean size of M(0..d-1); equals the bound formula when n >= 2d - 1."""
    d = constructions[0].d
    return Fraction(sum(len(k) for k in constructions), d)


def euler_product_lower(q: int, K: int) -> Fraction:
    """Rigorous rational lower bound on prod_{k>=1} (1 - q^-k).

    Exact partial product up to K times 1 - q^-K/(q-1), which bounds the tail
    from below since prod (1 - x_k) >= 1 - sum x_k.
    """
    if q < 2 or K < 1:
        raise PreconditionError(f"need q >= 2 and K >= 1, got q={q}, K={K}")
    prod = Fraction(1)
    for k in range(1, K + 1):
        prod *= 1 - Fraction(1, q ** k)
    return prod * (1 - Fraction(1, q ** K * (q - 1)))


def theorem1_constant_check(constant: Fraction = THEOREM1_CONSTANT, K: int = 20) -> bool:
    """0.56/3 equals the constant, and the q=3 product bound clears 0.56."""
    if DAISY_DENSITY_FLOOR / 3 != constant:
        return False
    lower = euler_product_lower(3, K)
    return lower > DAISY_DENSITY_FLOOR and lower / 3 > constant
