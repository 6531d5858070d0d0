from visicube.cube import VertexSet, from_bits


def S(*items: int) -> int:
    """Vertex from 1-indexed coordinates."""
    v = 0
    for j in items:
        v |= 1 << (j - 1)
    return v


def vs(n: int, *bits: str) -> VertexSet:
    return VertexSet(n, (from_bits(b) for b in bits))
