"""VertexSet text files: one binary string per line, '#' comments, blank lines ignored."""

from __future__ import annotations

from pathlib import Path

from .cube import VertexSet, to_bits
from .errors import VertexFormatError


def parse_vertex_text(text: str, n: int | None = None) -> VertexSet:
    members: dict[int, int] = {}
    width = n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col0 = raw.index(line[0]) + 1
        for j, ch in enumerate(line):
            if ch not in "01":
                raise VertexFormatError(f"non-binary character {ch!r}", lineno, col0 + j)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise VertexFormatError(f"expected {width} bits, found {len(line)}", lineno, col0)
        v = 0
        for j, ch in enumerate(line):
            if ch == "1":
                v |= 1 << j
        if v in members:
            raise VertexFormatError(f"duplicate vertex {line} (first on line {members[v]})", lineno, col0)
        members[v] = lineno
    if width is None:
        raise VertexFormatError("empty vertex file needs an explicit dimension")
    if width < 1:
        raise VertexFormatError("dimension must be positive")
    return VertexSet(width, members)


def parse_vertex_file(path: str | Path, n: int | None = None) -> VertexSet:
    return parse_vertex_text(Path(path).read_text(encoding="utf-8"), n)


def render_vertex_set(vs: VertexSet, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(to_bits(v, vs.n) for v in vs)
    return "\n".join(lines) + "\n"


def write_vertex_file(path: str | Path, vs: VertexSet, header: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_vertex_set(vs, header), encoding="utf-8")
    return path


def render_path(path: list[int], n: int) -> str:
    return "".join(to_bits(v, n) + "\n" for v in path)
