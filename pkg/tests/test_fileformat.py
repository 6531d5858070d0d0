import pytest
from hypothesis import given, settings, strategies as st

from visicube.cube import VertexSet
from visicube.errors import VertexFormatError
from visicube.fileformat import parse_vertex_file, parse_vertex_text, render_vertex_set

from helpers import S


def test_parse_examples(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("000\n111\n")
    assert parse_vertex_file(p) == VertexSet(3, [0, S(1, 2, 3)])
    with pytest.raises(VertexFormatError):
        parse_vertex_text("010\n010\n")
    assert parse_vertex_text("", n=4) == VertexSet(4)
    with pytest.raises(VertexFormatError):
        parse_vertex_text("")


def test_comments_and_blank_lines():
    text = "# header\n\n  100  # inline\n001\n"
    assert parse_vertex_text(text) == VertexSet(3, [S(1), S(3)])


def test_error_locations():
    with pytest.raises(VertexFormatError) as exc:
        parse_vertex_text("0001\n01x1\n")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(VertexFormatError) as exc:
        parse_vertex_text("000\n0000\n")
    assert exc.value.line == 2
    with pytest.raises(VertexFormatError):
        parse_vertex_text("01\n", n=3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.sets(st.integers(0, (1 << n) - 1)).map(lambda s: VertexSet(n, s))))
def test_round_trip(m):
    assert parse_vertex_text(render_vertex_set(m, "header"), m.n) == m
