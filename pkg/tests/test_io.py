from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contentmax.graph import LabeledDigraph, LabeledMatrix
from contentmax.io import ParseError, format_edge_list, format_matrix, parse_edge_list, parse_matrix


def test_edge_list_parsing():
    text = """
    # a comment
    a b 2
    b c 1/3

    c d 0.25
    vertex z
    """
    g = parse_edge_list(text)
    assert dict(g.edges) == {("a", "b"): 2, ("b", "c"): Fraction(1, 3), ("c", "d"): Fraction(1, 4)}
    assert "z" in g.vertices


def test_decimal_labels_are_exact():
    g = parse_edge_list("a b 0.1\n")
    assert g.edges[("a", "b")] == Fraction(1, 10)
    assert format_edge_list(g) == "a b 1/10\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("a b\n", 1),
        ("a b 1\nb c -2\n", 2),
        ("a b 1\n\na b 2\n", 3),
        ("a b one\n", 1),
    ],
)
def test_edge_list_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_empty_file_is_empty_graph():
    g = parse_edge_list("")
    assert g.num_edges() == 0 and len(g) == 0
    assert format_edge_list(g) == ""


def test_matrix_format():
    a = parse_matrix("3\n0 2 0\n0 0 3/6\n0 0 0\n")
    assert a == LabeledMatrix([[0, 2, 0], [0, 0, Fraction(1, 2)], [0, 0, 0]])
    assert format_matrix(a) == "3\n0 2 0\n0 0 1/2\n0 0 0\n"


@pytest.mark.parametrize("text", ["", "2\n0 1\n", "2\n0 1\n1\n", "x\n", "2\n0 1\n0 -1\n"])
def test_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


names = st.text(alphabet="abcxyz019_", min_size=1, max_size=4).filter(lambda s: s != "vertex")
labels = st.fractions(min_value=0, max_value=50, max_denominator=30)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.tuples(names, names), labels, max_size=8), st.lists(names, max_size=3))
def test_edge_list_round_trip(edges, extra):
    g = LabeledDigraph(edges, extra)
    text = format_edge_list(g)
    back = parse_edge_list(text)
    assert back == g
    assert list(back.edges) == list(g.edges)
    assert format_edge_list(back) == text


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(labels, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_matrix_round_trip(rows):
    a = LabeledMatrix(rows)
    assert parse_matrix(format_matrix(a)) == a
