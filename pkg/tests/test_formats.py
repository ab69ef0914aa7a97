import pytest
from hypothesis import given

from girthforge.construction import Clause, VerificationReport
from girthforge.curves import Curve, CurveFamily
from girthforge.errors import ParseError
from girthforge.formats import (
    header_lines,
    parse_coloring,
    parse_curves,
    parse_graph,
    parse_poset,
    parse_report,
    parse_verification,
    read_header,
    write_coloring,
    write_curves,
    write_graph,
    write_poset,
    write_report,
    write_verification,
)
from girthforge.graph import Graph
from girthforge.poset import Poset, covers_from_order
from helpers import small_graphs


@given(small_graphs())
def test_graph_round_trip(g):
    text = write_graph(g)
    back, layers = parse_graph(text)
    assert back == g and layers is None
    assert write_graph(back) == text


def test_layers_line():
    g = Graph.from_edges(6, [(1, 3), (2, 6)])
    text = write_graph(g, (3, 2), header_lines("layered", {"seed": 4}))
    back, layers = parse_graph(text)
    assert layers == (3, 2)
    assert read_header(text).kind == "layered"
    assert read_header(text).config == {"seed": "4"}


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph 3\ne 1 x\n", 2),
        ("graph 3\ne 1 4\n", 2),
        ("graph 3\ne 2 2\n", 2),
        ("graph 3\ne 1 2\ne 2 1\n", 3),
        ("\n# hi\ngraph 3\nwhat 1\n", 4),
        ("graph 4\ne 1 2\nlayers 2 2\n", 3),
        ("graph 5\nlayers 2 2\n", 2),
        ("e 1 2\n", 1),
    ],
)
def test_graph_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text, "in.graph")
    assert exc.value.line == line
    assert str(exc.value).startswith(f"in.graph:{line}:")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_graph("# only a comment\n")


def test_poset_round_trip():
    covers = [(1, 4), (2, 4), (3, 5)]
    text = write_poset(5, covers, (3, 1, 2, 5, 4))
    p, listed = parse_poset(text)
    assert listed == covers
    assert p.extension == (3, 1, 2, 5, 4)
    assert set(covers_from_order(p).cover_edges) == set(covers)


@pytest.mark.parametrize(
    "text",
    [
        "poset 3\ncover 1 1\n",
        "poset 3\ncover 1 2\ncover 1 2\n",
        "poset 2\ncover 1 2\ncover 2 1\n",
        "poset 2\next 1\n",
        "poset 2\ncover 1 2\next 2 1\n",
    ],
)
def test_poset_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poset(text)


def test_curves_round_trip_and_truncation():
    f = CurveFamily((Curve(1, ((0, 0), (3, 1))), Curve(2, ((0, 5),))))
    text = write_curves(f)
    assert parse_curves(text) == f
    truncated = "\n".join(text.splitlines()[:-1]) + "\n"
    with pytest.raises(ParseError):
        parse_curves(truncated)
    short_curve = "curves 2\ncurve 1 3\n0 0\n1 1\ncurve 2 1\n0 4\n"
    with pytest.raises(ParseError) as exc:
        parse_curves(short_curve)
    assert exc.value.line == 5
    with pytest.raises(ParseError):
        parse_curves("curves 1\ncurve 1 1\n0 0\n9 9\n")


def test_coloring_and_reports_round_trip():
    coloring = {1: 1, 2: 2, 3: 1}
    assert parse_coloring(write_coloring(coloring)) == coloring
    report = {"deleted": "1 2", "rounds": 2}
    assert parse_report(write_report(report)) == {"deleted": "1 2", "rounds": "2"}
    vr = VerificationReport([Clause("girth", True, "-"), Clause("bad_pairs", False, "pair 1 3")], 3, 1, True, 3)
    assert parse_verification(write_verification(vr)) == [("girth", True, "-"), ("bad_pairs", False, "pair 1 3")]
    with pytest.raises(ParseError):
        parse_verification("clause girth maybe\n")


def test_header_is_ordered_and_stable():
    cfg = {"subcommand": "generate", "seed": 7, "r": 5}
    assert header_lines("gprime", cfg) == ["# artifact gprime", "# config subcommand=generate seed=7 r=5"]


def test_poset_file_preserves_order_semantics():
    p = Poset.chain(4)
    text = write_poset(4, covers_from_order(p).cover_edges, p.extension)
    back, _ = parse_poset(text)
    assert back.relation() == p.relation()
