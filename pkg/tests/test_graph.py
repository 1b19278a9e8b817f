import pytest
from hypothesis import given
from hypothesis import strategies as st

from sombor_audit.errors import ParseError, ValidationError
from sombor_audit.graph import DegreePairPartition, Graph, degree_pair_partition, load_edge_list


def cycle(n):
    return Graph.from_edges((i, (i + 1) % n) for i in range(n))


def test_load_path():
    g = load_edge_list("0 1\n1 2")
    assert g.vertex_count == 3 and g.edge_count == 2


def test_load_bytes_header_and_comments():
    g = load_edge_list(b"# 5 2\n# a comment\n0 1\n\n3 1\n")
    assert g.vertex_count == 5
    assert g.edges == frozenset({(0, 1), (1, 3)})
    assert not g.is_connected()


@pytest.mark.parametrize("text, word", [("0 0", "self-loop"), ("0 1\n0 1", "duplicate"), ("0 1\n1 0", "duplicate")])
def test_load_rejects_invalid_graphs(text, word):
    with pytest.raises(ValidationError, match=word):
        load_edge_list(text)


def test_header_must_agree():
    with pytest.raises(ValidationError):
        load_edge_list("# 2 1\n0 5\n")
    with pytest.raises(ValidationError):
        load_edge_list("# 4 3\n0 1\n")


@pytest.mark.parametrize("text, line", [("0 1\n1 x\n", 2), ("0 1 2\n", 1), ("0 -1\n", 1)])
def test_malformed_lines_report_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        load_edge_list(text)
    assert info.value.line == line


def test_graph_constructor_checks_endpoints():
    with pytest.raises(ValidationError):
        Graph(2, frozenset({(0, 2)}))
    with pytest.raises(ValidationError):
        Graph(3, frozenset({(0, 1), (1, 0)}))


@pytest.mark.parametrize(
    "g, expected",
    [
        (Graph.from_edges([(0, 1), (1, 2)]), {(1, 2): 2}),
        (cycle(4), {(2, 2): 4}),
        (Graph.from_edges([(0, 1), (0, 2), (0, 3)]), {(1, 3): 3}),
    ],
)
def test_partition_examples(g, expected):
    part = degree_pair_partition(g)
    assert part.counts == expected
    assert part.total_edges == g.edge_count


def test_partition_normalizes_keys():
    part = DegreePairPartition.from_counts({(3, 1): 2, (1, 3): 1}, vertex_count=4)
    assert part.counts == {(1, 3): 3} and part.total_edges == 3
    with pytest.raises(ValueError):
        DegreePairPartition.from_counts({(0, 2): 1}, vertex_count=2)


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=25))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=60)) if pairs else set()
    return Graph(n, frozenset(chosen))


@given(random_graphs())
def test_partition_conservation(g):
    assert sum(degree_pair_partition(g).counts.values()) == g.edge_count


@given(random_graphs())
def test_handshake(g):
    assert sum(g.degrees()) == 2 * g.edge_count


@given(random_graphs())
def test_first_zagreb_identity(g):
    from_partition = sum(c * (i + j) for (i, j), c in degree_pair_partition(g).counts.items())
    assert from_partition == sum(d * d for d in g.degrees())


@given(random_graphs())
def test_text_round_trip(g):
    text = f"# {g.vertex_count} {g.edge_count}\n" + "".join(f"{v} {u}\n" for u, v in sorted(g.edges))
    assert load_edge_list(text) == g
