import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simrate.multiplex import (
    MultiplexNetwork,
    ParseError,
    UnknownLayerError,
    dumps_multiplex,
    layer_stats,
    load_multiplex,
    loads_multiplex,
    neighbors,
)


def test_load_basic():
    net = loads_multiplex("L1\ta\tb\nL1\tb\tc\nL2\ta\tc\n")
    assert net.node_count == 3
    assert net.layer_names == ("L1", "L2")
    assert [layer.edge_count for layer in net.layers] == [2, 1]


def test_load_dedups_and_treats_edges_as_undirected():
    net = loads_multiplex("L1\ta\tb\nL1\ta\tb\nL1\tb\ta\n")
    assert net.layer("L1").edge_count == 1


def test_self_loop_rejected_with_line_number():
    with pytest.raises(ParseError) as exc:
        loads_multiplex("# header\nL1\ta\tb\nL1\ta\ta\n")
    assert exc.value.lineno == 3
    assert "line 3" in str(exc.value)


@pytest.mark.parametrize("line", ["L1\ta\n", "L1\ta\tb\tc\n", "L1 a b\n"])
def test_wrong_field_count(line):
    with pytest.raises(ParseError) as exc:
        loads_multiplex("L0\tx\ty\n" + line)
    assert exc.value.lineno == 2


def test_comments_and_blank_lines_ignored():
    net = load_multiplex(io.StringIO("# c\n\nL1\ta\tb\n   \n# L9\tz\ty\n"))
    assert net.layer_names == ("L1",)
    assert set(net.nodes) == {"a", "b"}


def test_layer_order_is_first_seen():
    net = loads_multiplex("B\ta\tb\nA\ta\tc\nB\tc\td\n")
    assert net.layer_names == ("B", "A")


def test_neighbors():
    net = loads_multiplex("L1\ta\tb\nL1\tb\tc\nL2\ta\td\n")
    assert neighbors(net, "L1", "b") == {"a", "c"}
    # d only appears in L2 but resolves everywhere
    assert neighbors(net, "L1", "d") == set()
    with pytest.raises(UnknownLayerError):
        neighbors(net, "nope", "a")


def test_layer_stats():
    net = MultiplexNetwork.from_edges([("L1", "a", "b"), ("L1", "b", "c")], nodes=["z"])
    from simrate.multiplex import Layer

    net = MultiplexNetwork(net.nodes, list(net.layers) + [Layer("empty", frozenset())])
    assert layer_stats(net) == [("L1", 3, 2), ("empty", 0, 0)]


def test_empty_input():
    net = loads_multiplex("")
    assert net.node_count == 0 and layer_stats(net) == []


edge_triples = st.lists(
    st.tuples(
        st.sampled_from(["L1", "L2", "L3"]),
        st.integers(0, 9).map(lambda i: f"n{i}"),
        st.integers(0, 9).map(lambda i: f"n{i}"),
    ).filter(lambda t: t[1] != t[2]),
    max_size=60,
)


@given(edge_triples)
def test_round_trip(triples):
    net = MultiplexNetwork.from_edges(triples)
    again = loads_multiplex(dumps_multiplex(net))
    assert again == net
    assert again.layer_names == net.layer_names


@settings(max_examples=50)
@given(edge_triples)
def test_degree_sum_and_no_self_neighbors(triples):
    net = MultiplexNetwork.from_edges(triples)
    for layer in net.layers:
        total = 0
        for node in net.nodes:
            nbrs = net.neighbors(layer.name, node)
            assert node not in nbrs
            assert net.degree(layer.name, node) == len(nbrs)
            total += len(nbrs)
        assert total == 2 * layer.edge_count


def test_serialization_sorted_by_pair():
    rng = random.Random(3)
    triples = [("L", f"n{rng.randrange(20)}", f"n{rng.randrange(20)}") for _ in range(50)]
    net = MultiplexNetwork.from_edges(t for t in triples if t[1] != t[2])
    pairs = [tuple(line.split("\t")[1:]) for line in dumps_multiplex(net).splitlines()]
    pairs = [(a, b.strip()) for a, b in pairs]
    assert pairs == sorted(pairs)
    assert all(a < b for a, b in pairs)
