import json
import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from behavnet import modelfile
from behavnet.generate import random_svar
from behavnet.graphs import (
    DiGraph,
    HyperEdge,
    Hypergraph,
    dual,
    hypergraph_of,
    signal_graph,
    svar_digraph,
    system_graph,
    to_dot,
    to_json,
)
from behavnet.network import incidence
from behavnet.polyalg import PolyMatrix, S
from behavnet.svar import to_network, validate

GOLDEN = Path(__file__).resolve().parent / "golden"
FOUR_PATTERN = [[1, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 1, 1]]


def members(h: Hypergraph) -> list[set[int]]:
    """Member sets as 1-based index sets, in edge order."""
    return [{v + 1 for v in e.members} for e in h.edges]


binary_matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=1, max_size=5)
)


class TestHypergraph:
    def test_four_component_signal_edges(self):
        assert members(hypergraph_of(FOUR_PATTERN)) == [{1, 2, 3}, {2, 4}, {3, 4}, {3, 4}]

    def test_four_component_system_edges(self):
        assert members(dual(hypergraph_of(FOUR_PATTERN))) == [{1}, {1, 2}, {1, 3, 4}, {2, 3, 4}]

    def test_zero_row_gives_empty_edge(self):
        assert members(hypergraph_of([[0, 0], [1, 0]])) == [set(), {1}]

    def test_identity(self):
        assert members(hypergraph_of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == [{1}, {2}, {3}]

    def test_single(self):
        h = hypergraph_of([[1]])
        assert dual(h) == h

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            hypergraph_of([[2, 0]])

    def test_rejects_out_of_range_member(self):
        with pytest.raises(ValueError):
            Hypergraph(("a",), (HyperEdge("e", frozenset({1})),))

    @given(binary_matrices)
    def test_transpose_commutes_with_dual(self, s):
        transposed = [list(col) for col in zip(*s)]
        h = hypergraph_of(s)
        relabelled = hypergraph_of(transposed, [e.label for e in h.edges], list(h.vertices))
        assert relabelled == dual(h)

    @given(binary_matrices)
    def test_dual_involution(self, s):
        h = hypergraph_of(s)
        assert dual(dual(h)) == h


class TestNetworkGraphs:
    def test_four_component(self, four_component):
        sg, yg = signal_graph(four_component), system_graph(four_component)
        assert len(sg.vertices) == 4 and len(sg.edges) == 4
        assert len(yg.vertices) == 4 and len(yg.edges) == 4
        assert [e.label for e in sg.edges] == ["Sigma1", "Sigma2", "Sigma3", "Sigma4"]
        assert members(yg) == [{1}, {1, 2}, {1, 3, 4}, {2, 3, 4}]

    def test_svar3_graphs(self, svar3):
        net = to_network(svar3)
        assert members(signal_graph(net)) == [{1, 2, 4}, {1, 2}, {3, 4}]
        assert members(system_graph(net)) == [{1, 2}, {1, 2}, {3}, {1, 3}]

    def test_single_autonomous_component(self, data_dir):
        net = modelfile.load(str(data_dir / "autonomous.json")).network
        sg = signal_graph(net)
        assert sg.vertices == ("x",) and members(sg) == [{1}]


class TestSvarDigraph:
    def test_svar3(self, svar3):
        g = svar_digraph(svar3)
        assert set(g.labelled_edges()) == {("y2", "y1"), ("y1", "y2"), ("u", "y1"), ("u", "y3")}

    def test_diagonal_no_edges(self):
        m = validate(PolyMatrix.from_rows([[S, 0], [0, S + 1]]), PolyMatrix.zeros(2, 1))
        assert svar_digraph(m).edges == ()

    def test_zero_q_row(self):
        m = validate(PolyMatrix.from_rows([[S, 0], [0, S]]), PolyMatrix.from_rows([[1], [0]]))
        assert svar_digraph(m).labelled_edges() == [("u", "y1")]

    def test_no_self_loops(self):
        with pytest.raises(ValueError):
            DiGraph(("a",), ((0, 0),))

    @given(st.integers(0, 2**32 - 1))
    def test_edges_follow_kernel_pattern(self, seed):
        model = random_svar(random.Random(seed))
        k = model.kernel_matrix()
        expected = {
            (i, j)
            for j in range(k.rows)
            for i in range(k.cols)
            if i != j and k[j, i]
        }
        assert set(svar_digraph(model).edges) == expected


class TestDot:
    def test_four_component_signal_golden(self, four_component):
        assert to_dot(signal_graph(four_component), name="signal") == (GOLDEN / "four_component_signal.dot").read_text()

    def test_four_component_rendering_rule(self, four_component):
        text = to_dot(signal_graph(four_component))
        assert text.count("shape=square") == 1
        assert text.count("v2 -- v3") == 2

    def test_svar3_golden(self, svar3):
        text = to_dot(svar_digraph(svar3), name="svar")
        assert text == (GOLDEN / "svar3_digraph.dot").read_text()
        assert text.count("->") == 4

    def test_vertices_only(self):
        h = Hypergraph(("a", "b"), ())
        assert to_dot(h) == 'graph "G" {\n  v0 [label="a"];\n  v1 [label="b"];\n}\n'

    def test_quoting(self):
        assert 'label="a\\"b"' in to_dot(Hypergraph(('a"b',), ()))

    def test_deterministic(self, four_component):
        assert to_dot(system_graph(four_component)) == to_dot(system_graph(four_component))

    def test_json(self, four_component, svar3):
        doc = json.loads(to_json(signal_graph(four_component)))
        assert doc["edges"][0] == {"label": "Sigma1", "members": ["w1", "w2", "w3"]}
        di = json.loads(to_json(svar_digraph(svar3)))
        assert {"from": "u", "to": "y3"} in di["edges"]

    def test_incidence_rows_roundtrip(self, four_component):
        assert signal_graph(four_component).incidence_rows() == incidence(four_component).to_lists()
