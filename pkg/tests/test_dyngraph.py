import io
import json

import numpy as np
import pytest

from vc_ergm.basis import build_basis
from vc_ergm.dyngraph import DynamicNetwork, Graph, dyad_pairs, read_curves, \
    read_edge_list, write_curves, write_edge_list, write_fit_result
from vc_ergm.errors import BasisError, EdgeListError, GraphError
from vc_ergm.mple import CoefficientMatrix, FitOptions, fit_vcergm
from vc_ergm.netstats import StatisticSpec

from conftest import TOY_DIRECTED, TOY_UNDIRECTED, random_graph, \
    random_network


def read(text, directed):
    return read_edge_list(io.StringIO(text), directed)


class TestGraph:
    def test_dyad_counts(self):
        for n in range(1, 7):
            assert Graph(n, True).dyad_count == n * (n - 1)
            assert Graph(n, False).dyad_count == n * (n - 1) // 2

    def test_dyad_order_is_row_major(self):
        rows, cols = dyad_pairs(3, True)
        assert list(zip(rows, cols)) == [(0, 1), (0, 2), (1, 0), (1, 2),
                                         (2, 0), (2, 1)]
        rows, cols = dyad_pairs(4, False)
        assert list(zip(rows, cols)) == [(0, 1), (0, 2), (0, 3), (1, 2),
                                         (1, 3), (2, 3)]

    def test_undirected_symmetry(self, rng):
        g = random_graph(rng, 6, False)
        for i in range(6):
            for j in range(6):
                if i != j:
                    assert g.has_edge(i, j) == g.has_edge(j, i)
        adj = g.adjacency()
        assert np.array_equal(adj, adj.T)

    def test_self_loops_unrepresentable(self):
        g = Graph(3, True)
        with pytest.raises(GraphError):
            g.has_edge(1, 1)
        with pytest.raises(GraphError):
            Graph.from_edges(3, True, [(0, 0)])
        with pytest.raises(GraphError):
            Graph.from_adjacency(np.eye(3, dtype=int), True)

    def test_values_are_binary(self):
        with pytest.raises(GraphError):
            Graph(3, True, [0, 1, 2, 0, 0, 0])

    def test_adjacency_round_trip(self, rng):
        g = random_graph(rng, 5, True)
        assert Graph.from_adjacency(g.adjacency(), True) == g

    def test_immutable(self, rng):
        g = random_graph(rng, 4, True)
        with pytest.raises(ValueError):
            g.values[0] = 1
        with pytest.raises(ValueError):
            g.adjacency()[0, 1] = 1


class TestDynamicNetwork:
    def test_sorted_by_time(self):
        net = DynamicNetwork([(2.0, Graph(3, True)), (0.5, Graph(4, True))])
        assert list(net.times) == [0.5, 2.0]
        assert list(net.node_counts) == [4, 3]

    def test_duplicate_times(self):
        with pytest.raises(GraphError):
            DynamicNetwork([(1.0, Graph(3, True)), (1.0, Graph(3, True))])

    def test_shared_directed_flag(self):
        with pytest.raises(GraphError):
            DynamicNetwork([(0.0, Graph(3, True)), (1.0, Graph(3, False))])

    def test_fitting_needs_two_snapshots(self):
        net = DynamicNetwork([(0.0, Graph(3, True))])
        with pytest.raises(GraphError):
            net.require_fittable()

    def test_drop(self):
        net = DynamicNetwork([(float(t), Graph(3, True)) for t in range(5)])
        kept = net.drop([1, 3])
        assert list(kept.times) == [0.0, 2.0, 4.0]


class TestReadEdgeList:
    def test_undirected_example(self):
        net = read(TOY_UNDIRECTED, False)
        assert len(net) == 2
        assert list(net.times) == [0.0, 1.0]
        assert sorted(net.graphs[0].edges()) == [(0, 1), (1, 2)]
        assert net.graphs[1].edges() == [(0, 1)]

    def test_directed_asymmetry(self):
        net = read(TOY_DIRECTED, True)
        g = net.graphs[0]
        assert g.has_edge(0, 1) and g.has_edge(1, 0)
        assert g.has_edge(1, 2) and not g.has_edge(2, 1)

    def test_registry_gives_empty_graph(self):
        text = "#nodes,0,3\n#nodes,1,5\ntime,from,to,node_count\n0,1,2,3\n"
        net = read(text, True)
        assert list(net.node_counts) == [3, 5]
        assert net.graphs[1].edge_count == 0

    def test_node_count_from_max_label(self):
        net = read("time,from,to,node_count\n0,1,4,\n", False)
        assert net.graphs[0].n == 4

    def test_comments_ignored(self):
        net = read("# produced by hand\n" + TOY_DIRECTED, True)
        assert net.graphs[0].edge_count == 3

    def test_duplicate_row_idempotent(self):
        net = read(TOY_DIRECTED + "0,1,2,3\n", True)
        assert net.graphs[0].edge_count == 3

    def test_undirected_reversed_row_is_duplicate(self):
        net = read("time,from,to,node_count\n0,1,2,3\n0,2,1,3\n", False)
        assert net.graphs[0].edge_count == 1

    @pytest.mark.parametrize("text", [
        "time,from,to,node_count\n0,2,2,3\n",
        "time,from,to,node_count\n0,1,4,3\n",
        "time,from,to,node_count\n0,0,0,3\n",
        "time,from,to,node_count\n",
        "time,from,to,node_count\n0,1,x,3\n",
        "t,i,j\n0,1,2\n",
        "time,from,to,node_count\n0,1,2,3\n0,1,3,4\n",
    ])
    def test_errors(self, text):
        with pytest.raises(EdgeListError):
            read(text, True)


class TestRoundTrip:
    def test_write_then_read(self, rng):
        snapshots = [(0.0, random_graph(rng, 4, True)),
                     (0.25, Graph(6, True)),
                     (3.5, random_graph(rng, 5, True, 0.3))]
        net = DynamicNetwork(snapshots, True)

        text = io.StringIO()
        write_edge_list(net, text)
        back = read(text.getvalue(), True)

        assert back == net
        assert list(back.node_counts) == [4, 6, 5]

    def test_undirected(self, rng):
        net = DynamicNetwork([(float(t), random_graph(rng, 5, False))
                              for t in range(3)], False)
        text = io.StringIO()
        write_edge_list(net, text)
        assert read(text.getvalue(), False) == net


class TestWriteCurves:
    def setup_method(self):
        self.basis = build_basis([0.0, 1.0, 2.0, 3.0], 4)
        values = np.array([[1.0, 2.0, 3.0, 4.0], [0.5, 0.5, 0.5, 0.5]])
        self.coef = CoefficientMatrix(values, self.basis,
                                      ["edges", "reciprocity"])

    def rows(self, grid):
        out = io.StringIO()
        write_curves(self.coef, grid, out)
        return out.getvalue().splitlines()

    def test_one_row_per_time_and_statistic(self):
        lines = self.rows([0.0, 1.0, 2.0, 3.0])
        assert lines[0] == "time,statistic,phi_hat"
        assert len(lines) == 1 + 4 * 2

    def test_held_out_time(self):
        lines = self.rows([1.5])
        value = float(lines[1].split(",")[2])
        assert np.isfinite(value)
        assert lines[2].split(",")[:2] == ["1.5", "reciprocity"]
        assert float(lines[2].split(",")[2]) == pytest.approx(0.5, abs=1e-12)

    def test_empty_grid(self):
        assert self.rows([]) == ["time,statistic,phi_hat"]

    def test_outside_domain(self):
        with pytest.raises(BasisError):
            self.rows([3.5])

    def test_read_back(self):
        out = io.StringIO()
        write_curves(self.coef, [0.0, 3.0], out)
        curves = read_curves(io.StringIO(out.getvalue()))
        times, values = curves["edges"]
        assert list(times) == [0.0, 3.0]
        assert values[0] == pytest.approx(1.0)
        assert values[1] == pytest.approx(4.0)


def test_fit_result_payload(rng):
    data = random_network(rng, 6, 5, True)
    fit = fit_vcergm(data, StatisticSpec("edges"), FitOptions(lam=2.0))
    out = io.StringIO()
    write_fit_result(fit, out, {"stats": "edges"}, seed=7)
    payload = json.loads(out.getvalue())
    assert payload["lambda"] == 2.0
    assert payload["q"] == fit.basis.q
    assert payload["domain"] == [0.0, 5.0]
    assert payload["provenance"]["seed"] == 7
    assert payload["provenance"]["tool"] == "vc-ergm"
    assert len(payload["knots"]) == fit.basis.q + fit.basis.order
