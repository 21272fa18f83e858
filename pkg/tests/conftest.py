from __future__ import absolute_import

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from vc_ergm.dyngraph import DynamicNetwork, Graph, dyad_count


TOY_DIRECTED = """time,from,to,node_count
0,1,2,3
0,2,1,3
0,2,3,3
"""

TOY_UNDIRECTED = """time,from,to,node_count
0,1,2,3
0,2,3,3
1,1,2,3
"""


def random_graph(rng, n, directed, density=0.5):
    values = (rng.random(dyad_count(n, directed)) < density).astype(np.uint8)
    return Graph(n, directed, values)


def random_network(rng, k, n, directed, density=0.5, times=None):
    times = np.arange(k, dtype=float) if times is None else times
    return DynamicNetwork([(t, random_graph(rng, n, directed, density))
                           for t in times], directed)


def fixed_count_network(n, k, edges, seed=0):
    '''Directed snapshots that all have exactly ``edges`` arcs.'''
    rng = np.random.default_rng(seed)
    d = dyad_count(n, True)
    snapshots = []
    for t in range(k):
        values = np.zeros(d, dtype=np.uint8)
        values[rng.choice(d, size=edges, replace=False)] = 1
        snapshots.append((float(t), Graph(n, True, values)))
    return DynamicNetwork(snapshots, True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def toy_directed_path(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(TOY_DIRECTED)
    return str(path)


@pytest.fixture
def toy_undirected_path(tmp_path):
    path = tmp_path / "toy_undirected.csv"
    path.write_text(TOY_UNDIRECTED)
    return str(path)
