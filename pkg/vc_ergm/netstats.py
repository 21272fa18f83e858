#
# Copyright 2026 The vc-ergm developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

'''
Standardized network statistics and their change statistics.

Every statistic is a raw subgraph count divided by the largest value the
count can take on n nodes, so all standardized values lie in [0, 1].
Change statistics are the standardized difference caused by switching a
single dyad from 0 to 1 with every other dyad held at its observed value.

Two-star and triangle counts on directed graphs use the undirected
skeleton (i and j tied if either arc is present).
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printdebug

import numpy as np
from scipy.special import comb

from .errors import StatisticsError
from .dyngraph import dyad_pairs


def _skeleton(adj, directed):
    adj = np.asarray(adj, dtype=np.int64)
    if directed:
        return adj | adj.T
    return adj


def _skeleton_row(adj, directed, i):
    row = np.asarray(adj[i], dtype=np.int64)
    if directed:
        return row | np.asarray(adj[:, i], dtype=np.int64)
    return row


class Statistic(object):
    '''
    One entry of a StatisticSpec.

    Subclasses give the raw count, the raw change for every dyad as an
    n x n matrix and the normalizing maximum.
    '''
    name = None
    label = None
    directed_only = False
    # conditional law of dyad (i, j) depends on (j, i) only
    dyadic = False

    def supports(self, directed):
        return directed or not self.directed_only

    def maximum(self, n, directed):
        raise NotImplementedError()

    def count(self, adj, directed):
        raise NotImplementedError()

    def change(self, adj, directed):
        raise NotImplementedError()

    def dyad_change(self, adj, directed, i, j):
        return float(self.change(adj, directed)[i, j])

    def __repr__(self):
        return "<%s>" % self.label


class EdgeDensity(Statistic):
    name = "edges"
    label = "EdgeDensity"
    dyadic = True

    def maximum(self, n, directed):
        return float(n * (n - 1) if directed else comb(n, 2, exact=True))

    def count(self, adj, directed):
        total = float(np.asarray(adj, dtype=np.int64).sum())
        return total if directed else total / 2.0

    def change(self, adj, directed):
        n = adj.shape[0]
        return np.ones((n, n))

    def dyad_change(self, adj, directed, i, j):
        return 1.0


class Reciprocity(Statistic):
    name = "reciprocity"
    label = "Reciprocity"
    directed_only = True
    dyadic = True

    def maximum(self, n, directed):
        return float(comb(n, 2, exact=True))

    def count(self, adj, directed):
        adj = np.asarray(adj, dtype=np.int64)
        return float((adj * adj.T).sum()) / 2.0

    def change(self, adj, directed):
        return np.asarray(adj, dtype=float).T.copy()

    def dyad_change(self, adj, directed, i, j):
        return float(adj[j, i])


class CyclicTriad(Statistic):
    name = "ctriad"
    label = "CyclicTriad"
    directed_only = True

    def maximum(self, n, directed):
        return float(2 * comb(n, 3, exact=True))

    def count(self, adj, directed):
        adj = np.asarray(adj, dtype=np.int64)
        return float(np.trace(adj @ adj @ adj)) / 3.0

    def change(self, adj, directed):
        # arc i->j closes one cycle per path j->k->i
        adj = np.asarray(adj, dtype=np.int64)
        return (adj @ adj).T.astype(float)

    def dyad_change(self, adj, directed, i, j):
        adj = np.asarray(adj, dtype=np.int64)
        return float(adj[j, :] @ adj[:, i])


class TwoStar(Statistic):
    name = "twostar"
    label = "TwoStar"

    def maximum(self, n, directed):
        return float(3 * comb(n, 3, exact=True))

    def count(self, adj, directed):
        deg = _skeleton(adj, directed).sum(axis=1)
        return float((deg * (deg - 1) // 2).sum())

    def change(self, adj, directed):
        s = _skeleton(adj, directed)
        deg = s.sum(axis=1)
        delta = (deg[:, None] - s) + (deg[None, :] - s)
        if directed:
            delta = delta * (1 - np.asarray(adj, dtype=np.int64).T)
        return delta.astype(float)

    def dyad_change(self, adj, directed, i, j):
        if directed and adj[j, i]:
            return 0.0
        si, sj = _skeleton_row(adj, directed, i), _skeleton_row(adj, directed, j)
        sij = si[j]
        return float((si.sum() - sij) + (sj.sum() - sij))


class Triangle(Statistic):
    name = "triangle"
    label = "Triangle"

    def maximum(self, n, directed):
        return float(comb(n, 3, exact=True))

    def count(self, adj, directed):
        s = _skeleton(adj, directed)
        return float(np.trace(s @ s @ s)) / 6.0

    def change(self, adj, directed):
        s = _skeleton(adj, directed)
        delta = s @ s
        if directed:
            delta = delta * (1 - np.asarray(adj, dtype=np.int64).T)
        return delta.astype(float)

    def dyad_change(self, adj, directed, i, j):
        if directed and adj[j, i]:
            return 0.0
        si, sj = _skeleton_row(adj, directed, i), _skeleton_row(adj, directed, j)
        return float(si @ sj)


REGISTRY = dict((cls.name, cls) for cls in
                [EdgeDensity, Reciprocity, CyclicTriad, TwoStar, Triangle])


class StatisticSpec(object):
    '''Ordered, duplicate-free list of statistics (the p model terms).'''

    def __init__(self, names):
        if isinstance(names, str):
            names = names.split(",")
        names = [str(n).strip().lower() for n in names if str(n).strip()]
        if not names:
            raise StatisticsError("at least one statistic is required")

        stats = []
        for name in names:
            if name not in REGISTRY:
                raise StatisticsError("unknown statistic %r (choose from %s)" %
                                      (name, ", ".join(sorted(REGISTRY))))
            if name in [s.name for s in stats]:
                raise StatisticsError("duplicate statistic %r" % name)
            stats.append(REGISTRY[name]())

        self.__stats = tuple(stats)

    @classmethod
    def parse(cls, text):
        return cls(text)

    @property
    def statistics(self):
        return self.__stats

    @property
    def names(self):
        return [s.name for s in self.__stats]

    @property
    def p(self):
        return len(self.__stats)

    @property
    def dyadic(self):
        return all(s.dyadic for s in self.__stats)

    def __len__(self):
        return len(self.__stats)

    def __iter__(self):
        return iter(self.__stats)

    def __eq__(self, other):
        return isinstance(other, StatisticSpec) and self.names == other.names

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(tuple(self.names))

    def __repr__(self):
        return "StatisticSpec(%s)" % ",".join(self.names)

    def check(self, directed):
        bad = [s.name for s in self.__stats if not s.supports(directed)]
        if bad:
            raise StatisticsError("%s requires directed graphs" %
                                  ", ".join(bad))

    def normalizers(self, n, directed):
        '''Maximal raw value of every statistic on n nodes.'''
        norms = np.array([s.maximum(n, directed) for s in self.__stats])
        if np.any(norms <= 0):
            bad = [s.name for s, m in zip(self.__stats, norms) if m <= 0]
            raise StatisticsError("%s undefined on %i nodes" %
                                  (", ".join(bad), n))
        return norms


class ChangeMatrix(object):
    '''p x D standardized change statistics of one graph, dyads row-major.'''

    def __init__(self, delta, names):
        delta = np.asarray(delta, dtype=float)
        delta.setflags(write=False)
        self.delta = delta
        self.names = list(names)

    @property
    def p(self):
        return self.delta.shape[0]

    @property
    def dyad_count(self):
        return self.delta.shape[1]


def raw_counts(adj, spec, directed):
    return np.array([s.count(adj, directed) for s in spec])


def raw_change_matrices(adj, spec, directed):
    '''p x n x n raw change statistics for every ordered node pair.'''
    return np.stack([s.change(adj, directed) for s in spec])


def raw_dyad_change(adj, spec, directed, i, j):
    return np.array([s.dyad_change(adj, directed, i, j) for s in spec])


def compute_statistics(graph, spec):
    spec.check(graph.directed)
    norms = spec.normalizers(graph.n, graph.directed)
    return raw_counts(graph.adjacency(), spec, graph.directed) / norms


def change_statistics(graph, spec):
    spec.check(graph.directed)
    norms = spec.normalizers(graph.n, graph.directed)
    rows, cols = dyad_pairs(graph.n, graph.directed)

    raw = raw_change_matrices(graph.adjacency(), spec, graph.directed)
    delta = raw[:, rows, cols] / norms[:, None]

    printdebug("Netstats", ": change statistics n=%i D=%i p=%i" %
               (graph.n, rows.shape[0], spec.p))
    return ChangeMatrix(delta, spec.names)
