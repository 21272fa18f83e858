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
Dynamic binary networks: immutable snapshots, edge-list CSV input and
the CSV/JSON writers for fitted coefficient curves.

Nodes are 0-based inside the package and 1-based in files.  A dyad is an
ordered pair i != j for directed graphs and an unordered pair i < j for
undirected graphs; dyads are always enumerated row-major.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import csv
import functools

import numpy as np

from .errors import EdgeListError, GraphError
from .utils import format_float, dumps_json, provenance

EDGE_LIST_HEADER = ["time", "from", "to", "node_count"]
CURVES_HEADER = ["time", "statistic", "phi_hat"]
REGISTRY_TAG = "#nodes"


def dyad_count(n, directed):
    if directed:
        return n * (n - 1)
    return n * (n - 1) // 2


@functools.lru_cache(maxsize=64)
def dyad_pairs(n, directed):
    '''Row and column index arrays of all dyads, row-major.'''
    if directed:
        rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    else:
        rows, cols = np.triu_indices(n, 1)
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


def dyad_index(n, directed, i, j):
    if i == j:
        raise GraphError("self-loop (%i, %i) is not a dyad" % (i, j))
    if not (0 <= i < n and 0 <= j < n):
        raise GraphError("node pair (%i, %i) out of range for n=%i" % (i, j, n))
    if directed:
        return i * (n - 1) + (j if j < i else j - 1)
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


class Graph(object):
    def __init__(self, n, directed, values=None):
        n = int(n)
        if n < 1:
            raise GraphError("node count must be positive, got %i" % n)

        self.__n = n
        self.__directed = bool(directed)

        d = dyad_count(n, self.__directed)
        if values is None:
            values = np.zeros(d, dtype=np.uint8)
        else:
            values = np.asarray(values)
            if values.shape != (d,):
                raise GraphError("expected %i dyad values, got shape %s" %
                                 (d, values.shape))
            if np.any((values != 0) & (values != 1)):
                raise GraphError("dyad values must be 0 or 1")
            values = values.astype(np.uint8)
        values.setflags(write=False)
        self.__values = values
        self.__adj = None

    @classmethod
    def from_edges(cls, n, directed, edges):
        values = np.zeros(dyad_count(n, directed), dtype=np.uint8)
        for i, j in edges:
            values[dyad_index(n, directed, int(i), int(j))] = 1
        return cls(n, directed, values)

    @classmethod
    def from_adjacency(cls, adj, directed):
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError("adjacency must be square, got %s" % (adj.shape,))
        if np.any(np.diagonal(adj) != 0):
            raise GraphError("adjacency has self-loops")
        if not directed and np.any(adj != adj.T):
            raise GraphError("undirected adjacency must be symmetric")
        rows, cols = dyad_pairs(adj.shape[0], bool(directed))
        return cls(adj.shape[0], directed, adj[rows, cols])

    @property
    def n(self):
        return self.__n

    @property
    def directed(self):
        return self.__directed

    @property
    def values(self):
        return self.__values

    @property
    def dyad_count(self):
        return self.__values.shape[0]

    @property
    def edge_count(self):
        return int(self.__values.sum())

    def density(self):
        if not self.dyad_count:
            return 0.0
        return self.edge_count / float(self.dyad_count)

    def has_edge(self, i, j):
        return bool(self.__values[dyad_index(self.__n, self.__directed, i, j)])

    def adjacency(self):
        '''Read-only n x n 0/1 matrix; symmetric for undirected graphs.'''
        if self.__adj is None:
            adj = np.zeros((self.__n, self.__n), dtype=np.uint8)
            rows, cols = dyad_pairs(self.__n, self.__directed)
            adj[rows, cols] = self.__values
            if not self.__directed:
                adj[cols, rows] = self.__values
            adj.setflags(write=False)
            self.__adj = adj
        return self.__adj

    def edges(self):
        rows, cols = dyad_pairs(self.__n, self.__directed)
        present = self.__values.astype(bool)
        return list(zip(rows[present].tolist(), cols[present].tolist()))

    def __eq__(self, other):
        return (isinstance(other, Graph) and
                self.__n == other.n and
                self.__directed == other.directed and
                np.array_equal(self.__values, other.values))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.__n, self.__directed, self.__values.tobytes()))

    def __repr__(self):
        return "Graph(n=%i, directed=%s, edges=%i)" % (self.__n,
                                                       self.__directed,
                                                       self.edge_count)


class DynamicNetwork(object):
    def __init__(self, snapshots, directed=None):
        snapshots = [(float(t), g) for t, g in snapshots]
        if not snapshots:
            raise GraphError("a dynamic network needs at least one snapshot")

        snapshots.sort(key=lambda s: s[0])
        for (t0, _), (t1, _) in zip(snapshots[:-1], snapshots[1:]):
            if not t0 < t1:
                raise GraphError("duplicate snapshot time %s" % t1)

        flags = set(g.directed for _, g in snapshots)
        if directed is None:
            directed = snapshots[0][1].directed
        if flags != set([bool(directed)]):
            raise GraphError("all snapshots must share directed=%s" % directed)

        times = np.array([t for t, _ in snapshots], dtype=float)
        if not np.all(np.isfinite(times)):
            raise GraphError("snapshot times must be finite")
        times.setflags(write=False)

        self.__times = times
        self.__graphs = tuple(g for _, g in snapshots)
        self.__directed = bool(directed)

    @property
    def times(self):
        return self.__times

    @property
    def graphs(self):
        return self.__graphs

    @property
    def directed(self):
        return self.__directed

    @property
    def node_counts(self):
        return np.array([g.n for g in self.__graphs], dtype=int)

    @property
    def dyad_counts(self):
        return np.array([g.dyad_count for g in self.__graphs], dtype=int)

    def __len__(self):
        return len(self.__graphs)

    def __iter__(self):
        return iter(zip(self.__times.tolist(), self.__graphs))

    def __getitem__(self, index):
        return self.__times[index], self.__graphs[index]

    def require_fittable(self, min_snapshots=2):
        if len(self) < min_snapshots:
            raise GraphError("fitting needs at least %i snapshots, got %i" %
                             (min_snapshots, len(self)))
        small = [t for t, g in self if g.n < 2]
        if small:
            raise GraphError("snapshot at time %s has no dyads" % small[0])

    def drop(self, indices):
        '''Copy without the snapshots at the given positions.'''
        drop = set(int(i) for i in indices)
        kept = [(t, g) for k, (t, g) in enumerate(self) if k not in drop]
        return DynamicNetwork(kept, self.__directed)

    def __eq__(self, other):
        return (isinstance(other, DynamicNetwork) and
                self.__directed == other.directed and
                np.array_equal(self.__times, other.times) and
                self.__graphs == other.graphs)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "DynamicNetwork(K=%i, directed=%s)" % (len(self), self.__directed)


def _parse_int(text, what, lineno):
    try:
        value = float(text)
    except ValueError:
        raise EdgeListError("line %i: bad %s %r" % (lineno, what, text))
    if value != int(value):
        raise EdgeListError("line %i: %s must be an integer, got %r" %
                            (lineno, what, text))
    return int(value)


def _parse_time(text, lineno):
    try:
        t = float(text)
    except ValueError:
        raise EdgeListError("line %i: bad time %r" % (lineno, text))
    if not np.isfinite(t):
        raise EdgeListError("line %i: time must be finite" % lineno)
    return t


def _set_count(counts, t, n, lineno):
    if n < 1:
        raise EdgeListError("line %i: node count must be positive" % lineno)
    if counts.setdefault(t, n) != n:
        raise EdgeListError("line %i: conflicting node count %i at time %s "
                            "(already %i)" % (lineno, n, t, counts[t]))


def read_edge_list(stream, directed):
    '''
    Read a dynamic network from an edge-list CSV stream.

    ``#nodes,<time>,<count>`` lines before the data rows register times
    and their node counts, including times without any edges.  Other
    ``#`` lines are comments.
    '''
    counts = {}
    edges = {}
    seen_max = {}
    header = None

    reader = csv.reader(stream)
    for lineno, row in enumerate(reader, 1):
        row = [c.strip() for c in row]
        if not row or not any(row):
            continue

        if row[0].lower() == REGISTRY_TAG:
            if header is not None:
                raise EdgeListError("line %i: node registry must precede "
                                    "the data rows" % lineno)
            if len(row) != 3:
                raise EdgeListError("line %i: expected #nodes,<time>,<count>"
                                    % lineno)
            t = _parse_time(row[1], lineno)
            _set_count(counts, t, _parse_int(row[2], "node count", lineno),
                       lineno)
            edges.setdefault(t, set())
            continue

        if row[0].startswith("#"):
            continue

        if header is None:
            if [c.lower() for c in row] != EDGE_LIST_HEADER:
                raise EdgeListError("line %i: expected header %s" %
                                    (lineno, ",".join(EDGE_LIST_HEADER)))
            header = row
            continue

        if len(row) != 4:
            raise EdgeListError("line %i: expected 4 fields, got %i" %
                                (lineno, len(row)))

        t = _parse_time(row[0], lineno)
        i = _parse_int(row[1], "from", lineno)
        j = _parse_int(row[2], "to", lineno)
        if row[3]:
            _set_count(counts, t, _parse_int(row[3], "node_count", lineno),
                       lineno)

        if i == j:
            raise EdgeListError("line %i: self-loop %i -> %i" % (lineno, i, j))
        if i < 1 or j < 1:
            raise EdgeListError("line %i: node labels are 1-based" % lineno)

        seen_max[t] = max(seen_max.get(t, 0), i, j)
        if not directed and i > j:
            i, j = j, i
        # duplicates collapse into the set
        edges.setdefault(t, set()).add((i - 1, j - 1))

    if not edges:
        raise EdgeListError("edge list contains no time points")

    snapshots = []
    for t in sorted(edges):
        n = counts.get(t, seen_max.get(t, 0))
        if seen_max.get(t, 0) > n:
            raise EdgeListError("node label %i out of range at time %s "
                                "(node_count %i)" % (seen_max[t], t, n))
        if n < 1:
            raise EdgeListError("no node count for time %s" % t)
        snapshots.append((t, Graph.from_edges(n, directed, edges[t])))

    printlog("Dyngraph", ": read %i snapshots (directed=%s)" %
             (len(snapshots), directed))
    return DynamicNetwork(snapshots, directed)


def write_edge_list(network, stream):
    '''Inverse of read_edge_list; every time is registered with its size.'''
    for t, g in network:
        stream.write("%s,%s,%i\n" % (REGISTRY_TAG, format_float(t), g.n))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(EDGE_LIST_HEADER)
    for t, g in network:
        for i, j in g.edges():
            writer.writerow([format_float(t), i + 1, j + 1, g.n])


def _coefficients(fit):
    return getattr(fit, "phi_matrix", fit)


def write_curves(fit, grid, stream):
    '''
    One row per (time, statistic) of the fitted curves on ``grid``.

    ``fit`` is a FitResult or a CoefficientMatrix; grid times are in the
    original time units and must lie inside the basis domain.
    '''
    coef = _coefficients(fit)
    grid = np.asarray(grid, dtype=float).reshape(-1)
    values = coef.evaluate_many(grid)

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CURVES_HEADER)
    for t, row in zip(grid.tolist(), values):
        for name, v in zip(coef.names, row):
            writer.writerow([format_float(t), name, format_float(v)])


def read_curves(stream):
    '''Parse a curves CSV into {statistic: (times, values)}.'''
    curves = {}
    header = None
    for lineno, row in enumerate(csv.reader(stream), 1):
        row = [c.strip() for c in row]
        if not row or not any(row) or row[0].startswith("#"):
            continue
        if header is None:
            if [c.lower() for c in row] != CURVES_HEADER:
                raise EdgeListError("line %i: expected header %s" %
                                    (lineno, ",".join(CURVES_HEADER)))
            header = row
            continue
        if len(row) != 3:
            raise EdgeListError("line %i: expected 3 fields" % lineno)
        try:
            t, v = float(row[0]), float(row[2])
        except ValueError:
            raise EdgeListError("line %i: bad number" % lineno)
        curves.setdefault(row[1].lower(), []).append((t, v))

    result = {}
    for name, points in curves.items():
        points.sort()
        result[name] = (np.array([p[0] for p in points]),
                        np.array([p[1] for p in points]))
    return result


def fit_result_payload(fit):
    coef = fit.phi_matrix
    basis = fit.basis
    return {
        "statistics": list(coef.names),
        "phi_hat": coef.values,
        "phi_layout": "row-major, statistics x basis functions",
        "lambda": fit.lam,
        "order": basis.order,
        "q": basis.q,
        "knots": basis.knots,
        "interior_knots": basis.interior_knots,
        "domain": [basis.t_min, basis.t_max],
        "exact_penalty": basis.exact_penalty,
        "iterations": fit.iterations,
        "converged": fit.converged,
        "pseudo_loglik": fit.pseudo_loglik,
        "gcv_path": [[lam, g] for lam, g in fit.gcv_path],
    }


def write_fit_result(fit, stream, config=None, seed=None):
    payload = fit_result_payload(fit)
    payload["provenance"] = provenance(config or {}, seed)
    stream.write(dumps_json(payload))
