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
Drawing networks from (varying-coefficient) ERGMs.

Gibbs sampling uses a systematic scan: each sweep visits every dyad once
and redraws it from its conditional law, whose logit is phi' Delta_ij.
When every statistic only couples a dyad with its mirror (edges and
reciprocity) all dyads i < j are conditionally independent given the
dyads i > j, so the sweep is done as two vectorized blocks, for many
snapshots at once.

Exact enumeration of all 2^D graphs on very small node sets gives the
reference distributions used to check the sampler and the equivalence
of difference-statistic temporal ERGMs with independent ERGMs.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import numpy as np
from scipy.special import expit, logsumexp, softmax

from .errors import GraphError, UsageError
from .dyngraph import DynamicNetwork, Graph, dyad_count, dyad_pairs
from .netstats import compute_statistics, raw_dyad_change
from .workers import JobFailure, run_jobs

INIT_MODES = ("empty", "random")
MAX_EXACT_DYADS = {True: 12, False: 10}


class SamplerConfig(object):
    def __init__(self, sweeps=200, burn_in=100, seed=0, init="empty"):
        self.sweeps = int(sweeps)
        self.burn_in = int(burn_in)
        self.seed = int(seed)
        self.init = init

        if not self.sweeps > self.burn_in >= 0:
            raise UsageError("need sweeps > burn_in >= 0, got %i and %i" %
                             (self.sweeps, self.burn_in))
        if init not in INIT_MODES:
            raise UsageError("init must be one of %s" % ", ".join(INIT_MODES))

    def rng(self, *keys):
        '''Generator of the stream (seed, *keys).'''
        keys = [int(k) for k in keys]
        return np.random.default_rng(np.random.SeedSequence([self.seed] + keys))

    def as_config(self):
        return {"sweeps": self.sweeps, "burn_in": self.burn_in,
                "seed": self.seed, "init": self.init}


def raw_theta(phi, spec, n, directed):
    '''Coefficients on the raw counts: phi_k / max_k(n).'''
    phi = np.asarray(phi, dtype=float).reshape(-1)
    if phi.shape[0] != spec.p:
        raise UsageError("phi has %i entries for %i statistics" %
                         (phi.shape[0], spec.p))
    if not np.all(np.isfinite(phi)):
        raise UsageError("phi must be finite")
    return phi / spec.normalizers(n, directed)


def _initial_state(theta, spec, n, directed, config, rng, batch=1):
    adj = np.zeros((batch, n, n), dtype=np.int64)
    if config.init == "empty":
        return adj
    # dyad-independent start: density of the empty-graph conditional
    names = spec.names
    a = theta[:, names.index("edges")] if "edges" in names else \
        np.zeros(batch)
    rows, cols = dyad_pairs(n, directed)
    for k in range(batch):
        x = (rng[k].random(rows.shape[0]) < expit(a[k])).astype(np.int64)
        adj[k, rows, cols] = x
        if not directed:
            adj[k, cols, rows] = x
    return adj


def _dyadic_terms(theta, spec):
    names = spec.names
    batch = theta.shape[0]
    a = theta[:, names.index("edges")] if "edges" in names else \
        np.zeros(batch)
    b = theta[:, names.index("reciprocity")] if "reciprocity" in names else \
        np.zeros(batch)
    return a, b


def _dyadic_sweep(adj, a, b, directed, uniforms):
    n = adj.shape[1]
    rows, cols = dyad_pairs(n, directed)
    if not directed:
        x = (uniforms < expit(a)[:, None]).astype(np.int64)
        adj[:, rows, cols] = x
        adj[:, cols, rows] = x
        return

    for block in (rows < cols, rows > cols):
        r, c = rows[block], cols[block]
        logit = a[:, None] + b[:, None] * adj[:, c, r]
        adj[:, r, c] = (uniforms[:, block] < expit(logit)).astype(np.int64)


def _sequential_sweep(adj, theta, spec, directed, uniforms):
    n = adj.shape[0]
    rows, cols = dyad_pairs(n, directed)
    for d in range(rows.shape[0]):
        i, j = rows[d], cols[d]
        logit = theta @ raw_dyad_change(adj, spec, directed, i, j)
        x = int(uniforms[d] < expit(logit))
        adj[i, j] = x
        if not directed:
            adj[j, i] = x


def _to_graph(adj, directed):
    rows, cols = dyad_pairs(adj.shape[0], directed)
    return Graph(adj.shape[0], directed, adj[rows, cols])


def _run_batch(thetas, spec, n, directed, config, rngs, sweeps):
    '''Run one chain per row of thetas; rngs holds a Generator per chain.'''
    batch = thetas.shape[0]
    adj = _initial_state(thetas, spec, n, directed, config, rngs, batch)
    d = dyad_count(n, directed)

    if spec.dyadic:
        a, b = _dyadic_terms(thetas, spec)
        for sweep in range(sweeps):
            uniforms = np.stack([rng.random(d) for rng in rngs])
            _dyadic_sweep(adj, a, b, directed, uniforms)
    else:
        for sweep in range(sweeps):
            for k in range(batch):
                _sequential_sweep(adj[k], thetas[k], spec, directed,
                                  rngs[k].random(d))
    return adj


def gibbs_sample(phi, spec, n, directed, config=None, rng=None):
    '''One graph: the chain state after config.sweeps full sweeps.'''
    config = config or SamplerConfig()
    spec.check(directed)
    theta = raw_theta(phi, spec, n, directed)[None, :]
    rng = rng or config.rng()
    adj = _run_batch(theta, spec, n, directed, config, [rng], config.sweeps)
    return _to_graph(adj[0], directed)


def gibbs_chain(phi, spec, n, directed, config=None, draws=1000):
    '''Yield ``draws`` consecutive chain states after the burn-in.'''
    config = config or SamplerConfig()
    spec.check(directed)
    theta = raw_theta(phi, spec, n, directed)[None, :]
    rng = config.rng()
    d = dyad_count(n, directed)
    adj = _initial_state(theta, spec, n, directed, config, [rng])

    for sweep in range(config.burn_in + draws):
        if spec.dyadic:
            a, b = _dyadic_terms(theta, spec)
            _dyadic_sweep(adj, a, b, directed, rng.random(d)[None, :])
        else:
            _sequential_sweep(adj[0], theta[0], spec, directed, rng.random(d))
        if sweep >= config.burn_in:
            yield _to_graph(adj[0], directed)


def curve_values(phi_curve, times, p):
    '''K x p coefficient values of a CoefficientMatrix or a callable.'''
    times = np.asarray(times, dtype=float)
    if hasattr(phi_curve, "evaluate_many"):
        values = phi_curve.evaluate_many(times)
    else:
        values = np.asarray(phi_curve(times), dtype=float)
    values = values.reshape(times.shape[0], -1)
    if values.shape[1] != p:
        raise UsageError("coefficient curve gives %i values for %i "
                         "statistics" % (values.shape[1], p))
    return values


def _sequential_job(job):
    theta, spec, n, directed, config, rng = job
    return _run_batch(theta[None, :], spec, n, directed, config, [rng],
                      config.sweeps)[0]


def sample_sequence(phi_curve, times, spec, n, directed, config=None,
                    stream=(), threads=1):
    '''
    Independent snapshots at ``times`` drawn with phi(t_k).

    Snapshot k uses the stream (seed, *stream, k), so it does not depend on
    how many other snapshots are drawn.  ``n`` is a node count or one per
    time.
    '''
    config = config or SamplerConfig()
    spec.check(directed)
    times = np.asarray(times, dtype=float).reshape(-1)
    sizes = np.broadcast_to(np.asarray(n, dtype=int), times.shape)
    phis = curve_values(phi_curve, times, spec.p)

    rngs = [config.rng(*(tuple(stream) + (k,))) for k in range(len(times))]
    thetas = np.array([raw_theta(phis[k], spec, sizes[k], directed)
                       for k in range(len(times))])
    states = [None] * len(times)

    if spec.dyadic:
        for size in np.unique(sizes):
            idx = np.nonzero(sizes == size)[0]
            adj = _run_batch(thetas[idx], spec, int(size), directed, config,
                             [rngs[k] for k in idx], config.sweeps)
            for pos, k in enumerate(idx):
                states[k] = adj[pos]
    else:
        jobs = [(thetas[k], spec, int(sizes[k]), directed, config, rngs[k])
                for k in range(len(times))]
        for k, result in enumerate(run_jobs(_sequential_job, jobs, threads,
                                            "gibbs")):
            if isinstance(result, JobFailure):
                raise result.error
            states[k] = result

    printlog("Sampler", "   : drew %i snapshots (stream %s)" %
             (len(times), list(stream)))
    return DynamicNetwork([(t, _to_graph(a, directed))
                           for t, a in zip(times.tolist(), states)], directed)


class ExactDistribution(object):
    '''All graphs on n nodes with their ERGM probabilities.

    Graph z has index sum_d x_d 2^d over the dyads in row-major order.'''

    def __init__(self, n, directed, spec, phi, states, stats, probs):
        self.n = n
        self.directed = directed
        self.spec = spec
        self.phi = phi
        self.states = states
        self.stats = stats
        self.probs = probs

    @property
    def support_size(self):
        return self.probs.shape[0]

    def graph(self, index):
        return Graph(self.n, self.directed, self.states[index])

    def index_of(self, graph):
        if graph.n != self.n or graph.directed != self.directed:
            raise GraphError("graph does not belong to this support")
        return int(graph.values.astype(np.int64) @
                   (1 << np.arange(graph.dyad_count, dtype=np.int64)))

    def probability(self, graph):
        return float(self.probs[self.index_of(graph)])

    def counts(self, graphs):
        counts = np.zeros(self.support_size, dtype=np.int64)
        for g in graphs:
            counts[self.index_of(g)] += 1
        return counts

    def tv_distance(self, probs):
        return 0.5 * float(np.abs(np.asarray(probs, dtype=float) -
                                  self.probs).sum())


def _enumerate(n, directed, spec):
    d = dyad_count(n, directed)
    if d > MAX_EXACT_DYADS[bool(directed)]:
        raise GraphError("exact enumeration limited to n <= %i %s" %
                         (4 if directed else 5,
                          "directed" if directed else "undirected"))
    index = np.arange(2 ** d, dtype=np.int64)
    states = ((index[:, None] >> np.arange(d)) & 1).astype(np.uint8)
    stats = np.array([compute_statistics(Graph(n, directed, s), spec)
                      for s in states])
    return states, stats


def exact_distribution(phi, spec, n, directed):
    spec.check(directed)
    phi = np.asarray(phi, dtype=float).reshape(-1)
    if phi.shape[0] != spec.p:
        raise UsageError("phi has %i entries for %i statistics" %
                         (phi.shape[0], spec.p))
    states, stats = _enumerate(n, directed, spec)
    probs = softmax(stats @ phi)
    return ExactDistribution(n, directed, spec, phi, states, stats, probs)


class EquivalenceReport(object):
    def __init__(self, tv, marginal):
        self.tv = tv
        self.marginal = marginal

    @property
    def max_tv(self):
        return float(self.tv.max())

    @property
    def n_states(self):
        return self.tv.shape[0]

    def as_dict(self):
        return {"max_tv": self.max_tv, "n_states": self.n_states}


def check_difference_statistic_equivalence(phi, spec, n, directed=True):
    '''
    Compare the temporal ERGM kernel with transition statistic
    g(y, x) = h(y) - h(x) against the marginal ERGM of h, for every
    conditioning state x.
    '''
    marginal = exact_distribution(phi, spec, n, directed)
    energy = marginal.stats @ marginal.phi

    tv = np.empty(marginal.support_size)
    for x in range(marginal.support_size):
        logits = energy - energy[x]
        kernel = np.exp(logits - logsumexp(logits))
        tv[x] = marginal.tv_distance(kernel)

    report = EquivalenceReport(tv, marginal)
    printlog("Sampler", "   : difference-statistic kernel max TV %g over %i "
             "states" % (report.max_tv, report.n_states))
    return report
