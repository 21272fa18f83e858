import itertools

import numpy as np
import pytest
from scipy.special import expit
from scipy.stats import chisquare

from vc_ergm.dyngraph import Graph
from vc_ergm.errors import GraphError, StatisticsError, UsageError
from vc_ergm.netstats import StatisticSpec
from vc_ergm.sampler import SamplerConfig, check_difference_statistic_equivalence, \
    exact_distribution, gibbs_chain, gibbs_sample, raw_theta, sample_sequence

EDGES = StatisticSpec("edges")
EDGES_RECIP = StatisticSpec("edges,reciprocity")


def empirical(dist, graphs):
    counts = dist.counts(graphs)
    return counts, counts / float(counts.sum())


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(sweeps=10, burn_in=10),
        dict(burn_in=-1),
        dict(init="full"),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(UsageError):
            SamplerConfig(**kwargs)

    def test_streams(self):
        config = SamplerConfig(seed=3)
        assert config.rng(1, 2).random() == config.rng(1, 2).random()
        assert config.rng(1, 2).random() != config.rng(2, 1).random()

    def test_raw_theta(self):
        theta = raw_theta([30.0, 6.0], EDGES_RECIP, 6, True)
        assert theta.tolist() == pytest.approx([1.0, 0.4])
        with pytest.raises(UsageError):
            raw_theta([1.0], EDGES_RECIP, 6, True)


class TestGibbs:
    def test_zero_phi_is_uniform(self):
        config = SamplerConfig(sweeps=20, burn_in=10, seed=1)
        graphs = list(gibbs_chain([0.0], EDGES, 5, True, config, draws=1000))
        density = np.mean([g.density() for g in graphs])
        assert abs(density - 0.5) <= 3 * np.sqrt(0.25 / (1000 * 20))

    def test_edges_only_density(self):
        config = SamplerConfig(sweeps=20, burn_in=10, seed=2)
        graphs = list(gibbs_chain([1.5 * 90], EDGES, 10, True, config,
                                  draws=2000))
        density = np.mean([g.density() for g in graphs])
        p = expit(1.5)
        assert abs(density - p) <= 4 * np.sqrt(p * (1 - p) / (2000 * 90))

    def test_seeded(self):
        config = SamplerConfig(sweeps=30, burn_in=10, seed=5)
        a = gibbs_sample([10.0, 2.0], EDGES_RECIP, 8, True, config)
        b = gibbs_sample([10.0, 2.0], EDGES_RECIP, 8, True, config)
        assert a == b
        other = SamplerConfig(sweeps=30, burn_in=10, seed=6)
        assert gibbs_sample([10.0, 2.0], EDGES_RECIP, 8, True, other) != a

    def test_random_start(self):
        config = SamplerConfig(sweeps=5, burn_in=1, init="random")
        g = gibbs_sample([0.0, 5.0], StatisticSpec("edges,triangle"), 6,
                         False, config)
        assert g.n == 6 and not g.directed

    def test_rejects_undirected_reciprocity(self):
        with pytest.raises(StatisticsError):
            gibbs_sample([0.0, 0.0], EDGES_RECIP, 5, False)

    def test_dyadic_stationary_law(self):
        phi = [1.0, 0.5]
        dist = exact_distribution(phi, EDGES_RECIP, 3, True)
        config = SamplerConfig(sweeps=101, burn_in=100, seed=11)
        counts, freq = empirical(dist, gibbs_chain(phi, EDGES_RECIP, 3, True,
                                                   config, draws=50000))
        assert chisquare(counts, dist.probs * counts.sum()).pvalue > 0.01
        assert dist.tv_distance(freq) < 0.02

    def test_sequential_stationary_law(self):
        phi = [1.0, 2.0]
        spec = StatisticSpec("edges,triangle")
        dist = exact_distribution(phi, spec, 4, False)
        config = SamplerConfig(sweeps=101, burn_in=100, seed=12)
        _, freq = empirical(dist, gibbs_chain(phi, spec, 4, False, config,
                                              draws=10000))
        assert dist.tv_distance(freq) < 0.06


class TestSequence:
    def setup_method(self):
        self.config = SamplerConfig(sweeps=40, burn_in=20, seed=9)

    def test_shape(self):
        times = np.arange(1.0, 7.0)
        net = sample_sequence(lambda t: np.zeros((len(t), 2)), times,
                              EDGES_RECIP, 6, True, self.config)
        assert len(net) == 6
        assert list(net.times) == list(times)
        assert all(g.n == 6 for g in net.graphs)

    def test_snapshots_do_not_depend_on_length(self):
        curve = lambda t: np.column_stack([np.sin(t) * 20, np.ones_like(t)])
        short = sample_sequence(curve, np.arange(3.0), EDGES_RECIP, 5, True,
                                self.config, stream=(4,))
        long_ = sample_sequence(curve, np.arange(8.0), EDGES_RECIP, 5, True,
                                self.config, stream=(4,))
        assert short.graphs == long_.graphs[:3]

    def test_streams_differ(self):
        curve = lambda t: np.zeros((len(t), 1))
        a = sample_sequence(curve, np.arange(4.0), EDGES, 8, True,
                            self.config, stream=(1,))
        b = sample_sequence(curve, np.arange(4.0), EDGES, 8, True,
                            self.config, stream=(2,))
        assert a != b

    def test_varying_node_counts(self):
        net = sample_sequence(lambda t: np.zeros((len(t), 1)), [0.0, 1.0, 2.0],
                              EDGES, [4, 6, 4], True, self.config)
        assert list(net.node_counts) == [4, 6, 4]

    def test_sequential_threads(self):
        spec = StatisticSpec("edges,twostar")
        curve = lambda t: np.tile([0.0, 1.0], (len(t), 1))
        a = sample_sequence(curve, np.arange(4.0), spec, 5, False,
                            self.config, threads=1)
        b = sample_sequence(curve, np.arange(4.0), spec, 5, False,
                            self.config, threads=3)
        assert a == b

    def test_density_tracks_curve(self):
        times = np.arange(1.0, 51.0)
        curve = lambda t: (0.3 * np.sin(2 * np.pi * t / 50) * 870)[:, None]
        net = sample_sequence(curve, times, EDGES, 30, True,
                              SamplerConfig(sweeps=20, burn_in=10, seed=0))
        density = [g.density() for g in net.graphs]
        expected = expit(0.3 * np.sin(2 * np.pi * times / 50))
        assert np.corrcoef(density, expected)[0, 1] > 0.5

    def test_wrong_curve_width(self):
        with pytest.raises(UsageError):
            sample_sequence(lambda t: np.zeros((len(t), 3)), [0.0, 1.0],
                            EDGES, 4, True, self.config)


class TestExactDistribution:
    def test_uniform_at_zero(self):
        dist = exact_distribution([0.0, 0.0], EDGES_RECIP, 3, True)
        assert dist.support_size == 64
        assert np.allclose(dist.probs, 1.0 / 64)

    def test_sums_to_one(self):
        dist = exact_distribution([2.0, -1.0, 0.5],
                                  StatisticSpec("edges,twostar,triangle"), 4,
                                  False)
        assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)

    def test_edges_only_factorizes(self):
        phi = 0.8 * 6
        dist = exact_distribution([phi], EDGES, 3, True)
        p = expit(0.8)
        for bits in itertools.product([0, 1], repeat=6):
            g = Graph(3, True, np.array(bits))
            k = sum(bits)
            assert dist.probability(g) == pytest.approx(
                p ** k * (1 - p) ** (6 - k), rel=1e-10)

    def test_index_round_trip(self):
        dist = exact_distribution([0.0], EDGES, 3, False)
        for index in range(dist.support_size):
            assert dist.index_of(dist.graph(index)) == index

    def test_too_large(self):
        with pytest.raises(GraphError):
            exact_distribution([0.0], EDGES, 5, True)
        with pytest.raises(GraphError):
            exact_distribution([0.0], EDGES, 6, False)


class TestDifferenceStatistic:
    @pytest.mark.parametrize("spec, phi", [
        (EDGES, [0.0]),
        (EDGES, [0.7]),
        (EDGES_RECIP, [0.7, -1.3]),
    ])
    def test_kernel_equals_marginal(self, spec, phi):
        report = check_difference_statistic_equivalence(phi, spec, 3, True)
        assert report.n_states == 64
        assert report.max_tv < 1e-12

    def test_undirected_triangles(self):
        report = check_difference_statistic_equivalence(
            [0.4, 1.5], StatisticSpec("edges,triangle"), 4, False)
        assert report.max_tv < 1e-12
        assert report.as_dict()["n_states"] == 64
