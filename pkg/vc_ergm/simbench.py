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
Simulation studies: coefficient scenarios, integrated absolute error,
estimation accuracy with missing snapshots, power of the heterogeneity
test and fitting time against the number of snapshots.

Scenario curves are given on the raw-count scale (the change in a dyad's
logit per unit of raw statistic).  The model coefficient on the
standardized statistic is the raw value times the statistic's maximum on
n nodes, and errors are reported back on the raw scale.

Snapshots sit at t = 1..K and the period/domain length T equals K.

Benchmark configuration files are INI files with one section per study:

  [estimation]  scenario, n, k, missing, replicates, seed, stats,
                directed, scale, methods, sweeps, burn_in, basis_dim,
                spline_order, lambda, threads
  [power]       m_grid, k_grid, n, replicates, b, alpha, seed, directed,
                sweeps, burn_in, threads
  [timing]      k_grid, n, replicates, seed, scenario, sweeps, burn_in
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import time

import numpy as np
from scipy.special import logit

from .errors import UsageError
from .config import read_sections
from .netstats import StatisticSpec
from .mple import FitOptions, fit_cross_sectional, fit_two_step, \
    fit_vcergm, make_basis
from .sampler import SamplerConfig, sample_sequence
from .inference import TestOptions, bootstrap_test
from .workers import JobFailure, run_jobs

SCENARIO_KINDS = ("sinusoidal", "quadratic", "er", "nonsmooth", "power")
METHODS = ("vcergm", "cross", "twostep")

# a sin((t + b) / c) + d
SINUSOIDAL = {"edges": (1.0, 20.0, 5.0, 1.0),
              "reciprocity": (0.6, 20.0, 3.0, 0.4)}
# a (t - T/2)^2 + b
QUADRATIC = {"edges": (1.0 / 25 ** 2, 0.0),
             "reciprocity": (-1.0 / 30 ** 2, 0.5)}
ER_EDGE_PROBABILITY = 0.85
# N(mean, sd) per time
NONSMOOTH = {"edges": (0.0, 1.0),
             "reciprocity": (1.5, 0.6)}

# stream keys, kept apart from replicate numbers
NONSMOOTH_KEY = 7001
MISSING_KEY = 7002


class PhiCurve(object):
    '''
    Coefficient curves phi(t) for a list of statistics.

    ``func(times)`` returns len(times) x p values on ``scale`` ("raw" or
    "standardized").
    '''

    def __init__(self, names, func, scale="raw"):
        if scale not in ("raw", "standardized"):
            raise UsageError("scale must be raw or standardized")
        self.names = list(names)
        self.func = func
        self.scale = scale

    def values(self, times):
        times = np.asarray(times, dtype=float).reshape(-1)
        return np.asarray(self.func(times), dtype=float).reshape(
            times.shape[0], len(self.names))

    def norms(self, n, directed):
        return StatisticSpec(self.names).normalizers(n, directed)

    def standardized(self, times, n, directed):
        values = self.values(times)
        if self.scale == "raw":
            values = values * self.norms(n, directed)
        return values

    def raw(self, times, n, directed):
        values = self.values(times)
        if self.scale == "standardized":
            values = values / self.norms(n, directed)
        return values

    def for_sampler(self, n, directed):
        '''Callable giving the standardized coefficients sample_sequence
        expects.'''
        return lambda times: self.standardized(times, n, directed)

    @classmethod
    def from_points(cls, curves, names, scale="standardized"):
        '''Piecewise-linear curve through {name: (times, values)}.'''
        missing = [n for n in names if n not in curves]
        if missing:
            raise UsageError("curve file has no %s curve" % missing[0])

        def func(times):
            return np.column_stack([np.interp(times, *curves[n])
                                    for n in names])
        return cls(names, func, scale)


class Scenario(object):
    def __init__(self, kind, n=30, K=50, missing=0, replicates=20, seed=0,
                 stats="edges,reciprocity", directed=True, params=None,
                 amplitude=0.0, scale="raw", sampler=None):
        if kind not in SCENARIO_KINDS:
            raise UsageError("unknown scenario %r (choose from %s)" %
                             (kind, ", ".join(SCENARIO_KINDS)))
        self.kind = kind
        self.n = int(n)
        self.K = int(K)
        self.missing = int(missing)
        self.replicates = int(replicates)
        self.seed = int(seed)
        self.spec = stats if isinstance(stats, StatisticSpec) else \
            StatisticSpec(stats)
        self.directed = bool(directed)
        self.params = params or {}
        self.amplitude = float(amplitude)
        self.scale = scale
        self.sampler = sampler or SamplerConfig(seed=self.seed)

        if self.K < 2:
            raise UsageError("a scenario needs at least 2 snapshots")
        if not 0 <= self.missing <= self.K - 2:
            raise UsageError("missing must lie in [0, K - 2], got %i" %
                             self.missing)
        self.spec.check(self.directed)

    @property
    def times(self):
        return np.arange(1, self.K + 1, dtype=float)

    @property
    def period(self):
        return float(self.K)

    def as_config(self):
        return {"scenario": self.kind, "n": self.n, "k": self.K,
                "missing": self.missing, "replicates": self.replicates,
                "seed": self.seed, "stats": self.spec.names,
                "directed": self.directed, "amplitude": self.amplitude,
                "scale": self.scale, "params": self.params,
                "sampler": self.sampler.as_config()}


def _param(scenario, table, name):
    if name in scenario.params:
        return scenario.params[name]
    if name in table:
        return table[name]
    raise UsageError("scenario %s has no parameters for %s" %
                     (scenario.kind, name))


def make_phi_curve(scenario):
    '''Closed-form coefficient curves of a scenario.'''
    names = scenario.spec.names
    period = scenario.period
    columns = []

    for name in names:
        if scenario.kind == "sinusoidal":
            a, b, c, d = _param(scenario, SINUSOIDAL, name)
            columns.append(lambda t, a=a, b=b, c=c, d=d:
                           a * np.sin((t + b) / c) + d)
        elif scenario.kind == "power":
            m = scenario.amplitude if name == "edges" else 0.0
            columns.append(lambda t, m=m: m * np.sin(2 * np.pi * t / period))
        elif scenario.kind == "quadratic":
            a, b = _param(scenario, QUADRATIC, name)
            columns.append(lambda t, a=a, b=b: a * (t - period / 2.0) ** 2 + b)
        elif scenario.kind == "er":
            p = scenario.params.get("p_edge", ER_EDGE_PROBABILITY)
            value = float(logit(p)) if name == "edges" else 0.0
            columns.append(lambda t, v=value: np.full(np.shape(t), v))
        elif scenario.kind == "nonsmooth":
            mean, sd = _param(scenario, NONSMOOTH, name)
            rng = np.random.default_rng(np.random.SeedSequence(
                [scenario.seed, NONSMOOTH_KEY, names.index(name)]))
            knots_t = scenario.times
            draws = rng.normal(mean, sd, size=knots_t.shape[0])
            columns.append(lambda t, x=knots_t, y=draws: np.interp(t, x, y))

    def func(times):
        return np.column_stack([f(times) for f in columns])

    return PhiCurve(names, func, scenario.scale)


def iae(true_curve, estimated_curve, times=None):
    '''
    Sum over times of |phi(t) - phi_hat(t)|; NaN estimates (times without
    an estimate) are left out.  Curves are arrays or callables of times.
    '''
    if callable(true_curve):
        true_curve = true_curve(times)
    if callable(estimated_curve):
        estimated_curve = estimated_curve(times)
    diff = np.abs(np.asarray(true_curve, dtype=float) -
                  np.asarray(estimated_curve, dtype=float))
    total = np.nansum(diff, axis=0)
    if np.ndim(total) == 0:
        return float(total)
    return total


def _mean_sd(values):
    values = np.asarray([v for v in values if v is not None], dtype=float)
    if values.shape[0] == 0:
        return {"mean": None, "sd": None, "count": 0}
    sd = float(np.std(values, ddof=1)) if values.shape[0] > 1 else 0.0
    return {"mean": float(np.mean(values)), "sd": sd,
            "count": int(values.shape[0])}


def summarize(study, records):
    '''Aggregates of a study, computed from its per-replicate records.'''
    if study == "estimation":
        summary = {}
        for rec in records:
            by_stat = summary.setdefault(rec["method"], {})
            for name, value in rec["iae"].items():
                by_stat.setdefault(name, []).append(value)
        return dict((method, dict((name, _mean_sd(values))
                                  for name, values in by_stat.items()))
                    for method, by_stat in summary.items())

    if study == "power":
        cells = {}
        for rec in records:
            cells.setdefault((rec["K"], rec["M"]), []).append(rec)
        rows = []
        for (k, m) in sorted(cells):
            recs = cells[(k, m)]
            rows.append({"K": k, "M": m, "replicates": len(recs),
                         "bootstrap": float(np.mean([r["reject_bootstrap"]
                                                     for r in recs])),
                         "chisq": float(np.mean([r["reject_chisq"]
                                                 for r in recs]))})
        return {"rejection": rows}

    if study == "timing":
        cells = {}
        for rec in records:
            cells.setdefault(rec["K"], []).append(rec)
        rows = []
        for k in sorted(cells):
            v = _mean_sd([r["vcergm_seconds"] for r in cells[k]])
            c = _mean_sd([r["cross_seconds"] for r in cells[k]])
            rows.append({"K": k, "vcergm": v, "cross": c,
                         "ratio": v["mean"] / c["mean"] if c["mean"] else None})
        slopes = {}
        if len(rows) > 1:
            log_k = np.log([r["K"] for r in rows])
            for method in ("vcergm", "cross"):
                log_t = np.log([r[method]["mean"] for r in rows])
                slopes[method] = float(np.polyfit(log_k, log_t, 1)[0])
        return {"by_K": rows, "loglog_slope": slopes}

    raise UsageError("unknown study %r" % study)


class BenchReport(object):
    def __init__(self, study, config, records, truth=None):
        self.study = study
        self.config = config
        self.records = records
        self.truth = truth
        self.summary = summarize(study, records)

    def recompute(self):
        return summarize(self.study, self.records)

    def as_dict(self):
        payload = {"study": self.study, "config": self.config,
                   "records": self.records, "summary": self.summary}
        if self.truth is not None:
            payload["truth"] = self.truth
        return payload


def _missing_indices(scenario, replicate):
    if not scenario.missing:
        return np.array([], dtype=int)
    rng = np.random.default_rng(np.random.SeedSequence(
        [scenario.seed, replicate, MISSING_KEY]))
    interior = np.arange(1, scenario.K - 1)
    return np.sort(rng.choice(interior, size=scenario.missing, replace=False))


class _EstimationReplicate(object):
    def __init__(self, scenario, curve, methods, fit_options):
        self.scenario = scenario
        self.curve = curve
        self.methods = methods
        self.fit_options = fit_options

    def __call__(self, replicate):
        sc = self.scenario
        names = sc.spec.names
        norms = sc.spec.normalizers(sc.n, sc.directed)
        truth = self.curve.raw(sc.times, sc.n, sc.directed)

        data = sample_sequence(self.curve.for_sampler(sc.n, sc.directed),
                               sc.times, sc.spec, sc.n, sc.directed,
                               sc.sampler, stream=(replicate,))
        dropped = _missing_indices(sc, replicate)
        observed = data.drop(dropped)

        records = []

        def record(method, raw_estimate):
            errors = iae(truth, raw_estimate)
            records.append({
                "replicate": replicate, "method": method,
                "missing": dropped.tolist(),
                "iae": dict((name, float(e)) for name, e in zip(names, errors)),
                "curves": dict((name, raw_estimate[:, k])
                               for k, name in enumerate(names)),
            })

        cross = None
        if "cross" in self.methods or "twostep" in self.methods:
            cross = fit_cross_sectional(observed, sc.spec)

        if "vcergm" in self.methods:
            fit = fit_vcergm(observed, sc.spec, self.fit_options)
            record("vcergm", fit.phi_matrix.evaluate_many(sc.times) / norms)

        if "cross" in self.methods and not sc.missing:
            record("cross", cross.estimates / norms)

        if "twostep" in self.methods:
            basis = make_basis(observed, self.fit_options)
            coef = fit_two_step(observed, sc.spec, basis, cross)
            record("twostep", coef.evaluate_many(sc.times) / norms)

        return records


def run_estimation_study(scenario, methods=METHODS, fit_options=None,
                         threads=1):
    '''
    Simulate scenario.replicates sequences, delete scenario.missing
    interior snapshots from each and compare the fitted curves with the
    truth.  Cross-sectional errors are only recorded without deletions.
    '''
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise UsageError("unknown method %r" % bad[0])
    fit_options = fit_options or FitOptions()
    curve = make_phi_curve(scenario)

    job = _EstimationReplicate(scenario, curve, methods, fit_options)
    records = []
    for result in run_jobs(job, range(scenario.replicates), threads,
                           "estimation"):
        if isinstance(result, JobFailure):
            raise result.error
        records.extend(result)

    truth = dict((name, col) for name, col in
                 zip(scenario.spec.names,
                     curve.raw(scenario.times, scenario.n, scenario.directed).T))
    config = scenario.as_config()
    config["methods"] = list(methods)
    config["fit"] = fit_options.as_config()
    report = BenchReport("estimation", config, records,
                         {"times": scenario.times, "curves": truth})
    printlog("Bench", "     : estimation %s: %s" %
             (scenario.kind, report.summary))
    return report


class PowerOptions(object):
    def __init__(self, n=30, replicates=20, B=200, alpha=0.05, seed=0,
                 directed=True, sampler=None, fit=None, threads=1):
        self.n = int(n)
        self.replicates = int(replicates)
        self.B = int(B)
        self.alpha = float(alpha)
        self.seed = int(seed)
        self.directed = bool(directed)
        self.sampler = sampler or SamplerConfig(seed=self.seed)
        self.fit = fit or FitOptions()
        self.threads = int(threads)

    def as_config(self):
        return {"n": self.n, "replicates": self.replicates, "B": self.B,
                "alpha": self.alpha, "seed": self.seed,
                "directed": self.directed,
                "sampler": self.sampler.as_config(),
                "fit": self.fit.as_config()}


def _stream_seed(*keys):
    return int(np.random.SeedSequence([int(k) for k in keys])
               .generate_state(1)[0])


class _PowerReplicate(object):
    def __init__(self, options):
        self.options = options

    def __call__(self, job):
        k, m, replicate = job
        opts = self.options
        scenario = Scenario("power", n=opts.n, K=k, replicates=1,
                            seed=opts.seed, stats="edges",
                            directed=opts.directed, amplitude=m,
                            sampler=opts.sampler)
        curve = make_phi_curve(scenario)
        # same stream for every amplitude: common random numbers
        data = sample_sequence(curve.for_sampler(opts.n, opts.directed),
                               scenario.times, scenario.spec, opts.n,
                               opts.directed, opts.sampler,
                               stream=(k, replicate))

        boot_seed = _stream_seed(opts.seed, k, replicate)
        sampler = SamplerConfig(opts.sampler.sweeps, opts.sampler.burn_in,
                                boot_seed, opts.sampler.init)
        result = bootstrap_test(data, scenario.spec,
                                TestOptions(opts.B, opts.alpha, boot_seed,
                                            fit=opts.fit, sampler=sampler))
        return {"K": k, "M": m, "replicate": replicate,
                "t": result.t_observed,
                "p_bootstrap": result.p_value_bootstrap,
                "p_chisq": result.p_value_chisq,
                "reject_bootstrap": bool(result.p_value_bootstrap <= opts.alpha),
                "reject_chisq": bool(result.p_value_chisq <= opts.alpha),
                "dropped": result.dropped}


def run_power_study(m_grid, k_grid, options=None):
    '''Rejection rates of both tests for phi(t) = M sin(2 pi t / T).'''
    options = options or PowerOptions()
    jobs = [(int(k), float(m), r) for k in k_grid for m in m_grid
            for r in range(options.replicates)]

    records = []
    for result in run_jobs(_PowerReplicate(options), jobs, options.threads,
                           "power"):
        if isinstance(result, JobFailure):
            raise result.error
        records.append(result)

    config = options.as_config()
    config.update({"m_grid": [float(m) for m in m_grid],
                   "k_grid": [int(k) for k in k_grid]})
    report = BenchReport("power", config, records)
    printlog("Bench", "     : power %s" % report.summary)
    return report


class TimingOptions(object):
    def __init__(self, n=30, replicates=3, seed=0, scenario="sinusoidal",
                 sampler=None, fit=None):
        self.n = int(n)
        self.replicates = int(replicates)
        self.seed = int(seed)
        self.scenario = scenario
        self.sampler = sampler or SamplerConfig(seed=self.seed)
        self.fit = fit or FitOptions()

    def as_config(self):
        return {"n": self.n, "replicates": self.replicates,
                "seed": self.seed, "scenario": self.scenario,
                "sampler": self.sampler.as_config(),
                "fit": self.fit.as_config()}


def run_timing_study(k_grid, options=None):
    '''Wall-clock time of VCERGM and cross-sectional fits on identical
    data, single-threaded.'''
    options = options or TimingOptions()
    records = []
    for k in k_grid:
        scenario = Scenario(options.scenario, n=options.n, K=k,
                            seed=options.seed, sampler=options.sampler)
        curve = make_phi_curve(scenario)
        for r in range(options.replicates):
            data = sample_sequence(curve.for_sampler(options.n, True),
                                   scenario.times, scenario.spec, options.n,
                                   True, options.sampler, stream=(k, r))
            start = time.perf_counter()
            fit_vcergm(data, scenario.spec, options.fit)
            middle = time.perf_counter()
            fit_cross_sectional(data, scenario.spec)
            end = time.perf_counter()
            records.append({"K": int(k), "replicate": r,
                            "vcergm_seconds": middle - start,
                            "cross_seconds": end - middle})
            printlog("Bench", "     : timing K=%i rep %i vcergm %.3fs "
                     "cross %.3fs" % (k, r, middle - start, end - middle))

    config = options.as_config()
    config["k_grid"] = [int(k) for k in k_grid]
    return BenchReport("timing", config, records)


BENCH_KEYS = {
    "estimation": ("scenario", "n", "k", "missing", "replicates", "seed",
                   "stats", "directed", "scale", "methods", "sweeps",
                   "burn_in", "basis_dim", "spline_order", "lambda",
                   "threads"),
    "power": ("m_grid", "k_grid", "n", "replicates", "b", "alpha", "seed",
              "directed", "sweeps", "burn_in", "threads"),
    "timing": ("k_grid", "n", "replicates", "seed", "scenario", "sweeps",
               "burn_in"),
}


def _numbers(text, kind=float):
    try:
        return [kind(float(v)) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError("bad number list %r" % text)


def _get(values, key, default, kind):
    if key not in values:
        return default
    try:
        if kind is bool:
            return values[key].strip().lower() in ("1", "true", "yes", "on")
        return kind(float(values[key])) if kind is int else kind(values[key])
    except ValueError:
        raise UsageError("bad value %r for %s" % (values[key], key))


def load_bench_config(filename):
    return read_sections(filename, BENCH_KEYS)


def run_study(study, values=None, threads=1):
    '''Run one study from the key/value settings of its config section.'''
    values = values or {}
    seed = _get(values, "seed", 0, int)
    sampler = SamplerConfig(_get(values, "sweeps", 200, int),
                            _get(values, "burn_in", 100, int), seed)
    threads = _get(values, "threads", threads, int)

    if study == "estimation":
        fit = FitOptions(basis_dim=values.get("basis_dim", "auto"),
                         order=_get(values, "spline_order", 4, int),
                         lam=values.get("lambda", "auto"))
        scenario = Scenario(values.get("scenario", "sinusoidal"),
                            n=_get(values, "n", 30, int),
                            K=_get(values, "k", 50, int),
                            missing=_get(values, "missing", 0, int),
                            replicates=_get(values, "replicates", 20, int),
                            seed=seed,
                            stats=values.get("stats", "edges,reciprocity"),
                            directed=_get(values, "directed", True, bool),
                            scale=values.get("scale", "raw"),
                            sampler=sampler)
        methods = [m.strip() for m in
                   values.get("methods", ",".join(METHODS)).split(",")
                   if m.strip()]
        return run_estimation_study(scenario, methods, fit, threads)

    if study == "power":
        options = PowerOptions(n=_get(values, "n", 30, int),
                               replicates=_get(values, "replicates", 20, int),
                               B=_get(values, "b", 200, int),
                               alpha=_get(values, "alpha", 0.05, float),
                               seed=seed,
                               directed=_get(values, "directed", True, bool),
                               sampler=sampler, threads=threads)
        return run_power_study(
            _numbers(values.get("m_grid", "0,0.15,0.3")),
            _numbers(values.get("k_grid", "30"), int), options)

    if study == "timing":
        options = TimingOptions(n=_get(values, "n", 30, int),
                                replicates=_get(values, "replicates", 3, int),
                                seed=seed,
                                scenario=values.get("scenario", "sinusoidal"),
                                sampler=sampler)
        return run_timing_study(
            _numbers(values.get("k_grid", "10,40,70,100"), int), options)

    raise UsageError("unknown study %r" % study)
