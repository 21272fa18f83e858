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
Pseudo-likelihood ratio test of temporal heterogeneity.

H0 holds the coefficients constant over time, H1 lets them vary in the
fitted spline basis.  The null distribution of

    T = 2 (log PL(Phi_H1) - log PL(Phi_H0))

comes from a parametric bootstrap: sequences are drawn from the fitted
null model at the observed times and node counts, both models are refit
and T is recomputed.  A chi-squared approximation is offered as well.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog, printwarn

import warnings

import numpy as np
from scipy.stats import chi2

from .errors import BootstrapError, DimensionError, SeparationError, \
    UsageError, VcergmWarning
from .mple import CoefficientMatrix, FitOptions, assemble_design, \
    fit_null_pooled, fit_vcergm, log_pseudo_likelihood
from .netstats import StatisticSpec
from .sampler import SamplerConfig, sample_sequence
from .workers import JobFailure, run_jobs

METHODS = ("bootstrap", "chisq")
MAX_DROPPED = 0.10


def _coefficients(fit):
    return getattr(fit, "phi_matrix", fit)


def pseudo_log_likelihood(phi_matrix, data, spec, basis):
    '''log PL(Phi | data), summed over all dyads of all snapshots.'''
    phi_matrix = _coefficients(phi_matrix)
    if phi_matrix.values.shape != (spec.p, basis.q):
        raise DimensionError("coefficients %s do not match p=%i q=%i" %
                             (phi_matrix.values.shape, spec.p, basis.q))
    system = assemble_design(data, spec, basis)
    return log_pseudo_likelihood(system, phi_matrix.vec())


def _on_basis(coef, basis):
    if coef.basis is basis:
        return coef
    if coef.q == 1:
        return CoefficientMatrix.constant(coef.values[:, 0], basis, coef.names)
    if coef.q != basis.q:
        raise DimensionError("cannot compare coefficients with q=%i and "
                             "q=%i" % (coef.q, basis.q))
    return CoefficientMatrix(coef.values, basis, coef.names)


def test_statistic(fit_h1, fit_h0, data, spec=None):
    '''T = 2 (log PL(Phi_H1) - log PL(Phi_H0)) on the H1 basis.'''
    h1 = _coefficients(fit_h1)
    h0 = _on_basis(_coefficients(fit_h0), h1.basis)
    if spec is None:
        spec = getattr(fit_h1, "spec", None)
    if spec is None:
        spec = StatisticSpec(h1.names)

    l1 = pseudo_log_likelihood(h1, data, spec, h1.basis)
    l0 = pseudo_log_likelihood(h0, data, spec, h1.basis)
    return 2.0 * (l1 - l0)


def chisq_pvalue(t_observed, p, q):
    '''Chi-squared survival at t with p (q - 1) degrees of freedom.'''
    df = int(p) * (int(q) - 1)
    if df <= 0:
        msg = "chi-squared test is vacuous with q=%i" % q
        printwarn("Inference", ":", msg)
        warnings.warn(msg, VcergmWarning)
        return (1.0 if t_observed <= 0 else 0.0), 0
    return float(chi2.sf(t_observed, df)), df


class TestOptions(object):
    __test__ = False

    def __init__(self, B=1000, alpha=0.05, seed=0, method="bootstrap",
                 fit=None, sampler=None, threads=1):
        if int(B) < 1:
            raise UsageError("B must be at least 1, got %r" % B)
        if not 0 < float(alpha) < 1:
            raise UsageError("alpha must lie in (0, 1), got %r" % alpha)
        if method not in METHODS:
            raise UsageError("method must be one of %s" % ", ".join(METHODS))
        self.B = int(B)
        self.alpha = float(alpha)
        self.seed = int(seed)
        self.method = method
        self.fit = fit or FitOptions()
        self.sampler = sampler or SamplerConfig(seed=self.seed)
        self.threads = int(threads)

    def as_config(self):
        config = {"B": self.B, "alpha": self.alpha, "seed": self.seed,
                  "method": self.method, "threads": self.threads}
        config.update(self.fit.as_config())
        config["sampler"] = self.sampler.as_config()
        return config


class TestResult(object):
    __test__ = False

    def __init__(self, t_observed, bootstrap_stats, p_value_bootstrap,
                 p_value_chisq, df_chisq, B, alpha, method, critical_value,
                 dropped, fit_h1, phi_h0):
        self.t_observed = t_observed
        self.bootstrap_stats = bootstrap_stats
        self.p_value_bootstrap = p_value_bootstrap
        self.p_value_chisq = p_value_chisq
        self.df_chisq = df_chisq
        self.B = B
        self.alpha = alpha
        self.method = method
        self.critical_value = critical_value
        self.dropped = dropped
        self.fit_h1 = fit_h1
        self.phi_h0 = phi_h0

    @property
    def p_value(self):
        if self.method == "chisq":
            return self.p_value_chisq
        return self.p_value_bootstrap

    @property
    def reject(self):
        return self.p_value <= self.alpha

    def as_dict(self):
        return {
            "t_observed": self.t_observed,
            "bootstrap_stats": self.bootstrap_stats,
            "p_value_bootstrap": self.p_value_bootstrap,
            "p_value_chisq": self.p_value_chisq,
            "df_chisq": self.df_chisq,
            "B": self.B,
            "B_retained": len(self.bootstrap_stats),
            "dropped": self.dropped,
            "alpha": self.alpha,
            "method": self.method,
            "critical_value": self.critical_value,
            "reject": self.reject,
            "lambda": self.fit_h1.lam,
            "phi_h1": self.fit_h1.phi_matrix.values,
            "phi_h0": self.phi_h0.values[:, 0],
            "statistics": list(self.phi_h0.names),
        }


def exceedance_pvalue(t_observed, bootstrap_stats):
    stats = np.asarray(bootstrap_stats, dtype=float)
    if stats.shape[0] == 0:
        return float("nan")
    return np.count_nonzero(stats > t_observed) / float(stats.shape[0])


class _Replicate(object):
    '''Draw one sequence from the null fit, refit both models, return T*.'''

    def __init__(self, data, spec, options, fit_h1, phi_h0):
        self.data = data
        self.spec = spec
        self.options = options
        self.basis = fit_h1.basis
        self.phi_h0 = phi_h0
        self.refit = FitOptions(lam=fit_h1.lam, order=options.fit.order,
                                gcv=options.fit.gcv)

    def __call__(self, b):
        sample = sample_sequence(self.phi_h0, self.data.times, self.spec,
                                 self.data.node_counts, self.data.directed,
                                 self.options.sampler, stream=(b,))
        h1 = fit_vcergm(sample, self.spec, self.refit, basis=self.basis)
        if not h1.converged:
            raise SeparationError("replicate %i: H1 fit did not converge" % b)
        h0 = fit_null_pooled(sample, self.spec, self.basis)

        system = assemble_design(sample, self.spec, self.basis)
        return 2.0 * (log_pseudo_likelihood(system, h1.phi_matrix.vec()) -
                      log_pseudo_likelihood(system, h0.vec()))


def bootstrap_test(data, spec, options=None):
    options = options or TestOptions()
    data.require_fittable()

    fit_h1 = fit_vcergm(data, spec, options.fit)
    phi_h0 = fit_null_pooled(data, spec, fit_h1.basis)
    t_observed = test_statistic(fit_h1, phi_h0, data, spec)
    printlog("Inference", ": T = %g (lambda %g, q %i)" %
             (t_observed, fit_h1.lam, fit_h1.basis.q))

    p_chisq, df = chisq_pvalue(t_observed, spec.p, fit_h1.basis.q)

    results = run_jobs(_Replicate(data, spec, options, fit_h1, phi_h0),
                       range(options.B), options.threads, "bootstrap")
    stats = []
    dropped = 0
    for b, result in enumerate(results):
        if isinstance(result, JobFailure):
            dropped += 1
            printlog("Inference", ": replicate %i dropped: %s" %
                     (b, result.error))
        else:
            stats.append(result)

    if dropped > MAX_DROPPED * options.B:
        raise BootstrapError("%i of %i bootstrap replicates failed" %
                             (dropped, options.B))

    stats = np.array(stats, dtype=float)
    p_boot = exceedance_pvalue(t_observed, stats)
    critical = float(np.quantile(stats, 1.0 - options.alpha)) \
        if stats.shape[0] else float("nan")

    result = TestResult(t_observed, stats, p_boot, p_chisq, df, options.B,
                        options.alpha, options.method, critical, dropped,
                        fit_h1, phi_h0)
    printlog("Inference", ": p bootstrap %g chisq %g (df %i) dropped %i" %
             (p_boot, p_chisq, df, dropped))
    return result
