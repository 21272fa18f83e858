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
Maximum pseudo-likelihood fitting of varying-coefficient ERGMs.

The pseudo-likelihood of a dynamic network is a logistic regression of
every dyad outcome on the Kronecker product of the basis values at its
time with its change statistics.  Coefficients are ordered like vec(Phi):
statistic index fastest, basis index slowest, so beta[l * p + k] is
Phi[k, l].

The penalized objective is

    loglik(beta) - lambda * beta' (Omega x I_p) beta

maximized by Newton-form IRLS with step-halving.  Rows that share a time
and a change-statistic vector have the same linear predictor, so fitting
works on binomial groups of them.  The normal-equation pieces H'WH and H'v
are accumulated per snapshot from p x p blocks and the N x pq design
matrix is never needed for fitting.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog, printwarn

import warnings

import numpy as np
import scipy.linalg
from scipy.special import expit

from .errors import DimensionError, DivergenceError, SeparationError, \
    VcergmWarning
from .basis import BasisSystem, build_basis
from .dyngraph import DynamicNetwork, dyad_pairs
from .netstats import change_statistics
from .workers import JobFailure, run_jobs

ETA_CLAMP = 30.0
WEIGHT_FLOOR = 1e-10
RIDGE = 1e-8
NULL_RIDGE = 1e-6
MAX_ITER = 100
MAX_HALVINGS = 20
TOLERANCE = 1e-8
# a failed line search counts as convergence below these
STALL_FACTOR = 1e3
STALL_STEP = 1e-5
GRID_POINTS = 25
GRID_RANGE = (-4.0, 4.0)


def _block_gram(bmat, delta, offsets, weights):
    outer = (weights[:, None, None] * delta[:, :, None] *
             delta[:, None, :])
    blocks = np.add.reduceat(outer, offsets, axis=0)
    g = np.einsum("sa,sb,sij->aibj", bmat, bmat, blocks)
    size = bmat.shape[1] * delta.shape[1]
    return g.reshape(size, size)


def _block_cross(bmat, delta, offsets, v):
    sums = np.add.reduceat(v[:, None] * delta, offsets, axis=0)
    return np.einsum("sa,si->ai", bmat, sums).reshape(-1)


def _group_rows(row_time, delta):
    '''First row of every distinct (time, delta) and the group of each row.

    Groups come out sorted by time.'''
    keys = np.column_stack([row_time.astype(float), delta])
    order = np.lexsort(keys.T[::-1])
    ordered = keys[order]
    start = np.ones(order.shape[0], dtype=bool)
    start[1:] = np.any(ordered[1:] != ordered[:-1], axis=1)
    group = np.empty(order.shape[0], dtype=np.intp)
    group[order] = np.cumsum(start) - 1
    return order[start], group


class DesignSystem(object):
    '''
    Stacked pseudo-likelihood rows of a dynamic network.

    Rows are time-major, then dyads row-major.  ``delta`` holds the N x p
    change statistics, ``bmat`` the K x q basis values and ``offsets`` the
    first row of every snapshot.  The ``group_*`` arrays, ``trials`` and
    ``successes`` describe the same rows pooled by (time, delta).
    '''

    def __init__(self, responses, delta, row_time, row_i, row_j, times,
                 bmat, basis, names):
        self.responses = responses
        self.delta = delta
        self.row_time = row_time
        self.row_i = row_i
        self.row_j = row_j
        self.times = times
        self.bmat = bmat
        self.basis = basis
        self.names = list(names)

        counts = np.bincount(row_time, minlength=len(times))
        self.offsets = np.concatenate([[0], np.cumsum(counts)[:-1]])
        self.penalty = np.kron(basis.omega, np.eye(self.p))
        self.__design = None
        self.__plain_gram = None

        first, group = _group_rows(row_time, delta)
        self.group_time = row_time[first]
        self.group_delta = delta[first]
        self.trials = np.bincount(group,
                                  minlength=first.shape[0]).astype(float)
        self.successes = np.bincount(group, weights=responses,
                                     minlength=first.shape[0])
        self.group_offsets = np.searchsorted(self.group_time,
                                             np.arange(len(times)))

        for a in (responses, delta, bmat, self.penalty, self.group_delta,
                  self.trials, self.successes):
            a.setflags(write=False)

    @property
    def n_rows(self):
        return self.responses.shape[0]

    @property
    def p(self):
        return self.delta.shape[1]

    @property
    def q(self):
        return self.bmat.shape[1]

    @property
    def n_params(self):
        return self.p * self.q

    @property
    def n_groups(self):
        return self.trials.shape[0]

    @property
    def row_index(self):
        '''(time, i, j) of every row, nodes 0-based.'''
        return list(zip(self.times[self.row_time].tolist(),
                        self.row_i.tolist(), self.row_j.tolist()))

    @property
    def design(self):
        '''Dense N x pq matrix H; row r is kron(B(t_r), delta_r).'''
        if self.__design is None:
            h = self.bmat[self.row_time][:, :, None] * self.delta[:, None, :]
            h = h.reshape(self.n_rows, self.n_params)
            h.setflags(write=False)
            self.__design = h
        return self.__design

    def check_beta(self, beta):
        beta = np.asarray(beta, dtype=float).reshape(-1)
        if beta.shape[0] != self.n_params:
            raise DimensionError("expected %i coefficients, got %i" %
                                 (self.n_params, beta.shape[0]))
        return beta

    def linear_predictor(self, beta):
        phi_t = self.bmat @ self.check_beta(beta).reshape(self.q, self.p)
        return np.einsum("ri,ri->r", self.delta, phi_t[self.row_time])

    def gram(self, weights):
        '''H' diag(weights) H.'''
        return _block_gram(self.bmat, self.delta, self.offsets, weights)

    def cross(self, v):
        '''H' v.'''
        return _block_cross(self.bmat, self.delta, self.offsets, v)

    def group_eta(self, beta):
        '''Linear predictor of every group.'''
        phi_t = self.bmat @ self.check_beta(beta).reshape(self.q, self.p)
        return np.einsum("gi,gi->g", self.group_delta,
                         phi_t[self.group_time])

    def group_gram(self, weights):
        return _block_gram(self.bmat, self.group_delta, self.group_offsets,
                           weights)

    def group_cross(self, v):
        return _block_cross(self.bmat, self.group_delta, self.group_offsets,
                            v)

    @property
    def plain_gram(self):
        '''H'H.'''
        if self.__plain_gram is None:
            g = self.group_gram(self.trials)
            g.setflags(write=False)
            self.__plain_gram = g
        return self.__plain_gram

    def loglik(self, eta):
        '''Pseudo-likelihood at the group linear predictors eta.'''
        return float(self.successes @ eta -
                     self.trials @ np.logaddexp(0.0, eta))


def _snapshot_rows(job):
    t, graph, spec = job
    cm = change_statistics(graph, spec)
    return cm.delta.T, graph.values


def assemble_design(data, spec, basis, threads=1):
    '''Pseudo-likelihood rows of every snapshot of data.'''
    spec.check(data.directed)
    bmat = basis.evaluate_many(data.times)

    jobs = [(t, g, spec) for t, g in data]
    results = run_jobs(_snapshot_rows, jobs, threads, "design")

    deltas, responses, rtime, ri, rj = [], [], [], [], []
    for k, (result, (t, g, _)) in enumerate(zip(results, jobs)):
        if isinstance(result, JobFailure):
            raise result.error
        delta, y = result
        rows, cols = dyad_pairs(g.n, g.directed)
        deltas.append(delta)
        responses.append(y)
        rtime.append(np.full(rows.shape[0], k, dtype=np.intp))
        ri.append(rows)
        rj.append(cols)

    delta = np.concatenate(deltas)
    if not np.all(np.isfinite(delta)) or not np.all(np.isfinite(bmat)):
        raise DimensionError("design contains non-finite entries")

    system = DesignSystem(np.concatenate(responses).astype(float), delta,
                          np.concatenate(rtime), np.concatenate(ri),
                          np.concatenate(rj), np.asarray(data.times),
                          bmat, basis, spec.names)
    printlog("Mple", "      : design N=%i p=%i q=%i K=%i" %
             (system.n_rows, system.p, system.q, len(data)))
    return system


def log_pseudo_likelihood(system, beta):
    '''Sum over rows of y * eta - log(1 + exp(eta)).'''
    return system.loglik(system.group_eta(beta))


class CoefficientMatrix(object):
    '''p x q basis coefficients Phi; phi(t) = Phi B(t).'''

    def __init__(self, values, basis, names):
        values = np.array(values, dtype=float)
        if values.ndim != 2 or values.shape[1] != basis.q:
            raise DimensionError("coefficients of shape %s do not match "
                                 "q=%i" % (values.shape, basis.q))
        if len(names) != values.shape[0]:
            raise DimensionError("%i statistics for %i coefficient rows" %
                                 (len(names), values.shape[0]))
        values.setflags(write=False)
        self.values = values
        self.basis = basis
        self.names = list(names)

    @classmethod
    def from_vec(cls, beta, basis, names):
        beta = np.asarray(beta, dtype=float)
        return cls(beta.reshape(basis.q, len(names)).T, basis, names)

    @classmethod
    def constant(cls, phi, basis, names):
        '''Broadcast a constant coefficient vector over all basis functions.'''
        return cls(np.outer(np.asarray(phi, dtype=float), np.ones(basis.q)),
                   basis, names)

    @property
    def p(self):
        return self.values.shape[0]

    @property
    def q(self):
        return self.values.shape[1]

    def vec(self):
        return self.values.T.reshape(-1)

    def evaluate(self, t):
        '''phi(t) for one time t in original units.'''
        return self.evaluate_many([t])[0]

    def evaluate_many(self, times):
        return self.basis.evaluate_many(times) @ self.values.T

    def __repr__(self):
        return "CoefficientMatrix(p=%i, q=%i)" % (self.p, self.q)


class IrlsResult(object):
    def __init__(self, beta, iterations, converged, separated, objective,
                 history):
        self.beta = beta
        self.iterations = iterations
        self.converged = converged
        self.separated = separated
        self.objective = objective
        self.history = history

    def diagnostics(self):
        return {"iterations": self.iterations,
                "converged": self.converged,
                "separated": self.separated,
                "objective": self.objective}


def _objective(system, beta, eta, lam, penalty):
    return system.loglik(eta) - lam * float(beta @ penalty @ beta)


def _stalled(gradient, step, beta, objective):
    '''True when the Newton gain is lost in the roundoff of the objective
    or the step is negligible.'''
    gain = float(gradient @ step)
    noise = STALL_FACTOR * np.finfo(float).eps * (1.0 + abs(objective))
    relative = np.linalg.norm(step) / max(np.linalg.norm(beta), 1.0)
    return gain <= noise or relative < STALL_STEP


def _solve(a, b):
    try:
        return scipy.linalg.solve(a, b, assume_a="sym")
    except (scipy.linalg.LinAlgError, ValueError):
        return scipy.linalg.lstsq(a, b)[0]


def irls(system, lam, beta0=None, penalty=None, max_iter=MAX_ITER,
         tol=TOLERANCE):
    '''
    Maximize the penalized pseudo-likelihood from beta0.

    Convergence needs a relative step below tol with every linear
    predictor inside the +/-30 clamp; separated fits run to max_iter.  A
    line search that cannot improve the objective ends the fit as
    converged when the expected gain is below roundoff, and raises
    DivergenceError otherwise.
    '''
    if lam < 0:
        raise ValueError("lambda must be non-negative, got %r" % lam)
    if penalty is None:
        penalty = system.penalty
    trials, successes = system.trials, system.successes
    ridge = RIDGE * np.eye(system.n_params)

    beta = np.zeros(system.n_params) if beta0 is None else \
        system.check_beta(beta0).copy()
    eta = system.group_eta(beta)
    objective = _objective(system, beta, eta, lam, penalty)
    history = [objective]
    converged = separated = False

    iteration = 0
    while iteration < max_iter:
        iteration += 1
        mu = expit(eta)
        mu_c = expit(np.clip(eta, -ETA_CLAMP, ETA_CLAMP))
        w = np.maximum(mu_c * (1.0 - mu_c), WEIGHT_FLOOR)

        a = system.group_gram(trials * w) + 2.0 * lam * penalty + ridge
        g = system.group_cross(successes - trials * mu) - \
            2.0 * lam * (penalty @ beta)
        step = _solve(a, g)
        if not np.all(np.isfinite(step)):
            raise DivergenceError("non-finite IRLS step at iteration %i" %
                                  iteration,
                                  {"iteration": iteration, "lambda": lam})

        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            candidate = beta + t * step
            candidate_eta = system.group_eta(candidate)
            new_objective = _objective(system, candidate, candidate_eta, lam,
                                       penalty)
            if new_objective >= objective:
                break
            t *= 0.5
        else:
            if _stalled(g, step, beta, objective):
                separated = bool(np.any(np.abs(eta) >= ETA_CLAMP))
                converged = not separated
                break
            raise DivergenceError(
                "objective did not increase after %i step halvings" %
                MAX_HALVINGS,
                {"iteration": iteration, "lambda": lam,
                 "objective": objective, "step_norm": float(np.linalg.norm(step))})

        relative = np.linalg.norm(t * step) / max(np.linalg.norm(beta), 1.0)
        beta = candidate
        eta = candidate_eta
        objective = new_objective
        history.append(objective)

        separated = bool(np.any(np.abs(eta) >= ETA_CLAMP))
        if relative < tol and not separated:
            converged = True
            break

    if not converged:
        printlog("Mple", "      : IRLS stopped after %i iterations "
                 "(lambda %g, separated %s)" % (iteration, lam, separated))
    return IrlsResult(beta, iteration, converged, separated, objective,
                      history)


def fit_penalized(system, lam, beta0=None):
    '''Penalized MPLE at a fixed lambda as a CoefficientMatrix.'''
    result = irls(system, lam, beta0)
    return CoefficientMatrix.from_vec(result.beta, system.basis, system.names)


def default_grid(system):
    '''Log-spaced lambdas scaled by tr(H'H) / tr(Omega x I_p).'''
    trace_p = np.trace(system.penalty)
    scale = 1.0
    if trace_p > 0:
        scale = np.trace(system.plain_gram) / trace_p
    return scale * np.logspace(GRID_RANGE[0], GRID_RANGE[1], GRID_POINTS)


def _gcv_scores(gram, cross, zz, n, penalty, grid):
    ridge = RIDGE * np.eye(gram.shape[0])
    scores = []
    for lam in grid:
        m = gram + 2.0 * lam * penalty + ridge
        beta = _solve(m, cross)
        rss = max(zz - 2.0 * cross @ beta + beta @ gram @ beta, 0.0)
        trace = np.trace(_solve(m, gram))
        dof = 1.0 - trace / n
        scores.append(rss / n / dof ** 2 if dof > 0 else np.inf)
    return np.array(scores)


def pick_lambda(grid, scores, warn=True):
    '''Argmin of scores, ties and flat paths going to the largest lambda.'''
    grid = np.asarray(grid, dtype=float)
    finite = np.isfinite(scores)
    if not np.any(finite):
        return float(grid.max())

    best = scores[finite].min()
    spread = scores[finite].max() - best
    if spread <= 1e-12 * max(abs(best), 1e-300):
        if warn:
            msg = "flat GCV path, using the largest lambda %g" % grid.max()
            printwarn("Mple", "      :", msg)
            warnings.warn(msg, VcergmWarning)
        return float(grid.max())

    ties = finite & (scores <= best + 1e-12 * abs(best))
    return float(grid[ties].max())


def gcv_path(system, beta, grid, weighted=False):
    '''
    GCV score of every lambda on the working system at beta.

    The unweighted form works with H'H and H'z of the working response z;
    the weighted form uses the IRLS weights throughout.
    '''
    eta = np.clip(system.group_eta(beta), -ETA_CLAMP, ETA_CLAMP)
    mu_c = expit(eta)
    w = np.maximum(mu_c * (1.0 - mu_c), WEIGHT_FLOOR)

    # z takes one value for the edges and one for the non-edges of a group
    z0 = eta - mu_c / w
    z1 = z0 + 1.0 / w
    ones = system.successes
    zeros = system.trials - ones
    z_sum = ones * z1 + zeros * z0
    zz_sum = ones * z1 * z1 + zeros * z0 * z0

    if weighted:
        gram = system.group_gram(system.trials * w)
        cross = system.group_cross(w * z_sum)
        zz = float(w @ zz_sum)
    else:
        gram = system.plain_gram
        cross = system.group_cross(z_sum)
        zz = float(zz_sum.sum())

    scores = _gcv_scores(gram, cross, zz, float(system.n_rows),
                         system.penalty, grid)
    return list(zip([float(l) for l in grid], scores.tolist()))


class LambdaSelection(object):
    def __init__(self, lam, path, fit):
        self.lam = lam
        self.path = path
        self.fit = fit


def gcv_select(system, grid=None, weighted=False, beta0=None, max_rounds=10):
    '''
    Choose lambda as a fixed point of "fit at lambda, minimize GCV on the
    converged working system".  Also returns the fit at the chosen lambda.
    '''
    grid = default_grid(system) if grid is None else \
        np.asarray(grid, dtype=float).reshape(-1)
    if grid.shape[0] == 0:
        raise ValueError("lambda grid is empty")
    if np.any(grid < 0):
        raise ValueError("lambda grid must be non-negative")

    lam = float(grid.max())
    seen = []
    fit = None
    path = None
    for _ in range(max_rounds):
        fit = irls(system, lam, beta0 if fit is None else fit.beta)
        path = gcv_path(system, fit.beta, grid, weighted)
        chosen = pick_lambda(grid, np.array([g for _, g in path]),
                             warn=False)
        seen.append(lam)
        printlog("Mple", "      : GCV at lambda %g chose %g" % (lam, chosen))
        if chosen == lam:
            break
        if chosen in seen:
            # two-cycle: settle on the smoother of the pair
            lam = max(lam, chosen)
            fit = irls(system, lam, fit.beta)
            path = gcv_path(system, fit.beta, grid, weighted)
            break
        lam = chosen

    # warn once, on the final path
    if grid.shape[0] > 1 and np.trace(system.penalty) > 0:
        pick_lambda(grid, np.array([g for _, g in path]), warn=True)
    return LambdaSelection(lam, path, fit)


def select_lambda(system, grid=None, weighted=False):
    sel = gcv_select(system, grid, weighted)
    return sel.lam, sel.path


class FitOptions(object):
    '''
    Settings of fit_vcergm.

    ``basis_dim`` is an integer, ``"auto"`` or 1 for the constant basis;
    ``lam`` is a number or ``"auto"`` for GCV over ``grid``.
    '''

    def __init__(self, basis_dim="auto", order=4, lam="auto", grid=None,
                 gcv="unweighted", exact_penalty=False, threads=1):
        self.basis_dim = basis_dim
        self.order = int(order)
        self.lam = lam
        self.grid = grid
        if gcv not in ("unweighted", "weighted"):
            raise ValueError("gcv must be 'unweighted' or 'weighted'")
        self.gcv = gcv
        self.exact_penalty = bool(exact_penalty)
        self.threads = int(threads)

    def as_config(self):
        return {"basis_dim": self.basis_dim, "spline_order": self.order,
                "lambda": self.lam, "grid": self.grid, "gcv": self.gcv,
                "exact_penalty": self.exact_penalty}


class FitResult(object):
    def __init__(self, phi_matrix, lam, basis, spec, iterations, converged,
                 pseudo_loglik, gcv_path, separated=False):
        self.phi_matrix = phi_matrix
        self.lam = lam
        self.basis = basis
        self.spec = spec
        self.iterations = iterations
        self.converged = converged
        self.pseudo_loglik = pseudo_loglik
        self.gcv_path = gcv_path
        self.separated = separated

    def curves(self, times):
        return self.phi_matrix.evaluate_many(times)

    def __repr__(self):
        return "FitResult(lambda=%g, q=%i, converged=%s)" % \
            (self.lam, self.basis.q, self.converged)


def make_basis(data, options):
    if str(options.basis_dim) == "1":
        return BasisSystem.constant(data.times)
    return build_basis(data.times, options.basis_dim, options.order,
                       dyad_total=int(data.dyad_counts.sum()),
                       exact_penalty=options.exact_penalty)


def fit_vcergm(data, spec, options=None, basis=None):
    '''build_basis, assemble_design, select_lambda and fit_penalized.'''
    options = options or FitOptions()
    data.require_fittable()
    if basis is None:
        basis = make_basis(data, options)
    system = assemble_design(data, spec, basis, options.threads)
    weighted = options.gcv == "weighted"

    if str(options.lam).lower() == "auto":
        sel = gcv_select(system, options.grid, weighted)
        lam, path, fit = sel.lam, sel.path, sel.fit
    else:
        lam = float(options.lam)
        fit = irls(system, lam)
        path = gcv_path(system, fit.beta, [lam], weighted)

    coef = CoefficientMatrix.from_vec(fit.beta, basis, spec.names)
    result = FitResult(coef, lam, basis, spec, fit.iterations, fit.converged,
                       log_pseudo_likelihood(system, coef.vec()), path,
                       fit.separated)
    printlog("Mple", "      : fit lambda %g iterations %i converged %s" %
             (lam, fit.iterations, fit.converged))
    return result


def fit_null_pooled(data, spec, basis=None, threads=1):
    '''
    Unpenalized fit of constant coefficients on the pooled rows, broadcast
    to every basis function of ``basis`` (constant basis when None).
    '''
    system = assemble_design(data, spec, BasisSystem.constant(data.times),
                             threads)
    fit = irls(system, 0.0)
    if not fit.converged:
        msg = "pooled fit did not converge (separated=%s), using ridge %g" % \
            (fit.separated, NULL_RIDGE)
        printwarn("Mple", "      :", msg)
        warnings.warn(msg, VcergmWarning)
        fit = irls(system, NULL_RIDGE, penalty=np.eye(system.n_params))

    basis = basis or BasisSystem.constant(data.times)
    return CoefficientMatrix.constant(fit.beta, basis, spec.names)


class CrossSectionalFit(object):
    '''Per-snapshot estimates; rows of flagged snapshots are NaN.'''

    def __init__(self, times, estimates, flagged, names):
        self.times = np.asarray(times, dtype=float)
        self.estimates = estimates
        self.flagged = flagged
        self.names = list(names)

    def __len__(self):
        return self.times.shape[0]

    def __iter__(self):
        return iter(self.estimates)


def _fit_snapshot(job):
    t, graph, spec = job
    single = DynamicNetwork([(t, graph)])
    system = assemble_design(single, spec, BasisSystem.constant([t]))
    fit = irls(system, 0.0)
    if not fit.converged:
        return None
    return fit.beta


def fit_cross_sectional(data, spec, threads=1):
    '''Independent unpenalized MPLE of every snapshot.'''
    spec.check(data.directed)
    jobs = [(t, g, spec) for t, g in data]
    results = run_jobs(_fit_snapshot, jobs, threads, "cross-sectional")

    estimates = np.full((len(data), spec.p), np.nan)
    flagged = np.zeros(len(data), dtype=bool)
    for k, result in enumerate(results):
        if isinstance(result, JobFailure):
            if not isinstance(result.error, (SeparationError, DivergenceError)):
                raise result.error
            result = None
        if result is None:
            flagged[k] = True
        else:
            estimates[k] = result

    if flagged.any():
        printlog("Mple", "      : %i of %i cross-sectional fits flagged" %
                 (flagged.sum(), len(data)))
    return CrossSectionalFit(data.times, estimates, flagged, spec.names)


def smooth_values(basis, times, values, grid=None):
    '''
    Penalized least-squares spline through (times, values) with GCV
    choosing lambda; returns the q coefficients and the lambda.
    '''
    b = basis.evaluate_many(times)
    gram = b.T @ b
    cross = b.T @ values
    zz = float(values @ values)
    omega = basis.omega

    if grid is None:
        scale = np.trace(gram) / np.trace(omega) if np.trace(omega) > 0 \
            else 1.0
        grid = scale * np.logspace(GRID_RANGE[0], GRID_RANGE[1], GRID_POINTS)
    grid = np.asarray(grid, dtype=float)

    scores = _gcv_scores(gram, cross, zz, float(len(values)), omega, grid)
    lam = pick_lambda(grid, scores, warn=False)
    ridge = 1e-12 * max(np.trace(gram), 1.0) * np.eye(basis.q)
    coef = scipy.linalg.lstsq(gram + 2.0 * lam * omega + ridge, cross)[0]
    return coef, lam


def fit_two_step(data, spec, basis, cross=None, threads=1):
    '''Cross-sectional estimates smoothed per statistic over the observed
    times, skipping flagged snapshots.'''
    if cross is None:
        cross = fit_cross_sectional(data, spec, threads)

    rows = []
    for k, name in enumerate(spec.names):
        ok = ~cross.flagged & np.isfinite(cross.estimates[:, k])
        if not ok.any():
            raise SeparationError("no cross-sectional estimate of %s at any "
                                  "time" % name)
        coef, lam = smooth_values(basis, cross.times[ok],
                                  cross.estimates[ok, k])
        printlog("Mple", "      : two-step %s lambda %g over %i times" %
                 (name, lam, ok.sum()))
        rows.append(coef)

    return CoefficientMatrix(np.array(rows), basis, spec.names)
