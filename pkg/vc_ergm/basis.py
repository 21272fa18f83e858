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
Clamped B-spline bases over the observed time range and the roughness
penalty used to smooth the coefficient curves.

Observed times are mapped affinely onto [0, 1]; every basis computation
happens on that unit interval and curves are reported in the original
time units.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import numpy as np
from scipy.interpolate import BSpline

from .errors import BasisError

DEFAULT_ORDER = 4
MAX_AUTO_DIM = 10
DOMAIN_TOL = 1e-12


def auto_dimension(k_times, order=DEFAULT_ORDER):
    return min(MAX_AUTO_DIM, max(order, k_times // 4 + order - 1))


def _knot_vector(interior, order):
    return np.concatenate([np.zeros(order), interior, np.ones(order)])


class BasisSystem(object):
    def __init__(self, times, order, interior_knots, exact_penalty=False):
        times = np.asarray(times, dtype=float)
        self.t_min = float(times[0])
        self.t_max = float(times[-1])
        self.order = int(order)
        self.interior_knots = np.asarray(interior_knots, dtype=float)
        self.knots = _knot_vector(self.interior_knots, self.order)
        self.q = self.interior_knots.shape[0] + self.order
        self.exact_penalty = bool(exact_penalty)
        self.eval_times = self.rescale(times)

        if self.order > 1:
            self._spline = BSpline(self.knots, np.eye(self.q), self.order - 1,
                                   extrapolate=False)
        else:
            self._spline = None

        self.omega = penalty_matrix(self)
        self.omega.setflags(write=False)
        self.eval_times.setflags(write=False)

    @classmethod
    def constant(cls, times):
        '''Single basis function B(t) = 1; the model without time variation.'''
        times = np.asarray(times, dtype=float)
        if times.shape[0] == 1:
            times = np.array([times[0], times[0] + 1.0])
        return cls(times, 1, [])

    @property
    def domain(self):
        return (self.t_min, self.t_max)

    def rescale(self, times):
        times = np.asarray(times, dtype=float)
        span = self.t_max - self.t_min
        return (times - self.t_min) / span

    def _check_unit(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any(~np.isfinite(u)) or \
                np.any(u < -DOMAIN_TOL) or np.any(u > 1.0 + DOMAIN_TOL):
            bad = u[~((u >= -DOMAIN_TOL) & (u <= 1.0 + DOMAIN_TOL))][0]
            raise BasisError("time %r outside the basis domain [%r, %r]" %
                             (self.t_min + bad * (self.t_max - self.t_min),
                              self.t_min, self.t_max))
        return np.clip(u, 0.0, 1.0)

    def evaluate(self, u):
        '''B(u) for a single point u of the unit domain.'''
        return self.evaluate_unit(np.atleast_1d(u))[0]

    def evaluate_unit(self, u):
        u = self._check_unit(u)
        if self._spline is None:
            return np.ones((u.shape[0], 1))
        return self._spline(u)

    def evaluate_many(self, times):
        '''len(times) x q basis values at times in original units.'''
        return self.evaluate_unit(self.rescale(np.atleast_1d(times)))

    def second_derivative(self, u):
        u = self._check_unit(u)
        if self.order < 3:
            return np.zeros((u.shape[0], self.q))
        return self._spline.derivative(2)(u)

    def matrix(self):
        '''K x q basis values at the observed times.'''
        return self.evaluate_unit(self.eval_times)

    def greville(self):
        '''Knot averages; coefficients c_l = f(g_l) reproduce affine f.'''
        if self.order == 1:
            return np.array([0.5])
        d = self.order - 1
        return np.array([self.knots[l + 1:l + 1 + d].mean()
                         for l in range(self.q)])

    def __repr__(self):
        return "BasisSystem(order=%i, q=%i, domain=[%r, %r])" % \
            (self.order, self.q, self.t_min, self.t_max)


def build_basis(times, q_requested="auto", order=DEFAULT_ORDER,
                dyad_total=None, exact_penalty=False):
    '''
    Build a clamped B-spline basis on the observed times.

    Interior knots sit at quantiles of the rescaled times.  ``q_requested``
    is an integer or ``"auto"``; ``dyad_total`` (rows available for
    fitting) bounds it from above when given.
    '''
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.shape[0] < 2:
        raise BasisError("a basis needs at least 2 time points, got %i" %
                         times.shape[0])
    if not np.all(np.isfinite(times)) or np.any(np.diff(times) <= 0):
        raise BasisError("times must be finite and strictly increasing")

    order = int(order)
    if order < 2:
        raise BasisError("spline order must be at least 2, got %i" % order)

    k_times = times.shape[0]
    if q_requested is None or str(q_requested).lower() == "auto":
        q = auto_dimension(k_times, order)
    else:
        q = int(q_requested)
        if q < order:
            raise BasisError("basis dimension %i below spline order %i" %
                             (q, order))
        if dyad_total is not None and q > dyad_total:
            raise BasisError("basis dimension %i over-parameterizes %i "
                             "observations" % (q, dyad_total))

    u = (times - times[0]) / (times[-1] - times[0])
    m = q - order
    interior = np.quantile(u, np.linspace(0.0, 1.0, m + 2)[1:-1]) if m else \
        np.array([])

    basis = BasisSystem(times, order, interior, exact_penalty)
    printlog("Basis", "     : order %i q %i interior knots %s" %
             (order, q, np.round(interior, 4).tolist()))
    return basis


def evaluate(basis, u):
    return basis.evaluate(u)


def _discrete_penalty(basis):
    d2 = basis.second_derivative(basis.eval_times)
    return d2.T @ d2


def _exact_penalty(basis):
    # B'' is piecewise polynomial of degree order-3; order nodes are exact
    nodes, weights = np.polynomial.legendre.leggauss(basis.order)
    breaks = np.unique(basis.knots)
    omega = np.zeros((basis.q, basis.q))
    for a, b in zip(breaks[:-1], breaks[1:]):
        x = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        d2 = basis.second_derivative(x)
        omega += (d2.T * (0.5 * (b - a) * weights)) @ d2
    return omega


def penalty_matrix(basis):
    '''
    q x q roughness penalty: squared second derivatives summed over the
    observed times, or integrated over [0, 1] for an exact penalty.
    '''
    if basis.order < 3:
        return np.zeros((basis.q, basis.q))
    if basis.exact_penalty:
        omega = _exact_penalty(basis)
    else:
        omega = _discrete_penalty(basis)
    return 0.5 * (omega + omega.T)
