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

'''Exception and warning classes shared by the vc_ergm modules.'''


class VcergmError(Exception):
    '''Base class for everything vc_ergm raises on purpose.'''
    exit_code = 1
    kind = "error"


class UsageError(VcergmError):
    '''Bad command line flags, config keys or option values.'''
    exit_code = 1
    kind = "usage"


class DataError(VcergmError):
    '''Input data that cannot be read or does not fit the model.'''
    exit_code = 2
    kind = "data"


class EdgeListError(DataError):
    '''Malformed edge-list CSV.'''


class GraphError(DataError):
    '''Graph or dynamic network violates a structural invariant.'''


class StatisticsError(DataError):
    '''Statistic not defined for this graph.'''


class BasisError(DataError):
    '''Invalid basis request or evaluation outside the domain.'''


class DimensionError(DataError):
    '''Coefficients, statistics and basis do not agree in shape.'''


class NumericalError(VcergmError):
    '''A numerical procedure failed.'''
    exit_code = 3
    kind = "numerical"


class DivergenceError(NumericalError):
    '''IRLS could not improve the objective even after step-halving.'''

    def __init__(self, message, diagnostics=None):
        NumericalError.__init__(self, message)
        self.diagnostics = diagnostics or {}


class SeparationError(NumericalError):
    '''Maximum pseudo-likelihood estimate does not exist.'''


class BootstrapError(NumericalError):
    '''Too many bootstrap replicates failed.'''


class VcergmWarning(UserWarning):
    pass
