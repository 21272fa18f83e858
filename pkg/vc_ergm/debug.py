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
printlog() wrapper used by every vc_ergm module.

The first argument names the calling module, the rest is joined into the
message, so ``printlog("Mple", "      : lambda %g" % lam)`` keeps working
the way the call sites expect.  Output goes through the ``vc_ergm``
logger hierarchy; the command line tool decides where it ends up.
'''

from __future__ import print_function

import logging

LOGGER_NAME = "vc_ergm"

# List of modules
MODULES = ['Vcergm',      # command line front end
           'Basis',       # vc_ergm/basis.py
           'Bench',       # vc_ergm/simbench.py
           'Cli',         # vc_ergm/cli.py
           'Config',      # vc_ergm/config.py
           'Dyngraph',    # vc_ergm/dyngraph.py
           'Inference',   # vc_ergm/inference.py
           'Mple',        # vc_ergm/mple.py
           'Netstats',    # vc_ergm/netstats.py
           'Sampler',     # vc_ergm/sampler.py
           'Utils',       # vc_ergm/utils.py
           'Workers',     # vc_ergm/workers.py
           ]


def get_logger(module):
    if module in MODULES:
        return logging.getLogger("%s.%s" % (LOGGER_NAME, module.lower()))
    return logging.getLogger("%s.x" % LOGGER_NAME)


def _join(args):
    return " ".join([str(a) for a in args])


def printlog(arg1, *args):
    get_logger(arg1).info(_join(args))


def printdebug(arg1, *args):
    get_logger(arg1).debug(_join(args))


def printwarn(arg1, *args):
    get_logger(arg1).warning(_join(args))


def setup_logging(verbosity=0, stream=None):
    '''
    Attach a single stderr handler to the vc_ergm logger.

    :param verbosity: -1 quiet, 0 warnings, 1 info, 2 debug
    '''
    levels = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}
    level = levels.get(verbosity, logging.DEBUG)

    root = logging.getLogger(LOGGER_NAME)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter("%(asctime)s %(name)s %(message)s",
                                           "%m/%d/%Y %H:%M:%S"))
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False

    return root
