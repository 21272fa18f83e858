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

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import os
import json
import tempfile
import traceback

import numpy as np

from .version import PROVENANCE


def format_float(value):
    # repr() is shortest round-trip and locale independent
    if value is None:
        return ""
    value = float(value)
    if np.isnan(value):
        return "nan"
    return repr(value)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return dict((str(k), _jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        obj = float(obj)
        if np.isnan(obj) or np.isinf(obj):
            return None
        return obj
    return obj


def dumps_json(payload):
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def provenance(config, seed=None):
    info = dict(PROVENANCE)
    info["config"] = config
    info["seed"] = seed
    return info


def provenance_lines(config, seed=None):
    '''Leading "# " comment lines for CSV artifacts.'''
    lines = ["# %s %s" % (PROVENANCE["tool"], PROVENANCE["version"]),
             "# seed: %s" % seed,
             "# config: %s" % json.dumps(_jsonable(config), sort_keys=True)]
    return "\n".join(lines) + "\n"


def atomic_write(path, text):
    '''Write text next to path and rename it into place.'''
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".%s." % os.path.basename(path),
                               dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    printlog("Utils", "     : wrote %s (%i bytes)" % (path, len(text)))


def log_exception():
    printlog("Utils", "     :-- Exception: --")
    printlog("Utils", "     :%s" % traceback.format_exc(limit=30))
    printlog("Utils", "     :------")

