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
Configuration for the vc-ergm tool.

VcergmConfig is a ConfigParser with one section per subcommand plus a
shared ``sampler`` section, filled from DEFAULTS before anything else is
read.  A ``--config`` file is flat ``key = value`` text for the running
subcommand; benchmark files are regular INI files with a section per
study.
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import io

import six
import six.moves.configparser

from .errors import UsageError

_DEF_SAMPLER = {
    "sweeps": "200",
    "burn_in": "100",
    "init": "empty",
}

_DEF_MODEL = {
    "input": "",
    "out": "",
    "stats": "edges",
    "directed": "True",
    "basis_dim": "auto",
    "spline_order": "4",
    "lambda": "auto",
    "gcv": "unweighted",
    "exact_penalty": "False",
    "threads": "1",
}

_DEF_FIT = dict(_DEF_MODEL)
_DEF_FIT.update({
    "curves": "",
    "curve_grid": "observed",
})

_DEF_TEST = dict(_DEF_MODEL)
_DEF_TEST.update({
    "b": "1000",
    "alpha": "0.05",
    "method": "bootstrap",
    "seed": "0",
})

_DEF_SIMULATE = {
    "out": "",
    "phi_curve": "sin",
    "curve_file": "",
    "stats": "edges,reciprocity",
    "directed": "True",
    "n": "30",
    "times": "50",
    "amplitude": "0.3",
    "seed": "0",
    "threads": "1",
}

_DEF_STATS = {
    "input": "",
    "out": "",
    "stats": "edges",
    "directed": "True",
}

_DEF_BENCHMARK = {
    "out": "",
    "study": "estimation",
    "threads": "1",
}

DEFAULTS = {
    "fit": _DEF_FIT,
    "test": _DEF_TEST,
    "simulate": _DEF_SIMULATE,
    "stats": _DEF_STATS,
    "benchmark": _DEF_BENCHMARK,
    "sampler": _DEF_SAMPLER,
}

# keys that live in the shared sampler section but may appear in any
# subcommand's flat config file
SHARED_KEYS = {
    "test": ("sampler",),
    "simulate": ("sampler",),
}


def normalize_key(key):
    return key.strip().lower().replace("-", "_")


class VcergmConfig(six.moves.configparser.ConfigParser):
    def set_defaults(self):
        for sec, opts in DEFAULTS.items():
            if not self.has_section(sec):
                self.add_section(sec)

            for opt, value in opts.items():
                if not self.has_option(sec, opt):
                    self.set(sec, opt, value)

    def __init__(self):
        six.moves.configparser.ConfigParser.__init__(self, interpolation=None)
        self.filename = None
        self.set_defaults()

    def optionxform(self, optionstr):
        return normalize_key(optionstr)

    def sections_for(self, command):
        return (command,) + SHARED_KEYS.get(command, ())

    def section_of(self, command, key):
        for sec in self.sections_for(command):
            if self.has_option(sec, key):
                return sec
        return None

    def read_flat(self, filename, command):
        '''
        Merge a flat ``key = value`` file into the sections of command.

        Unknown keys raise UsageError; nothing is merged in that case.
        '''
        try:
            with io.open(filename, encoding="utf-8") as handle:
                text = handle.read()
        except (IOError, OSError) as e:
            raise UsageError("cannot read config %s: %s" % (filename, e))

        flat = six.moves.configparser.ConfigParser(interpolation=None)
        flat.optionxform = normalize_key
        try:
            flat.read_string(u"[%s]\n%s" % (command, text), source=filename)
        except six.moves.configparser.Error as e:
            raise UsageError("bad config %s: %s" %
                             (filename, str(e).replace("\n", " ")))

        pending = []
        for key, value in flat.items(command):
            sec = self.section_of(command, key)
            if sec is None:
                raise UsageError("unknown config key %r for %s" % (key, command))
            pending.append((sec, key, value))

        for sec, key, value in pending:
            self.set(sec, key, value)
        self.filename = filename
        printlog("Config", "    : FILE: %s (%i keys)" % (filename, len(pending)))

    def resolved(self, command):
        '''Effective settings of command as a plain dict.'''
        result = {}
        for sec in reversed(self.sections_for(command)):
            result.update(self.items(sec))
        return result

    def getboolean(self, sec, key, **kwargs):
        try:
            return six.moves.configparser.ConfigParser.getboolean(self, sec, key,
                                                                  **kwargs)
        except ValueError:
            raise UsageError("%s/%s must be a boolean, got %r" %
                             (sec, key, self.get(sec, key)))

    def getint(self, sec, key, **kwargs):
        value = self.get(sec, key, **kwargs)
        try:
            return int(float(value))
        except ValueError:
            raise UsageError("%s/%s must be an integer, got %r" %
                             (sec, key, value))

    def getfloat(self, sec, key, **kwargs):
        value = self.get(sec, key, **kwargs)
        try:
            return float(value)
        except ValueError:
            raise UsageError("%s/%s must be a number, got %r" %
                             (sec, key, value))

    def getlist(self, sec, key):
        return [v.strip() for v in self.get(sec, key).split(",") if v.strip()]


def read_sections(filename, allowed):
    '''
    Load an INI file into {section: {key: value}}.

    ``allowed`` maps each permitted section to the keys it accepts.
    '''
    parser = six.moves.configparser.ConfigParser(interpolation=None)
    parser.optionxform = normalize_key
    try:
        with io.open(filename, encoding="utf-8") as handle:
            parser.read_file(handle, source=filename)
    except (IOError, OSError) as e:
        raise UsageError("cannot read config %s: %s" % (filename, e))
    except six.moves.configparser.Error as e:
        raise UsageError("bad config %s: %s" %
                         (filename, str(e).replace("\n", " ")))

    result = {}
    for sec in parser.sections():
        name = sec.strip().lower()
        if name not in allowed:
            raise UsageError("unknown config section [%s]" % sec)
        values = dict(parser.items(sec))
        unknown = sorted(set(values) - set(allowed[name]))
        if unknown:
            raise UsageError("unknown key %r in [%s]" % (unknown[0], sec))
        result[name] = values

    printlog("Config", "    : FILE: %s sections %s" % (filename, sorted(result)))
    return result
