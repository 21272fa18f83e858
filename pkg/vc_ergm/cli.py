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
Command line front end: ``vc-ergm <command> [options]``.

Commands are fit, simulate, test, stats and benchmark.  Settings come
from the built-in defaults, then an optional flat ``--config`` file, then
the command line.  Failures print one line on stderr,

    vc-ergm: error=<kind> exit=<code> message=<text>

and exit with 1 (usage), 2 (data) or 3 (numerical).
'''

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog, setup_logging

import io
import sys
from optparse import OptionParser

import numpy as np

from .version import VCERGM_NAME, VCERGM_VERSION
from .errors import DataError, UsageError, VcergmError
from .config import VcergmConfig
from .utils import atomic_write, dumps_json, format_float, log_exception, \
    provenance, provenance_lines
from .dyngraph import fit_result_payload, read_curves, read_edge_list, \
    write_curves, write_edge_list
from .netstats import StatisticSpec, compute_statistics
from .mple import FitOptions, fit_null_pooled, fit_vcergm
from .sampler import SamplerConfig, sample_sequence
from .inference import TestOptions, bootstrap_test
from .simbench import PhiCurve, Scenario, load_bench_config, \
    make_phi_curve, run_study

COMMANDS = ("fit", "simulate", "test", "stats", "benchmark")

# command line names of the simulation curves
PHI_CURVES = {"sin": "sinusoidal", "quad": "quadratic", "er": "er",
              "spiky": "nonsmooth", "power": "power"}

USAGE = """%s <command> [options]

Commands:
  fit        fit a VCERGM to an edge-list file
  simulate   draw a dynamic network from a coefficient curve
  test       bootstrap test of temporal heterogeneity
  stats      standardized statistics of every snapshot
  benchmark  run a simulation study

'%s <command> --help' lists the options of a command.""" % \
    (VCERGM_NAME, VCERGM_NAME)


class HelpRequested(Exception):
    def __init__(self, status=0):
        Exception.__init__(self, status)
        self.status = status


class CliParser(OptionParser):
    def error(self, msg):
        raise UsageError(msg)

    def exit(self, status=0, msg=None):
        if msg:
            sys.stderr.write(msg)
        raise HelpRequested(status)


def _model_options(o):
    o.add_option("--input", dest="input", help="edge-list CSV file")
    o.add_option("--stats", dest="stats",
                 help="statistics, e.g. edges,reciprocity")
    o.add_option("--directed", dest="directed", action="store_const",
                 const="True", help="directed graphs (default)")
    o.add_option("--undirected", dest="directed", action="store_const",
                 const="False", help="undirected graphs")


def _basis_options(o):
    o.add_option("--basis-dim", dest="basis_dim",
                 help="basis dimension q, 'auto' or 1 (constant)")
    o.add_option("--spline-order", dest="spline_order",
                 help="spline order (default 4, cubic)")
    o.add_option("--lambda", dest="lambda", help="'auto' (GCV) or a value")
    o.add_option("--gcv", dest="gcv", help="unweighted|weighted")
    o.add_option("--exact-penalty", dest="exact_penalty",
                 action="store_const", const="True",
                 help="integrate the roughness penalty exactly")
    o.add_option("--threads", dest="threads", help="worker threads")


def _sampler_options(o):
    o.add_option("--seed", dest="seed", help="random seed")
    o.add_option("--sweeps", dest="sweeps", help="Gibbs sweeps per draw")
    o.add_option("--burn-in", dest="burn_in", help="sweeps discarded")
    o.add_option("--init", dest="init", help="empty|random start")


def make_parser(command):
    o = CliParser(prog="%s %s" % (VCERGM_NAME, command),
                  usage="%%prog [options]", version=VCERGM_VERSION)
    o.add_option("--config", dest="config_file",
                 help="flat key = value settings file" if command !=
                 "benchmark" else "INI file with study sections")
    o.add_option("--out", dest="out", help="output file (default stdout)")
    o.add_option("-v", "--verbose", dest="verbose", action="count",
                 default=0, help="more logging (repeatable)")
    o.add_option("-q", "--quiet", dest="quiet", action="store_true",
                 default=False, help="errors only")

    if command == "fit":
        _model_options(o)
        _basis_options(o)
        o.add_option("--curves", dest="curves",
                     help="write fitted curves CSV")
        o.add_option("--curve-grid", dest="curve_grid",
                     help="'observed' or comma-separated times")
    elif command == "test":
        _model_options(o)
        _basis_options(o)
        _sampler_options(o)
        o.add_option("--B", dest="b", help="bootstrap replicates")
        o.add_option("--alpha", dest="alpha", help="significance level")
        o.add_option("--method", dest="method", help="bootstrap|chisq")
    elif command == "simulate":
        _sampler_options(o)
        o.add_option("--stats", dest="stats", help="statistics")
        o.add_option("--directed", dest="directed", action="store_const",
                     const="True", help="directed graphs (default)")
        o.add_option("--undirected", dest="directed", action="store_const",
                     const="False", help="undirected graphs")
        o.add_option("--phi-curve", dest="phi_curve",
                     help="sin|quad|er|spiky|power|file")
        o.add_option("--curve-file", dest="curve_file",
                     help="curves CSV for --phi-curve file")
        o.add_option("--amplitude", dest="amplitude",
                     help="M of --phi-curve power")
        o.add_option("--n", dest="n", help="node count")
        o.add_option("--times", dest="times", help="number of snapshots K")
        o.add_option("--threads", dest="threads",
                     help="worker threads (non-dyadic statistics)")
    elif command == "stats":
        _model_options(o)
    elif command == "benchmark":
        o.add_option("--study", dest="study",
                     help="estimation|power|timing")
        o.add_option("--threads", dest="threads", help="worker threads")
    return o


class Command(object):
    '''Parsed options merged into the configuration of one command.'''

    def __init__(self, command, argv):
        self.command = command
        parser = make_parser(command)
        opts, args = parser.parse_args(argv)
        if args:
            raise UsageError("unexpected argument %r" % args[0])

        self.opts = opts
        self.config = VcergmConfig()
        if opts.config_file and command != "benchmark":
            self.config.read_flat(opts.config_file, command)

        for key, value in vars(opts).items():
            if key in ("config_file", "verbose", "quiet") or value is None:
                continue
            sec = self.config.section_of(command, key)
            self.config.set(sec, key, str(value))

    def get(self, key):
        return self.config.get(self.config.section_of(self.command, key), key)

    def getint(self, key):
        return self.config.getint(self.config.section_of(self.command, key),
                                  key)

    def getfloat(self, key):
        return self.config.getfloat(self.config.section_of(self.command, key),
                                    key)

    def getboolean(self, key):
        return self.config.getboolean(
            self.config.section_of(self.command, key), key)

    def resolved(self):
        settings = self.config.resolved(self.command)
        if self.command == "benchmark" and self.opts.config_file:
            settings["config"] = self.opts.config_file
        return settings

    def seed(self):
        if self.config.section_of(self.command, "seed"):
            return self.getint("seed")
        return None

    def spec(self):
        try:
            return StatisticSpec(self.get("stats"))
        except DataError as e:
            raise UsageError(str(e))

    def require(self, key):
        value = self.get(key)
        if not value:
            raise UsageError("%s requires --%s" %
                             (self.command, key.replace("_", "-")))
        return value

    def sampler(self):
        return SamplerConfig(self.getint("sweeps"), self.getint("burn_in"),
                             self.getint("seed"), self.get("init"))

    def fit_options(self):
        lam = self.get("lambda")
        if lam.lower() != "auto":
            try:
                if float(lam) < 0:
                    raise ValueError()
            except ValueError:
                raise UsageError("--lambda must be 'auto' or a non-negative "
                                 "number, got %r" % lam)
        gcv = self.get("gcv")
        if gcv not in ("unweighted", "weighted"):
            raise UsageError("--gcv must be unweighted or weighted")
        basis_dim = self.get("basis_dim")
        if basis_dim.lower() != "auto":
            try:
                int(basis_dim)
            except ValueError:
                raise UsageError("--basis-dim must be 'auto' or an integer")
        return FitOptions(basis_dim=basis_dim,
                          order=self.getint("spline_order"), lam=lam,
                          gcv=gcv, exact_penalty=self.getboolean("exact_penalty"),
                          threads=self.getint("threads"))

    def read_network(self):
        path = self.require("input")
        try:
            with io.open(path, newline="", encoding="utf-8") as handle:
                return read_edge_list(handle, self.getboolean("directed"))
        except (IOError, OSError) as e:
            raise DataError("cannot read %s: %s" % (path, e))

    def emit(self, text):
        path = self.get("out")
        if path:
            atomic_write(path, text)
        else:
            sys.stdout.write(text)


def _json_output(cmd, payload):
    payload = dict(payload)
    payload["provenance"] = provenance(cmd.resolved(), cmd.seed())
    return dumps_json(payload)


def do_fit(cmd):
    spec = cmd.spec()
    options = cmd.fit_options()
    data = cmd.read_network()

    fit = fit_vcergm(data, spec, options)
    phi_h0 = fit_null_pooled(data, spec, fit.basis, options.threads)

    payload = fit_result_payload(fit)
    payload["phi_h0"] = phi_h0.values[:, 0]
    cmd.emit(_json_output(cmd, payload))

    curves = cmd.get("curves")
    if curves:
        grid = cmd.get("curve_grid")
        if grid.strip().lower() == "observed":
            times = data.times
        else:
            try:
                times = [float(t) for t in grid.split(",") if t.strip()]
            except ValueError:
                raise UsageError("bad --curve-grid %r" % grid)
        text = io.StringIO()
        text.write(provenance_lines(cmd.resolved(), None))
        write_curves(fit, times, text)
        atomic_write(curves, text.getvalue())
    return 0


def do_test(cmd):
    spec = cmd.spec()
    method = cmd.get("method")
    if method not in ("bootstrap", "chisq"):
        raise UsageError("--method must be bootstrap or chisq")

    options = TestOptions(cmd.getint("b"), cmd.getfloat("alpha"),
                          cmd.getint("seed"), method, cmd.fit_options(),
                          cmd.sampler(), cmd.getint("threads"))
    data = cmd.read_network()
    result = bootstrap_test(data, spec, options)
    cmd.emit(_json_output(cmd, result.as_dict()))
    return 0


def _simulation_curve(cmd, spec, k, directed):
    name = cmd.get("phi_curve").lower()
    if name == "file":
        path = cmd.get("curve_file")
        if not path:
            raise UsageError("--phi-curve file requires --curve-file")
        try:
            with io.open(path, newline="", encoding="utf-8") as handle:
                curves = read_curves(handle)
        except (IOError, OSError) as e:
            raise DataError("cannot read %s: %s" % (path, e))
        return PhiCurve.from_points(curves, spec.names)

    if name not in PHI_CURVES:
        raise UsageError("--phi-curve must be one of %s, file" %
                         "|".join(sorted(PHI_CURVES)))
    scenario = Scenario(PHI_CURVES[name], n=cmd.getint("n"), K=k,
                        seed=cmd.getint("seed"), stats=spec,
                        directed=directed,
                        amplitude=cmd.getfloat("amplitude"))
    return make_phi_curve(scenario)


def do_simulate(cmd):
    spec = cmd.spec()
    directed = cmd.getboolean("directed")
    n = cmd.getint("n")
    k = cmd.getint("times")
    threads = cmd.getint("threads")
    if n < 2 or k < 1 or threads < 1:
        raise UsageError("need --n >= 2, --times >= 1 and --threads >= 1")
    try:
        spec.check(directed)
    except DataError as e:
        raise UsageError(str(e))

    times = np.arange(1, k + 1, dtype=float)
    curve = _simulation_curve(cmd, spec, k, directed)
    data = sample_sequence(curve.for_sampler(n, directed), times, spec, n,
                           directed, cmd.sampler(),
                           threads=threads)

    text = io.StringIO()
    text.write(provenance_lines(cmd.resolved(), cmd.seed()))
    write_edge_list(data, text)
    cmd.emit(text.getvalue())
    return 0


def do_stats(cmd):
    spec = cmd.spec()
    data = cmd.read_network()

    text = io.StringIO()
    if cmd.get("out"):
        text.write(provenance_lines(cmd.resolved(), None))
    text.write(",".join(["time"] + spec.names) + "\n")
    for t, g in data:
        values = compute_statistics(g, spec)
        text.write(",".join([format_float(t)] +
                            [format_float(v) for v in values]) + "\n")
    cmd.emit(text.getvalue())
    return 0


def do_benchmark(cmd):
    study = cmd.get("study")
    if study not in ("estimation", "power", "timing"):
        raise UsageError("--study must be estimation, power or timing")

    values = {}
    if cmd.opts.config_file:
        values = load_bench_config(cmd.opts.config_file).get(study, {})
    report = run_study(study, values, cmd.getint("threads"))
    seed = int(values.get("seed", 0))
    payload = report.as_dict()
    payload["provenance"] = provenance(cmd.resolved(), seed)
    cmd.emit(dumps_json(payload))
    return 0


HANDLERS = {
    "fit": do_fit,
    "test": do_test,
    "simulate": do_simulate,
    "stats": do_stats,
    "benchmark": do_benchmark,
}


def diagnostic(kind, code, message):
    message = " ".join(str(message).split())
    return "%s: error=%s exit=%i message=%s\n" % (VCERGM_NAME, kind, code,
                                                   message)


def run(argv=None):
    '''Run one command; returns the process exit code.'''
    argv = list(sys.argv[1:] if argv is None else argv)

    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE, file=sys.stdout if argv else sys.stderr)
        return 0 if argv else 1
    if argv[0] == "--version":
        print("%s %s" % (VCERGM_NAME, VCERGM_VERSION))
        return 0

    command = argv[0]
    try:
        if command not in COMMANDS:
            raise UsageError("unknown command %r (choose from %s)" %
                             (command, ", ".join(COMMANDS)))
        cmd = Command(command, argv[1:])
        setup_logging(-1 if cmd.opts.quiet else min(cmd.opts.verbose, 2))
        printlog("Cli", "       : %s %s" % (command, " ".join(argv[1:])))
        return HANDLERS[command](cmd)
    except HelpRequested as e:
        return e.status
    except VcergmError as e:
        sys.stderr.write(diagnostic(e.kind, e.exit_code, e))
        return e.exit_code
    except ValueError as e:
        sys.stderr.write(diagnostic("usage", 1, e))
        return 1
    except Exception as e:
        log_exception()
        sys.stderr.write(diagnostic("internal", 3, "%s: %s" %
                                    (e.__class__.__name__, e)))
        return 3


def main():
    sys.exit(run())
