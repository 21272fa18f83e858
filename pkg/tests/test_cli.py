import io
import json

import pytest

from vc_ergm import cli
from vc_ergm.dyngraph import read_edge_list
from vc_ergm.errors import DivergenceError


QUICK = ["--sweeps", "20", "--burn-in", "10"]


def last_line(text):
    return text.strip().splitlines()[-1]


@pytest.fixture
def simulated(tmp_path):
    path = str(tmp_path / "sim.csv")
    assert cli.run(["simulate", "--n", "8", "--times", "8", "--seed", "1",
                    "--out", path] + QUICK) == 0
    return path


class TestStats:
    def test_toy(self, toy_directed_path, capsys):
        assert cli.run(["stats", "--input", toy_directed_path,
                        "--stats", "edges"]) == 0
        assert capsys.readouterr().out == "time,edges\n0.0,0.5\n"

    def test_undirected(self, toy_undirected_path, capsys):
        assert cli.run(["stats", "--input", toy_undirected_path,
                        "--undirected", "--stats", "edges,twostar"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "time,edges,twostar"
        assert lines[1] == "0.0,%r,%r" % (2.0 / 3, 1.0 / 3)
        assert lines[2] == "1.0,%r,0.0" % (1.0 / 3)

    def test_out_file_has_provenance(self, toy_directed_path, tmp_path):
        out = tmp_path / "stats.csv"
        assert cli.run(["stats", "--input", toy_directed_path,
                        "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# vc-ergm")
        assert lines[-1] == "0.0,0.5"

    def test_config_file(self, toy_directed_path, tmp_path, capsys):
        conf = tmp_path / "stats.conf"
        conf.write_text("stats = edges,reciprocity\n")
        assert cli.run(["stats", "--config", str(conf),
                        "--input", toy_directed_path]) == 0
        assert capsys.readouterr().out.splitlines()[0] == \
            "time,edges,reciprocity"

    def test_flags_override_config(self, toy_directed_path, tmp_path, capsys):
        conf = tmp_path / "stats.conf"
        conf.write_text("stats = edges,reciprocity\n")
        assert cli.run(["stats", "--config", str(conf), "--stats", "edges",
                        "--input", toy_directed_path]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "time,edges"


class TestErrors:
    def test_missing_input(self, capsys):
        assert cli.run(["fit"]) == 1
        assert last_line(capsys.readouterr().err).startswith(
            "vc-ergm: error=usage exit=1 message=")

    @pytest.mark.parametrize("argv", [
        ["fit", "--bogus"],
        ["frobnicate"],
        ["stats", "--stats", "kstar", "--input", "x.csv"],
        ["fit", "--input", "x.csv", "--lambda", "-1"],
        ["fit", "--input", "x.csv", "--gcv", "both"],
        ["stats", "positional"],
        [],
    ])
    def test_usage(self, argv, capsys):
        assert cli.run(argv) == 1

    def test_unknown_config_key(self, toy_directed_path, tmp_path, capsys):
        conf = tmp_path / "bad.conf"
        conf.write_text("colour = blue\n")
        assert cli.run(["stats", "--config", str(conf),
                        "--input", toy_directed_path]) == 1
        assert "error=usage" in capsys.readouterr().err

    def test_bad_data(self, tmp_path, capsys):
        path = tmp_path / "loops.csv"
        path.write_text("time,from,to,node_count\n0,2,2,3\n")
        assert cli.run(["stats", "--input", str(path)]) == 2
        assert last_line(capsys.readouterr().err).startswith(
            "vc-ergm: error=data exit=2 message=line 2: self-loop")

    def test_missing_file(self, tmp_path, capsys):
        assert cli.run(["stats", "--input", str(tmp_path / "none.csv")]) == 2

    def test_numerical(self, simulated, monkeypatch, capsys):
        def diverge(*args, **kwargs):
            raise DivergenceError("step halving\nfailed")

        monkeypatch.setattr(cli, "fit_vcergm", diverge)
        assert cli.run(["fit", "--input", simulated]) == 3
        assert last_line(capsys.readouterr().err) == \
            "vc-ergm: error=numerical exit=3 message=step halving failed"

    def test_internal(self, simulated, monkeypatch, capsys):
        def crash(*args, **kwargs):
            raise RuntimeError("boom")

        monkeypatch.setattr(cli, "fit_vcergm", crash)
        assert cli.run(["fit", "--input", simulated]) == 3
        assert "error=internal exit=3" in capsys.readouterr().err

    def test_help(self, capsys):
        assert cli.run(["--help"]) == 0
        assert cli.run(["fit", "--help"]) == 0
        assert "--basis-dim" in capsys.readouterr().out
        assert cli.run(["--version"]) == 0


class TestSimulate:
    def test_output_is_an_edge_list(self, simulated):
        with io.open(simulated, newline="") as handle:
            net = read_edge_list(handle, True)
        assert list(net.times) == [float(t) for t in range(1, 9)]
        assert all(g.n == 8 for g in net.graphs)

    def test_deterministic(self, tmp_path):
        paths = [str(tmp_path / name) for name in ("a.csv", "b.csv")]
        for path in paths:
            assert cli.run(["simulate", "--n", "6", "--times", "5",
                            "--seed", "4", "--phi-curve", "quad",
                            "--out", path] + QUICK) == 0
        texts = [open(p).read() for p in paths]
        assert texts[0] == texts[1]
        assert "# seed: 4" in texts[0]

    def test_curve_file(self, tmp_path):
        curves = tmp_path / "curves.csv"
        curves.write_text("time,statistic,phi_hat\n1,edges,-20\n4,edges,20\n")
        out = str(tmp_path / "sim.csv")
        assert cli.run(["simulate", "--stats", "edges", "--phi-curve", "file",
                        "--curve-file", str(curves), "--n", "5",
                        "--times", "4", "--out", out] + QUICK) == 0

    def test_threads_do_not_change_draws(self, tmp_path):
        bodies = []
        for threads in ("1", "3"):
            path = str(tmp_path / ("sim%s.csv" % threads))
            assert cli.run(["simulate", "--stats", "edges,triangle",
                            "--undirected", "--phi-curve", "er", "--n", "6",
                            "--times", "4", "--seed", "9", "--threads", threads,
                            "--out", path] + QUICK) == 0
            with io.open(path) as handle:
                bodies.append([line for line in handle
                               if not line.startswith("# ")])
        assert bodies[0] == bodies[1]

    def test_bad_thread_count(self):
        assert cli.run(["simulate", "--threads", "0"] + QUICK) == 1

    def test_reciprocity_needs_direction(self, capsys):
        assert cli.run(["simulate", "--undirected"] + QUICK) == 1


class TestFitAndTest:
    def test_null_fit_shared(self, simulated, tmp_path):
        fit_out = str(tmp_path / "fit.json")
        test_out = str(tmp_path / "test.json")
        assert cli.run(["fit", "--input", simulated, "--out", fit_out]) == 0
        assert cli.run(["test", "--input", simulated, "--B", "2",
                        "--out", test_out] + QUICK) == 0

        fit = json.load(open(fit_out))
        test = json.load(open(test_out))
        assert fit["phi_h0"] == test["phi_h0"]
        assert fit["statistics"] == ["edges"]
        assert len(fit["phi_hat"][0]) == fit["q"]
        assert test["B_retained"] == 2
        assert test["provenance"]["seed"] == 0

    def test_fit_deterministic(self, simulated, capsys):
        outputs = []
        for _ in range(2):
            assert cli.run(["fit", "--input", simulated, "--stats",
                            "edges,reciprocity"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["statistics"] == ["edges", "reciprocity"]

    def test_curves(self, simulated, tmp_path):
        curves = tmp_path / "curves.csv"
        assert cli.run(["fit", "--input", simulated, "--lambda", "1",
                        "--curves", str(curves),
                        "--curve-grid", "1,4.5,8",
                        "--out", str(tmp_path / "fit.json")]) == 0
        rows = [l for l in curves.read_text().splitlines()
                if not l.startswith("#")]
        assert rows[0] == "time,statistic,phi_hat"
        assert [r.split(",")[0] for r in rows[1:]] == ["1.0", "4.5", "8.0"]

    def test_curve_grid_outside_domain(self, simulated, tmp_path):
        assert cli.run(["fit", "--input", simulated,
                        "--curves", str(tmp_path / "c.csv"),
                        "--curve-grid", "0,9",
                        "--out", str(tmp_path / "fit.json")]) == 2

    def test_constant_basis(self, simulated, tmp_path):
        out = str(tmp_path / "fit.json")
        assert cli.run(["fit", "--input", simulated, "--basis-dim", "1",
                        "--out", out]) == 0
        fit = json.load(open(out))
        assert fit["q"] == 1
        assert fit["phi_hat"][0][0] == pytest.approx(fit["phi_h0"][0])


class TestBenchmark:
    def test_estimation(self, tmp_path):
        conf = tmp_path / "bench.ini"
        conf.write_text("[estimation]\nscenario = er\nn = 6\nk = 6\n"
                        "replicates = 1\nsweeps = 10\nburn_in = 5\n"
                        "methods = vcergm,twostep\nseed = 2\n")
        out = tmp_path / "bench.json"
        assert cli.run(["benchmark", "--config", str(conf),
                        "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["study"] == "estimation"
        assert sorted(report["summary"]) == ["twostep", "vcergm"]
        assert report["provenance"]["seed"] == 2

    def test_unknown_study(self):
        assert cli.run(["benchmark", "--study", "speed"]) == 1
