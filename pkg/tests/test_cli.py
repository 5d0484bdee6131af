import csv
import io
import json
import math
import subprocess
import sys

import pytest

from genbregman.cli import format_value, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestFormat:
    def test_rules(self):
        assert format_value(math.inf) == "inf"
        assert format_value(3e-13) == "0"
        assert format_value(3e-13, tol=1e-14) == "3e-13"
        assert format_value(2 * math.log(2) - 1) == "0.386294361119891"
        assert format_value(-0.0) == "0"


class TestEval:
    def test_kl(self):
        assert run("eval", "--dist", "kl", "--x", "2", "--y", "1") == (0, "0.386294361119891\n")

    def test_inf(self):
        assert run("eval", "--dist", "sigma_log_closed", "--x", "1", "--y", "2") == (0, "inf\n")

    def test_graph_zero(self):
        assert run("eval", "--dist", "fitz_log_closed", "--x", "2", "--y", "2") == (0, "0\n")

    def test_spec_triple(self):
        code, out = run("eval", "--dist", "subdiff_of(abs)", "fy:abs", "sharp", "--x", "3", "--y", "0")
        assert (code, out) == (0, "6\n")
        code, out = run("eval", "--dist", "log", "F_log", "flat", "lower-closed", "--x", "0", "--y", "2.718281828459045")
        assert (code, out.strip()) == (0, "1")

    def test_tol_flag(self):
        assert run("eval", "--tol", "0.5", "--dist", "kl", "--x", "2", "--y", "1") == (0, "0\n")

    @pytest.mark.parametrize("argv", [
        ["eval", "--dist", "nope", "--x", "1", "--y", "1"],
        ["eval", "--dist", "kl", "--x", "abc", "--y", "1"],
        ["eval", "--dist", "log", "F_log", "--x", "1", "--y", "1"],
        ["eval", "--dist", "log", "F_log", "middle", "--x", "1", "--y", "1"],
        [],
    ])
    def test_usage_errors(self, argv):
        assert run(*argv)[0] == 2


class TestGrid:
    def test_f_log_rows(self, tmp_path):
        out = tmp_path / "f.csv"
        code, _ = run("grid", "--surface", "F_log", "--xr", "0", "5", "100", "--yr", "-3", "3", "7", "--out", str(out))
        assert code == 0
        rows = list(csv.reader(out.open()))
        assert rows[0] == ["x", "y", "value"]
        assert len(rows) == 701
        assert rows[1 + 4] == ["0.0", "1.0", "1"]

    def test_sigma_log_support(self, tmp_path):
        out = tmp_path / "s.csv"
        run("grid", "--surface", "sigma_log", "--xr", "0", "5", "60", "--yr", "-3", "3", "60", "--out", str(out))
        for x, y, v in list(csv.reader(out.open()))[1:]:
            x, y = float(x), float(y)
            assert (v != "inf") == (x > 0 and y <= math.log(x))

    def test_kl_diagonal(self, tmp_path):
        out = tmp_path / "k.csv"
        run("grid", "--surface", "kl", "--xr", "1", "3", "3", "--yr", "1", "3", "3", "--out", str(out))
        rows = list(csv.reader(out.open()))
        assert rows[1] == ["1.0", "1.0", "0"]

    def test_deterministic_across_threads(self, tmp_path, monkeypatch):
        blobs = []
        for n in ("1", "4", "0"):
            monkeypatch.setenv("GBD_THREADS", n)
            out = tmp_path / f"g{n}.csv"
            run("grid", "--surface", "fitz_log_closed", "--xr", "0", "4", "30", "--yr", "0", "4", "30", "--out", str(out))
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1] == blobs[2]

    def test_bad_threads(self, tmp_path, monkeypatch):
        monkeypatch.setenv("GBD_THREADS", "many")
        assert run("grid", "--surface", "kl", "--xr", "1", "2", "2", "--yr", "1", "2", "2",
                   "--out", str(tmp_path / "x.csv"))[0] == 2

    def test_unwritable(self, tmp_path):
        bad = tmp_path / "missing" / "f.csv"
        assert run("grid", "--surface", "kl", "--xr", "1", "2", "2", "--yr", "1", "2", "2", "--out", str(bad))[0] == 1

    def test_bad_range(self, tmp_path):
        assert run("grid", "--surface", "kl", "--xr", "2", "1", "5", "--yr", "1", "2", "2",
                   "--out", str(tmp_path / "f.csv"))[0] == 2


class TestCheck:
    @pytest.mark.parametrize("what", ["ordering", "lower-bound", "coercivity", "prox-closed-form"])
    def test_passes(self, what):
        code, out = run("check", "--what", what)
        report = json.loads(out)
        assert code == 0 and report["passed"]
        assert all({"name", "passed", "worst_slack"} <= set(a) for a in report["assertions"])

    def test_seeded_reproducible(self):
        a = run("check", "--what", "representativity", "--seed", "7")
        b = run("check", "--what", "representativity", "--seed", "7")
        assert a == b and a[0] == 0

    def test_unknown_suite(self):
        assert run("check", "--what", "everything")[0] == 2


class TestDiscoverProx:
    def test_discover(self, tmp_path):
        trace = tmp_path / "t.csv"
        code, out = run("discover-sigma", "--z", "2.718281828", "0", "--angles", "200", "--trace", str(trace))
        assert code == 0 and abs(float(out) - 2.718282) < 1e-5
        rows = list(csv.reader(trace.open()))
        assert rows[0] == ["phi", "x1", "y1", "p", "objective"] and len(rows) == 201

    def test_discover_invalid_region(self):
        assert run("discover-sigma", "--z", "2", "1") == (0, "inf\n")

    def test_discover_bad_z(self):
        assert run("discover-sigma", "--z", "-1", "-3")[0] == 1

    def test_prox(self):
        code, out = run("prox", "--theta", "energy-shift", "3", "--spec", "identity", "F_Id", "flat",
                        "--gamma", "1", "--side", "left", "--anchor", "0")
        lines = dict(line.split() for line in out.splitlines())
        assert code == 0 and abs(float(lines["minimizer"]) - 2.0) <= 1e-8
        assert abs(float(lines["value"]) - 1.5) <= 1e-10

    def test_prox_bracket_failure(self):
        code, _ = run("prox", "--theta", "linear", "-1", "--spec", "subdiff_of(linear(0))", "fy:linear(0)",
                      "flat", "--gamma", "1", "--anchor", "0")
        assert code == 1

    def test_prox_bad_theta(self):
        assert run("prox", "--theta", "cosh", "--spec", "kl", "--gamma", "1", "--anchor", "1")[0] == 2


class TestMeta:
    def test_list(self):
        code, out = run("--list")
        assert code == 0
        for name in ("fitz_log_closed", "F_log", "subdiff_of(<fn>)", "prox-closed-form", "abspow(p)"):
            assert name in out

    def test_version(self):
        assert run("--version")[0] == 0

    def test_module_entry_point(self):
        p = subprocess.run([sys.executable, "-m", "genbregman", "eval", "--dist", "kl", "--x", "0", "--y", "2"],
                           capture_output=True, text=True)
        assert p.returncode == 0 and p.stdout == "2\n"
