import json
import shutil
import subprocess
import sys

import pytest

from conftest import GOLDEN
from padic_orbits import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestOrbit:
    @pytest.mark.parametrize("argv,chain", [
        (("--p", "3", "--c", "-2", "--level", "2"), "0 → 7 → 2 → 2"),
        (("--p", "5", "--c", "107", "--level", "3"), "0 → 107 → 56 → 118 → 31 → 68 → 106 → 93 → 6 → 18 → 56"),
        (("--p", "7", "--c", "26", "--level", "2"), "0 → 26 → 16 → 37 → 23 → 16"),
        (("--p", "7", "--c", "2", "--level", "1"), "0 → 2 → 6 → 3 → 4 → 4"),
        (("--p", "2", "--c", "-2", "--level", "4"), "0 → 14 → 2 → 2"),
    ])
    def test_arrow_chains(self, capsys, argv, chain):
        code, out, _ = run(capsys, "orbit", *argv)
        assert code == 0 and out.split("  ")[0] == chain

    def test_json(self, capsys):
        code, out, _ = run(capsys, "orbit", "--p", "3", "--c", "-2", "--level", "2", "--format", "json")
        d = json.loads(out)
        assert code == 0 and d["schema"] == "padic-orbits/1"
        assert (d["sequence"], d["m"], d["n"]) == ([0, 7, 2, 2], 2, 1)

    def test_digit_parameter(self, capsys):
        code, out, _ = run(capsys, "orbit", "--p", "3", "--c", "digits:1.22", "--level", "2")
        assert code == 0 and out.startswith("0 → 7 → 2 → 2")

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "orbit.txt"
        code, out, _ = run(capsys, "orbit", "--p", "3", "--c", "-2", "--level", "1", "--out", str(target))
        assert code == 0 and out == "" and target.read_text().startswith("0 → 1 → 2 → 2")


class TestOtherCommands:
    def test_classify(self, capsys):
        code, out, _ = run(capsys, "classify", "--p", "3", "--c", "-2", "--format", "json")
        d = json.loads(out)
        assert code == 0 and d["verdict"] == "PreperiodicFinite" and d["certified"]

    def test_classify_window(self, capsys):
        code, out, _ = run(capsys, "classify", "--p", "3", "--c", "7", "--kmax", "3")
        assert code == 0 and out.startswith("Inconclusive (2,3)")

    def test_profile(self, capsys):
        code, out, _ = run(capsys, "profile", "--p", "3", "--c", "7", "--level", "4")
        assert out.splitlines() == ["mod 3^1  (2,1)", "mod 3^2  (2,1)", "mod 3^3  (2,3)", "mod 3^4  (2,9)"]

    def test_pcf(self, capsys):
        code, out, _ = run(capsys, "pcf", "--p", "5")
        d = json.loads(out)
        assert code == 0 and d["p"] == 5 and len(d["parameters"]) == 7

    def test_tree(self, capsys):
        code, out, _ = run(capsys, "tree", "--p", "3", "--c", "-2", "--depth", "1", "--format", "text")
        assert code == 0 and out.splitlines()[0] == "0 mod 3^0 -> 0 mod 3^1  (length 1)"
        code, out, _ = run(capsys, "tree", "--p", "3", "--c", "-2", "--depth", "1")
        assert out.startswith("digraph")

    def test_atlas(self, capsys):
        code, out, _ = run(capsys, "atlas", "--p", "3", "--depth", "2")
        assert code == 0 and len(json.loads(out)["nodes"]) == 12

    def test_figures_reproduce_golden_files(self, capsys, tmp_path):
        code, out, err = run(capsys, "figures", "--p", "5", "--out", str(tmp_path))
        assert code == 0 and err == ""
        for golden in (GOLDEN / "p5").iterdir():
            assert (tmp_path / golden.name).read_text() == golden.read_text()

    def test_figures_banner_for_uncertified_primes(self, capsys):
        code, out, err = run(capsys, "figures", "--p", "11", "--format", "json")
        assert code == 0 and err.startswith("PROVISIONAL") and json.loads(out)["provisional"]


class TestVerify:
    def test_counts(self, capsys):
        code, out, _ = run(capsys, "verify", "counts")
        assert code == 0 and out.strip().endswith("counts: 3/3 passed")

    def test_c2_above_level_two(self, capsys):
        code, _, _ = run(capsys, "verify", "c2", "--k", "3..5", "--i", "1..6", "--samples", "2", "--seed", "1")
        assert code == 0

    def test_c2_at_level_two_reports_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "c2", "--k", "2", "--format", "json")
        d = json.loads(out)
        assert code == 1 and not d["passed"]
        assert all(c["orbit_ok"] and not c["in_disk"] for c in d["cases"])

    def test_seed_determinism(self, capsys):
        argv = ("verify", "tail", "--p", "3,5", "--samples", "20", "--seed", "4", "--format", "json")
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first

    def test_explore(self, capsys):
        code, out, _ = run(capsys, "verify", "explore", "--k", "2", "--seed", "3", "--format", "json")
        rows = json.loads(out)
        assert code == 0 and [(r["k"], r["l"]) for r in rows] == [(2, 1), (2, 2)]


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("orbit", "--p", "4", "--c", "1"),
        ("orbit", "--p", "3", "--c", "x1"),
        ("orbit", "--p", "3", "--c", "digits:1.2", "--prec", "5"),
        ("classify", "--p", "3", "--c", "1", "--kmax", "2"),
        ("pcf", "--p", "2"),
        ("verify", "c2", "--k", "2..x"),
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err

    def test_argparse_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["orbit", "--c", "1"])
        assert exc.value.code == 2

    def test_internal_invariant(self, capsys, monkeypatch):
        from padic_orbits.orbits import OrbitInvariantError

        def broken(*args, **kwargs):
            raise OrbitInvariantError("forced")

        monkeypatch.setattr(cli, "level_profile", broken)
        code, _, err = run(capsys, "profile", "--p", "3", "--c", "1")
        assert code == 3 and "forced" in err


def test_console_script():
    exe = shutil.which("padic-orbits")
    argv = [exe] if exe else [sys.executable, "-m", "padic_orbits.cli"]
    done = subprocess.run(argv + ["orbit", "--p", "3", "--c", "-2", "--level", "2"],
                          capture_output=True, text=True, check=True)
    assert done.stdout.startswith("0 → 7 → 2 → 2")
