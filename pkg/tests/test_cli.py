import json
import subprocess
import sys
from pathlib import Path

import pytest

from polycert.sysfile import load_system, parse_system_text

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "polycert.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


class TestSystemFile:
    def test_round_trip(self):
        sf = load_system(str(FIXTURES / "example2_stability.sys"))
        again = parse_system_text(sf.render())
        assert again.vars == sf.vars
        assert again.params == sf.params
        assert again.eqs == sf.eqs

    def test_metadata(self):
        sf = parse_system_text("vars: x\nprecision: 30\nt0: 1/2\nh: 2\neqs:\nx - 1\n")
        assert sf.precision == 30
        assert str(sf.t0) == "1/2"
        assert sf.h == 2

    def test_comments_ignored(self):
        sf = parse_system_text("# header\nvars: x # trailing\neqs:\nx - 1 # root at 1\n")
        assert sf.vars == ("x",)
        assert len(sf.eqs) == 1


class TestCommands:
    def test_solve(self, tmp_path):
        r = run_cli("solve", str(FIXTURES / "toy_solve.sys"), "--precision", "20")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert len(payload["solutions"]) == 2
        sol = payload["solutions"][0]
        assert sol["certified"] is True
        assert set(sol["coords"]) == {"X", "Y"}
        assert "2^" in sol["coords"]["X"]["lo"]

    def test_solve_inconsistent_is_empty(self, tmp_path):
        f = tmp_path / "none.sys"
        f.write_text("vars: x\neqs:\nx\nx - 1\n")
        r = run_cli("solve", str(f))
        assert r.returncode == 0
        assert json.loads(r.stdout) == {"solutions": []}

    def test_rur(self):
        r = run_cli("rur", str(FIXTURES / "toy_solve.sys"))
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["rur"]["f_t"] == "T^2 - 1"

    def test_dv(self):
        r = run_cli("dv", str(FIXTURES / "parabola_dv.sys"))
        assert r.returncode == 0
        assert json.loads(r.stdout) == {"discriminant_variety": ["u"]}

    def test_cad(self, tmp_path):
        f = tmp_path / "line.sys"
        f.write_text("vars: u\neqs:\nu\n")
        r = run_cli("cad", str(f))
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["sample_points"] == [["-1"], ["1"]]

    def test_stability_pointwise(self, tmp_path):
        f = tmp_path / "d.sys"
        f.write_text("vars: z1 z2\neqs:\nz1*z2 - 4\n")
        r = run_cli("stability", str(f))
        assert r.returncode == 0
        assert json.loads(r.stdout) == {"stable": True}

    def test_stability_parametric_with_plot(self, tmp_path):
        r = run_cli(
            "stability",
            str(FIXTURES / "example2_stability.sys"),
            "--parametric",
            "--plot-out",
            str(tmp_path / "cells.dat"),
        )
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["stable"] == [["0", "-1"]]
        assert len(payload["unstable"]) == 8
        lines = (tmp_path / "cells.dat").read_text().strip().splitlines()
        assert len(lines) == 9
        assert all(len(l.split()) == 3 for l in lines)
        verdicts = {l.split()[2] for l in lines}
        assert verdicts == {"stable", "unstable"}

    def test_hinf(self):
        r = run_cli("hinf", str(FIXTURES / "example3_hinf.sys"), "--starting-precision", "10")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        lo = payload["hinf"]["decimal"]
        assert lo.startswith("[1.618")

    def test_refine(self):
        r = run_cli(
            "refine", str(FIXTURES / "sqrt2.sys"), "--point", "1.4", "--precision", "40"
        )
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["box"]["certified"] is True
        assert payload["box"]["coords"]["x"]["decimal"].startswith("[1.41421356")

    def test_parse_error_exit_code(self, tmp_path):
        f = tmp_path / "bad.sys"
        f.write_text("vars: x\neqs:\nx^^ + 1\n")
        assert run_cli("solve", str(f)).returncode == 2

    def test_undeclared_identifier_exit_code(self, tmp_path):
        f = tmp_path / "bad2.sys"
        f.write_text("vars: x\neqs:\nx + q\n")
        assert run_cli("solve", str(f)).returncode == 2

    def test_unsupported_exit_code(self, tmp_path):
        f = tmp_path / "curve.sys"
        f.write_text("vars: x y\neqs:\nx*y - 1\n")
        assert run_cli("solve", str(f)).returncode == 3

    def test_solve_toy_identification_system(self):
        """The substituted identification subsystem solves to 4 boxes."""
        r = run_cli(
            "solve", str(FIXTURES / "toy_ident_substituted.sys"), "--precision", "30"
        )
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert len(payload["solutions"]) == 4
        assert all(s["certified"] for s in payload["solutions"])

    def test_byte_deterministic_output(self):
        a = run_cli("solve", str(FIXTURES / "toy_solve.sys"), "--precision", "20")
        b = run_cli("solve", str(FIXTURES / "toy_solve.sys"), "--precision", "20")
        assert a.stdout == b.stdout
