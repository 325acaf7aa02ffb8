from __future__ import annotations

import json
import math
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from grassmetric import GramNForm
from grassmetric.cli import JobSpec, main, parse_matrix_csv, run
from grassmetric.errors import EmptyFile, NonNumericToken, RaggedRows

R = 1 / math.sqrt(2)


class BiasedForm(GramNForm):
    def inner(self, A, B):
        return super().inner(A, B) + 0.1


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def invoke(*args, env=None):
    return CliRunner().invoke(main, [str(a) for a in args], env=env)


class TestParse:
    def test_plain(self, files):
        M = parse_matrix_csv(files("a.csv", "1,0,0\n0,1,0"))
        assert M.shape == (2, 3)

    def test_comments_and_blank_lines(self, files):
        M = parse_matrix_csv(files("a.csv", "# comment\n1,2\n\n3, 4\n"))
        assert np.array_equal(M, [[1, 2], [3, 4]])

    def test_errors(self, files):
        with pytest.raises(RaggedRows):
            parse_matrix_csv(files("a.csv", "1,2\n3"))
        with pytest.raises(EmptyFile):
            parse_matrix_csv(files("b.csv", "# nothing\n"))
        with pytest.raises(NonNumericToken):
            parse_matrix_csv(files("c.csv", "1,x\n"))
        with pytest.raises(NonNumericToken):
            parse_matrix_csv(files("d.csv", "1,nan\n"))


class TestCommands:
    def test_inner(self, files):
        a = files("a.csv", "1,0,0\n0,1,0\n")
        result = invoke("inner", "--form", "gram:standard", "--left", a, "--right", a)
        assert result.exit_code == 0
        assert json.loads(result.output) == {"value": 1.0}

    def test_norm_with_ambient(self, files):
        g = files("g.csv", "4,0\n0,1\n")
        a = files("a.csv", "1,0\n")
        result = invoke("norm", "--form", f"gram:{g}", "--input", a)
        assert json.loads(result.output) == {"value": 2.0}

    def test_diagonal_form_file(self, files):
        c = files("c.json", json.dumps({"m": 3, "n": 2, "C": [{"idx": [1, 2], "value": 4.0}]}))
        a = files("a.csv", "1,0,0\n0,1,0\n")
        assert json.loads(invoke("norm", "--form", f"diagonal:{c}", "--input", a).output) == {"value": 2.0}

    def test_angle(self, files):
        a = files("a.csv", "1,0,0\n0,1,0\n")
        b = files("b.csv", f"1,0,0\n0,{R!r},{R!r}\n")
        report = json.loads(invoke("angle", "--left", a, "--right", b).output)
        assert report["cosine"] == pytest.approx(R)
        assert report["angle_unoriented"] == pytest.approx(math.pi / 4)

    def test_decompose(self, files):
        basis = files("s.csv", "1,0,0\n1,1,0\n")
        x = files("x.csv", "2,3,4\n")
        report = json.loads(invoke("decompose", "--basis", basis, "--x", x).output)
        d = report["decompositions"][0]
        assert d["lambdas"] == pytest.approx([-1, 3]) and d["residual"] == pytest.approx([0, 0, 4])

    def test_distmat_json_and_csv(self, files):
        a = files("a.csv", "1,0,0\n0,1,0\n")
        b = files("b.csv", "1,0,0\n0,0,1\n")
        report = json.loads(invoke("distmat", a, b).output)
        assert report["distances"][0][1] == pytest.approx(math.pi / 2)
        rows = invoke("distmat", a, b, "--csv").output.strip().splitlines()
        assert rows[0].split(",")[0] == "0.0" and len(rows) == 2

    def test_complement_and_dual(self, files):
        a = files("a.csv", "1,0,0,0\n0,1,0,0\n")
        b = files("b.csv", f"{R!r},0,{R!r},0\n0,1,0,0\n")
        comp = json.loads(invoke("complement", "--basis", a).output)
        assert comp["n"] == 2 and np.allclose(np.abs(comp["basis"]), np.eye(4)[2:])
        dual = json.loads(invoke("dual-check", "--left", a, "--right", b).output)
        assert dual["holds"] and dual["gap"] < 1e-9

    def test_minor_check(self, files, rng):
        Q = np.linalg.qr(rng.standard_normal((4, 4)))[0]
        m = files("q.csv", "\n".join(",".join(repr(float(v)) for v in row) for row in Q))
        result = invoke("minor-check", "--matrix", m, "--n", "2")
        report = json.loads(result.output)
        assert result.exit_code == 0 and report["holds"] and report["orthogonal"]
        assert len(report["minors"]) == 6

    def test_check_axioms_pass(self):
        result = invoke("check-axioms", "--m", 3, "--n", 2, "--trials", 20)
        report = json.loads(result.output)
        assert result.exit_code == 0 and report["verdict"] == "pass"
        assert "D21-i′" in result.output  # prime kept as a character

    def test_check_axioms_unequal_diagonal(self, files):
        c = files("c.json", json.dumps({"m": 4, "n": 2, "C": [{"idx": [2, 3], "value": 2.0}]}))
        result = invoke("check-axioms", "--form", f"diagonal:{c}", "--trials", 50)
        report = json.loads(result.output)
        assert result.exit_code == 1 and report["verdict"] == "fail"


class TestExitCodes:
    def test_malformed_csv(self, files):
        result = invoke("norm", "--input", files("bad.csv", "1,2\n3\n"))
        assert result.exit_code == 2
        assert json.loads(result.stderr)["error"] == "RaggedRows"

    def test_dimension_mismatch(self, files):
        a = files("a.csv", "1,0,0\n0,1,0\n")
        b = files("b.csv", "1,0\n0,1\n")
        assert invoke("inner", "--left", a, "--right", b).exit_code == 2

    def test_missing_file(self, tmp_path):
        assert invoke("norm", "--input", tmp_path / "absent.csv").exit_code == 2

    def test_unknown_form(self, files):
        a = files("a.csv", "1,0\n")
        assert invoke("norm", "--form", "hodge:1", "--input", a).exit_code == 2

    def test_dependent_basis(self, files):
        a = files("a.csv", "1,0,0\n2,0,0\n")
        assert invoke("complement", "--basis", a).exit_code == 2

    def test_biased_form_hook(self):
        status, report = run(JobSpec("check-axioms", m=3, n=2, trials=30), form=BiasedForm(np.eye(3), 2))
        assert status == 1 and report["verdict"] == "fail"
        failing = [r for r in report["reports"] if r["verdict"] == "fail"]
        assert failing and all("witness" in r for r in failing)
        json.loads(json.dumps(report, ensure_ascii=False))

    def test_unknown_command(self):
        assert run(JobSpec("frobnicate"))[0] == 2


class TestOptions:
    def test_tol_from_environment(self):
        result = invoke("check-axioms", "--m", 2, "--n", 1, "--trials", 5, env={"GRASSMETRIC_TOL": "1e-6"})
        assert json.loads(result.output)["tol"] == 1e-6

    def test_tol_flag_overrides_environment(self):
        result = invoke("check-axioms", "--m", 2, "--n", 1, "--trials", 5, "--tol", "1e-7",
                        env={"GRASSMETRIC_TOL": "1e-6"})
        assert json.loads(result.output)["tol"] == 1e-7

    def test_out_file(self, files, tmp_path):
        a = files("a.csv", "1,0\n")
        out = tmp_path / "r.json"
        assert invoke("norm", "--input", a, "--out", out).exit_code == 0
        assert json.loads(out.read_text()) == {"value": 1.0}

    def test_seed_determinism(self):
        args = ("check-axioms", "--m", 3, "--n", 2, "--seed", 3, "--trials", 20)
        assert invoke(*args).stdout_bytes == invoke(*args).stdout_bytes


def test_console_entry_point(tmp_path):
    a = tmp_path / "a.csv"
    a.write_text("1,0,0\n0,1,0\n")
    proc = subprocess.run(
        [sys.executable, "-m", "grassmetric.cli", "inner", "--left", str(a), "--right", str(a)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"value": 1.0}
