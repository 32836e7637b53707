import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from toeplitz import cli
from toeplitz import coalgebra as co

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "output.schema.json").read_text())


def run(*argv, env_config=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    text = out.getvalue()
    payload = json.loads(text) if text.strip().startswith("{") else None
    if payload is not None:
        jsonschema.validate(payload, SCHEMA)
    return code, payload, err.getvalue()


def test_compact_example():
    code, p, _ = run("compact", "T(0,0)-T(1,1)")
    assert code == 0 and p["compact"] is True


def test_grade_example():
    code, p, _ = run("grade", "T(0,0)+2*T(0,1)", "--k", "1")
    assert code == 0 and p["component"] == "2*T(0,1)"
    assert p["terms"] == [{"monomial": [0, 1], "coefficient": "2"}]


def test_cesaro_example():
    code, p, _ = run("cesaro", "--q", "1/2", "--steps", "1000", "--depth", "4")
    assert code == 0 and p["max_deviation"] <= 2e-3
    code, p, _ = run("cesaro", "--q", "1/2", "--steps", "4", "--depth", "1", "--values")
    assert p["values"]["T(1,1)"] == "15/64"


def test_simplify_and_mul():
    assert run("simplify", "T*T")[1]["result"] == "T(0,0)"
    assert run("mul", "T", "T*")[1]["result"] == "T(1,1)"
    p = run("simplify", "T (x) T*")[1]
    assert p["kind"] == "tensor" and p["terms"][0]["monomials"] == [[1, 0], [0, 1]]


def test_symbol_norm_delta():
    assert run("symbol", "2*T(0,1) + T(0,0) - T(1,1)")[1]["symbol"] == "2*e^(i*t)"
    p = run("norm", "I - 2*T(1,1)", "--trunc", "8")[1]
    assert p["agrees"] and p["diagonal_norm"] == "1" and isinstance(p["norm"], float)
    assert run("delta", "T")[1]["result"] == "(T(1,0) (x) T(1,0))"


def test_checks():
    for argv in (["hopf-check", "T(3,1) + i*T"], ["haar-verify", "--depth", "6"], ["witness-cqg", "--samples", "10", "--seed", "4"],
                 ["witness-cqg", "--samples", "10", "--mirror"], ["measure-conv", "dirac(1/3)", "dirac(2/3) + haar"]):
        code, p, _ = run(*argv)
        assert code == 0 and p["ok"], argv


def test_witness_records_seed():
    assert run("witness-cqg", "--samples", "2", "--seed", "9")[1]["seed"] == 9


def test_axioms_is_deterministic():
    a = run("axioms", "--seed", "3", "--cases", "2")
    b = run("axioms", "--seed", "3", "--cases", "2")
    assert a == b and a[0] == 0 and a[1]["passed"]


def test_parse_error_exit_code():
    code, p, err = run("simplify", "T + ")
    assert code == 2 and p["offset"] == 4 and "error" in err


def test_usage_errors():
    assert run("nope")[0] == 2
    assert run("grade", "T")[0] == 2
    assert run("cesaro", "--q", "2")[0] == 2
    assert run("cesaro", "--q", "x")[0] == 2
    assert run("compact", "T (x) T")[0] == 2
    assert run("norm", "T(9,9)", "--trunc", "4")[0] == 2


def test_assertion_failure_exit_code(monkeypatch):
    real = co.cqg_witness

    def broken(samples, seed=0, *, mirror=False):
        report = real(samples, seed, mirror=mirror)
        bad = co.certify(co.witness_setup(mirror)[0], mirror)
        return co.WitnessReport(report.mirror, report.A, report.x, report.Ax, report.samples + [bad])

    monkeypatch.setattr(co, "cqg_witness", broken)
    code, p, _ = run("witness-cqg", "--samples", "3")
    assert code == 1 and p["ok"] is False and p["failures"] == [3]


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "toeplitz.cfg"
    cfg.write_text("# defaults\nseed = 12\ndepth=3\n")
    assert run("--config", str(cfg), "witness-cqg", "--samples", "1")[1]["seed"] == 12
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    p = run("haar-verify")[1]
    assert p["seed"] == 12 and p["depth"] == 3
    # flags override the file
    assert run("haar-verify", "--depth", "2")[1]["depth"] == 2
    cfg.write_text("colour = blue\n")
    assert run("compact", "T")[0] == 2


def test_text_format():
    out, err = io.StringIO(), io.StringIO()
    assert cli.run(["compact", "T", "--format", "text"], out, err) == 0
    assert "compact: False" in out.getvalue()


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "toeplitz.cli", "compact", "I"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["compact"] is False
