from __future__ import annotations

import json

import pytest

from edgeinsert.cli import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_PRECONDITION, main
from edgeinsert.embedding import format_instance
from edgeinsert.testkit import gen_fig2

from conftest import c4, wheel_i2


@pytest.fixture
def c4_file(tmp_path):
    g, s, t = c4()
    path = tmp_path / "c4.txt"
    path.write_text(format_instance(g, s, t))
    return str(path)


@pytest.fixture
def wheel_file(tmp_path):
    g, s, t = wheel_i2()
    path = tmp_path / "wheel.txt"
    path.write_text(format_instance(g, s, t))
    return str(path)


@pytest.fixture
def fig2_file(tmp_path):
    g, s, t = gen_fig2(1)
    path = tmp_path / "fig2.txt"
    path.write_text(format_instance(g, s, t))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out.startswith("{") else out


def test_run_bfs_c4(capsys, c4_file):
    code, data = _run(capsys, ["run", c4_file, "--algo", "bfs"])
    assert code == EXIT_OK
    assert data["crossings"] == 0 and data["consistent"] is True


def test_run_deg5_wheel(capsys, wheel_file):
    code, data = _run(capsys, ["run", wheel_file, "--algo", "deg5"])
    assert code == EXIT_OK
    assert data["crossings"] == 1 and data["consistent"] is True


def test_run_deg5_refuses_high_degree(capsys, fig2_file):
    code, _ = _run(capsys, ["run", fig2_file, "--algo", "deg5"])
    assert code == EXIT_PRECONDITION


def test_run_2sat_fig2_says_no_then_approx_within_bound(capsys, fig2_file):
    code, data = _run(capsys, ["run", fig2_file, "--algo", "2sat"])
    assert code == EXIT_NO
    assert data["decision"] == "no"
    code, data = _run(capsys, ["run", fig2_file, "--algo", "approx"])
    assert code == EXIT_OK
    assert data["consistent"] is True
    assert data["length"] <= data["bound"]


def test_run_fpt(capsys, wheel_file):
    code, data = _run(
        capsys, ["run", wheel_file, "--algo", "fpt", "--k", "3", "--delta", "0.01", "--seed", "5"]
    )
    assert code == EXIT_OK
    assert data["length"] == 3 and data["consistent"] is True


def test_run_fpt_auto(capsys, wheel_file):
    code, data = _run(capsys, ["run", wheel_file, "--algo", "fpt", "--auto-k"])
    assert code == EXIT_OK and data["length"] == 3


def test_run_oracle(capsys, wheel_file):
    code, data = _run(capsys, ["run", wheel_file, "--algo", "oracle"])
    assert code == EXIT_OK
    assert data["optimum_length"] == 3


def test_compare_c4(capsys, c4_file):
    code, data = _run(capsys, ["compare", c4_file])
    assert code == EXIT_OK
    algos = data["algorithms"]
    assert algos["bfs"]["crossings"] == 0
    assert algos["oracle"]["crossings"] == 0
    assert algos["2sat"]["decision"] == "yes"


def test_compare_fig2(capsys, fig2_file):
    code, data = _run(capsys, ["compare", fig2_file])
    assert code == EXIT_OK
    algos = data["algorithms"]
    assert algos["2sat"]["decision"] == "no"
    assert algos["oracle"]["length"] > data["dist"]
    assert not algos["bfs"]["consistent"]


def test_export_dual_and_gsp(capsys, tmp_path, c4_file):
    code, data = _run(capsys, ["export", c4_file, "--what", "dual", "--out", str(tmp_path / "d")])
    assert code == EXIT_OK and data["written"]
    code, data = _run(capsys, ["export", c4_file, "--what", "gsp", "--out", str(tmp_path / "g")])
    assert code == EXIT_OK
    code, data = _run(
        capsys, ["export", c4_file, "--what", "pipeline", "--out", str(tmp_path / "p")]
    )
    assert code == EXIT_OK


def test_gen_random_round_trip(capsys, tmp_path):
    out = tmp_path / "inst.txt"
    code, data = _run(
        capsys,
        ["gen", "--family", "random", "--n", "10", "--delta-max", "4", "--seed", "3", "--out", str(out)],
    )
    assert code == EXIT_OK
    code, data = _run(capsys, ["run", str(out), "--algo", "bfs"])
    assert code == EXIT_OK


def test_gen_fig2_stdout(capsys):
    code = main(["gen", "--family", "fig2", "--m", "1"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.splitlines()[0].split()[0].isdigit()


def test_input_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("this is not an instance\n")
    code = main(["run", str(bad), "--algo", "bfs"])
    assert code == EXIT_INPUT


def test_manifest(capsys, tmp_path):
    out = tmp_path / "manifest.json"
    code, data = _run(
        capsys, ["manifest", "--out", str(out), "--fig2-count", "1", "--random-count", "3"]
    )
    assert code == EXIT_OK
    manifest = json.loads(out.read_text())
    assert len(manifest["instances"]) == 4
    for inst in manifest["instances"]:
        assert inst["oracle_optimum"] is None or inst["oracle_optimum"] >= inst["dist"]
