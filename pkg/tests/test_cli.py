import json

import pytest

from parazeta.cli import RunConfig, UsageError, run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_zeta_fe_preset(capsys):
    assert run(["zeta", "fe", "--group", "SL3", "--parabolic", "P21", "--samples", "20"]) == 0
    rep = _json(capsys)
    assert rep["max_rel_deviation"] < 1e-6 and rep["seed"] == 0


def test_lattice_rr(capsys):
    assert run(["lattice", "rr", "--basis", "2", "0", "0", "0.5"]) == 0
    assert abs(_json(capsys)["defect"]) < 1e-12


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["zeta", "eval", "--group", "SL9", "--parabolic", "P81", "--sigma", "2"]) == 2
    assert run(["zeta", "eval", "--group", "SL2", "--parabolic", "P11"]) == 2
    assert run(["lattice", "h0"]) == 2
    assert run(["truncomb", "check", "--type", "B7"]) == 2
    assert run(["lattice", "h0", "--basis", "1", "0", "0", "1", "--tol", "-1"]) == 2
    capsys.readouterr()


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("zeta", "fe", threads=0)
    with pytest.raises(UsageError):
        RunConfig("zeta", "fe", options={"tol": 0.0})


def test_failed_check_exit_code(tmp_path, capsys):
    bad = {"name": "broken", "group": "A1", "alpha_p": 0, "order": [], "radii": [],
           "norm": {"a": 2.0, "b": -1.9, "clearing": [[2.0, 0.0]], "constant": [2.0, 0.0]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert run(["zeta", "fe", "--spec", str(path)]) == 1
    assert _json(capsys)["passed"] is False


def test_zeta_eval_and_csv(tmp_path, capsys):
    out = tmp_path / "vals.csv"
    code = run(["zeta", "eval", "--group", "SL2", "--parabolic", "P11", "--sigma", "2",
                "--sigma", "0.5+3j", "--format", "csv", "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "sigma_re,sigma_im,re,im" and len(lines) == 3


def test_deterministic_json(tmp_path):
    paths = [tmp_path / f"r{k}.json" for k in range(2)]
    for threads, p in zip(("1", "3"), paths):
        assert run(["truncomb", "check", "--type", "A3", "--samples", "500", "--seed", "7",
                    "--threads", threads, "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    for p in paths:
        assert run(["lattice", "bridge", "--samples", "300", "--seed", "3", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_other_commands(capsys):
    assert run(["rootdata", "dump", "--type", "G2"]) == 0
    assert _json(capsys)["weyl_group_order"] == 12
    assert run(["lattice", "semistable", "--point", "0", "4"]) == 0
    assert _json(capsys)["hn_route"] is False
    assert run(["lattice", "hn", "--basis", "2", "0", "0", "0.5"]) == 0
    assert _json(capsys)["breakpoints"][1][0] == 1.0
    assert run(["epstein", "eval", "--z", "0", "1", "--s", "2"]) == 0
    rep = _json(capsys)
    assert rep["relative_difference"] < 1e-12
    assert run(["zeta", "zeros", "--group", "SL2", "--parabolic", "P11", "--tmax", "12"]) == 0
    assert _json(capsys)["located_count"] == 2
