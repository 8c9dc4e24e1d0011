import json
import os
import subprocess
import sys

import pytest

from pseudotrap.cli import main
from pseudotrap.core import load_system, save_system
from pseudotrap.zoo import cyclic_rotation, disjoint_attractors


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, s in {
        "z8": cyclic_rotation(8),
        "z5": cyclic_rotation(5),
        "two": disjoint_attractors([1, 1], 10),
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(save_system(s))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_rotation(capsys):
    code, out, _ = run(capsys, "generate", "rotation", "--q", "8")
    assert code == 0 and load_system(out) == cyclic_rotation(8)
    assert out == save_system(cyclic_rotation(8))


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "interval", "--kind", "tent", "--grid", "4"],
        ["generate", "interval", "--kind", "logistic", "--grid", "6", "--r", "7/2", "--scale", "10"],
        ["generate", "random", "--points", "5", "--metric", "random-valid", "--seed", "3"],
        ["generate", "attractors", "--gaps", "2,2", "--separation", "10"],
        ["generate", "rotation", "--q", "6", "--metric", "chordlike", "--scale", "100"],
    ],
)
def test_generate_families(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    load_system(out)


def test_trap_search_golden(capsys, files):
    code, out, _ = run(capsys, "trap", "-s", files["z8"], "--eps", "2", "--search", "--oracle")
    rep = json.loads(out)
    assert code == 0
    assert rep["recommended"] == {"delta": 1, "n": 5, "degenerate": False}
    assert rep["oracle_checked"] is True
    assert list(rep) == ["system", "theorem", "eps", "results", "recommended", "oracle_checked"]
    d2 = next(r for r in rep["results"] if r["delta"] == 2)
    assert d2["feasible"] is False and d2["lasso"] is True and d2["counterexample"] == [0, 0]


def test_trap_fixed(capsys, files):
    code, out, _ = run(capsys, "trap", "-s", files["z8"], "--eps", "2", "--delta", "1", "--n", "4", "--oracle")
    rep = json.loads(out)
    assert code == 0 and rep["results"][0]["feasible"] is False
    assert rep["results"][0]["counterexample"] == [0, 1, 2, 3, 4]


def test_trap_grid(capsys, files):
    code, out, _ = run(capsys, "trap", "-s", files["z5"], "--eps", "grid", "--search")
    rep = json.loads(out)
    assert code == 0 and rep["eps"] == "grid" and len(rep["reports"]) == 3


def test_minimal_and_criterion(capsys, files):
    code, out, _ = run(capsys, "minimal", "-s", files["z5"])
    assert code == 0 and json.loads(out)["minimal"] is True
    code, out, _ = run(capsys, "minimality-criterion", "-s", files["two"])
    rep = json.loads(out)
    assert rep["minimal"] is False and rep["counterexample"]["eps"] == 10
    assert rep["per_eps"][0] == {"eps": 1, "x_walk": [0, 0], "y_walk": [1, 1], "missed_point": 1}


def test_omega_hausdorff_uniformity(capsys, files):
    code, out, _ = run(capsys, "omega", "-s", files["two"])
    assert code == 0 and len(json.loads(out)["omega_sets"]) == 2
    code, out, _ = run(capsys, "omega", "-s", files["z8"], "--point", "3")
    assert code == 0
    code, out, _ = run(capsys, "hausdorff", "-s", files["z8"], "--a", "0,1", "--b", "4")
    assert code == 0 and json.loads(out)["h"] == 4
    code, out, _ = run(capsys, "uniformity-check", "-s", files["z8"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_sws_cover_orbitals_dot(capsys, files):
    code, out, _ = run(capsys, "sws", "-s", files["z8"], "--eps", "2")
    rep = json.loads(out)
    assert code == 0 and (rep["recommended"]["delta"], rep["recommended"]["n"]) == (1, 5)
    assert len(rep["recommended"]["justification"]) == 4
    code, out, _ = run(capsys, "cover", "-s", files["z8"], "--eps", "2", "--delta", "1", "--n", "5", "--oracle")
    assert code == 0 and json.loads(out)["results"][0]["feasible"] is True
    code, out, _ = run(capsys, "strong-orbital", "-s", files["z5"], "--eps", "2", "--horizon", "10")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "orbital", "-s", files["two"], "--eps", "5", "--delta", "11", "--horizon", "1")
    assert code == 0 and json.loads(out)["passed"] is False
    code, out, _ = run(capsys, "export-dot", "-s", files["z5"], "--delta", "1")
    assert code == 0 and out.startswith("digraph pseudo_orbit {") and '"4" -> "0";' in out


def test_usage_errors(capsys, files, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["trap", "-s", files["z8"], "--eps", "0", "--search"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"num_points": 2, "dist": [[0, 1], [2, 0]], "map": [0, 1]}')
    code, _, err = run(capsys, "minimal", "-s", str(bad))
    assert code == 2 and "symmetric" in err
    code, _, err = run(capsys, "minimal", "-s", str(tmp_path / "missing.json"))
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["strong-orbital", "-s", files["two"], "--eps", "2", "--horizon", "3"])
    assert e.value.code == 2
    code, _, _ = run(capsys, "generate", "attractors", "--gaps", "4,1", "--separation", "1")
    assert code == 2


def test_undecided_exit(capsys, files):
    code, out, _ = run(capsys, "trap", "-s", files["z8"], "--eps", "2", "--search", "--state-cap", "3")
    assert code == 3
    assert any(r.get("status") == "undecided-resource" or r.get("feasible") is None
               for r in json.loads(out)["results"])


def test_output_file(capsys, files, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "minimal", "-s", files["z5"], "-o", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["minimal"] is True


def test_subprocess_env_cap(files):
    env = dict(os.environ, PSEUDOTRAP_STATE_CAP="3")
    r = subprocess.run(
        [sys.executable, "-m", "pseudotrap", "trap", "-s", files["z8"], "--eps", "2", "--search"],
        capture_output=True, env=env,
    )
    assert r.returncode == 3
    r = subprocess.run(
        [sys.executable, "-m", "pseudotrap", "trap", "-s", files["z8"], "--eps", "2", "--bogus"],
        capture_output=True,
    )
    assert r.returncode == 2
