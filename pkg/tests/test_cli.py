import csv
import io
import json
import subprocess
import sys

import pytest

from meanclt.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main


@pytest.fixture
def law_file(tmp_path):
    def write(support, probs, name="d.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"support": support, "probs": probs}))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bfun(capsys, law_file):
    code, out, _ = run(capsys, "bfun", law_file([-1, 2], [2 / 3, 1 / 3]))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["b_value"] == pytest.approx(1, abs=1e-12)
    assert rep["moments"]["variance"] == pytest.approx(2)


def test_afun(capsys, law_file):
    code, out, _ = run(capsys, "afun", law_file([-1, 1], [0.5, 0.5]))
    obj = json.loads(out)
    assert code == EXIT_OK
    assert obj["a_value"] == pytest.approx(0.5) and obj["h"] == pytest.approx(2)


def test_zb_output_file(capsys, law_file, tmp_path):
    target = tmp_path / "zb.json"
    code, _, _ = run(capsys, "zb", law_file([-1, 2], [2 / 3, 1 / 3]), "-o", str(target))
    obj = json.loads(target.read_text())
    assert code == EXIT_OK
    assert obj["w1"] == pytest.approx(5 / 6)
    assert obj["zero_bias"]["densities"] == pytest.approx([1 / 3])


def test_recenter_flag(capsys, law_file):
    path = law_file([0, 1], [0.5, 0.5])
    assert run(capsys, "bfun", path)[0] == EXIT_INPUT
    code, out, _ = run(capsys, "bfun", path, "--recenter")
    assert code == EXIT_OK and json.loads(out)["b_value"] == pytest.approx(1)


def test_verify_csv(capsys, law_file):
    code, out, _ = run(capsys, "verify", "--dist", law_file([-1, 1], [0.5, 0.5]), "--n-schedule", "1,4,16")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert [int(r["n"]) for r in rows] == [1, 4, 16]
    assert float(rows[0]["w1"]) == pytest.approx(0.535377, abs=1e-6)
    assert list(rows[0]) == ["n", "w1", "be_bound", "bg_bound", "ratio_be", "ratio_bg", "sqrtn_w1", "a_value"]


def test_verify_json(capsys, law_file):
    code, out, _ = run(capsys, "verify", "--dist", law_file([-1, 2], [2 / 3, 1 / 3]), "--n", "8", "--format", "json")
    (rep,) = json.loads(out)
    assert code == EXIT_OK and rep["n"] == 8 and rep["ratio_be"] <= 1


def test_search_d3(capsys):
    code, out, _ = run(capsys, "--seed", "3", "search-d3", "--grid", "x=-3:-0.1:10,z=0.1:3:10,alpha=0:1:10")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["violations"] == 0 and obj["best_b"] == pytest.approx(1, abs=1e-12)


def test_lower_bound(capsys):
    code, out, _ = run(capsys, "lower-bound", "--p-grid", "0.5:0.5:1")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and lines[0] == "p,psi"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.535377, abs=1e-5)


def test_reduce_d3(capsys, law_file):
    path = law_file([-2, -1, 1, 2], [1 / 6, 1 / 3, 1 / 3, 1 / 6])
    assert run(capsys, "reduce-d3", path)[0] == EXIT_INPUT
    code, out, _ = run(capsys, "reduce-d3", path, "--standardize")
    obj = json.loads(out)
    assert code == EXIT_OK and len(obj["components"]) == 2
    assert sum(obj["weights"]) == pytest.approx(1)


def test_input_errors(capsys, law_file, tmp_path):
    assert run(capsys, "bfun", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "bfun", str(bad))[0] == EXIT_INPUT
    assert run(capsys, "bfun", law_file([0, 1], [0.5, 0.6]))[0] == EXIT_INPUT
    assert run(capsys, "nonsense")[0] == EXIT_INPUT
    assert run(capsys, "--threads", "0", "lower-bound", "--p-grid", "0.5:0.5:1")[0] == EXIT_INPUT


def test_tol_report(capsys):
    code, _, err = run(capsys, "--tol-report", "lower-bound", "--p-grid", "0.3:0.7:3")
    assert code == EXIT_OK and "MERGE_REL=" in err


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_VIOLATION, EXIT_INPUT) == (0, 1, 2)


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "meanclt", "lower-bound", "--p-grid", "0.5:0.5:1"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.startswith("p,psi")
