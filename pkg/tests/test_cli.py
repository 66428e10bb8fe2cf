import json
import subprocess
import sys

import pytest

ALGEBRA_A2 = {"family": "A", "rank": 2}


def run_cli(args, cwd=None):
    proc = subprocess.run(
        [sys.executable, "-m", "gorbit.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def a2_file(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps(ALGEBRA_A2))
    return str(p)


def test_describe_full_flag(a2_file):
    code, out, _ = run_cli(["describe", "--algebra", a2_file, "--painted", "1,2"])
    assert code == 0
    data = json.loads(out)
    assert data["s"] == 3 and data["dim_s"] == 2 and data["dim_k1"] == 0


def test_describe_single_painting(a2_file):
    code, out, _ = run_cli(["describe", "--algebra", a2_file, "--painted", "1"])
    assert code == 0
    data = json.loads(out)
    assert data["s"] == 1
    assert data["summands"][0]["dim"] == 4
    assert data["summands"][0]["reducible"] is False


def test_invalid_painted_index_is_usage_error(a2_file):
    code, out, err = run_cli(["describe", "--algebra", a2_file, "--painted", "5"])
    assert code == 2 and "error" in err


def test_troots_report(a2_file):
    code, out, _ = run_cli(["troots", "--algebra", a2_file, "--painted", "1,2"])
    assert code == 0
    data = json.loads(out)
    assert data["s"] == 3 and len(data["components"]) == 1


def test_decompose_report(a2_file, tmp_path):
    f = tmp_path / "a3.json"
    f.write_text(json.dumps({"family": "A", "rank": 3}))
    code, out, _ = run_cli(["decompose", "--algebra", str(f), "--painted", "2"])
    assert code == 0
    data = json.loads(out)
    (entry,) = data["summands"]
    assert entry["reducible"] is True and entry["split_dims"] == [4, 4]
    assert "seed_roots" in entry


def test_check_go_standard_passes(a2_file):
    code, out, _ = run_cli(
        ["check-go", "--algebra", a2_file, "--painted", "1,2", "--probes", "30"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "PASSED_SAMPLES"
    assert data["probes_run"] >= 30
    assert data["note"] == "sampling evidence only"


def test_check_go_refutes_unequal_metric(a2_file, tmp_path):
    metric = {
        "s_block": [["6", "-3"], ["-3", "6"]],
        "summands": [
            {"id": 1, "kind": "scalar", "lambda": "1"},
            {"id": 2, "kind": "scalar", "lambda": "2"},
            {"id": 3, "kind": "scalar", "lambda": "1"},
        ],
    }
    mf = tmp_path / "m.json"
    mf.write_text(json.dumps(metric))
    code, out, _ = run_cli(
        ["check-go", "--algebra", a2_file, "--painted", "1,2", "--metric", str(mf), "--probes", "30"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "REFUTED"
    assert data["counterexample"]


def test_check_go_malformed_metric_is_usage_error(a2_file, tmp_path):
    mf = tmp_path / "bad.json"
    mf.write_text(json.dumps({"s_block": [["1"]]}))
    code, _, err = run_cli(
        ["check-go", "--algebra", a2_file, "--painted", "1,2", "--metric", str(mf)]
    )
    assert code == 2 and "error" in err


def test_find_geodesic_reports_witnesses(a2_file):
    code, out, _ = run_cli(
        ["find-geodesic", "--algebra", a2_file, "--painted", "1", "--probes", "3"]
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["results"]) == 3
    for entry in data["results"]:
        assert entry["status"] == "FEASIBLE"
        assert entry["geodesic_vector_check"] == "GEODESIC"


def test_find_geodesic_single_vector_input(a2_file, tmp_path):
    # Cartan part = half the torus coweight (2/3, 1/3), so the vector lies
    # in the tangent space exactly.
    vec = [
        {"gen": "IH", "index": 1, "coeff": "1/3"},
        {"gen": "IH", "index": 2, "coeff": "1/6"},
        {"gen": "A", "root": [1, 0], "coeff": "1"},
        {"gen": "B", "root": [1, 1], "coeff": "-2/3"},
    ]
    vf = tmp_path / "x.json"
    vf.write_text(json.dumps(vec))
    code, out, _ = run_cli(
        ["find-geodesic", "--algebra", a2_file, "--painted", "1", "--vector", str(vf)]
    )
    assert code == 0
    data = json.loads(out)
    (entry,) = data["results"]
    assert entry["status"] == "FEASIBLE"
    assert entry["geodesic_vector_check"] == "GEODESIC"
    assert {(e["gen"], e["coeff"]) for e in entry["x"]} == {
        ("IH", "1/3"), ("IH", "1/6"), ("A", "1"), ("B", "-2/3")
    }


def test_find_geodesic_rejects_isotropy_vector(a2_file, tmp_path):
    vf = tmp_path / "bad.json"
    vf.write_text(json.dumps([{"gen": "IH", "index": 1, "coeff": "1"}]))
    code, _, err = run_cli(
        ["find-geodesic", "--algebra", a2_file, "--painted", "1", "--vector", str(vf)]
    )
    assert code == 2 and "k1" in err


def test_refute_t1_consistent(a2_file):
    code, out, _ = run_cli(
        ["refute", "--algebra", a2_file, "--painted", "1,2", "--theorem", "T1", "--probes", "20"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["applicable"] is True and data["consistent"] is True


def test_refute_not_applicable_exits_zero(a2_file):
    code, out, _ = run_cli(
        ["refute", "--algebra", a2_file, "--painted", "1", "--theorem", "T1"]
    )
    assert code == 0
    assert json.loads(out)["applicable"] is False


def test_graph_dot_output(a2_file):
    code, out, _ = run_cli(["graph", "--algebra", a2_file, "--painted", "1,2", "--dot"])
    assert code == 0
    assert out.startswith("graph troots {") and out.rstrip().endswith("}")
    assert out.count('"1,1"') >= 1
    code2, out2, _ = run_cli(["graph", "--algebra", a2_file, "--painted", "1"])
    data_lines = [l for l in out2.splitlines() if "--" in l]
    assert len(data_lines) == 1  # two nodes, one edge


@pytest.mark.parametrize(
    "args",
    [
        ["describe", "--painted", "1,2"],
        ["check-go", "--algebra", "nonexistent.json", "--painted", "1"],
        ["refute", "--theorem", "T1"],
    ],
)
def test_usage_errors_exit_two(args):
    code, _, _ = run_cli(args)
    assert code == 2


def test_byte_identical_reruns(a2_file, tmp_path):
    f4 = tmp_path / "b2.json"
    f4.write_text(json.dumps({"family": "B", "rank": 2}))
    commands = [
        ["describe", "--algebra", a2_file, "--painted", "1,2"],
        ["troots", "--algebra", str(f4), "--painted", "2"],
        ["check-go", "--algebra", a2_file, "--painted", "1,2", "--probes", "25", "--seed", "7"],
        ["graph", "--algebra", a2_file, "--painted", "1,2"],
        ["refute", "--algebra", a2_file, "--painted", "1,2", "--theorem", "T1", "--probes", "10"],
    ]
    for args in commands:
        _, out1, _ = run_cli(args)
        _, out2, _ = run_cli(args)
        assert out1 == out2 and out1
