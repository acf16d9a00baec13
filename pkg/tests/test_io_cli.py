"""File formats and the command-line front end."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from pugraph import cli, io
from pugraph.errors import GraphDefinitionError
from pugraph.graph import pseudo_graph, EdgePair
from pugraph.guidance import benchmark_scenario


def run_cli(capsys, argv):
    code = cli.dispatch(argv)
    out, err = capsys.readouterr()
    return code, out, err


# --- serialization primitives

def test_format_float_round_trips_and_special_tokens():
    rng = np.random.default_rng(7)
    for x in rng.standard_normal(200) * 10.0 ** rng.integers(-12, 12, 200):
        assert float(io.format_float(x)) == x
    assert io.format_float(float("nan")) == "NaN"
    assert io.format_float(float("inf")) == "Infinity"
    assert io.format_float(float("-inf")) == "-Infinity"


def test_dumps_json_sorted_keys_full_precision_trailing_newline():
    text = io.dumps_json({"b": 0.1, "a": np.float64(1 / 3),
                          "v": np.arange(3), "flag": np.bool_(True)})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"') < text.index('"flag"')
    assert "0.33333333333333331" in text
    doc = json.loads(text)
    assert doc["v"] == [0, 1, 2] and doc["flag"] is True


def test_graph_documents_round_trip_and_path_shortcut():
    g = pseudo_graph(3, [EdgePair(1, 2, 1.0, 2.0), EdgePair(2, 3, 3.0, 4.0)])
    g2 = io.graph_from_dict(io.graph_to_dict(g))
    assert g2.n == g.n and g2.pairs == g.pairs
    g3 = io.graph_from_dict(
        {"path": {"n": 3, "forward": [1.0, 3.0], "reverse": [2.0, 4.0]}})
    assert g3.pairs == g.pairs
    with pytest.raises(GraphDefinitionError):
        io.graph_from_dict({"n": 3})
    with pytest.raises(GraphDefinitionError):
        io.graph_from_dict({"n": 3, "pairs": [{"a": 1}]})


def test_salvo_config_round_trips_through_degrees(tmp_path):
    cfg = benchmark_scenario()
    back = io.salvo_config_from_dict(io.salvo_config_to_dict(cfg))
    assert back.graph.pairs == cfg.graph.pairs
    assert np.allclose(back.state.theta, cfg.state.theta, atol=1e-12)
    assert np.allclose(back.state.gamma_m, cfg.state.gamma_m, atol=1e-12)
    assert back.state.v_t == cfg.state.v_t
    assert back.t_go_provider == cfg.t_go_provider
    assert back.injected_t_go == cfg.injected_t_go
    assert back.dt == cfg.dt and back.sample_stride == cfg.sample_stride


def test_write_text_is_atomic_and_leaves_no_temp_files(tmp_path):
    target = tmp_path / "out.txt"
    io.write_text(str(target), "payload\n")
    assert target.read_text() == "payload\n"
    assert os.listdir(tmp_path) == ["out.txt"]


# --- CLI subcommands (in-process)

def test_cli_graph_writes_laplacian_and_manifest(tmp_path, capsys):
    out = tmp_path / "L.csv"
    code, _, _ = run_cli(capsys, [
        "graph", "--path", "3", "--forward", "1,3", "--reverse", "2,4",
        "--emit", "laplacian", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# out-Laplacian")
    M = np.array([[float(v) for v in row.split(",")] for row in lines[1:]])
    assert np.array_equal(M, [[1, -1, 0], [-2, 5, -3], [0, -4, 4]])
    manifest = json.loads((tmp_path / "L.csv.manifest.json").read_text())
    assert manifest["subcommand"] == "graph"
    assert manifest["outputs"] == [str(out)]
    assert manifest["parameters"]["emit"] == "laplacian"
    assert "duration_s" in manifest


def test_cli_data_outputs_are_byte_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code, _, _ = run_cli(capsys, [
            "graph", "--path", "4", "--forward", "1,0.25,3", "--reverse",
            "0.5,2,1", "--emit", "incidence", "--out", str(p)])
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_cli_stdout_run_sends_manifest_to_stderr(capsys):
    code, out, err = run_cli(capsys, [
        "graph", "--path", "2", "--forward", "1", "--reverse", "1",
        "--emit", "diagnostics"])
    assert code == 0
    doc = json.loads(out)
    assert doc["connected"] is True and doc["negative_weights"] == 0
    manifest = json.loads(err)
    assert manifest["subcommand"] == "graph" and manifest["outputs"] == []


def test_cli_consensus_reports_value_for_inline_x0(capsys):
    code, out, _ = run_cli(capsys, [
        "consensus", "--path", "3", "--forward", "1,3", "--reverse", "2,4",
        "--x0", "0,0,3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["feasible"] is True
    assert np.allclose(doc["p"], [8 / 3, 4 / 3, 1.0])
    assert abs(doc["value"] - 0.6) < 1e-12
    assert doc["in_hull"] is True
    assert np.allclose(doc["spectrum"][0], [0.0, 0.0], atol=1e-12)


def test_cli_consensus_infeasible_prints_report_and_exits_3(capsys):
    code, out, _ = run_cli(capsys, [
        "consensus", "--path", "2", "--forward", "1", "--reverse", "-5"])
    assert code == 3
    doc = json.loads(out)
    assert doc["feasible"] is False
    assert doc["method"] == "direct"


def test_cli_simulate_writes_trajectory_and_summary(tmp_path, capsys):
    x0 = tmp_path / "x0.json"
    x0.write_text("[0, 0, 3]\n")
    csv = tmp_path / "traj.csv"
    summary = tmp_path / "summary.json"
    code, _, _ = run_cli(capsys, [
        "simulate", "--path", "3", "--forward", "1,3", "--reverse", "2,4",
        "--x0", str(x0), "--csv", str(csv), "--summary", str(summary)])
    assert code == 0
    doc = json.loads(summary.read_text())
    assert doc["verdict"] == "converged"
    assert abs(doc["predicted"] - 0.6) < 1e-12
    assert doc["abs_gap"] <= 1e-4
    head = csv.read_text().splitlines()
    assert head[0] == "t,x1,x2,x3"
    first = [float(v) for v in head[1].split(",")]
    assert first == [0.0, 0.0, 0.0, 3.0]
    manifest = json.loads((tmp_path / "traj.csv.manifest.json").read_text())
    assert str(x0) in manifest["inputs"]


def test_cli_simulate_divergence_exits_3(capsys):
    code, out, _ = run_cli(capsys, [
        "simulate", "--path", "2", "--forward", "1", "--reverse", "-5",
        "--x0", "1,0", "--t-max", "10"])
    assert code == 3
    assert json.loads(out)["verdict"] == "diverged"


def test_cli_robustness_edge_report_with_oracle(capsys):
    code, out, _ = run_cli(capsys, [
        "robustness", "--path", "3", "--forward", "1,1", "--reverse", "1,1",
        "--edge", "1,2", "--oracle"])
    assert code == 0
    doc = json.loads(out)
    assert doc["edge"] == [1, 2]
    assert doc["num"] == [1.0, 2.0]
    assert doc["den"] == [1.0, 4.0, 3.0]
    assert abs(doc["effective_margin"] - 1.5) < 1e-9
    assert doc["crossovers"][0]["omega_pc"] == 0.0
    assert abs(doc["oracle_delta"] + 1.5) < 1e-6


def test_cli_robustness_sweep_csv(tmp_path, capsys):
    csv = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, [
        "robustness", "--sweep", "3:5", "--class", "leading:1",
        "--csv", str(csv)])
    assert code == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "n,margin,omega_pc"
    table = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    assert np.array_equal(table[:, 0], [3, 4, 5])
    assert np.allclose(table[:, 1], [1.5, 4 / 3, 1.25], atol=1e-9)
    assert np.allclose(table[:, 2], 0.0)


def test_cli_salvo_runs_config_file(tmp_path, capsys):
    doc = {
        "graph": {"path": {"n": 3, "forward": [1.0, 1.0],
                           "reverse": [1.0, 1.0]}},
        "state": {"r": [1000.0, 1000.0, 1000.0],
                  "theta_deg": [0.0, 0.0, 0.0],
                  "gamma_m_deg": [0.0, 0.0, 0.0],
                  "v_m": 500.0, "v_t": 400.0, "gamma_t_deg": 0.0},
        "t_go_provider": "injected_table",
        "injected_t_go": [5.0, 5.0, 5.0],
        "dt": 1e-3, "t_max": 10.0, "sample_stride": 50,
    }
    config = tmp_path / "salvo.json"
    config.write_text(json.dumps(doc))
    csv = tmp_path / "traj.csv"
    summary = tmp_path / "summary.json"
    code, _, _ = run_cli(capsys, [
        "salvo", "--config", str(config), "--csv", str(csv),
        "--summary", str(summary)])
    assert code == 0
    rep = json.loads(summary.read_text())
    assert np.allclose(rep["impact_times"], 5.0, atol=1e-6)
    assert rep["failed"] is False
    assert rep["notes"][0] == "t_go_provider=injected_table"
    header = csv.read_text().splitlines()[0].split(",")
    assert header[:6] == ["t", "r_1", "theta_deg_1", "gamma_m_deg_1",
                          "a_m_1", "t_go_1"]
    assert len(header) == 1 + 5 * 3


def test_cli_bad_inputs_exit_2(tmp_path, capsys):
    code, _, err = run_cli(capsys, ["graph", "--graph", str(tmp_path / "no.json")])
    assert code == 2
    assert json.loads(err)["exit_code"] == 2
    code, _, err = run_cli(capsys, [
        "robustness", "--path", "3", "--forward", "1,1", "--reverse", "1,1",
        "--edge", "nope"])
    assert code == 2
    code, _, _ = run_cli(capsys, ["graph", "--path", "3"])
    assert code == 2
    code, _, _ = run_cli(capsys, [
        "robustness", "--path", "3", "--forward", "1,1", "--reverse", "1,1",
        "--edge", "1,3"])
    assert code == 2


def test_cli_reproduce_tf_catalog(tmp_path, capsys):
    code, out, _ = run_cli(capsys, [
        "reproduce", "p5-tfs", "--outdir", str(tmp_path)])
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "ok"
    assert report["max_deviation"] <= 1e-9
    assert (tmp_path / "p5-tfs.json").is_file()


def test_cli_reproduce_margin_sweeps(tmp_path, capsys):
    code, out, _ = run_cli(capsys, [
        "reproduce", "fig3-sweeps", "--outdir", str(tmp_path)])
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "ok"
    assert report["max_deviation"] <= 1e-6
    for name in ("fig3-leading.csv", "fig3-central.csv", "fig3-trailing1.csv",
                 "fig3-trailing2.csv", "fig3-trailing3.csv"):
        assert (tmp_path / name).is_file()


def test_cli_reproduce_salvo_negative(tmp_path, capsys):
    code, out, _ = run_cli(capsys, [
        "reproduce", "salvo-negative", "--outdir", str(tmp_path)])
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "ok"
    assert report["max_relative_deviation"] <= 1e-5
    assert report["in_hull"] is False
    assert (tmp_path / "salvo-negative-summary.json").is_file()
    assert (tmp_path / "salvo-negative-trajectories.csv").is_file()


def test_cli_version_subprocess_smoke():
    proc = subprocess.run([sys.executable, "-m", "pugraph", "--version"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("pugraph ")
