import json
import logging
from logging.handlers import RotatingFileHandler

import numpy as np
import pandas as pd
import pytest
import yaml

from parcs import __version__
from parcs.cli import build_parser, load_config_file, main, parse_args
from parcs.config import Config
from parcs.database import DuckDBClient
from parcs.exceptions import ValidationError
from parcs.measurement import load_ensemble, write_vector_csv
from parcs.monitoring import setup_logger

PHASE_ARGS = ["phase-transition", "--seed", "5", "--n", "8", "--grid", "2", "--trials", "1", "--C", "1,2", "--threads", "1"]


def _manifest(out):
    return json.loads((out / "manifest.json").read_text())


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_missing_subcommand_is_usage_error():
    assert main([]) == 1


def test_unknown_flag_is_usage_error(tmp_path):
    assert main(["report", "--bogus", "--out", str(tmp_path)]) == 1


def test_phase_transition_requires_seed(tmp_path):
    assert main(["phase-transition", "--out", str(tmp_path)]) == 1


def test_random_constants_require_seed(tmp_path):
    assert main(["constants-sweep", "--family", "global", "--out", str(tmp_path)]) == 1


def test_missing_ensemble_file_is_a_failure(tmp_path):
    code = main(["recover", "--ensemble", str(tmp_path / "nope.bin"), "--measurements", str(tmp_path / "y.csv"), "--out", str(tmp_path / "out")])
    assert code == 2


def test_constants_sweep(tmp_path, capsys):
    out = tmp_path / "cs"
    assert main(["constants-sweep", "--C", "1,2,4", "--n", "16", "--out", str(out), "--plot"]) == 0
    df = pd.read_csv(out / "constants.csv")
    np.testing.assert_allclose(df["gamma_distinct_sq"], 1.0, atol=1e-12)
    np.testing.assert_allclose(df["xi_identical_sq"], [1.0, 2.0, 4.0], atol=1e-12)
    assert (out / "constants.svg").is_file()
    assert "gamma_distinct_sq" in capsys.readouterr().out

    manifest = _manifest(out)
    assert manifest["subcommand"] == "constants-sweep"
    assert set(manifest["outputs"]) == {"constants.csv", "constants.svg"}
    assert manifest["parameters"]["C"] == [1, 2, 4]


def test_phase_transition_outputs_and_ledger(tmp_path):
    out = tmp_path / "pt"
    assert main(PHASE_ARGS + ["--out", str(out), "--plot"]) == 0

    cells = pd.read_csv(out / "phase_grid.csv")
    assert len(cells) == 8
    assert sorted(cells["C"].unique()) == [1, 2]
    curve = pd.read_csv(out / "transition_curve.csv")
    assert list(curve.columns) == ["C", "col_index", "cell_x", "transition_y"]
    assert (out / "phase_grid_C1.svg").is_file()
    assert (out / "logs" / "parcs.log").is_file()

    config = yaml.safe_load((out / "experiment_config.yaml").read_text())
    assert config["n"] == 8 and config["seed"] == 5

    manifest = _manifest(out)
    assert manifest["seed"] == 5
    assert "transition_trend_fraction" in manifest["metrics"]["gauges"]
    assert manifest["metrics"]["trial_stats"]["total_trials"] == 8
    assert not any(name.startswith("logs/") for name in manifest["outputs"])

    with DuckDBClient(str(out / "ledger.duckdb")) as ledger:
        runs = ledger.get_runs()
        assert runs["run_id"].tolist() == [manifest["run_id"]]
        assert len(ledger.get_phase_cells(manifest["run_id"])) == 8


def test_phase_transition_is_reproducible_and_replayable(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(PHASE_ARGS + ["--out", str(first)]) == 0
    assert main(PHASE_ARGS + ["--out", str(second)]) == 0
    assert (first / "phase_grid.csv").read_bytes() == (second / "phase_grid.csv").read_bytes()

    replay = tmp_path / "replay"
    assert main(["--replay", str(first / "manifest.json"), "--replay-out", str(replay)]) == 0
    assert _manifest(replay)["outputs"]["phase_grid.csv"] == _manifest(first)["outputs"]["phase_grid.csv"]


def test_repeated_runs_append_to_manifest_log(tmp_path):
    out = tmp_path / "rep"
    for _ in range(2):
        assert main(["report", "--C", "2", "--n", "16", "--s", "2", "--out", str(out)]) == 0
    lines = (out / "manifests.jsonl").read_text().strip().splitlines()
    assert len(lines) == 2
    with DuckDBClient(str(out / "ledger.duckdb")) as ledger:
        assert ledger.get_database_stats()["runs_by_subcommand"] == {"report": 2}


def test_report(tmp_path, capsys):
    out = tmp_path / "report"
    assert main(["report", "--C", "2", "--n", "16", "--s", "2", "--condition", "distinct-universal", "--out", str(out)]) == 0
    payload = json.loads((out / "report.json").read_text())
    assert payload["bound_chains_hold"] is True
    assert payload["conditions"]["mode"] == "distinct-universal"
    assert payload["conditions"]["gamma_distinct"] == pytest.approx(1.0)
    assert payload["diagonal_bounds"]["q"] == 1.0
    assert "required m" in capsys.readouterr().out


def test_aric_check_then_recover(tmp_path):
    aric_out = tmp_path / "aric"
    args = ["aric-check", "--seed", "2", "--C", "2", "--m", "32", "--n", "16", "--save-ensemble", "--out", str(aric_out)]
    assert main(args) == 0

    table = pd.read_csv(aric_out / "aric.csv")
    assert table["s"].tolist() == [1, 2]
    assert (table["method"] == "exhaustive").all()
    assert (table["alpha_s"] <= table["beta_s"]).all()

    ensemble = load_ensemble(aric_out / "ensemble.bin")
    x = np.zeros(16, dtype=np.complex128)
    x[[3, 11]] = [1.0, -1j]
    write_vector_csv(ensemble.matrix @ x, tmp_path / "y.csv")
    write_vector_csv(x, tmp_path / "x.csv")

    rec_out = tmp_path / "rec"
    code = main(
        [
            "recover",
            "--ensemble", str(aric_out / "ensemble.bin"),
            "--measurements", str(tmp_path / "y.csv"),
            "--truth", str(tmp_path / "x.csv"),
            "--out", str(rec_out),
        ]
    )
    assert code == 0
    diagnostics = json.loads((rec_out / "recovery.json").read_text())
    assert diagnostics["success"] is True
    assert diagnostics["relative_error"] < 1e-3
    assert (rec_out / "x_hat.csv").is_file()


def test_aric_check_sampling_requires_seed(tmp_path):
    aric_out = tmp_path / "aric"
    assert main(["aric-check", "--seed", "1", "--save-ensemble", "--out", str(aric_out)]) == 0
    ensemble = str(aric_out / "ensemble.bin")
    assert main(["aric-check", "--ensemble", ensemble, "--method", "sampled", "--out", str(tmp_path / "s")]) == 1
    assert main(["aric-check", "--ensemble", ensemble, "--method", "sampled", "--trials", "500", "--seed", "4", "--out", str(tmp_path / "s")]) == 0


def test_yaml_config_with_flag_override(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("seed: 9\nn: 8\ngrid: [2, 2]\ntrials: 3\nC: [1]\nthreads: 1\n")
    out = tmp_path / "cfg"
    assert main(["phase-transition", "--config", str(config), "--trials", "1", "--out", str(out)]) == 0
    resolved = yaml.safe_load((out / "experiment_config.yaml").read_text())
    assert (resolved["seed"], resolved["n"], resolved["trials"], resolved["C_list"]) == (9, 8, 1, [1])


def test_key_value_config(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("C=2\nn=16\ns=2\nbasis=cosine\n")
    args = parse_args(["report", "--config", str(config)])
    assert (args.C, args.n, args.s, args.basis) == (2, 16, 2, "cosine")


def test_unknown_config_key(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("walltime: 3\n")
    assert main(["report", "--config", str(config), "--out", str(tmp_path / "o")]) == 1


def test_load_config_file_errors(tmp_path):
    with pytest.raises(ValidationError):
        load_config_file(str(tmp_path / "missing.yaml"))
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n")
    with pytest.raises(ValidationError):
        load_config_file(str(listing))


def test_full_flag_sets_protocol_sizes():
    args = build_parser().parse_args(["phase-transition", "--full"])
    assert args.full
    assert args.grid_resolution == (16, 16)


def test_plotted_runs_replay_bitwise(tmp_path):
    first = tmp_path / "plotted"
    assert main(PHASE_ARGS + ["--out", str(first), "--plot"]) == 0
    replay = tmp_path / "plotted-replay"
    assert main(["--replay", str(first / "manifest.json"), "--replay-out", str(replay)]) == 0

    outputs = _manifest(first)["outputs"]
    assert {"phase_grid_C1.svg", "phase_grid_C2.svg"} <= set(outputs)
    assert _manifest(replay)["outputs"] == outputs


def test_constants_plot_is_byte_stable(tmp_path):
    runs = [tmp_path / "one", tmp_path / "two"]
    for out in runs:
        assert main(["constants-sweep", "--C", "1,2", "--n", "16", "--out", str(out), "--plot"]) == 0
    assert (runs[0] / "constants.svg").read_bytes() == (runs[1] / "constants.svg").read_bytes()


def test_invalid_numerical_defaults_are_rejected(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "MAX_ITERATIONS", 0)
    assert main(["report", "--C", "2", "--n", "16", "--s", "2", "--out", str(tmp_path / "o")]) == 1


def test_file_logs_stay_inside_out(tmp_path, monkeypatch):
    elsewhere = tmp_path / "elsewhere"
    monkeypatch.setattr(Config, "LOGS_DIR", str(elsewhere))
    setup_logger("parcs")
    assert (elsewhere / "parcs.log").is_file()

    out = tmp_path / "run"
    assert main(["report", "--C", "2", "--n", "16", "--s", "2", "--out", str(out)]) == 0

    assert (elsewhere / "parcs.log").stat().st_size == 0
    assert "report" in (out / "logs" / "parcs.log").read_text()
    assert not any(isinstance(h, RotatingFileHandler) for h in logging.getLogger("parcs").handlers)
