import logging

import pytest

from parcs.config import Config
from parcs.monitoring import MetricsCollector, get_logger, setup_logger


def test_solve_and_trial_tallies():
    metrics = MetricsCollector()
    metrics.record_solve(True, 10)
    metrics.record_solve(False, 30)
    metrics.record_trial(True)
    metrics.record_trial(False)
    metrics.record_trial(True)

    solver = metrics.get_solver_stats()
    assert solver["total_solves"] == 2
    assert solver["convergence_rate"] == pytest.approx(50.0)
    assert solver["avg_iterations"] == pytest.approx(20.0)
    trials = metrics.get_trial_stats()
    assert trials["successful_trials"] == 2
    assert trials["success_rate"] == pytest.approx(200 / 3)


def test_timer_history_is_bounded():
    metrics = MetricsCollector(max_history=3)
    for value in range(5):
        metrics.record_timer("t", float(value))
    assert metrics.get_timer_stats("t") == {"min": 2.0, "max": 4.0, "avg": 3.0, "count": 3}
    assert metrics.get_timer_stats("missing") == {}


def test_all_metrics_snapshot():
    metrics = MetricsCollector()
    metrics.set_gauge("g", 1.5)
    metrics.increment_counter("cells", 3)
    snapshot = metrics.get_all_metrics()
    assert snapshot["gauges"] == {"g": 1.5}
    assert snapshot["counters"] == {"cells": 3}
    assert set(snapshot) == {"counters", "gauges", "timers", "solver_stats", "trial_stats"}


def test_module_loggers_share_package_handlers():
    log = get_logger("parcs.recovery.bpdn")
    assert log.name == "parcs.recovery.bpdn"
    assert logging.getLogger("parcs").handlers


def test_file_handler_added_once(tmp_path):
    log_file = str(tmp_path / "logs" / "run.log")
    log = setup_logger("parcs_test_file", log_file=log_file, level="DEBUG")
    setup_logger("parcs_test_file", log_file=log_file, level="DEBUG")
    files = [h for h in log.handlers if isinstance(h, logging.FileHandler)]
    assert len(files) == 1
    log.debug("hello")
    files[0].flush()
    assert "hello" in (tmp_path / "logs" / "run.log").read_text()
    for handler in files:
        log.removeHandler(handler)
        handler.close()


def test_config_defaults_are_valid():
    ok, problems = Config.validate()
    assert ok, problems
    assert Config.worker_count(3) == 3
    assert Config.worker_count() >= 1


def test_config_validate_reports_bad_defaults(monkeypatch):
    monkeypatch.setattr(Config, "PRIMAL_TOL", 0.0)
    monkeypatch.setattr(Config, "TRANSITION_LEVEL", 1.5)
    ok, problems = Config.validate()
    assert not ok
    assert len(problems) == 2


def test_unknown_log_level_falls_back_to_info():
    log = setup_logger("parcs_test_level", level="LOUD")
    assert log.level == logging.INFO
