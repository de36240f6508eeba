import json
import os
import subprocess

import pytest

import secretscan


def test_clean_removes_noise():
    cleaned, removals = secretscan.clean('see "this" at /tmp/x.log')
    assert '"' not in cleaned
    assert "/tmp" not in cleaned
    assert {r["rule"] for r in removals} >= {"quotation_marks"}
    assert len(secretscan.rule_names()) == 21


def test_scan_and_window():
    body = "db password=Xk9mQ2vLp7wZ ok"
    cands = secretscan.scan(body, "r1")
    assert cands[0]["text"] == "Xk9mQ2vLp7wZ"
    assert body[cands[0]["start"]:cands[0]["end"]] == "Xk9mQ2vLp7wZ"
    w = secretscan.extract_window(body, cands[0]["start"], cands[0]["end"], 3)
    assert w["text"] == "rd=Xk9mQ2vLp7wZ ok"
    assert w["candidate_offset"] == (3, 15)


def test_entropy_and_features():
    assert secretscan.entropy("abcd") == pytest.approx(2.0)
    names = secretscan.feature_names()
    vec = secretscan.featurize("token=abc123", 6, 12)
    assert len(vec) == len(names)


def test_metrics_and_kappa():
    assert secretscan.f_beta_from(0.6309, 0.6385, 1.0) == pytest.approx(0.6347, abs=5e-4)
    assert secretscan.cohen_kappa(184, 13, 16, 187) == pytest.approx(0.855, abs=1e-3)
    m = secretscan.compute_metrics([True, False, True], [True, True, False], 1.0)
    assert m["confusion"] == {"tp": 1, "fp": 1, "fn": 1, "tn": 0}
    with pytest.raises(ValueError):
        secretscan.compute_metrics([], [], 1.0)


def test_train_and_predict():
    rows = [[float(i % 2)] * len(secretscan.feature_names()) for i in range(20)]
    labels = [bool(i % 2) for i in range(20)]
    model = json.loads(secretscan.train(rows, labels, epochs=200))
    assert len(model["weights"]) == len(rows[0])
    score, verdict = secretscan.predict("password=Xk9mQ2vLp7wZ", 9, 21)
    assert 0.0 <= score <= 1.0 and verdict == (score >= 0.5)


def test_detect_contract():
    assert secretscan.detect("")["breach"] is False
    out = secretscan.detect("Deploy fails on start. My settings: password=Xk9mQ2vLp7wZ and region eu")
    assert out["breach"] is True
    status, _ = secretscan.handle_detect_http('{"nope": 1}')
    assert status == 400


def test_cli_entry_points():
    code, out, _ = secretscan.run_cli(["frobnicate"])
    assert code == 2
    cli = os.environ.get("SECRETSCAN_CLI")
    if cli:
        proc = subprocess.run([cli, "frobnicate"], capture_output=True, text=True)
        assert proc.returncode == 2
