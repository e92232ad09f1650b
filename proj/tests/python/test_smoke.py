"""Smoke tests for the rmflab python module and the rmf CLI."""

import json
import math
import os
import subprocess
import sys

import pytest

import rmflab


def test_version():
    assert rmflab.__version__


def test_sieve_and_signs():
    sieve = rmflab.PrimeSieve(1000)
    assert sieve.prime_count() == 168
    assert sieve.smallest_prime_factor(12) == 2
    assert sieve.is_prime(997)

    a = rmflab.SignAssignment(7, 0, sieve)
    b = rmflab.SignAssignment(7, 0, sieve)
    assert [a.sign(sieve, p) for p in (2, 3, 5, 7)] == [b.sign(sieve, p) for p in (2, 3, 5, 7)]
    assert all(a.sign(sieve, p) in (-1, 1) for p in (2, 3, 5, 997))


def test_unit_group_and_characters():
    group = rmflab.unit_group(8)
    assert group["phi"] == 4
    assert sorted(group["orders"]) == [2, 2]

    table = rmflab.CharacterTable(5)
    assert table.size == 4
    kinds = [table.kind(j) for j in range(4)]
    assert kinds.count("principal") == 1
    assert kinds.count("real") == 1
    assert kinds.count("complex") == 2
    assert table.value_exponent(0, 10) is None  # gcd(10, 5) > 1


def test_classification():
    assert rmflab.classify_branch(1, [1])["verdict"] == "Decay"
    assert rmflab.classify_branch(5, [1, 4])["verdict"] == "Decay"

    bounded = rmflab.classify_branch(5, [1])
    assert bounded["verdict"] == "BoundedBelow"
    assert bounded["witness_kind"] == "complex"

    report = rmflab.decompose_indicator(4, [3])
    coeffs = {c["character"]: c for c in report["coefficients"]}
    assert coeffs[1]["exact"] == "-1/2"


def test_partial_sums():
    sieve = rmflab.PrimeSieve(100)
    plus = rmflab.SignAssignment.constant(sieve, 1)
    h5 = rmflab.partial_sum(plus, sieve, 1, [1], 5)
    assert math.isclose(h5["value"], 137 / 60, rel_tol=1e-14)

    table = rmflab.CharacterTable(4)
    twisted = rmflab.character_twisted_sum(plus, sieve, table, 1, 5)
    assert math.isclose(twisted.real, 13 / 15, rel_tol=1e-13)

    assert math.isclose(
        rmflab.prime_class_sum(plus, sieve, 1, 4, 13), 18 / 65, rel_tol=1e-14
    )


def test_steering():
    steered = rmflab.steer_signs(1.0, 1, 1, 100)
    assert steered["turning_points"][0]["prime"] == 5
    for tp in steered["turning_points"]:
        assert tp["residual"] <= 1 / tp["prime"] + 1e-15


def test_cyclotomic():
    datum = rmflab.splitting_type(4, 5)
    assert (datum["e"], datum["f"], datum["r"]) == (1, 1, 2)

    # the trivial field reproduces the integer model bit for bit
    sieve = rmflab.PrimeSieve(2000)
    signs = rmflab.SignAssignment(12, 3, sieve)
    via_integers = rmflab.partial_sum(signs, sieve, 1, [1], 2000)
    via_ideals = rmflab.ideal_partial_sum(12, 3, 1, 2000)
    assert via_ideals["value"] == via_integers["value"]

    slots = rmflab.prime_ideal_slots(4, 30)
    norms = sorted(norm for (_, _, norm) in slots)
    assert norms == [2, 5, 5, 9, 13, 13, 17, 17, 29, 29]

    assert rmflab.count_ideals(1, 100) == 100
    assert rmflab.count_ideals(4, 100) == sum(
        sum(1 if d % 4 == 1 else -1 if d % 4 == 3 else 0 for d in range(1, k + 1) if k % d == 0)
        for k in range(1, 101)
    )


def test_tau_model():
    assert math.isclose(rmflab.sato_tate_cdf(math.pi / 2), 0.5, rel_tol=1e-14)
    u = 0.347
    assert abs(rmflab.sato_tate_cdf(rmflab.sample_angle(u)) - u) < 1e-12
    assert math.isclose(rmflab.rho_normalized(2, math.pi / 2), -1.0, abs_tol=1e-13)

    taus = rmflab.tau_series(10)
    assert taus[:6] == [1, -24, 252, -1472, 4830, -6048]
    assert taus[5] == taus[0] * taus[5]  # tau(1) = 1
    assert taus[3] == taus[1] ** 2 - 2**11 * taus[0]

    sieve = rmflab.PrimeSieve(100)
    angles = rmflab.AngleAssignment.constant(sieve, math.pi / 2)
    ten = rmflab.tau_partial_sum(angles, sieve, 11, 10)
    assert math.isclose(ten["value"], 23 / 36, rel_tol=1e-12)


def test_experiment_layer():
    lo, hi = rmflab.wilson_interval(0, 100, 1.96)
    assert lo == 0.0 and abs(hi - 0.0370) < 2e-3

    assert math.isclose(rmflab.hoeffding_bound(1.0, 1.0), math.exp(-0.5), rel_tol=1e-14)
    assert rmflab.decay_reference(1e6, 1.0) < rmflab.decay_reference(1e3, 1.0)

    result = rmflab.run_probability_experiment(
        model="residue", x_grid=[5], trials=8, seed=0, m=1, set=[1]
    )
    assert result["estimates"][0]["p_hat"] == 0.0

    negatives, patterns = rmflab.exhaustive_small_probability("residue", 5)
    assert (negatives, patterns) == (0, 8)

    diag = rmflab.split_diagnostics("residue", trial=0, x=18, cap=10**7, m=4, set=[1])
    assert diag["gap"] <= diag["residual"]
    assert diag["residual"] < 1e-3


CLI = os.environ.get("RMF_CLI")


@pytest.mark.skipif(CLI is None, reason="RMF_CLI not set")
def test_cli_classify_and_determinism(tmp_path):
    out = subprocess.run(
        [CLI, "classify", "--m", "5", "--set", "1"], capture_output=True, text=True, check=True
    )
    payload = json.loads(out.stdout)
    assert payload["verdict"] == "BoundedBelow"
    assert payload["witness"]["kind"] == "complex"

    trivial = subprocess.run(
        [CLI, "classify", "--m", "1", "--set", "1"], capture_output=True, text=True, check=True
    )
    assert json.loads(trivial.stdout)["verdict"] == "Decay"

    args = [
        CLI, "simulate", "--model", "residue", "--m", "1", "--set", "1",
        "--x-grid", "1e2,1e3", "--trials", "50", "--seed", "11",
    ]
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    subprocess.run(args + ["--out", str(first)], check=True)
    subprocess.run(args + ["--out", str(second)], check=True)
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "a.csv.manifest.json").exists()

    replay = tmp_path / "c.csv"
    subprocess.run(
        [CLI, "simulate", "--from-manifest", str(tmp_path / "a.csv.manifest.json"),
         "--out", str(replay)],
        check=True,
    )
    assert replay.read_bytes() == first.read_bytes()

    bad = subprocess.run([CLI, "simulate", "--bogus"], capture_output=True, text=True)
    assert bad.returncode == 2
    domain = subprocess.run(
        [CLI, "classify", "--m", "4", "--set", "2"], capture_output=True, text=True
    )
    assert domain.returncode == 1
    assert "error" in json.loads(domain.stderr.splitlines()[-1])
