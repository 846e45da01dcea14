import csv
import math
import os
from pathlib import Path

import numpy as np
import pytest

import landauer_lab as ll

GOLDEN = Path(os.environ.get("LANDAUER_LAB_GOLDEN", Path(__file__).resolve().parents[1] / "golden"))

# Exactly the commands that produced tests/golden/<name>/.
GOLDEN_COMMANDS = {
    "sweep": ["sweep", "--ds", "2", "--dr", "3", "--regime", "low", "--tmin", "0.2", "--tmax", "5",
              "--points", "4", "--n", "5", "--seed", "3"],
    "bounds": ["bounds", "--ds", "2", "--dr", "4", "--n", "60", "--seed", "3"],
    "levy": ["levy", "--ds", "2", "--dr", "4", "--n", "100", "--eps-points", "4", "--seed", "3"],
    "purity": ["purity", "--ds", "2", "--dr", "2", "--n", "1000", "--tau", "both", "--seed", "3"],
}

HEADERS = {
    "trials.csv": "experiment,trial,d_s,d_r,regime,T_tilde,beta,rho_s_method,Q_avg,delta_S,Gamma,gamma,"
                  "mu,omega,betaQ_minus_gamma,gamma_minus_omega,skipped",
    "fit.csv": "experiment,d_s,d_r,regime,a,b,cov_aa,cov_ab,cov_bb,residual_norm,converged",
    "levy.csv": "d_s,d_r,beta,epsilon,empirical_tail,stderr,bound,n",
    "hull.csv": "experiment,layer,vertex_index,x,y,retained_fraction",
    "purity.csv": "d_s,d_r,tau,n,mean_purity,stderr,expected_pure_orbit,mean_trace_distance,"
                  "trace_distance_stderr,sqrt_ds_over_dr",
}


def swap(d):
    u = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            u[b * d + a, a * d + b] = 1.0
    return u


def test_version():
    assert ll.__version__ == "0.1.0"


def test_haar_unitary_is_unitary_and_seeded():
    u = ll.haar_unitary(6, seed=1, index=2)
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-12)
    assert np.array_equal(u, ll.haar_unitary(6, seed=1, index=2))
    assert not np.array_equal(u, ll.haar_unitary(6, seed=1, index=3))


def test_partial_trace_of_product():
    a = ll.random_density_matrix(2, seed=1)
    b = ll.random_density_matrix(3, seed=2)
    ab = ll.tensor_product(a, b)
    assert np.allclose(ll.partial_trace(ab, 2, 3, "system"), a, atol=1e-14)
    assert np.allclose(ll.partial_trace(ab, 2, 3, "reservoir"), b, atol=1e-14)


def test_swap_process_closed_form():
    rho_s = np.diag([1.0, 0.0]).astype(complex)
    h_r = np.diag([0.0, 1.0]).astype(complex)
    s = ll.process_stats(rho_s, h_r, 1.0, swap(2))
    assert s["Q_avg"] == pytest.approx(-0.268941, abs=1e-6)
    assert s["delta_S"] == pytest.approx(-0.582203, abs=1e-6)
    assert s["Gamma"] == pytest.approx(1.462117, abs=1e-6)
    assert s["gamma"] == pytest.approx(-0.379885, abs=1e-6)
    assert s["mu"] == pytest.approx(0.462117, abs=1e-6)
    assert abs(s["rw_residual"]) < 1e-10
    atoms = ll.heat_distribution(rho_s, h_r, 1.0, swap(2))
    assert [q for q, _ in atoms] == pytest.approx([-1.0, 0.0])


def test_extracted_hamiltonians_give_unit_gamma_at_infinite_temperature():
    u = ll.haar_unitary(8, seed=5)
    h_s, h_r = ll.extract_hamiltonians(u, 2, 4)
    assert np.allclose(h_r, h_r.conj().T)
    rho_s = ll.random_density_matrix(2, seed=6)
    assert ll.gamma_direct(rho_s, h_r, 0.0, u) == pytest.approx(1.0, abs=1e-12)


def test_levy_bound_and_temperatures():
    assert ll.levy_bound(0.5, 16, 32) == pytest.approx(2 * math.exp(-8), rel=1e-14)
    e = np.array([4.0, 0.0, 1.0])
    assert ll.scaled_temperature(e, 1.0, "low") == pytest.approx(1.0)
    assert ll.scaled_temperature(e, 1.0, "mid") == pytest.approx(0.25)
    assert ll.beta_for_target(e, "high", 0.25) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ll.scaled_temperature(np.array([0.0, 1.0]), 1.0, "mid")


def test_fit_and_hull():
    t = np.geomspace(0.1, 20, 20)
    f = ll.fit_saturating_exponential(list(t), list(0.5 * (1 - np.exp(-2.0 / t))))
    assert f["converged"]
    assert f["a"] == pytest.approx(0.5, abs=1e-6)
    assert f["b"] == pytest.approx(2.0, abs=1e-6)
    square = [(0, 0), (1, 0), (1, 1), (0, 1)] + [(0.5, 0.5)] * 1
    peel = ll.convex_hull_peel(square, 0.5)
    assert sorted(peel["layers"][0]["indices"]) == [0, 1, 2, 3]


def test_temperature_sweep_is_deterministic():
    a = ll.temperature_sweep(2, 3, "low", [0.5, 2.0], 4, seed=9)
    b = ll.temperature_sweep(2, 3, "low", [0.5, 2.0], 4, seed=9, workers=3)
    assert len(a) == 8
    assert a == b
    for r in a:
        assert r["mu"] == abs(r["Gamma"] - 1)


def test_run_cli_exit_codes():
    code, out, _ = ll.run_cli(["gamma", "--ds", "2", "--dr", "2"])
    assert code == 0 and "Gamma=" in out
    assert ll.run_cli(["gamma", "--ds", "0"])[0] == 2
    assert ll.run_cli(["nonsense"])[0] == 2


def test_selftest_passes():
    results = ll.selftest(2024)
    assert results and all(ok for _, ok, _ in results), [r for r in results if not r[1]]


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def same_field(a, b):
    try:
        x, y = float(a), float(b)
    except ValueError:
        return a == b
    if math.isnan(x) or math.isnan(y):
        return math.isnan(x) and math.isnan(y)
    return abs(x - y) <= 1e-9 * max(1.0, abs(x), abs(y))


@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_golden_csvs(name, tmp_path):
    code, _, err = ll.run_cli(GOLDEN_COMMANDS[name] + ["--out", str(tmp_path)])
    assert code == 0, err
    golden_dir = GOLDEN / name
    csvs = sorted(p.name for p in golden_dir.glob("*.csv"))
    assert csvs == sorted(p.name for p in tmp_path.glob("*.csv"))
    for fname in csvs:
        expected = read_rows(golden_dir / fname)
        actual = read_rows(tmp_path / fname)
        assert ",".join(actual[0]) == HEADERS[fname]
        assert actual[0] == expected[0]
        assert len(actual) == len(expected), fname
        for row_a, row_e in zip(actual[1:], expected[1:]):
            assert len(row_a) == len(row_e)
            assert all(same_field(a, e) for a, e in zip(row_a, row_e)), (fname, row_a, row_e)
