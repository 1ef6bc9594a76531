# Copyright 2026 The Boussinesq Spectral Authors
# SPDX-License-Identifier: Apache-2.0

import os
import subprocess

import numpy as np
import pytest

import boussinesq as bq


def test_grid_and_wavenumbers():
    g = bq.Grid(2, 16)
    assert (g.dim, g.modes, g.size, g.dealias_cutoff) == (2, 16, 256, 5)
    assert g.tau_cap == pytest.approx(27.6 / (8 * np.sqrt(2)))
    j = g.wavenumbers()
    assert j.shape == (2, 16, 16)
    assert j[0, 0, 0] == -7 and j[1, 0, 15] == 8
    with pytest.raises(ValueError):
        bq.Grid(2, 15)


def test_field_round_trip_and_physical():
    g = bq.Grid(2, 16)
    c = np.zeros((16, 16), complex)
    j = g.wavenumbers()
    # cos x1
    c[(j[0] == 1) & (j[1] == 0)] = 0.5
    c[(j[0] == -1) & (j[1] == 0)] = 0.5
    f = bq.ScalarField(g, c)
    np.testing.assert_array_equal(f.coeffs, c)
    x = 2 * np.pi * np.arange(16) / 16
    np.testing.assert_allclose(f.physical(), np.cos(x)[:, None] * np.ones(16), atol=1e-14)
    assert bq.norm(f) == pytest.approx(np.sqrt(0.5) * 2 * np.pi)
    with pytest.raises(ValueError):
        bq.ScalarField(g, np.zeros(10, complex))


def test_initial_data_and_operators():
    g = bq.Grid(2, 32)
    u, th = bq.synthesize_initial("rough_h1", g, seed=1)
    assert u.coeffs.shape == (2, 32, 32)
    assert bq.divergence_max(u) < 1e-12
    assert bq.reality_defect(th) == 0.0
    a = bq.convect_pseudospectral(u, th)
    b = bq.convect_convolution(u, th)
    assert np.max(np.abs(bq.dealias(b).coeffs - a.coeffs)) < 1e-12
    p = bq.recover_pressure(u, th)
    assert bq.helmholtz_check(u, th) < 1e-10
    assert p.coeffs.shape == (32, 32)
    with pytest.raises(ValueError):
        bq.synthesize_initial("vortex", g)


def test_heat_decay_is_exact():
    g = bq.Grid(2, 16)
    u, th = bq.synthesize_initial("single_mode_theta", g)
    state = bq.State(u, th)
    cfg = bq.StepperConfig(dt=0.01)
    out = bq.run_simulation(cfg, bq.PhysicalParams(), state, t_final=0.1, snapshot_every=5)
    assert out["status"] == "completed"
    assert len(out["snapshots"]) == 3
    ratio = out["l2_theta"][-1] / out["l2_theta"][0]
    assert ratio == pytest.approx(np.exp(-0.1), rel=1e-12)
    assert max(abs(r[1]) for r in out["energy_budget"]) < 1e-10


def test_step_and_diagnose():
    g = bq.Grid(2, 32)
    u, th = bq.synthesize_initial("rough_h1", g, seed=2)
    s = bq.step(bq.State(u, th), bq.PhysicalParams(0.5, 0.5), bq.StepperConfig(dt=1e-3))
    assert s.t == pytest.approx(1e-3)
    assert s.step_index == 1
    rec = bq.diagnose(s)
    assert rec["gevrey_X"] >= 1.0 and rec["tau_used"] == pytest.approx(1e-3)
    X, tau, clamped = bq.gevrey_energy(u, th, 100.0)
    assert clamped and tau == pytest.approx(g.tau_cap)
    assert "shell,count" in bq.spectrum_table(s)


def test_snapshot_files(tmp_path):
    g = bq.Grid(3, 8)
    u, th = bq.synthesize_initial("rough_h1", g, seed=3)
    path = tmp_path / "s.bin"
    bq.write_snapshot(bq.State(u, th, 0.25), bq.PhysicalParams(0.1, 0.2), path)
    state, params = bq.read_snapshot(path)
    np.testing.assert_array_equal(state.u.coeffs, u.coeffs)
    assert (state.t, params.nu, params.kappa) == (0.25, 0.1, 0.2)
    path.write_bytes(b"garbage" * 10)
    with pytest.raises(bq.SnapshotError):
        bq.read_snapshot(path)


def test_run_config_and_oracle(tmp_path):
    cfg = "dim = 2\nmodes = 16\nt_final = 0.02\nsnapshot_every = 10\n"
    out = bq.run_config(cfg, str(tmp_path))
    assert out["status"] == "completed"
    rows = bq.read_diagnostics(out["diagnostics"])
    assert len(rows) == len(out["snapshots"]) == 3
    again = bq.diagnose_snapshots(out["snapshots"])
    assert again[-1]["l2_u"] == rows[-1]["l2_u"]
    rep = bq.oracle_check(cfg)
    assert rep["convolution_ran"]
    assert rep["galerkin_max_relative_deviation"] < 1e-6
    with pytest.raises(bq.ConfigError, match="nu"):
        bq.run_config(cfg + "nu = -1\n")


@pytest.mark.skipif("BOUSSINESQ_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["BOUSSINESQ_CLI"]
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dim = 2\nmodes = 16\nt_final = 0.01\n")
    ok = subprocess.run([cli, "run", str(cfg), "--output-dir", str(tmp_path / "o"), "--quiet"])
    assert ok.returncode == 0
    assert (tmp_path / "o" / "diagnostics.csv").exists()
    bad = tmp_path / "bad.cfg"
    bad.write_text("dim = 2\nmodes = 16\nt_final = 0.01\nnu = -1\n")
    err = subprocess.run([cli, "run", str(bad)], capture_output=True, text=True)
    assert err.returncode == 1 and "nu" in err.stderr
    assert subprocess.run([cli, "frobnicate"], capture_output=True).returncode == 1
    # Inviscid-scale viscosity with huge data and a large step diverges.
    boom = tmp_path / "boom.cfg"
    boom.write_text("dim = 2\nmodes = 32\nt_final = 5\ndt = 0.5\nnu = 1e-6\nkappa = 1e-6\n"
                    "initial_kind = rough_h1\nsobolev_exponent = 2.05\n")
    res = subprocess.run([cli, "run", str(boom), "--output-dir", str(tmp_path / "b"), "--quiet"])
    assert res.returncode == 2
