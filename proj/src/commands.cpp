// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "boussinesq/nonlinear.hpp"
#include "boussinesq/spectral.hpp"

namespace boussinesq
{

namespace
{

std::string snapshot_name(std::int64_t step)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snapshot_%08lld.bin", static_cast<long long>(step));
  return buf;
}

template <typename Field>
double max_deviation(const Field &a, const Field &b)
{
  double diff = 0.0, ref = 0.0;
  for (int c = 0; c < a.components(); ++c)
  {
    for (std::size_t i = 0; i < a.grid.size(); ++i)
    {
      diff = std::max(diff, std::abs(a.component(c)[i] - b.component(c)[i]));
      ref = std::max(ref, std::abs(b.component(c)[i]));
    }
  }
  return ref > 0.0 ? diff / ref : diff;
}

template <typename Field>
double relative_l2(const Field &a, const Field &b)
{
  Field d = a;
  for (int c = 0; c < d.components(); ++c)
  {
    for (std::size_t i = 0; i < d.grid.size(); ++i)
    {
      d.component(c)[i] -= b.component(c)[i];
    }
  }
  const double ref = norm(b);
  return ref > 0.0 ? norm(d) / ref : norm(d);
}

}  // namespace

RunSummary run_to_disk(const RunConfig &cfg, std::ostream *log)
{
  const GridSpec grid = cfg.grid();
  const PhysicalParams params = cfg.physical();
  auto [u0, theta0] = synthesize_initial(cfg.initial_kind, grid, cfg.seed, cfg.sobolev_exponent);
  SimulationState initial{std::move(u0), std::move(theta0), 0.0, 0};

  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  RunSummary summary;
  std::map<std::int64_t, std::size_t> record_of_step;
  auto sink = [&](const SimulationState &s) {
    const std::filesystem::path path = dir / snapshot_name(s.step_index);
    write_snapshot(s, params, path);
    summary.snapshots.push_back(path);
    record_of_step[s.step_index] = summary.records.size();
    summary.records.push_back(make_record(s));
    if (log)
    {
      const DiagnosticsRecord &r = summary.records.back();
      *log << "t = " << r.t << "  |u| = " << r.l2_u << "  |theta| = " << r.l2_theta
           << "  X = " << r.gevrey_X << "  radius = " << r.radius_fit << '\n';
    }
  };

  const Trajectory traj =
      run_simulation(cfg.stepper(), cfg.control(), params, initial, sink, false);

  const auto budgets = energy_budget(traj, params);
  for (const auto &[step, idx] : record_of_step)
  {
    if (step < static_cast<std::int64_t>(budgets.size()))
    {
      summary.records[idx].energy_residual_theta = budgets[step].residual_theta;
      summary.records[idx].energy_residual_u = budgets[step].residual_u;
    }
  }

  summary.status = traj.status;
  summary.message = traj.message;
  summary.diagnostics = dir / "diagnostics.csv";
  write_diagnostics(summary.records, summary.diagnostics);
  return summary;
}

std::vector<DiagnosticsRecord> diagnose_snapshots(const std::vector<std::filesystem::path> &paths)
{
  std::vector<Snapshot> snaps;
  for (const auto &p : paths)
  {
    snaps.push_back(read_snapshot(p));
  }
  std::stable_sort(snaps.begin(), snaps.end(),
                   [](const Snapshot &a, const Snapshot &b) { return a.state.t < b.state.t; });

  std::vector<DiagnosticsRecord> records;
  std::vector<StepRecord> samples;
  for (std::size_t n = 0; n < snaps.size(); ++n)
  {
    records.push_back(make_record(snaps[n].state));
    samples.push_back(n == 0 ? measure(snaps[n].state) : measure(snaps[n].state, snaps[n - 1].state));
  }
  if (samples.size() >= 2)
  {
    const auto budgets = energy_budget(std::span<const StepRecord>(samples), snaps.front().params);
    for (std::size_t i = 0; i < records.size(); ++i)
    {
      records[i].energy_residual_theta = budgets[i].residual_theta;
      records[i].energy_residual_u = budgets[i].residual_u;
    }
  }
  return records;
}

GalerkinComparison compare_with_galerkin(const VectorField &u0, const ScalarField &theta0,
                                         const PhysicalParams &params, double radius, double dt,
                                         double t_final)
{
  const GridSpec &grid = u0.grid;
  GalerkinComparison out;

  const GalerkinBasis basis = build_basis_radius(grid, radius);
  const GalerkinSystem sys = assemble_tensors(basis);
  out.velocity_modes = sys.velocity_size();
  out.scalar_modes = sys.scalar_size();
  for (std::size_t a = 0; a < sys.velocity_size(); ++a)
  {
    for (std::size_t b = 0; b < sys.velocity_size(); ++b)
    {
      for (std::size_t c = 0; c < sys.velocity_size(); ++c)
      {
        out.max_antisymmetry_A = std::max(out.max_antisymmetry_A, std::abs(sys.A(a, b, c) + sys.A(a, c, b)));
      }
    }
    for (std::size_t b = 0; b < sys.scalar_size(); ++b)
    {
      for (std::size_t c = 0; c < sys.scalar_size(); ++c)
      {
        out.max_antisymmetry_B = std::max(out.max_antisymmetry_B, std::abs(sys.B(a, b, c) + sys.B(a, c, b)));
      }
    }
  }

  const VectorField u = truncate_radius(u0, radius);
  const ScalarField theta = truncate_radius(theta0, radius);
  const GalerkinTrajectory gal =
      integrate_galerkin(sys, project_state(basis, u, theta), params, t_final, dt);

  StepperConfig config;
  config.dt = dt;
  config.scheme = Scheme::if_rk4;
  config.truncation_radius = radius;
  RunControl control;
  control.t_final = t_final;
  control.snapshot_every = 1;
  const Trajectory ps = run_simulation(config, control, params, SimulationState{u, theta, 0.0, 0});

  const std::size_t n = std::min(ps.snapshots.size(), gal.states.size());
  for (std::size_t s = 0; s < n; ++s)
  {
    const VectorField ug = reconstruct_velocity(basis, gal.states[s].xi, grid);
    const ScalarField tg = reconstruct_temperature(basis, gal.states[s].eta, grid);
    out.max_relative_deviation =
        std::max({out.max_relative_deviation, relative_l2(ps.snapshots[s].u, ug),
                  relative_l2(ps.snapshots[s].theta, tg)});
  }
  return out;
}

OracleReport oracle_check(const RunConfig &cfg)
{
  const GridSpec grid = cfg.grid();
  OracleReport report;

  auto [u, theta] = synthesize_initial(InitialKind::rough_h1, grid, cfg.seed, cfg.sobolev_exponent);
  if (grid.size() <= kConvolutionModeLimit)
  {
    report.convolution_ran = true;
    report.convection_velocity_deviation =
        max_deviation(convect_pseudospectral(u, u).field, dealias(convect_convolution(u, u).field));
    report.convection_temperature_deviation = max_deviation(convect_pseudospectral(u, theta).field,
                      dealias(convect_convolution(u, theta).field));
  }

  auto [gu, gt] = synthesize_initial(cfg.initial_kind, grid, cfg.seed, cfg.sobolev_exponent);
  const double radius = std::min(cfg.galerkin_radius, static_cast<double>(grid.dealias_cutoff()));
  report.galerkin = compare_with_galerkin(gu, gt, cfg.physical(), radius, cfg.dt, cfg.t_final);
  return report;
}

std::string spectrum_table(const SimulationState &state)
{
  const auto su = shell_envelope(state.u);
  const auto st = shell_envelope(state.theta);
  std::string out = "shell,count,max_u,max_theta,energy_u,energy_theta\n";
  char buf[256];
  for (std::size_t i = 0; i < su.size(); ++i)
  {
    std::snprintf(buf, sizeof(buf), "%d,%zu,%.17g,%.17g,%.17g,%.17g\n", su[i].shell, su[i].count,
                  su[i].max_amplitude, st[i].max_amplitude, su[i].energy, st[i].energy);
    out += buf;
  }
  return out;
}

}  // namespace boussinesq
