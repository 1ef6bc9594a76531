// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_COMMANDS_HPP
#define BOUSSINESQ_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "boussinesq/diagnostics.hpp"
#include "boussinesq/galerkin.hpp"
#include "boussinesq/io.hpp"

namespace boussinesq
{

// Process exit codes shared by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBlowUp = 2;

struct RunSummary
{
  RunStatus status = RunStatus::completed;
  std::string message;
  std::vector<std::filesystem::path> snapshots;
  std::filesystem::path diagnostics;
  std::vector<DiagnosticsRecord> records;
};

/// Simulates `cfg`, writing snapshot_<step>.bin files and diagnostics.csv into
/// cfg.output_dir.
RunSummary run_to_disk(const RunConfig &cfg, std::ostream *log = nullptr);

/// Records for stored snapshots, ordered by time. Energy residuals integrate
/// over the intervals between consecutive supplied snapshots.
std::vector<DiagnosticsRecord> diagnose_snapshots(const std::vector<std::filesystem::path> &paths);

/// Galerkin-ODE oracle vs the pseudospectral solver at matched truncation.
struct GalerkinComparison
{
  std::size_t velocity_modes = 0;
  std::size_t scalar_modes = 0;
  double max_antisymmetry_A = 0.0;
  double max_antisymmetry_B = 0.0;
  double max_relative_deviation = 0.0;  // relative L^2, max over steps and fields
};

/// Both solvers start from (u0, theta0) truncated to |k| <= radius and take
/// RK4 steps of size dt up to t_final.
GalerkinComparison compare_with_galerkin(const VectorField &u0, const ScalarField &theta0,
                                         const PhysicalParams &params, double radius, double dt,
                                         double t_final);

struct OracleReport
{
  double convection_velocity_deviation = 0.0;
  double convection_temperature_deviation = 0.0;
  bool convolution_ran = false;
  GalerkinComparison galerkin;
};

/// Pseudospectral vs convolution vs Galerkin-ODE comparison for the config's grid.
OracleReport oracle_check(const RunConfig &cfg);

/// Shell envelope table as CSV.
std::string spectrum_table(const SimulationState &state);

}  // namespace boussinesq

#endif  // BOUSSINESQ_COMMANDS_HPP
