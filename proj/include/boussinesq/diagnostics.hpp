// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_DIAGNOSTICS_HPP
#define BOUSSINESQ_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "boussinesq/field.hpp"
#include "boussinesq/stepper.hpp"

namespace boussinesq
{

struct DiagnosticsRecord
{
  double t = 0.0;
  double l2_u = 0.0;
  double l2_theta = 0.0;
  double h1_u = 0.0;
  double h1_theta = 0.0;
  double gevrey_X = 1.0;
  double tau_used = 0.0;
  double radius_fit = 0.0;          // NaN when the spectrum is unfittable
  double radius_fit_quality = 0.0;  // NaN when the spectrum is unfittable
  double energy_residual_theta = 0.0;
  double energy_residual_u = 0.0;
  double div_max = 0.0;
};

// ---------------------------------------------------------------------------
// Energy budgets

struct EnergyBudget
{
  double t = 0.0;
  // ||theta(t)||^2 + 2 kappa int_0^t ||grad theta||^2 - ||theta_0||^2
  double residual_theta = 0.0;
  // ||u(t)||^2 + 2 nu int_0^t ||grad u||^2 - 2 int_0^t <theta e_N, u> - ||u_0||^2
  double residual_u = 0.0;
  // ||theta(t)||^2 + 2 kappa int_0^t ||grad theta||^2
  double theta_lhs = 0.0;
  double theta0_sq = 0.0;
};

/// Signed residuals of the energy identities at every sample of `samples`.
/// Dissipation integrals come from the samples' log-mean interval integrals
/// when present and the trapezoidal rule otherwise; the buoyancy work is always
/// trapezoidal. Requires at least two samples.
std::vector<EnergyBudget> energy_budget(std::span<const StepRecord> samples,
                                        const PhysicalParams &params);

/// Convenience overload: budgets at every step of the trajectory.
std::vector<EnergyBudget> energy_budget(const Trajectory &trajectory,
                                        const PhysicalParams &params);

// ---------------------------------------------------------------------------
// Gevrey energy

struct GevreyEnergy
{
  double X = 1.0;
  double tau_used = 0.0;
  bool clamped = false;
};

/// X = 1 + ||Lambda e^{tau Lambda} u||^2 + ||Lambda e^{tau Lambda} theta||^2 with
/// tau = min(t, tau_cap).
GevreyEnergy gevrey_energy(const VectorField &u, const ScalarField &theta, double t);
GevreyEnergy gevrey_energy(const SimulationState &state);

/// Largest sample time t_half such that X(t) <= 2 X(t_0) for every sample up to
/// and including t_half. Samples must be time-ordered with the first at t_0.
double gevrey_half_time(std::span<const double> times, std::span<const double> X);

// ---------------------------------------------------------------------------
// Analyticity radius

struct RadiusFit
{
  double tau_est = 0.0;
  double intercept = 0.0;
  int first_shell = 0;
  int last_shell = 0;
  int shells_used = 0;
  double quality = 0.0;  // coefficient of determination
};

struct ShellEnvelope
{
  int shell = 0;
  std::size_t count = 0;
  double max_amplitude = 0.0;
  double argmax_radius = 0.0;  // |j| of the mode attaining the maximum
  double energy = 0.0;         // (2 pi)^N sum |f_j|^2 over the shell
};

/// Integer shells [n - 1/2, n + 1/2) of |j| for n >= 1; amplitude at each mode
/// is the Euclidean norm over all supplied components.
std::vector<ShellEnvelope> shell_envelope(const VectorField &u);
std::vector<ShellEnvelope> shell_envelope(const ScalarField &theta);
std::vector<ShellEnvelope> shell_envelope(const VectorField &u, const ScalarField &theta);

inline constexpr double kAmplitudeFloor = 1e-14;
inline constexpr int kMinFitShells = 4;

/// Least-squares line through (|j*|^{1/s}, log max_shell |f|), where j* attains
/// the shell maximum; tau_est = -slope clamped at 0. Shells below
/// kAmplitudeFloor * max amplitude are excluded. Returns nullopt when fewer
/// than kMinFitShells shells remain.
std::optional<RadiusFit> fit_radius(std::span<const ShellEnvelope> shells, double s = 1.0);
std::optional<RadiusFit> fit_radius(const VectorField &u, double s = 1.0);
std::optional<RadiusFit> fit_radius(const ScalarField &theta, double s = 1.0);

// ---------------------------------------------------------------------------
// Pressure and Helmholtz decomposition

/// p_j = (i j . N_j - i j_N theta_j) / |j|^2 with N = u . grad u, p_0 = 0.
ScalarField recover_pressure(const VectorField &u, const ScalarField &theta);

/// max_j |(I - P)(u . grad u - theta e_N)_j + (grad p)_j|, p from recover_pressure.
double helmholtz_check(const VectorField &u, const ScalarField &theta);

// ---------------------------------------------------------------------------

/// Snapshot-level record; the energy residuals are left at zero for the caller.
DiagnosticsRecord make_record(const SimulationState &state);

}  // namespace boussinesq

#endif  // BOUSSINESQ_DIAGNOSTICS_HPP
