// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_STEPPER_HPP
#define BOUSSINESQ_STEPPER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boussinesq/field.hpp"

namespace boussinesq
{

struct SimulationState
{
  VectorField u;
  ScalarField theta;
  double t = 0.0;
  std::int64_t step_index = 0;
};

enum class Scheme
{
  if_rk4,
  if_euler,
};

std::optional<Scheme> parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme);

struct StepperConfig
{
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk4;
  double cfl_safety = 0.5;
  // Adaptive CFL stepping; dt then acts as the upper bound.
  bool adaptive = false;
  // Galerkin truncation |j| <= truncation_radius applied to the nonlinear and
  // buoyancy terms. 0 disables it; otherwise it may not exceed the dealias cutoff.
  double truncation_radius = 0.0;
};

/// Throws std::invalid_argument for dt <= 0, cfl_safety outside (0, 1] or an
/// inadmissible truncation radius.
void validate(const StepperConfig &config, const GridSpec &grid);

/// Thrown when a step produces non-finite coefficients. Carries the last state
/// that was finite.
class NonfiniteStateError : public std::runtime_error
{
public:
  NonfiniteStateError(const std::string &what, SimulationState last_good)
    : std::runtime_error(what), last_good_(std::move(last_good))
  {
  }
  const SimulationState &last_good() const { return last_good_; }

private:
  SimulationState last_good_;
};

struct Tendency
{
  VectorField du;
  ScalarField dtheta;
};

/// du = -nu |j|^2 u - P(u . grad u) + P(theta e_N), dtheta = -kappa |j|^2 theta - u . grad theta.
Tendency rhs_full(const SimulationState &state, const PhysicalParams &params,
                  double truncation_radius = 0.0);

/// Explicit part of rhs_full (everything except diffusion).
Tendency rhs_nonlinear(const SimulationState &state, double truncation_radius = 0.0);

/// One integrating-factor step: diffusion is integrated exactly, the remaining
/// terms by RK4 or forward Euler in the transformed variables.
SimulationState step(const SimulationState &state, const PhysicalParams &params,
                     const StepperConfig &config);

/// Same as step() with an explicit step size (used by adaptive runs).
SimulationState step_with(const SimulationState &state, const PhysicalParams &params,
                          const StepperConfig &config, double dt);

/// cfl_safety * (2 pi / M) / max(1e-12, max |u(x)|), max taken over grid samples.
double stable_dt(const SimulationState &state, double cfl_safety);

/// Cheap per-step invariants and budget terms.
struct StepRecord
{
  double t = 0.0;
  double l2_u = 0.0;
  double l2_theta = 0.0;
  double h1_u = 0.0;
  double h1_theta = 0.0;
  double buoyancy_work = 0.0;  // <theta e_N, u>_{L^2}
  double div_max = 0.0;
  double max_amplitude_u = 0.0;
  double reality_defect = 0.0;
  // Integrals of ||grad u||^2 and ||grad theta||^2 over the interval ending at
  // t, valid when has_interval is set. Each mode's |c_j|^2 is taken to vary
  // exponentially across the interval (log-mean rule), which is exact for pure
  // diffusion however stiff the mode.
  bool has_interval = false;
  double dissipation_u = 0.0;
  double dissipation_theta = 0.0;
};

StepRecord measure(const SimulationState &state);

/// measure(state) plus the dissipation integrals since `previous`.
StepRecord measure(const SimulationState &state, const SimulationState &previous);

/// Integral over [a.t, b.t] of ||grad f||^2 by the per-mode log-mean rule.
double dissipation_integral(const ScalarField &a, const ScalarField &b, double h);
double dissipation_integral(const VectorField &a, const VectorField &b, double h);

enum class RunStatus
{
  completed,
  blow_up,
};

struct RunControl
{
  double t_final = 0.0;
  std::int64_t snapshot_every = 10;
  // Abort once ||Lambda u||^2 + ||Lambda theta||^2 exceeds this multiple of its initial value.
  double blowup_factor = 1e8;
};

struct Trajectory
{
  std::vector<SimulationState> snapshots;
  std::vector<StepRecord> steps;  // one per step, including the initial state
  RunStatus status = RunStatus::completed;
  std::string message;
};

/// Receives each snapshot as it is taken; may be empty.
using SnapshotSink = std::function<void(const SimulationState &)>;

/// Advances the initial state to control.t_final. Snapshots are taken at step 0,
/// every snapshot_every steps, and at the final step. Blow-up ends the run with
/// status blow_up, as does a non-finite step (the last good state is then the final snapshot).
Trajectory run_simulation(const StepperConfig &config, const RunControl &control,
                          const PhysicalParams &params, const SimulationState &initial,
                          const SnapshotSink &sink = {}, bool keep_snapshots = true);

}  // namespace boussinesq

#endif  // BOUSSINESQ_STEPPER_HPP
