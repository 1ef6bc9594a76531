// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "boussinesq/fft.hpp"
#include "boussinesq/nonlinear.hpp"
#include "boussinesq/spectral.hpp"

namespace boussinesq
{

namespace
{

// Per-mode diffusion factors exp(-nu |j|^2 h) and exp(-kappa |j|^2 h).
struct DecayFactors
{
  std::vector<double> u;
  std::vector<double> theta;

  DecayFactors(const GridSpec &grid, const PhysicalParams &params, double h)
    : u(grid.size()), theta(grid.size())
  {
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      const double k2 = static_cast<double>(norm2(grid.wavevector(i)));
      u[i] = std::exp(-params.nu * k2 * h);
      theta[i] = std::exp(-params.kappa * k2 * h);
    }
  }
};

// out = E * (a + h * b), where E may be null (identity).
void combine(Coeffs &out, const Coeffs &a, double h, const Coeffs &b, const std::vector<double> *E)
{
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    const Complex v = a[i] + h * b[i];
    out[i] = E ? (*E)[i] * v : v;
  }
}

bool all_finite(const SimulationState &s)
{
  auto finite = [](const Coeffs &c) {
    return std::all_of(c.begin(), c.end(), [](const Complex &z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  };
  for (const Coeffs &c : s.u.comps)
  {
    if (!finite(c))
    {
      return false;
    }
  }
  return finite(s.theta.coeffs);
}

// E * (v + h k), component-wise; E == nullptr means identity.
SimulationState advance(const SimulationState &v, double h, const Tendency &k,
                        const DecayFactors *E)
{
  SimulationState out = v;
  for (int c = 0; c < v.u.components(); ++c)
  {
    combine(out.u.comps[c], v.u.comps[c], h, k.du.comps[c], E ? &E->u : nullptr);
  }
  combine(out.theta.coeffs, v.theta.coeffs, h, k.dtheta.coeffs, E ? &E->theta : nullptr);
  return out;
}

void scale_by(Tendency &k, const DecayFactors &E)
{
  for (Coeffs &c : k.du.comps)
  {
    for (std::size_t i = 0; i < c.size(); ++i)
    {
      c[i] *= E.u[i];
    }
  }
  for (std::size_t i = 0; i < k.dtheta.coeffs.size(); ++i)
  {
    k.dtheta.coeffs[i] *= E.theta[i];
  }
}

}  // namespace

std::optional<Scheme> parse_scheme(std::string_view name)
{
  if (name == "if_rk4") return Scheme::if_rk4;
  if (name == "if_euler") return Scheme::if_euler;
  return std::nullopt;
}

std::string_view to_string(Scheme scheme)
{
  return scheme == Scheme::if_rk4 ? "if_rk4" : "if_euler";
}

void validate(const StepperConfig &config, const GridSpec &grid)
{
  if (!(config.dt > 0.0) || !std::isfinite(config.dt))
  {
    throw std::invalid_argument("time step dt must be positive");
  }
  if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 1.0))
  {
    throw std::invalid_argument("cfl_safety must lie in (0, 1]");
  }
  if (config.truncation_radius < 0.0 || config.truncation_radius > grid.dealias_cutoff())
  {
    throw std::invalid_argument("truncation_radius must lie in [0, dealias cutoff]");
  }
}

Tendency rhs_nonlinear(const SimulationState &state, double truncation_radius)
{
  VectorField du = leray_project(convect_pseudospectral(state.u, state.u).field);
  const VectorField force = buoyancy(state.theta);
  for (int c = 0; c < du.components(); ++c)
  {
    for (std::size_t i = 0; i < du.grid.size(); ++i)
    {
      du.comps[c][i] = force.comps[c][i] - du.comps[c][i];
    }
  }
  ScalarField dtheta = convect_pseudospectral(state.u, state.theta).field;
  for (Complex &z : dtheta.coeffs)
  {
    z = -z;
  }
  if (truncation_radius > 0.0)
  {
    du = truncate_radius(du, truncation_radius);
    dtheta = truncate_radius(dtheta, truncation_radius);
  }
  return {enforce_constraints(du), enforce_constraints(dtheta)};
}

Tendency rhs_full(const SimulationState &state, const PhysicalParams &params,
                  double truncation_radius)
{
  Tendency out = rhs_nonlinear(state, truncation_radius);
  const GridSpec &grid = state.u.grid;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const double k2 = static_cast<double>(norm2(grid.wavevector(i)));
    for (int c = 0; c < out.du.components(); ++c)
    {
      out.du.comps[c][i] -= params.nu * k2 * state.u.comps[c][i];
    }
    out.dtheta.coeffs[i] -= params.kappa * k2 * state.theta.coeffs[i];
  }
  return out;
}

SimulationState step(const SimulationState &state, const PhysicalParams &params,
                     const StepperConfig &config)
{
  return step_with(state, params, config, config.dt);
}

SimulationState step_with(const SimulationState &state, const PhysicalParams &params,
                          const StepperConfig &config, double dt)
{
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw std::invalid_argument("time step dt must be positive");
  }
  validate(params);
  const GridSpec &grid = state.u.grid;
  const double trunc = config.truncation_radius;
  const DecayFactors full(grid, params, dt);

  SimulationState next;
  if (config.scheme == Scheme::if_euler)
  {
    const Tendency k1 = rhs_nonlinear(state, trunc);
    next = advance(state, dt, k1, &full);
  }
  else
  {
    // Lawson (integrating-factor) RK4 in w = exp(L t) v.
    const DecayFactors half(grid, params, 0.5 * dt);
    Tendency k1 = rhs_nonlinear(state, trunc);
    const SimulationState a = advance(state, 0.5 * dt, k1, &half);
    Tendency k2 = rhs_nonlinear(a, trunc);

    SimulationState b = advance(state, 0.0, k2, &half);
    b = advance(b, 0.5 * dt, k2, nullptr);
    Tendency k3 = rhs_nonlinear(b, trunc);

    Tendency k3h = k3;
    scale_by(k3h, half);
    SimulationState c = advance(state, 0.0, k3, &full);
    c = advance(c, dt, k3h, nullptr);
    const Tendency k4 = rhs_nonlinear(c, trunc);

    // v' = E v + dt/6 (E k1 + 2 E2 (k2 + k3) + k4)
    scale_by(k1, full);
    scale_by(k2, half);
    next = advance(state, 0.0, k1, &full);
    auto accumulate = [&](const Tendency &k, double w) {
      for (int comp = 0; comp < next.u.components(); ++comp)
      {
        Coeffs &dst = next.u.comps[comp];
        const Coeffs &src = k.du.comps[comp];
        for (std::size_t i = 0; i < dst.size(); ++i)
        {
          dst[i] += w * src[i];
        }
      }
      for (std::size_t i = 0; i < next.theta.coeffs.size(); ++i)
      {
        next.theta.coeffs[i] += w * k.dtheta.coeffs[i];
      }
    };
    accumulate(k1, dt / 6.0);
    accumulate(k2, dt / 3.0);
    accumulate(k3h, dt / 3.0);
    accumulate(k4, dt / 6.0);
  }

  next.u = leray_project(enforce_constraints(next.u));
  next.theta = enforce_constraints(next.theta);
  next.t = state.t + dt;
  next.step_index = state.step_index + 1;

  if (!all_finite(next))
  {
    throw NonfiniteStateError("non-finite coefficients at step " +
                                  std::to_string(next.step_index) + " (t = " +
                                  std::to_string(next.t) + ")",
                              state);
  }
  return next;
}

double stable_dt(const SimulationState &state, double cfl_safety)
{
  const GridSpec &grid = state.u.grid;
  const SpectralTransform &fft = SpectralTransform::for_grid(grid);
  GridValues speed2(grid.size(), 0.0);
  for (const Coeffs &c : state.u.comps)
  {
    const GridValues v = fft.to_physical(c);
    for (std::size_t p = 0; p < v.size(); ++p)
    {
      speed2[p] += v[p] * v[p];
    }
  }
  const double umax = std::sqrt(*std::max_element(speed2.begin(), speed2.end()));
  const double dx = 2.0 * kPi / grid.modes();
  return cfl_safety * dx / std::max(1e-12, umax);
}

StepRecord measure(const SimulationState &state)
{
  StepRecord r;
  r.t = state.t;
  r.l2_u = norm(state.u);
  r.l2_theta = norm(state.theta);
  r.h1_u = norm(state.u, 1.0);
  r.h1_theta = norm(state.theta, 1.0);
  ScalarField u_n{state.u.grid, state.u.comps[state.u.grid.dim() - 1]};
  r.buoyancy_work = inner(state.theta, u_n);
  r.div_max = divergence_max(state.u);
  r.max_amplitude_u = max_amplitude(state.u);
  r.reality_defect = std::max(reality_defect(state.u), reality_defect(state.theta));
  return r;
}

namespace
{

double log_mean(double a, double b)
{
  if (a <= 0.0 || b <= 0.0)
  {
    return 0.0;
  }
  const double d = b - a;
  if (std::abs(d) <= 1e-6 * std::max(a, b))
  {
    // Series of (b - a) / log(b / a) about a = b.
    const double m = 0.5 * (a + b);
    const double x = d / (a + b);
    return m * (1.0 - x * x / 3.0);
  }
  return d / std::log(b / a);
}

double dissipation_impl(const GridSpec &grid, const std::vector<const Coeffs *> &a,
                        const std::vector<const Coeffs *> &b, double h)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const int k2 = norm2(grid.wavevector(i));
    if (k2 == 0)
    {
      continue;
    }
    for (std::size_t c = 0; c < a.size(); ++c)
    {
      sum += k2 * log_mean(std::norm((*a[c])[i]), std::norm((*b[c])[i]));
    }
  }
  return std::pow(2.0 * kPi, grid.dim()) * h * sum;
}

}  // namespace

double dissipation_integral(const ScalarField &a, const ScalarField &b, double h)
{
  return dissipation_impl(a.grid, {&a.coeffs}, {&b.coeffs}, h);
}

double dissipation_integral(const VectorField &a, const VectorField &b, double h)
{
  std::vector<const Coeffs *> pa, pb;
  for (int c = 0; c < a.components(); ++c)
  {
    pa.push_back(&a.comps[c]);
    pb.push_back(&b.comps[c]);
  }
  return dissipation_impl(a.grid, pa, pb, h);
}

StepRecord measure(const SimulationState &state, const SimulationState &previous)
{
  StepRecord r = measure(state);
  const double h = state.t - previous.t;
  r.has_interval = true;
  r.dissipation_u = dissipation_integral(previous.u, state.u, h);
  r.dissipation_theta = dissipation_integral(previous.theta, state.theta, h);
  return r;
}

Trajectory run_simulation(const StepperConfig &config, const RunControl &control,
                          const PhysicalParams &params, const SimulationState &initial,
                          const SnapshotSink &sink, bool keep_snapshots)
{
  const GridSpec &grid = initial.u.grid;
  validate(config, grid);
  validate(params);
  if (!(control.t_final >= config.dt))
  {
    throw std::invalid_argument("t_final must be at least dt");
  }
  if (control.snapshot_every < 1)
  {
    throw std::invalid_argument("snapshot_every must be >= 1");
  }

  Trajectory traj;
  SimulationState state = initial;
  state.t = 0.0;
  state.step_index = 0;
  if (config.truncation_radius > 0.0)
  {
    state.u = truncate_radius(state.u, config.truncation_radius);
    state.theta = truncate_radius(state.theta, config.truncation_radius);
  }

  auto take_snapshot = [&](const SimulationState &s) {
    if (sink)
    {
      sink(s);
    }
    if (keep_snapshots)
    {
      traj.snapshots.push_back(s);
    }
  };

  traj.steps.push_back(measure(state));
  take_snapshot(state);
  const double z0 = traj.steps.front().h1_u * traj.steps.front().h1_u +
                    traj.steps.front().h1_theta * traj.steps.front().h1_theta;

  const std::int64_t fixed_steps = std::llround(control.t_final / config.dt);
  const double t_eps = 1e-12 * control.t_final;
  while (config.adaptive ? state.t < control.t_final - t_eps : state.step_index < fixed_steps)
  {
    double h = config.dt;
    if (config.adaptive)
    {
      h = std::min(config.dt, stable_dt(state, config.cfl_safety));
      h = std::min(h, control.t_final - state.t);
    }
    SimulationState next;
    try
    {
      next = step_with(state, params, config, h);
    }
    catch (const NonfiniteStateError &e)
    {
      traj.status = RunStatus::blow_up;
      traj.message = std::string("blow-up: ") + e.what();
      if (state.step_index % control.snapshot_every != 0)
      {
        take_snapshot(state);
      }
      return traj;
    }
    if (!config.adaptive)
    {
      next.t = static_cast<double>(next.step_index) * config.dt;
    }
    const StepRecord rec = measure(next, state);
    state = std::move(next);

    traj.steps.push_back(rec);
    const bool last =
        config.adaptive ? state.t >= control.t_final - t_eps : state.step_index == fixed_steps;

    const double z = rec.h1_u * rec.h1_u + rec.h1_theta * rec.h1_theta;
    if (z0 > 0.0 && z > control.blowup_factor * z0)
    {
      traj.status = RunStatus::blow_up;
      traj.message = "blow-up detected at t = " + std::to_string(state.t) +
                     ": ||Lambda u||^2 + ||Lambda theta||^2 grew by more than " +
                     std::to_string(control.blowup_factor);
      take_snapshot(state);
      return traj;
    }
    if (last || state.step_index % control.snapshot_every == 0)
    {
      take_snapshot(state);
    }
  }
  return traj;
}

}  // namespace boussinesq
