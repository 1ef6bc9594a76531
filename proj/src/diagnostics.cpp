// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boussinesq/nonlinear.hpp"
#include "boussinesq/spectral.hpp"

namespace boussinesq
{

namespace
{

std::vector<ShellEnvelope> envelope_impl(const GridSpec &grid,
                                         const std::vector<const Coeffs *> &comps)
{
  const double vol = std::pow(2.0 * kPi, grid.dim());
  std::vector<ShellEnvelope> shells;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const Wavevector j = grid.wavevector(i);
    const int k2 = norm2(j);
    if (k2 == 0)
    {
      continue;
    }
    const double radius = std::sqrt(static_cast<double>(k2));
    const int n = static_cast<int>(std::floor(radius + 0.5));
    if (n >= static_cast<int>(shells.size()))
    {
      const std::size_t old = shells.size();
      shells.resize(n + 1);
      for (std::size_t s = old; s < shells.size(); ++s)
      {
        shells[s].shell = static_cast<int>(s);
      }
    }
    double a2 = 0.0;
    for (const Coeffs *c : comps)
    {
      a2 += std::norm((*c)[i]);
    }
    ShellEnvelope &sh = shells[n];
    ++sh.count;
    sh.energy += vol * a2;
    const double a = std::sqrt(a2);
    // Ties resolve to the smallest |j| so the result is order independent.
    if (a > sh.max_amplitude || (a == sh.max_amplitude && a > 0.0 && radius < sh.argmax_radius))
    {
      sh.max_amplitude = a;
      sh.argmax_radius = radius;
    }
  }
  if (!shells.empty())
  {
    shells.erase(shells.begin());  // shell 0 holds only the mean mode
  }
  return shells;
}

}  // namespace

std::vector<EnergyBudget> energy_budget(std::span<const StepRecord> samples,
                                        const PhysicalParams &params)
{
  if (samples.size() < 2)
  {
    throw std::invalid_argument("energy budget needs at least two samples");
  }
  const StepRecord &first = samples.front();
  const double theta0 = first.l2_theta * first.l2_theta;
  const double u0 = first.l2_u * first.l2_u;
  double diss_theta = 0.0, diss_u = 0.0, work = 0.0;

  std::vector<EnergyBudget> out;
  out.reserve(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n)
  {
    const StepRecord &s = samples[n];
    if (n > 0)
    {
      const StepRecord &p = samples[n - 1];
      const double h = s.t - p.t;
      if (s.has_interval)
      {
        diss_theta += s.dissipation_theta;
        diss_u += s.dissipation_u;
      }
      else
      {
        diss_theta += 0.5 * h * (p.h1_theta * p.h1_theta + s.h1_theta * s.h1_theta);
        diss_u += 0.5 * h * (p.h1_u * p.h1_u + s.h1_u * s.h1_u);
      }
      work += 0.5 * h * (p.buoyancy_work + s.buoyancy_work);
    }
    EnergyBudget b;
    b.t = s.t;
    b.theta_lhs = s.l2_theta * s.l2_theta + 2.0 * params.kappa * diss_theta;
    b.theta0_sq = theta0;
    b.residual_theta = b.theta_lhs - theta0;
    b.residual_u = s.l2_u * s.l2_u + 2.0 * params.nu * diss_u - 2.0 * work - u0;
    out.push_back(b);
  }
  return out;
}

std::vector<EnergyBudget> energy_budget(const Trajectory &trajectory,
                                        const PhysicalParams &params)
{
  return energy_budget(std::span<const StepRecord>(trajectory.steps), params);
}

GevreyEnergy gevrey_energy(const VectorField &u, const ScalarField &theta, double t)
{
  GevreyEnergy g;
  const double cap = u.grid.tau_cap();
  g.tau_used = std::min(t, cap);
  g.clamped = t > cap;
  const double nu_ = norm(u, 1.0, g.tau_used, 1.0);
  const double nt = norm(theta, 1.0, g.tau_used, 1.0);
  g.X = 1.0 + nu_ * nu_ + nt * nt;
  return g;
}

GevreyEnergy gevrey_energy(const SimulationState &state)
{
  return gevrey_energy(state.u, state.theta, state.t);
}

double gevrey_half_time(std::span<const double> times, std::span<const double> X)
{
  if (times.empty() || times.size() != X.size())
  {
    throw std::invalid_argument("gevrey_half_time needs matching, nonempty samples");
  }
  double t_half = times.front();
  for (std::size_t n = 0; n < X.size(); ++n)
  {
    if (X[n] > 2.0 * X.front())
    {
      break;
    }
    t_half = times[n];
  }
  return t_half;
}

std::vector<ShellEnvelope> shell_envelope(const VectorField &u)
{
  std::vector<const Coeffs *> comps;
  for (const Coeffs &c : u.comps)
  {
    comps.push_back(&c);
  }
  return envelope_impl(u.grid, comps);
}

std::vector<ShellEnvelope> shell_envelope(const ScalarField &theta)
{
  return envelope_impl(theta.grid, {&theta.coeffs});
}

std::vector<ShellEnvelope> shell_envelope(const VectorField &u, const ScalarField &theta)
{
  std::vector<const Coeffs *> comps;
  for (const Coeffs &c : u.comps)
  {
    comps.push_back(&c);
  }
  comps.push_back(&theta.coeffs);
  return envelope_impl(u.grid, comps);
}

std::optional<RadiusFit> fit_radius(std::span<const ShellEnvelope> shells, double s)
{
  double peak = 0.0;
  for (const ShellEnvelope &sh : shells)
  {
    peak = std::max(peak, sh.max_amplitude);
  }
  if (!(peak > 0.0))
  {
    return std::nullopt;
  }
  const double floor = kAmplitudeFloor * peak;

  std::vector<double> xs, ys;
  RadiusFit fit;
  for (const ShellEnvelope &sh : shells)
  {
    if (sh.shell < 1 || sh.max_amplitude < floor || sh.max_amplitude == 0.0)
    {
      continue;
    }
    if (xs.empty())
    {
      fit.first_shell = sh.shell;
    }
    fit.last_shell = sh.shell;
    xs.push_back(s == 1.0 ? sh.argmax_radius : std::pow(sh.argmax_radius, 1.0 / s));
    ys.push_back(std::log(sh.max_amplitude));
  }
  if (static_cast<int>(xs.size()) < kMinFitShells)
  {
    return std::nullopt;
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - slope * mx;
  fit.tau_est = std::max(0.0, -slope);
  fit.shells_used = static_cast<int>(xs.size());

  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    const double r = ys[i] - (fit.intercept + slope * xs[i]);
    ss_res += r * r;
  }
  const double scale = std::max(1.0, my * my) * n;
  if (syy <= 1e-24 * scale)
  {
    fit.quality = ss_res <= 1e-24 * scale ? 1.0 : 0.0;
  }
  else
  {
    fit.quality = 1.0 - ss_res / syy;
  }
  return fit;
}

std::optional<RadiusFit> fit_radius(const VectorField &u, double s)
{
  const auto shells = shell_envelope(u);
  return fit_radius(std::span<const ShellEnvelope>(shells), s);
}

std::optional<RadiusFit> fit_radius(const ScalarField &theta, double s)
{
  const auto shells = shell_envelope(theta);
  return fit_radius(std::span<const ShellEnvelope>(shells), s);
}

ScalarField recover_pressure(const VectorField &u, const ScalarField &theta)
{
  const GridSpec &grid = u.grid;
  const VectorField adv = convect_pseudospectral(u, u).field;
  ScalarField p = ScalarField::zeros(grid);
  const int dim = grid.dim();
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const Wavevector j = grid.wavevector(i);
    const int k2 = norm2(j);
    if (k2 == 0)
    {
      continue;
    }
    Complex div_adv(0.0, 0.0);
    for (int c = 0; c < dim; ++c)
    {
      div_adv += static_cast<double>(j[c]) * adv.comps[c][i];
    }
    p.coeffs[i] = (I * div_adv - I * static_cast<double>(j[dim - 1]) * theta.coeffs[i]) /
                  static_cast<double>(k2);
  }
  return enforce_constraints(p);
}

double helmholtz_check(const VectorField &u, const ScalarField &theta)
{
  const GridSpec &grid = u.grid;
  const int dim = grid.dim();
  VectorField w = convect_pseudospectral(u, u).field;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    w.comps[dim - 1][i] -= theta.coeffs[i];
  }
  const VectorField pw = leray_project(w);
  const ScalarField p = recover_pressure(u, theta);
  const Complex I(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const Wavevector j = grid.wavevector(i);
    double r2 = 0.0;
    for (int c = 0; c < dim; ++c)
    {
      const Complex r = (w.comps[c][i] - pw.comps[c][i]) + I * static_cast<double>(j[c]) * p.coeffs[i];
      r2 += std::norm(r);
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  return worst;
}

DiagnosticsRecord make_record(const SimulationState &state)
{
  DiagnosticsRecord r;
  r.t = state.t;
  r.l2_u = norm(state.u);
  r.l2_theta = norm(state.theta);
  r.h1_u = norm(state.u, 1.0);
  r.h1_theta = norm(state.theta, 1.0);
  const GevreyEnergy g = gevrey_energy(state);
  r.gevrey_X = g.X;
  r.tau_used = g.tau_used;
  const auto shells = shell_envelope(state.u, state.theta);
  if (const auto fit = fit_radius(std::span<const ShellEnvelope>(shells), 1.0))
  {
    r.radius_fit = fit->tau_est;
    r.radius_fit_quality = fit->quality;
  }
  else
  {
    r.radius_fit = std::numeric_limits<double>::quiet_NaN();
    r.radius_fit_quality = std::numeric_limits<double>::quiet_NaN();
  }
  r.div_max = divergence_max(state.u);
  return r;
}

}  // namespace boussinesq
