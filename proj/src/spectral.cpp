// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace boussinesq
{

namespace
{

double volume_factor(int dim)
{
  return std::pow(2.0 * kPi, dim);
}

double magnitude(const Wavevector &j)
{
  return std::sqrt(static_cast<double>(norm2(j)));
}

template <typename Field, typename Fn>
Field map_modes(const Field &f, Fn &&multiplier)
{
  Field out = f;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
  {
    const double w = multiplier(f.grid.wavevector(i));
    for (int c = 0; c < f.components(); ++c)
    {
      out.component(c)[i] *= w;
    }
  }
  return out;
}

template <typename Field>
Field zygmund_impl(const Field &f, double r)
{
  if (r == 0.0)
  {
    return f;
  }
  return map_modes(f, [r](const Wavevector &j) {
    const int k2 = norm2(j);
    if (k2 == 0)
    {
      return 0.0;
    }
    if (r == 2.0)
    {
      return static_cast<double>(k2);
    }
    return std::pow(static_cast<double>(k2), 0.5 * r);
  });
}

double gevrey_exponent(const Wavevector &j, double s)
{
  const double k = magnitude(j);
  return s == 1.0 ? k : std::pow(k, 1.0 / s);
}

void check_tau(const GridSpec &grid, double tau)
{
  if (tau < 0.0)
  {
    throw std::domain_error("Gevrey radius must be non-negative");
  }
  if (tau > grid.tau_cap())
  {
    throw std::domain_error("Gevrey radius " + std::to_string(tau) + " exceeds tau_cap " +
                            std::to_string(grid.tau_cap()) + " for this grid");
  }
}

template <typename Field>
Field gevrey_impl(const Field &f, const GevreyParams &g)
{
  check_tau(f.grid, g.tau);
  if (g.tau == 0.0)
  {
    return f;
  }
  return map_modes(f, [&g](const Wavevector &j) {
    if (norm2(j) == 0)
    {
      return 1.0;
    }
    return std::exp(g.tau * gevrey_exponent(j, g.s));
  });
}

template <typename Field>
double norm_impl(const Field &f, double r, double tau, double s)
{
  check_tau(f.grid, tau);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
  {
    double a2 = 0.0;
    for (int c = 0; c < f.components(); ++c)
    {
      a2 += std::norm(f.component(c)[i]);
    }
    if (a2 == 0.0)
    {
      continue;
    }
    const Wavevector j = f.grid.wavevector(i);
    const int k2 = norm2(j);
    double weight = 1.0;
    if (r != 0.0)
    {
      weight = k2 == 0 ? 0.0 : std::pow(static_cast<double>(k2), r);
    }
    if (tau != 0.0 && k2 != 0)
    {
      weight *= std::exp(2.0 * tau * gevrey_exponent(j, s));
    }
    sum += weight * a2;
  }
  return std::sqrt(volume_factor(f.grid.dim()) * sum);
}

template <typename Field>
double inner_impl(const Field &f, const Field &g)
{
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c)
  {
    const Coeffs &a = f.component(c);
    const Coeffs &b = g.component(c);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
  }
  return volume_factor(f.grid.dim()) * sum;
}

template <typename Field>
double max_amplitude_impl(const Field &f)
{
  double best = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
  {
    double a2 = 0.0;
    for (int c = 0; c < f.components(); ++c)
    {
      a2 += std::norm(f.component(c)[i]);
    }
    best = std::max(best, a2);
  }
  return std::sqrt(best);
}

template <typename Field>
double reality_defect_impl(const Field &f)
{
  double worst = 0.0;
  for (int c = 0; c < f.components(); ++c)
  {
    const Coeffs &a = f.component(c);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      const std::size_t partner = f.grid.conjugate_index(i);
      const double d =
          (partner == kNoMode || i == f.grid.zero_index()) ? std::abs(a[i])
                                                          : std::abs(a[i] - std::conj(a[partner]));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

template <typename Field>
Field enforce_impl(const Field &f)
{
  Field out = f;
  const std::size_t zero = f.grid.zero_index();
  for (int c = 0; c < f.components(); ++c)
  {
    const Coeffs &src = f.component(c);
    Coeffs &dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i)
    {
      const std::size_t partner = f.grid.conjugate_index(i);
      if (partner == kNoMode || i == zero)
      {
        dst[i] = Complex(0.0, 0.0);
      }
      else
      {
        dst[i] = (src[i] + std::conj(src[partner])) * 0.5;
      }
    }
  }
  return out;
}

template <typename Field>
Field dealias_impl(const Field &f)
{
  Field out = f;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
  {
    if (!f.grid.in_dealias_mask(f.grid.wavevector(i)))
    {
      for (int c = 0; c < f.components(); ++c)
      {
        out.component(c)[i] = Complex(0.0, 0.0);
      }
    }
  }
  return out;
}

template <typename Field>
Field truncate_impl(const Field &f, double radius)
{
  const double r2 = radius * radius;
  Field out = f;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
  {
    if (norm2(f.grid.wavevector(i)) > r2)
    {
      for (int c = 0; c < f.components(); ++c)
      {
        out.component(c)[i] = Complex(0.0, 0.0);
      }
    }
  }
  return out;
}

// Platform-independent uniform draw in [0, 1).
double uniform01(std::mt19937_64 &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

VectorField leray_project(const VectorField &u)
{
  VectorField out = u;
  const int dim = u.grid.dim();
  for (std::size_t i = 0; i < u.grid.size(); ++i)
  {
    const Wavevector j = u.grid.wavevector(i);
    const int k2 = norm2(j);
    if (k2 == 0)
    {
      for (int c = 0; c < dim; ++c)
      {
        out.comps[c][i] = Complex(0.0, 0.0);
      }
      continue;
    }
    Complex dot(0.0, 0.0);
    for (int c = 0; c < dim; ++c)
    {
      dot += static_cast<double>(j[c]) * u.comps[c][i];
    }
    const Complex scaled = dot / static_cast<double>(k2);
    for (int c = 0; c < dim; ++c)
    {
      out.comps[c][i] = u.comps[c][i] - static_cast<double>(j[c]) * scaled;
    }
  }
  return out;
}

ScalarField apply_zygmund(const ScalarField &f, double r)
{
  return zygmund_impl(f, r);
}
VectorField apply_zygmund(const VectorField &f, double r)
{
  return zygmund_impl(f, r);
}

ScalarField apply_gevrey(const ScalarField &f, const GevreyParams &g)
{
  return gevrey_impl(f, g);
}
VectorField apply_gevrey(const VectorField &f, const GevreyParams &g)
{
  return gevrey_impl(f, g);
}

double norm(const ScalarField &f, double r, double tau, double s)
{
  return norm_impl(f, r, tau, s);
}
double norm(const VectorField &f, double r, double tau, double s)
{
  return norm_impl(f, r, tau, s);
}

double inner(const ScalarField &f, const ScalarField &g)
{
  return inner_impl(f, g);
}
double inner(const VectorField &f, const VectorField &g)
{
  return inner_impl(f, g);
}

double divergence_max(const VectorField &u)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < u.grid.size(); ++i)
  {
    const Wavevector j = u.grid.wavevector(i);
    Complex dot(0.0, 0.0);
    for (int c = 0; c < u.grid.dim(); ++c)
    {
      dot += static_cast<double>(j[c]) * u.comps[c][i];
    }
    worst = std::max(worst, std::abs(dot));
  }
  return worst;
}

double max_amplitude(const ScalarField &f)
{
  return max_amplitude_impl(f);
}
double max_amplitude(const VectorField &f)
{
  return max_amplitude_impl(f);
}

double reality_defect(const ScalarField &f)
{
  return reality_defect_impl(f);
}
double reality_defect(const VectorField &f)
{
  return reality_defect_impl(f);
}

ScalarField enforce_constraints(const ScalarField &f)
{
  return enforce_impl(f);
}
VectorField enforce_constraints(const VectorField &f)
{
  return enforce_impl(f);
}

ScalarField dealias(const ScalarField &f)
{
  return dealias_impl(f);
}
VectorField dealias(const VectorField &f)
{
  return dealias_impl(f);
}

ScalarField truncate_radius(const ScalarField &f, double radius)
{
  return truncate_impl(f, radius);
}
VectorField truncate_radius(const VectorField &f, double radius)
{
  return truncate_impl(f, radius);
}

std::vector<std::array<double, 3>> tangent_directions(const Wavevector &j, int dim)
{
  const double k2 = static_cast<double>(norm2(j));
  std::vector<std::array<double, 3>> basis;
  for (int l = 0; l < dim && static_cast<int>(basis.size()) < dim - 1; ++l)
  {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    for (int c = 0; c < dim; ++c)
    {
      v[c] = (c == l ? 1.0 : 0.0) - j[l] * j[c] / k2;
    }
    for (const auto &b : basis)
    {
      const double d = v[0] * b[0] + v[1] * b[1] + v[2] * b[2];
      for (int c = 0; c < 3; ++c)
      {
        v[c] -= d * b[c];
      }
    }
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n < 1e-12)
    {
      continue;
    }
    for (double &x : v)
    {
      x /= n;
    }
    basis.push_back(v);
  }
  return basis;
}

bool positive_half(const Wavevector &j)
{
  for (int c : j)
  {
    if (c != 0)
    {
      return c > 0;
    }
  }
  return false;
}

std::optional<InitialKind> parse_initial_kind(std::string_view name)
{
  if (name == "taylor_green") return InitialKind::taylor_green;
  if (name == "single_mode_theta") return InitialKind::single_mode_theta;
  if (name == "rough_h1") return InitialKind::rough_h1;
  if (name == "zero") return InitialKind::zero;
  return std::nullopt;
}

std::string_view to_string(InitialKind kind)
{
  switch (kind)
  {
    case InitialKind::taylor_green: return "taylor_green";
    case InitialKind::single_mode_theta: return "single_mode_theta";
    case InitialKind::rough_h1: return "rough_h1";
    case InitialKind::zero: return "zero";
  }
  return "unknown";
}

double default_sobolev_exponent(int dim)
{
  return dim == 2 ? 2.6 : 3.1;
}

std::pair<VectorField, ScalarField> synthesize_initial(InitialKind kind, const GridSpec &grid,
                                                       std::uint64_t seed,
                                                       std::optional<double> sobolev_exponent)
{
  VectorField u = VectorField::zeros(grid);
  ScalarField theta = ScalarField::zeros(grid);
  const int dim = grid.dim();

  switch (kind)
  {
    case InitialKind::zero:
      break;

    case InitialKind::taylor_green:
      // u = (cos x1 sin x2, -sin x1 cos x2, 0)
      for (int s1 : {-1, 1})
      {
        for (int s2 : {-1, 1})
        {
          const std::size_t i = grid.index_of({s1, s2, 0});
          u.comps[0][i] = Complex(0.0, -0.25 * s2);
          u.comps[1][i] = Complex(0.0, 0.25 * s1);
        }
      }
      break;

    case InitialKind::single_mode_theta:
    {
      Wavevector e{0, 0, 0};
      e[dim - 1] = 1;
      theta.at(e) = 0.5;
      e[dim - 1] = -1;
      theta.at(e) = 0.5;
      break;
    }

    case InitialKind::rough_h1:
    {
      const double p = sobolev_exponent.value_or(default_sobolev_exponent(dim));
      if (!(p > 0.5 * dim + 1.0))
      {
        throw std::invalid_argument("rough_h1 exponent p = " + std::to_string(p) +
                                    " must exceed dim/2 + 1 for finite H^1 norm");
      }
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < grid.size(); ++i)
      {
        const Wavevector j = grid.wavevector(i);
        if (!positive_half(j) || !grid.in_dealias_mask(j))
        {
          continue;
        }
        const double amp = std::pow(1.0 + std::sqrt(static_cast<double>(norm2(j))), -p);
        const auto dirs = tangent_directions(j, dim);
        std::vector<Complex> weights;
        if (dim == 2)
        {
          weights.push_back(std::polar(1.0, 2.0 * kPi * uniform01(rng)));
        }
        else
        {
          const double psi = 0.5 * kPi * uniform01(rng);
          weights.push_back(std::polar(std::cos(psi), 2.0 * kPi * uniform01(rng)));
          weights.push_back(std::polar(std::sin(psi), 2.0 * kPi * uniform01(rng)));
        }
        const std::size_t partner = grid.conjugate_index(i);
        for (int c = 0; c < dim; ++c)
        {
          Complex v(0.0, 0.0);
          for (std::size_t d = 0; d < dirs.size(); ++d)
          {
            v += weights[d] * dirs[d][c];
          }
          u.comps[c][i] = amp * v;
          u.comps[c][partner] = std::conj(amp * v);
        }
      }
      for (std::size_t i = 0; i < grid.size(); ++i)
      {
        const Wavevector j = grid.wavevector(i);
        if (!positive_half(j) || !grid.in_dealias_mask(j))
        {
          continue;
        }
        const double amp = std::pow(1.0 + std::sqrt(static_cast<double>(norm2(j))), -p);
        const Complex value = std::polar(amp, 2.0 * kPi * uniform01(rng));
        theta.coeffs[i] = value;
        theta.coeffs[grid.conjugate_index(i)] = std::conj(value);
      }
      u = leray_project(enforce_constraints(u));
      theta = enforce_constraints(theta);
      break;
    }
  }
  return {u, theta};
}

}  // namespace boussinesq
