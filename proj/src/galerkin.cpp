// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "boussinesq/spectral.hpp"

namespace boussinesq
{

namespace
{

double volume_factor(int dim)
{
  return std::pow(2.0 * kPi, dim);
}

Wavevector scaled(const Wavevector &k, int sign)
{
  return {sign * k[0], sign * k[1], sign * k[2]};
}

double dot3(const std::array<double, 3> &a, const std::array<double, 3> &b)
{
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double dot3(const Wavevector &q, const std::array<double, 3> &d)
{
  return q[0] * d[0] + q[1] * d[1] + q[2] * d[2];
}

// Candidate wavevectors in the positive half, ordered by |k|^2 then lexicographically.
std::vector<Wavevector> ordered_wavevectors(const GridSpec &grid)
{
  std::vector<Wavevector> ks;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const Wavevector k = grid.wavevector(i);
    if (positive_half(k) && !grid.is_nyquist(k) && grid.conjugate_index(i) != kNoMode)
    {
      ks.push_back(k);
    }
  }
  std::stable_sort(ks.begin(), ks.end(), [](const Wavevector &a, const Wavevector &b) {
    const int na = norm2(a), nb = norm2(b);
    return na != nb ? na < nb : a < b;
  });
  return ks;
}

GalerkinBasis full_basis(const GridSpec &grid, double radius2)
{
  GalerkinBasis basis;
  basis.dim = grid.dim();
  for (const Wavevector &k : ordered_wavevectors(grid))
  {
    if (norm2(k) > radius2)
    {
      break;
    }
    const auto dirs = tangent_directions(k, grid.dim());
    for (std::size_t d = 0; d < dirs.size(); ++d)
    {
      for (Parity parity : {Parity::cosine, Parity::sine})
      {
        basis.velocity.push_back({k, parity, dirs[d], static_cast<int>(d)});
      }
    }
    for (Parity parity : {Parity::cosine, Parity::sine})
    {
      basis.scalar.push_back({k, parity, {0.0, 0.0, 0.0}, 0});
    }
  }
  return basis;
}

struct Term
{
  std::size_t element;
  int sign;
};

using ModeIndex = std::map<Wavevector, std::vector<Term>>;

ModeIndex index_terms(const std::vector<BasisElement> &elements)
{
  ModeIndex index;
  for (std::size_t e = 0; e < elements.size(); ++e)
  {
    for (int sign : {1, -1})
    {
      index[scaled(elements[e].k, sign)].push_back({e, sign});
    }
  }
  return index;
}

// Energy and its rate for the endpoint-corrected trapezoidal residual.
struct Budget
{
  double energy_u, power_u, dpower_u;
  double energy_t, power_t, dpower_t;
};

Budget budget(const GalerkinState &s, const GalerkinRates &r, const GalerkinSystem &sys,
              const PhysicalParams &params)
{
  const std::size_t mu = sys.velocity_size();
  const std::size_t mt = sys.scalar_size();
  Budget b{};
  for (std::size_t j = 0; j < mu; ++j)
  {
    double forcing = 0.0;
    for (std::size_t g = 0; g < mt; ++g)
    {
      forcing += sys.coupling(g, j) * s.eta[g];
    }
    b.energy_u += 0.5 * s.xi[j] * s.xi[j];
    b.power_u += -params.nu * sys.lambda[j] * s.xi[j] * s.xi[j] + forcing * s.xi[j];
    b.dpower_u += (-2.0 * params.nu * sys.lambda[j] * s.xi[j] + forcing) * r.dxi[j];
  }
  for (std::size_t g = 0; g < mt; ++g)
  {
    double work = 0.0;
    for (std::size_t j = 0; j < mu; ++j)
    {
      work += sys.coupling(g, j) * s.xi[j];
    }
    b.dpower_u += work * r.deta[g];
    b.energy_t += 0.5 * s.eta[g] * s.eta[g];
    b.power_t += -params.kappa * sys.tau_eig[g] * s.eta[g] * s.eta[g];
    b.dpower_t += -2.0 * params.kappa * sys.tau_eig[g] * s.eta[g] * r.deta[g];
  }
  return b;
}

GalerkinState axpy(const GalerkinState &s, double h, const GalerkinRates &r)
{
  GalerkinState out = s;
  for (std::size_t i = 0; i < out.xi.size(); ++i)
  {
    out.xi[i] += h * r.dxi[i];
  }
  for (std::size_t i = 0; i < out.eta.size(); ++i)
  {
    out.eta[i] += h * r.deta[i];
  }
  out.t += h;
  return out;
}

bool finite(const GalerkinState &s)
{
  auto ok = [](double x) { return std::isfinite(x); };
  return std::all_of(s.xi.begin(), s.xi.end(), ok) && std::all_of(s.eta.begin(), s.eta.end(), ok);
}

}  // namespace

Complex BasisElement::coefficient(int sign, int dim) const
{
  const double half = 0.5 * std::sqrt(2.0 / volume_factor(dim));
  if (parity == Parity::cosine)
  {
    return Complex(half, 0.0);
  }
  // sin(k.x) = (e^{ik.x} - e^{-ik.x}) / 2i
  return Complex(0.0, -sign * half);
}

GalerkinBasis build_basis(const GridSpec &grid, std::size_t m)
{
  GalerkinBasis basis = full_basis(grid, std::numeric_limits<double>::infinity());
  if (m > basis.velocity.size() || m > basis.scalar.size())
  {
    throw std::invalid_argument("Galerkin truncation m = " + std::to_string(m) +
                                " exceeds the admissible elements of the grid (" +
                                std::to_string(std::min(basis.velocity.size(),
                                                        basis.scalar.size())) +
                                ")");
  }
  basis.velocity.resize(m);
  basis.scalar.resize(m);
  return basis;
}

GalerkinBasis build_basis_radius(const GridSpec &grid, double radius)
{
  return full_basis(grid, radius * radius);
}

GalerkinSystem assemble_tensors(const GalerkinBasis &basis)
{
  const int dim = basis.dim;
  const double vol = volume_factor(dim);
  const std::size_t mu = basis.velocity.size();
  const std::size_t mt = basis.scalar.size();

  GalerkinSystem sys;
  sys.basis = basis;
  sys.A = Tensor3(mu, mu, mu);
  sys.B = Tensor3(mu, mt, mt);
  sys.C.assign(mt * mu, 0.0);
  for (const BasisElement &e : basis.velocity)
  {
    sys.lambda.push_back(static_cast<double>(norm2(e.k)));
  }
  for (const BasisElement &e : basis.scalar)
  {
    sys.tau_eig.push_back(static_cast<double>(norm2(e.k)));
  }

  const ModeIndex velocity_modes = index_terms(basis.velocity);
  const ModeIndex scalar_modes = index_terms(basis.scalar);
  const Complex I(0.0, 1.0);

  // A(a, b, c) = vol * sum_{p+q=r} (i q . u_a(p)) u_b(q) . conj(u_c(r))
  for (std::size_t a = 0; a < mu; ++a)
  {
    const BasisElement &ea = basis.velocity[a];
    for (std::size_t b = 0; b < mu; ++b)
    {
      const BasisElement &eb = basis.velocity[b];
      for (int sa : {1, -1})
      {
        const Wavevector p = scaled(ea.k, sa);
        for (int sb : {1, -1})
        {
          const Wavevector q = scaled(eb.k, sb);
          const double q_dot_da = dot3(q, ea.direction);
          if (q_dot_da == 0.0)
          {
            continue;
          }
          const auto hit = velocity_modes.find({p[0] + q[0], p[1] + q[1], p[2] + q[2]});
          if (hit == velocity_modes.end())
          {
            continue;
          }
          const Complex lead = I * q_dot_da * ea.coefficient(sa, dim) * eb.coefficient(sb, dim);
          for (const Term &t : hit->second)
          {
            const BasisElement &ec = basis.velocity[t.element];
            const Complex v =
                lead * std::conj(ec.coefficient(t.sign, dim)) * dot3(eb.direction, ec.direction);
            sys.A(a, b, t.element) += vol * v.real();
          }
        }
      }
    }
  }

  // B(j, b, a) = vol * sum_{p+q=r} (i q . u_j(p)) s_b(q) conj(s_a(r))
  for (std::size_t j = 0; j < mu; ++j)
  {
    const BasisElement &ej = basis.velocity[j];
    for (std::size_t b = 0; b < mt; ++b)
    {
      const BasisElement &eb = basis.scalar[b];
      for (int sj : {1, -1})
      {
        const Wavevector p = scaled(ej.k, sj);
        for (int sb : {1, -1})
        {
          const Wavevector q = scaled(eb.k, sb);
          const double q_dot_dj = dot3(q, ej.direction);
          if (q_dot_dj == 0.0)
          {
            continue;
          }
          const auto hit = scalar_modes.find({p[0] + q[0], p[1] + q[1], p[2] + q[2]});
          if (hit == scalar_modes.end())
          {
            continue;
          }
          const Complex lead = I * q_dot_dj * ej.coefficient(sj, dim) * eb.coefficient(sb, dim);
          for (const Term &t : hit->second)
          {
            const Complex v = lead * std::conj(basis.scalar[t.element].coefficient(t.sign, dim));
            sys.B(j, b, t.element) += vol * v.real();
          }
        }
      }
    }
  }

  // C(g, j) = vol * sum_k s_g(k) conj(u_j(k))_N
  for (std::size_t g = 0; g < mt; ++g)
  {
    const BasisElement &eg = basis.scalar[g];
    for (int sg : {1, -1})
    {
      const auto hit = velocity_modes.find(scaled(eg.k, sg));
      if (hit == velocity_modes.end())
      {
        continue;
      }
      for (const Term &t : hit->second)
      {
        const BasisElement &ej = basis.velocity[t.element];
        const Complex v = eg.coefficient(sg, dim) * std::conj(ej.coefficient(t.sign, dim)) *
                          ej.direction[dim - 1];
        sys.C[g * mu + t.element] += vol * v.real();
      }
    }
  }
  return sys;
}

GalerkinRates galerkin_nonlinear(const GalerkinState &state, const GalerkinSystem &sys)
{
  const std::size_t mu = sys.velocity_size();
  const std::size_t mt = sys.scalar_size();
  GalerkinRates r{std::vector<double>(mu, 0.0), std::vector<double>(mt, 0.0)};
  for (std::size_t k = 0; k < mu; ++k)
  {
    if (state.xi[k] == 0.0)
    {
      continue;
    }
    for (std::size_t l = 0; l < mu; ++l)
    {
      const double w = state.xi[k] * state.xi[l];
      if (w == 0.0)
      {
        continue;
      }
      for (std::size_t j = 0; j < mu; ++j)
      {
        r.dxi[j] -= sys.A(k, l, j) * w;
      }
    }
    for (std::size_t b = 0; b < mt; ++b)
    {
      const double w = state.xi[k] * state.eta[b];
      if (w == 0.0)
      {
        continue;
      }
      for (std::size_t a = 0; a < mt; ++a)
      {
        r.deta[a] -= sys.B(k, b, a) * w;
      }
    }
  }
  return r;
}

GalerkinRates galerkin_rhs(const GalerkinState &state, const GalerkinSystem &sys,
                           const PhysicalParams &params)
{
  if (state.xi.size() != sys.velocity_size() || state.eta.size() != sys.scalar_size())
  {
    throw std::invalid_argument("Galerkin state size does not match the system");
  }
  GalerkinRates r = galerkin_nonlinear(state, sys);
  const std::size_t mu = sys.velocity_size();
  for (std::size_t j = 0; j < mu; ++j)
  {
    r.dxi[j] -= params.nu * sys.lambda[j] * state.xi[j];
    for (std::size_t g = 0; g < sys.scalar_size(); ++g)
    {
      r.dxi[j] += sys.coupling(g, j) * state.eta[g];
    }
  }
  for (std::size_t a = 0; a < sys.scalar_size(); ++a)
  {
    r.deta[a] -= params.kappa * sys.tau_eig[a] * state.eta[a];
  }
  return r;
}

GalerkinTrajectory integrate_galerkin(const GalerkinSystem &sys, const GalerkinState &initial,
                                      const PhysicalParams &params, double t_final, double dt)
{
  if (!(dt > 0.0))
  {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(t_final >= dt))
  {
    throw std::invalid_argument("T must be at least dt");
  }
  validate(params);
  const std::int64_t steps = std::llround(t_final / dt);

  GalerkinTrajectory traj;
  GalerkinState s = initial;
  traj.states.push_back(s);
  GalerkinRates r0 = galerkin_rhs(s, sys, params);
  Budget b0 = budget(s, r0, sys, params);
  for (std::int64_t n = 0; n < steps; ++n)
  {
    const GalerkinRates &k1 = r0;
    const GalerkinRates k2 = galerkin_rhs(axpy(s, 0.5 * dt, k1), sys, params);
    const GalerkinRates k3 = galerkin_rhs(axpy(s, 0.5 * dt, k2), sys, params);
    const GalerkinRates k4 = galerkin_rhs(axpy(s, dt, k3), sys, params);
    GalerkinState next = s;
    for (std::size_t i = 0; i < next.xi.size(); ++i)
    {
      next.xi[i] += dt / 6.0 * (k1.dxi[i] + 2.0 * k2.dxi[i] + 2.0 * k3.dxi[i] + k4.dxi[i]);
    }
    for (std::size_t i = 0; i < next.eta.size(); ++i)
    {
      next.eta[i] += dt / 6.0 * (k1.deta[i] + 2.0 * k2.deta[i] + 2.0 * k3.deta[i] + k4.deta[i]);
    }
    next.t = static_cast<double>(n + 1) * dt;
    if (!finite(next))
    {
      throw std::runtime_error("Galerkin integration produced non-finite state at step " +
                               std::to_string(n + 1) + " (t = " + std::to_string(next.t) + ")");
    }

    const GalerkinRates r1 = galerkin_rhs(next, sys, params);
    const Budget b1 = budget(next, r1, sys, params);
    const double h = dt;
    traj.residual_u.push_back((b1.energy_u - b0.energy_u) -
                              (0.5 * h * (b0.power_u + b1.power_u) +
                               h * h / 12.0 * (b0.dpower_u - b1.dpower_u)));
    traj.residual_theta.push_back((b1.energy_t - b0.energy_t) -
                                  (0.5 * h * (b0.power_t + b1.power_t) +
                                   h * h / 12.0 * (b0.dpower_t - b1.dpower_t)));
    traj.states.push_back(next);
    s = std::move(next);
    r0 = r1;
    b0 = b1;
  }
  return traj;
}

GalerkinState project_state(const GalerkinBasis &basis, const VectorField &u,
                            const ScalarField &theta)
{
  const GridSpec &grid = u.grid;
  const int dim = basis.dim;
  const double vol = volume_factor(dim);
  GalerkinState s;
  for (const BasisElement &e : basis.velocity)
  {
    double acc = 0.0;
    for (int sign : {1, -1})
    {
      const std::size_t i = grid.index_of(scaled(e.k, sign));
      const Complex c = std::conj(e.coefficient(sign, dim));
      for (int comp = 0; comp < dim; ++comp)
      {
        acc += (u.comps[comp][i] * c * e.direction[comp]).real();
      }
    }
    s.xi.push_back(vol * acc);
  }
  for (const BasisElement &e : basis.scalar)
  {
    double acc = 0.0;
    for (int sign : {1, -1})
    {
      const std::size_t i = grid.index_of(scaled(e.k, sign));
      acc += (theta.coeffs[i] * std::conj(e.coefficient(sign, dim))).real();
    }
    s.eta.push_back(vol * acc);
  }
  return s;
}

VectorField reconstruct_velocity(const GalerkinBasis &basis, const std::vector<double> &xi,
                                 const GridSpec &grid)
{
  VectorField u = VectorField::zeros(grid);
  for (std::size_t n = 0; n < basis.velocity.size(); ++n)
  {
    const BasisElement &e = basis.velocity[n];
    for (int sign : {1, -1})
    {
      const std::size_t i = grid.index_of(scaled(e.k, sign));
      const Complex c = xi[n] * e.coefficient(sign, grid.dim());
      for (int comp = 0; comp < grid.dim(); ++comp)
      {
        u.comps[comp][i] += c * e.direction[comp];
      }
    }
  }
  return u;
}

ScalarField reconstruct_temperature(const GalerkinBasis &basis, const std::vector<double> &eta,
                                    const GridSpec &grid)
{
  ScalarField theta = ScalarField::zeros(grid);
  for (std::size_t n = 0; n < basis.scalar.size(); ++n)
  {
    const BasisElement &e = basis.scalar[n];
    for (int sign : {1, -1})
    {
      theta.coeffs[grid.index_of(scaled(e.k, sign))] += eta[n] * e.coefficient(sign, grid.dim());
    }
  }
  return theta;
}

VectorField velocity_element(const BasisElement &e, const GridSpec &grid)
{
  GalerkinBasis b;
  b.dim = grid.dim();
  b.velocity.push_back(e);
  return reconstruct_velocity(b, {1.0}, grid);
}

ScalarField scalar_element(const BasisElement &e, const GridSpec &grid)
{
  GalerkinBasis b;
  b.dim = grid.dim();
  b.scalar.push_back(e);
  return reconstruct_temperature(b, {1.0}, grid);
}

}  // namespace boussinesq
