// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_TESTS_SUPPORT_HPP
#define BOUSSINESQ_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "boussinesq/fft.hpp"
#include "boussinesq/spectral.hpp"

namespace testing
{

namespace bq = boussinesq;

// Real field with random coefficients on |j_i| <= band (all if band < 0).
inline bq::ScalarField random_scalar(const bq::GridSpec &grid, std::uint64_t seed, int band = -1)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  bq::ScalarField f = bq::ScalarField::zeros(grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const bq::Wavevector j = grid.wavevector(i);
    bool keep = true;
    for (int a = 0; a < grid.dim(); ++a)
    {
      keep = keep && (band < 0 || std::abs(j[a]) <= band);
    }
    f.coeffs[i] = keep ? bq::Complex(g(rng), g(rng)) : bq::Complex(0.0, 0.0);
  }
  return bq::enforce_constraints(f);
}

inline bq::VectorField random_vector(const bq::GridSpec &grid, std::uint64_t seed, int band = -1)
{
  bq::VectorField v = bq::VectorField::zeros(grid);
  for (int c = 0; c < grid.dim(); ++c)
  {
    v.comps[c] = random_scalar(grid, seed * 31 + c, band).coeffs;
  }
  return v;
}

inline bq::VectorField random_solenoidal(const bq::GridSpec &grid, std::uint64_t seed, int band = -1)
{
  return bq::leray_project(random_vector(grid, seed, band));
}

inline double max_abs(const bq::Coeffs &c)
{
  double m = 0.0;
  for (const auto &z : c) m = std::max(m, std::abs(z));
  return m;
}

template <typename Field>
double max_abs(const Field &f)
{
  double m = 0.0;
  for (int c = 0; c < f.components(); ++c)
  {
    for (const auto &z : f.component(c))
    {
      m = std::max(m, std::abs(z));
    }
  }
  return m;
}

template <typename Field>
double max_abs_diff(const Field &a, const Field &b)
{
  double m = 0.0;
  for (int c = 0; c < a.components(); ++c)
  {
    for (std::size_t i = 0; i < a.grid.size(); ++i)
    {
      m = std::max(m, std::abs(a.component(c)[i] - b.component(c)[i]));
    }
  }
  return m;
}

template <typename Field>
bool bit_equal(const Field &a, const Field &b)
{
  if (!(a.grid == b.grid) || a.components() != b.components())
  {
    return false;
  }
  for (int c = 0; c < a.components(); ++c)
  {
    for (std::size_t i = 0; i < a.grid.size(); ++i)
    {
      const auto &x = a.component(c)[i];
      const auto &y = b.component(c)[i];
      if (std::memcmp(&x, &y, sizeof(x)) != 0)
      {
        return false;
      }
    }
  }
  return true;
}

// L^2 inner product of two real scalar functions by grid quadrature.
inline double quadrature_inner(const bq::GridSpec &grid, const bq::Coeffs &a, const bq::Coeffs &b)
{
  const auto &t = bq::SpectralTransform::for_grid(grid);
  const bq::GridValues fa = t.to_physical(a);
  const bq::GridValues fb = t.to_physical(b);
  double s = 0.0;
  for (std::size_t n = 0; n < fa.size(); ++n)
  {
    s += fa[n] * fb[n];
  }
  return s * std::pow(2.0 * bq::kPi / grid.modes(), grid.dim());
}

}  // namespace testing

#endif  // BOUSSINESQ_TESTS_SUPPORT_HPP
