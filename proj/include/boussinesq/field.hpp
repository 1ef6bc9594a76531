// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_FIELD_HPP
#define BOUSSINESQ_FIELD_HPP

#include <complex>
#include <vector>

#include "boussinesq/grid.hpp"

namespace boussinesq
{

using Complex = std::complex<double>;
using Coeffs = std::vector<Complex>;

/// Fourier coefficients of a real scalar field (temperature or pressure).
struct ScalarField
{
  GridSpec grid;
  Coeffs coeffs;

  static ScalarField zeros(const GridSpec &grid) { return {grid, Coeffs(grid.size())}; }

  Complex &operator[](std::size_t i) { return coeffs[i]; }
  const Complex &operator[](std::size_t i) const { return coeffs[i]; }
  Complex &at(const Wavevector &j) { return coeffs.at(grid.index_of(j)); }
  const Complex &at(const Wavevector &j) const { return coeffs.at(grid.index_of(j)); }

  int components() const { return 1; }
  Coeffs &component(int) { return coeffs; }
  const Coeffs &component(int) const { return coeffs; }
};

/// Fourier coefficients of a real vector field, one coefficient array per axis.
struct VectorField
{
  GridSpec grid;
  std::vector<Coeffs> comps;

  static VectorField zeros(const GridSpec &grid)
  {
    return {grid, std::vector<Coeffs>(grid.dim(), Coeffs(grid.size()))};
  }

  int components() const { return static_cast<int>(comps.size()); }
  Coeffs &component(int c) { return comps[c]; }
  const Coeffs &component(int c) const { return comps[c]; }
};

struct PhysicalParams
{
  double nu = 1.0;
  double kappa = 1.0;
};

/// Weight |j|^r exp(tau |j|^{1/s}). s = 1 is the analytic class.
struct GevreyParams
{
  double r = 0.0;
  double tau = 0.0;
  double s = 1.0;
};

/// Throws std::invalid_argument when nu or kappa is not strictly positive.
void validate(const PhysicalParams &params);

}  // namespace boussinesq

#endif  // BOUSSINESQ_FIELD_HPP
