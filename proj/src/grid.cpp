// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "boussinesq/field.hpp"

namespace boussinesq
{

GridSpec make_grid(int dim, int modes)
{
  if (dim != 2 && dim != 3)
  {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (modes < 4 || modes % 2 != 0)
  {
    throw std::invalid_argument("modes per dimension must be even and >= 4, got " +
                                std::to_string(modes));
  }
  GridSpec grid;
  grid.dim_ = dim;
  grid.modes_ = modes;
  grid.cutoff_ = (2 * (modes / 2)) / 3;
  grid.size_ = 1;
  for (int axis = 0; axis < dim; ++axis)
  {
    grid.size_ *= static_cast<std::size_t>(modes);
  }
  return grid;
}

double GridSpec::k_max() const
{
  return 0.5 * modes_ * std::sqrt(static_cast<double>(dim_));
}

double GridSpec::tau_cap() const
{
  return 27.6 / k_max();
}

void validate(const PhysicalParams &params)
{
  if (!(params.nu > 0.0))
  {
    throw std::invalid_argument("nu must be positive");
  }
  if (!(params.kappa > 0.0))
  {
    throw std::invalid_argument("kappa must be positive");
  }
}

}  // namespace boussinesq
