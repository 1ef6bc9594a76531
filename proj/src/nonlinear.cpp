// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/nonlinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "boussinesq/fft.hpp"
#include "boussinesq/spectral.hpp"

namespace boussinesq
{

namespace
{

void require_same_grid(const GridSpec &a, const GridSpec &b)
{
  if (!(a == b))
  {
    throw std::invalid_argument("convection operands live on different grids");
  }
}

template <typename Field>
Field pseudospectral_impl(const VectorField &u_in, const Field &v_in)
{
  require_same_grid(u_in.grid, v_in.grid);
  const GridSpec &grid = u_in.grid;
  const SpectralTransform &fft = SpectralTransform::for_grid(grid);
  const int dim = grid.dim();
  const std::size_t n = grid.size();

  const VectorField u = dealias(u_in);
  const Field v = dealias(v_in);

  std::vector<GridValues> u_phys;
  u_phys.reserve(dim);
  for (int c = 0; c < dim; ++c)
  {
    u_phys.push_back(fft.to_physical(u.comps[c]));
  }

  Field out = v;
  Coeffs derivative(n);
  for (int comp = 0; comp < v.components(); ++comp)
  {
    GridValues product(n, 0.0);
    for (int axis = 0; axis < dim; ++axis)
    {
      const Coeffs &vc = v.component(comp);
      for (std::size_t i = 0; i < n; ++i)
      {
        derivative[i] = Complex(0.0, grid.wavevector(i)[axis]) * vc[i];
      }
      const GridValues dv = fft.to_physical(derivative);
      const GridValues &ua = u_phys[axis];
      for (std::size_t p = 0; p < n; ++p)
      {
        product[p] += ua[p] * dv[p];
      }
    }
    out.component(comp) = fft.to_spectral(product);
  }
  return enforce_constraints(dealias(out));
}

template <typename Field>
Field convolution_impl(const VectorField &u, const Field &v)
{
  require_same_grid(u.grid, v.grid);
  const GridSpec &grid = u.grid;
  if (grid.size() > kConvolutionModeLimit)
  {
    throw std::invalid_argument("direct convolution limited to " +
                                std::to_string(kConvolutionModeLimit) + " modes");
  }
  const int dim = grid.dim();
  const std::size_t n = grid.size();

  auto nonzero = [n](const auto &field) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
    {
      for (int c = 0; c < field.components(); ++c)
      {
        if (field.component(c)[i] != Complex(0.0, 0.0))
        {
          idx.push_back(i);
          break;
        }
      }
    }
    return idx;
  };
  const std::vector<std::size_t> u_modes = nonzero(u);
  const std::vector<std::size_t> v_modes = nonzero(v);

  Field out = v;
  for (int c = 0; c < out.components(); ++c)
  {
    std::fill(out.component(c).begin(), out.component(c).end(), Complex(0.0, 0.0));
  }

  for (std::size_t ip : u_modes)
  {
    const Wavevector p = grid.wavevector(ip);
    for (std::size_t iq : v_modes)
    {
      const Wavevector q = grid.wavevector(iq);
      const Wavevector k{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
      const std::size_t ik = grid.index_of(k);
      if (ik == kNoMode)
      {
        continue;
      }
      Complex q_dot_u(0.0, 0.0);
      for (int a = 0; a < dim; ++a)
      {
        q_dot_u += static_cast<double>(q[a]) * u.comps[a][ip];
      }
      const Complex factor = Complex(0.0, 1.0) * q_dot_u;
      for (int c = 0; c < v.components(); ++c)
      {
        out.component(c)[ik] += factor * v.component(c)[iq];
      }
    }
  }
  return enforce_constraints(out);
}

}  // namespace

ConvectionResult<VectorField> convect_pseudospectral(const VectorField &u, const VectorField &v)
{
  return {pseudospectral_impl(u, v), AliasingMode::dealiased_2_3};
}

ConvectionResult<ScalarField> convect_pseudospectral(const VectorField &u, const ScalarField &v)
{
  return {pseudospectral_impl(u, v), AliasingMode::dealiased_2_3};
}

ConvectionResult<VectorField> convect_convolution(const VectorField &u, const VectorField &v)
{
  return {convolution_impl(u, v), AliasingMode::none};
}

ConvectionResult<ScalarField> convect_convolution(const VectorField &u, const ScalarField &v)
{
  return {convolution_impl(u, v), AliasingMode::none};
}

VectorField buoyancy(const ScalarField &theta)
{
  VectorField f = VectorField::zeros(theta.grid);
  f.comps[theta.grid.dim() - 1] = theta.coeffs;
  return leray_project(f);
}

}  // namespace boussinesq
