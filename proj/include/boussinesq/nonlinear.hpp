// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_NONLINEAR_HPP
#define BOUSSINESQ_NONLINEAR_HPP

#include <cstddef>

#include "boussinesq/field.hpp"

namespace boussinesq
{

enum class AliasingMode
{
  dealiased_2_3,
  none,
};

/// Coefficients of u . grad v.
template <typename Field>
struct ConvectionResult
{
  Field field;
  AliasingMode aliasing_mode;
};

/// Advective term u . grad v by transform: inputs and output masked with the
/// 2/3 rule, product formed on the grid. Throws std::invalid_argument on grid
/// mismatch.
ConvectionResult<VectorField> convect_pseudospectral(const VectorField &u, const VectorField &v);
ConvectionResult<ScalarField> convect_pseudospectral(const VectorField &u, const ScalarField &v);

/// Largest grid (M^N modes) accepted by the direct convolution.
inline constexpr std::size_t kConvolutionModeLimit = 4096;

/// Direct Fourier convolution: coefficient at k is sum_{p+q=k} i (q . u_p) v_q
/// over resolved p, q, k. No mask. Exact on band-limited inputs; O(modes^2).
/// Throws std::invalid_argument above kConvolutionModeLimit or on grid mismatch.
ConvectionResult<VectorField> convect_convolution(const VectorField &u, const VectorField &v);
ConvectionResult<ScalarField> convect_convolution(const VectorField &u, const ScalarField &v);

/// Leray projection of theta e_N.
VectorField buoyancy(const ScalarField &theta);

}  // namespace boussinesq

#endif  // BOUSSINESQ_NONLINEAR_HPP
