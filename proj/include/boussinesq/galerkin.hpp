// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_GALERKIN_HPP
#define BOUSSINESQ_GALERKIN_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "boussinesq/field.hpp"

namespace boussinesq
{

//
// Finite Galerkin system for the projected Boussinesq equations in a real
// orthonormal eigenbasis of the Stokes operator (velocity) and of -Laplacian
// (temperature). Each element is sqrt(2/(2 pi)^N) cos(k.x) or sin(k.x), times a
// unit direction orthogonal to k for velocity elements, with k in the positive
// half-lattice. The state vectors xi and eta are therefore real.
//

enum class Parity
{
  cosine,
  sine,
};

struct BasisElement
{
  Wavevector k{0, 0, 0};
  Parity parity = Parity::cosine;
  // Unit direction orthogonal to k; zero for scalar elements.
  std::array<double, 3> direction{0.0, 0.0, 0.0};
  // Position of `direction` among tangent_directions(k).
  int direction_slot = 0;

  /// Fourier coefficient multiplying exp(i k.x) (sign = +1) or exp(-i k.x) (sign = -1).
  Complex coefficient(int sign, int dim) const;
};

struct GalerkinBasis
{
  int dim = 0;
  std::vector<BasisElement> velocity;
  std::vector<BasisElement> scalar;
};

/// First m velocity and m scalar elements, ordered by |k|^2, then k
/// lexicographically, then direction, then cosine before sine. Only resolved,
/// non-Nyquist wavevectors are used. Throws std::invalid_argument when the grid
/// admits fewer than m elements of either kind.
GalerkinBasis build_basis(const GridSpec &grid, std::size_t m);

/// All elements with 0 < |k| <= radius.
GalerkinBasis build_basis_radius(const GridSpec &grid, double radius);

/// Dense rank-3 tensor of shape (n0, n1, n2).
class Tensor3
{
public:
  Tensor3() = default;
  Tensor3(std::size_t n0, std::size_t n1, std::size_t n2)
    : n0_(n0), n1_(n1), n2_(n2), data_(n0 * n1 * n2, 0.0)
  {
  }

  double &operator()(std::size_t a, std::size_t b, std::size_t c)
  {
    return data_[(a * n1_ + b) * n2_ + c];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const
  {
    return data_[(a * n1_ + b) * n2_ + c];
  }
  std::size_t extent(int axis) const { return axis == 0 ? n0_ : axis == 1 ? n1_ : n2_; }

private:
  std::size_t n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<double> data_;
};

struct GalerkinSystem
{
  GalerkinBasis basis;
  Tensor3 A;                    // A(k, l, j) = (E_k . grad E_l, E_j)
  Tensor3 B;                    // B(j, b, a) = (E_j . grad e_b, e_a)
  std::vector<double> C;        // C[g * m_u + j] = (e_g e_N, E_j)
  std::vector<double> lambda;   // Stokes eigenvalues |k|^2
  std::vector<double> tau_eig;  // -Laplacian eigenvalues |k|^2

  std::size_t velocity_size() const { return basis.velocity.size(); }
  std::size_t scalar_size() const { return basis.scalar.size(); }
  double coupling(std::size_t gamma, std::size_t j) const { return C[gamma * velocity_size() + j]; }
};

/// Tensor entries by exact mode matching: a triple product of exponentials
/// survives only when the wavevectors cancel.
GalerkinSystem assemble_tensors(const GalerkinBasis &basis);

struct GalerkinState
{
  std::vector<double> xi;
  std::vector<double> eta;
  double t = 0.0;
};

struct GalerkinRates
{
  std::vector<double> dxi;
  std::vector<double> deta;
};

/// dxi_j  = -nu lambda_j xi_j - sum A(k,l,j) xi_k xi_l + sum C(g,j) eta_g
/// deta_a = -kappa tau_a eta_a - sum B(j,b,a) xi_j eta_b
GalerkinRates galerkin_rhs(const GalerkinState &state, const GalerkinSystem &sys,
                           const PhysicalParams &params);

/// Only the quadratic terms of galerkin_rhs.
GalerkinRates galerkin_nonlinear(const GalerkinState &state, const GalerkinSystem &sys);

struct GalerkinTrajectory
{
  std::vector<GalerkinState> states;
  // Per-step residuals of the energy identities, one per step:
  //   1/2 d/dt |xi|^2 + nu sum lambda xi^2 - sum C eta xi = 0
  //   1/2 d/dt |eta|^2 + kappa sum tau eta^2 = 0
  // integrated over the step with the endpoint-corrected trapezoidal rule.
  std::vector<double> residual_u;
  std::vector<double> residual_theta;
};

/// Classical RK4 with fixed dt, sampled every step. Throws std::invalid_argument
/// for bad dt/T and std::runtime_error on non-finite states.
GalerkinTrajectory integrate_galerkin(const GalerkinSystem &sys, const GalerkinState &initial,
                                      const PhysicalParams &params, double t_final, double dt);

/// xi_j = (u, E_j), eta_a = (theta, e_a).
GalerkinState project_state(const GalerkinBasis &basis, const VectorField &u,
                            const ScalarField &theta);

VectorField reconstruct_velocity(const GalerkinBasis &basis, const std::vector<double> &xi,
                                 const GridSpec &grid);
ScalarField reconstruct_temperature(const GalerkinBasis &basis, const std::vector<double> &eta,
                                    const GridSpec &grid);

/// Velocity field of a single basis element.
VectorField velocity_element(const BasisElement &e, const GridSpec &grid);
ScalarField scalar_element(const BasisElement &e, const GridSpec &grid);

}  // namespace boussinesq

#endif  // BOUSSINESQ_GALERKIN_HPP
