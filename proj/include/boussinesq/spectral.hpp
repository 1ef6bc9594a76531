// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_SPECTRAL_HPP
#define BOUSSINESQ_SPECTRAL_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "boussinesq/field.hpp"

namespace boussinesq
{

// Fourier-side operators on mean-zero periodic fields. All functions are pure.

/// Per mode j != 0: u_j <- u_j - (j . u_j) j / |j|^2.
VectorField leray_project(const VectorField &u);

/// Multiplies the coefficient at j by |j|^r. r = 2 realizes -Laplacian.
ScalarField apply_zygmund(const ScalarField &f, double r);
VectorField apply_zygmund(const VectorField &f, double r);

/// Multiplies the coefficient at j by exp(tau |j|^{1/s}); g.r is ignored.
/// Throws std::domain_error when g.tau exceeds the grid's tau_cap.
ScalarField apply_gevrey(const ScalarField &f, const GevreyParams &g);
VectorField apply_gevrey(const VectorField &f, const GevreyParams &g);

/// || Lambda^r exp(tau Lambda^{1/s}) f ||_{L^2}, including the (2 pi)^N volume factor.
double norm(const ScalarField &f, double r = 0.0, double tau = 0.0, double s = 1.0);
double norm(const VectorField &f, double r = 0.0, double tau = 0.0, double s = 1.0);

/// Real L^2 inner product (2 pi)^N Re sum_j f_j . conj(g_j).
double inner(const ScalarField &f, const ScalarField &g);
double inner(const VectorField &f, const VectorField &g);

/// max_j |j . u_j|
double divergence_max(const VectorField &u);

/// max_j |f_j| (Euclidean over components for vector fields).
double max_amplitude(const ScalarField &f);
double max_amplitude(const VectorField &f);

/// max_j |f_j - conj(f_{-j})| over modes with a resolved partner, plus |f_0|
/// and any Nyquist amplitude. Zero for fields satisfying the reality and
/// zero-mean constraints.
double reality_defect(const ScalarField &f);
double reality_defect(const VectorField &f);

/// Zeroes the mean and Nyquist modes and symmetrizes f_j <- (f_j + conj(f_{-j}))/2.
/// Idempotent bit-for-bit.
ScalarField enforce_constraints(const ScalarField &f);
VectorField enforce_constraints(const VectorField &f);

/// Zeroes modes outside the 2/3-rule box.
ScalarField dealias(const ScalarField &f);
VectorField dealias(const VectorField &f);

/// Zeroes modes with |j| > radius.
ScalarField truncate_radius(const ScalarField &f, double radius);
VectorField truncate_radius(const VectorField &f, double radius);

/// Orthonormal real directions spanning the plane orthogonal to j (j != 0).
/// Obtained by Gram-Schmidt over e_l - j_l j / |j|^2 for l ascending, so 2D
/// yields one direction and 3D yields two.
std::vector<std::array<double, 3>> tangent_directions(const Wavevector &j, int dim);

/// True when j is in the "positive half": its first nonzero component is > 0.
bool positive_half(const Wavevector &j);

enum class InitialKind
{
  taylor_green,
  single_mode_theta,
  rough_h1,
  zero,
};

std::optional<InitialKind> parse_initial_kind(std::string_view name);
std::string_view to_string(InitialKind kind);

/// Default decay exponent for rough_h1 data: 2.6 in 2D, 3.1 in 3D.
double default_sobolev_exponent(int dim);

/// Initial velocity and temperature.
///
/// rough_h1 draws |u_j| = |theta_j| = (1 + |j|)^{-p} with uniformly random
/// phases on the dealiased modes; the velocity direction is a random unit
/// combination of tangent_directions(j), so the data are divergence free
/// before projection. Throws std::invalid_argument for p <= dim/2 + 1.
std::pair<VectorField, ScalarField> synthesize_initial(InitialKind kind, const GridSpec &grid,
                                                       std::uint64_t seed,
                                                       std::optional<double> sobolev_exponent = {});

}  // namespace boussinesq

#endif  // BOUSSINESQ_SPECTRAL_HPP
