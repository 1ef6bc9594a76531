// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_FFT_HPP
#define BOUSSINESQ_FFT_HPP

#include <vector>

#include "boussinesq/field.hpp"

namespace boussinesq
{

/// Physical-space samples on the uniform grid x_n = 2 pi n / M, row-major with
/// the last axis fastest.
using GridValues = std::vector<double>;

//
// Transforms between lexicographically ordered Fourier coefficients and grid
// samples. The forward transform carries the 1/M^N normalization so that
// to_spectral(to_physical(c)) == c and the coefficients are the Fourier-series
// coefficients themselves.
//
// Plans are cached per grid shape and shared; execution is reentrant.
//
class SpectralTransform
{
public:
  static const SpectralTransform &for_grid(const GridSpec &grid);

  ~SpectralTransform();
  SpectralTransform(const SpectralTransform &) = delete;
  SpectralTransform &operator=(const SpectralTransform &) = delete;

  /// sum_j c_j exp(i j . x_n); the imaginary part is discarded.
  GridValues to_physical(const Coeffs &coeffs) const;

  /// (1/M^N) sum_n f(x_n) exp(-i j . x_n)
  Coeffs to_spectral(const GridValues &values) const;

  const GridSpec &grid() const { return grid_; }

private:
  explicit SpectralTransform(const GridSpec &grid);

  GridSpec grid_;
  std::vector<std::size_t> fft_order_;  // lexicographic index -> FFT storage index
  void *forward_ = nullptr;
  void *backward_ = nullptr;
};

}  // namespace boussinesq

#endif  // BOUSSINESQ_FFT_HPP
