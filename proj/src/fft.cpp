// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <utility>

namespace boussinesq
{

namespace
{

std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

struct FftwBuffer
{
  explicit FftwBuffer(std::size_t n)
    : data(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n)))
  {
    if (data == nullptr)
    {
      throw std::bad_alloc();
    }
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer &) = delete;
  FftwBuffer &operator=(const FftwBuffer &) = delete;

  fftw_complex *data;
};

}  // namespace

const SpectralTransform &SpectralTransform::for_grid(const GridSpec &grid)
{
  static std::map<std::pair<int, int>, std::unique_ptr<SpectralTransform>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto &slot = cache[{grid.dim(), grid.modes()}];
  if (!slot)
  {
    slot.reset(new SpectralTransform(grid));
  }
  return *slot;
}

SpectralTransform::SpectralTransform(const GridSpec &grid) : grid_(grid)
{
  const int m = grid.modes();
  fft_order_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const Wavevector j = grid.wavevector(i);
    std::size_t idx = 0;
    for (int axis = 0; axis < grid.dim(); ++axis)
    {
      idx = idx * m + static_cast<std::size_t>((j[axis] % m + m) % m);
    }
    fft_order_[i] = idx;
  }

  // Called with planner_mutex held.
  int shape[3] = {m, m, m};
  FftwBuffer scratch(grid.size());
  forward_ = fftw_plan_dft(grid.dim(), shape, scratch.data, scratch.data, FFTW_FORWARD,
                           FFTW_ESTIMATE);
  backward_ = fftw_plan_dft(grid.dim(), shape, scratch.data, scratch.data, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform()
{
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

GridValues SpectralTransform::to_physical(const Coeffs &coeffs) const
{
  const std::size_t n = grid_.size();
  FftwBuffer buf(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    buf.data[k][0] = 0.0;
    buf.data[k][1] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    buf.data[fft_order_[i]][0] = coeffs[i].real();
    buf.data[fft_order_[i]][1] = coeffs[i].imag();
  }
  fftw_execute_dft(static_cast<fftw_plan>(backward_), buf.data, buf.data);
  GridValues values(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    values[k] = buf.data[k][0];
  }
  return values;
}

Coeffs SpectralTransform::to_spectral(const GridValues &values) const
{
  const std::size_t n = grid_.size();
  FftwBuffer buf(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    buf.data[k][0] = values[k];
    buf.data[k][1] = 0.0;
  }
  fftw_execute_dft(static_cast<fftw_plan>(forward_), buf.data, buf.data);
  const double scale = 1.0 / static_cast<double>(n);
  Coeffs coeffs(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    const fftw_complex &c = buf.data[fft_order_[i]];
    coeffs[i] = Complex(c[0] * scale, c[1] * scale);
  }
  return coeffs;
}

}  // namespace boussinesq
