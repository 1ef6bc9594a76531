// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_GRID_HPP
#define BOUSSINESQ_GRID_HPP

#include <array>
#include <cstddef>
#include <limits>

namespace boussinesq
{

/// Integer wavevector. Components beyond the grid dimension are zero.
using Wavevector = std::array<int, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr std::size_t kNoMode = std::numeric_limits<std::size_t>::max();

//
// Fourier grid on the torus [0, 2pi]^dim with `modes` resolved wavenumbers per
// axis, j_i in {-M/2+1, ..., M/2}. Modes are stored in lexicographic order over
// (j_1, ..., j_dim) with the last axis varying fastest.
//
// The Nyquist wavenumber M/2 has no resolved conjugate partner; fields carry it
// as zero (see enforce_constraints).
//
class GridSpec
{
public:
  GridSpec() = default;

  int dim() const { return dim_; }
  int modes() const { return modes_; }
  std::size_t size() const { return size_; }

  // Largest retained |j_i| under the 2/3 rule: floor((2/3) * (M/2)).
  int dealias_cutoff() const { return cutoff_; }

  int min_wavenumber() const { return -modes_ / 2 + 1; }
  int max_wavenumber() const { return modes_ / 2; }

  Wavevector wavevector(std::size_t index) const
  {
    Wavevector j{0, 0, 0};
    for (int axis = dim_ - 1; axis >= 0; --axis)
    {
      j[axis] = static_cast<int>(index % modes_) + min_wavenumber();
      index /= modes_;
    }
    return j;
  }

  bool resolved(const Wavevector &j) const
  {
    for (int axis = 0; axis < dim_; ++axis)
    {
      if (j[axis] < min_wavenumber() || j[axis] > max_wavenumber())
      {
        return false;
      }
    }
    return true;
  }

  // Flat index of j, or kNoMode when j lies outside the resolved box.
  std::size_t index_of(const Wavevector &j) const
  {
    if (!resolved(j))
    {
      return kNoMode;
    }
    std::size_t index = 0;
    for (int axis = 0; axis < dim_; ++axis)
    {
      index = index * modes_ + static_cast<std::size_t>(j[axis] - min_wavenumber());
    }
    return index;
  }

  std::size_t zero_index() const { return index_of(Wavevector{0, 0, 0}); }

  bool is_nyquist(const Wavevector &j) const
  {
    for (int axis = 0; axis < dim_; ++axis)
    {
      if (j[axis] == max_wavenumber())
      {
        return true;
      }
    }
    return false;
  }

  // Index of -j; kNoMode for Nyquist modes.
  std::size_t conjugate_index(std::size_t index) const
  {
    Wavevector j = wavevector(index);
    for (int axis = 0; axis < dim_; ++axis)
    {
      j[axis] = -j[axis];
    }
    return index_of(j);
  }

  bool in_dealias_mask(const Wavevector &j) const
  {
    for (int axis = 0; axis < dim_; ++axis)
    {
      if (j[axis] > cutoff_ || j[axis] < -cutoff_)
      {
        return false;
      }
    }
    return true;
  }

  // Largest |j| on the grid, attained at the corner (M/2, ..., M/2).
  double k_max() const;

  // Largest admissible Gevrey radius: exp(tau * k_max) <= ~1e12.
  double tau_cap() const;

  friend bool operator==(const GridSpec &a, const GridSpec &b)
  {
    return a.dim_ == b.dim_ && a.modes_ == b.modes_;
  }

private:
  friend GridSpec make_grid(int dim, int modes);

  int dim_ = 0;
  int modes_ = 0;
  int cutoff_ = 0;
  std::size_t size_ = 0;
};

/// Throws std::invalid_argument unless dim is 2 or 3 and modes is even and >= 4.
GridSpec make_grid(int dim, int modes);

inline int norm2(const Wavevector &j)
{
  return j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
}

}  // namespace boussinesq

#endif  // BOUSSINESQ_GRID_HPP
