// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BOUSSINESQ_IO_HPP
#define BOUSSINESQ_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boussinesq/diagnostics.hpp"
#include "boussinesq/spectral.hpp"
#include "boussinesq/stepper.hpp"

namespace boussinesq
{

// ---------------------------------------------------------------------------
// Run configuration
//
// Line-oriented `key = value`; `#` starts a comment. Keys:
//
//   dim, modes, t_final       required
//   nu = 1, kappa = 1, dt = 1e-3, snapshot_every = 10, scheme = if_rk4,
//   initial_kind = rough_h1, seed = 0, sobolev_exponent = 2.6 (2D) / 3.1 (3D),
//   output_dir = out, adaptive = false, cfl_safety = 0.5,
//   truncation_radius = 0 (off), galerkin_radius = 3 (oracle-check only)

struct RunConfig
{
  int dim = 0;
  int modes = 0;
  double nu = 1.0;
  double kappa = 1.0;
  double dt = 1e-3;
  double t_final = 0.0;
  std::int64_t snapshot_every = 10;
  InitialKind initial_kind = InitialKind::rough_h1;
  std::uint64_t seed = 0;
  std::optional<double> sobolev_exponent;
  Scheme scheme = Scheme::if_rk4;
  std::string output_dir = "out";
  bool adaptive = false;
  double cfl_safety = 0.5;
  double truncation_radius = 0.0;
  double galerkin_radius = 3.0;

  GridSpec grid() const { return make_grid(dim, modes); }
  PhysicalParams physical() const { return {nu, kappa}; }
  StepperConfig stepper() const;
  RunControl control() const;
};

/// Parse errors carry the offending line (0 when not line specific) and key.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string &what, int line, std::string key)
    : std::runtime_error(what), line_(line), key_(std::move(key))
  {
  }
  int line() const { return line_; }
  const std::string &key() const { return key_; }

private:
  int line_;
  std::string key_;
};

RunConfig parse_config_text(const std::string &text);
RunConfig parse_config(const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Snapshots
//
// Little-endian layout:
//   "BOUSSNAP" | u32 version | u32 dim | u32 modes | f64 t | f64 nu | f64 kappa
//   then dim velocity components and the temperature, each M^dim (f64 re, f64 im)
//   pairs in lexicographic mode order.

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 8 + 4 * 3 + 8 * 3;

class SnapshotError : public std::runtime_error
{
public:
  enum class Kind
  {
    io,
    bad_magic,
    version_mismatch,
    bad_header,
    truncated,
  };
  SnapshotError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct Snapshot
{
  SimulationState state;
  PhysicalParams params;
};

std::vector<std::uint8_t> encode_snapshot(const SimulationState &state, const PhysicalParams &params);
Snapshot decode_snapshot(const std::vector<std::uint8_t> &bytes);

/// Written to a temporary file and renamed into place.
void write_snapshot(const SimulationState &state, const PhysicalParams &params,
                    const std::filesystem::path &path);
Snapshot read_snapshot(const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Diagnostics CSV

/// Header row naming every DiagnosticsRecord field, in declaration order.
const std::vector<std::string> &diagnostics_columns();

std::string format_diagnostics(const std::vector<DiagnosticsRecord> &records);
std::vector<DiagnosticsRecord> parse_diagnostics(const std::string &csv);

void write_diagnostics(const std::vector<DiagnosticsRecord> &records,
                       const std::filesystem::path &path);
std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path &path);

/// Writes `contents` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

}  // namespace boussinesq

#endif  // BOUSSINESQ_IO_HPP
