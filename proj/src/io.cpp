// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include "boussinesq/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

namespace boussinesq
{

namespace
{

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &value, int line)
{
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod(value, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used != value.size() || value.empty())
  {
    throw ConfigError("line " + std::to_string(line) + ": `" + key + "` expects a number, got `" +
                          value + "`",
                      line, key);
  }
  return v;
}

std::int64_t to_int(const std::string &key, const std::string &value, int line)
{
  std::size_t used = 0;
  long long v = 0;
  try
  {
    v = std::stoll(value, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used != value.size() || value.empty())
  {
    throw ConfigError("line " + std::to_string(line) + ": `" + key +
                          "` expects an integer, got `" + value + "`",
                      line, key);
  }
  return v;
}

bool to_bool(const std::string &key, const std::string &value, int line)
{
  if (value == "true" || value == "1")
  {
    return true;
  }
  if (value == "false" || value == "0")
  {
    return false;
  }
  throw ConfigError("line " + std::to_string(line) + ": `" + key + "` expects true or false", line,
                    key);
}

[[noreturn]] void invalid(const std::string &key, const std::string &why)
{
  throw ConfigError("invalid `" + key + "`: " + why, 0, key);
}

// Byte-level little-endian encoding.
template <typename T>
void put(std::vector<std::uint8_t> &out, T value)
{
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b)
  {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
}

template <typename T>
T get(const std::uint8_t *p)
{
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b)
  {
    bits |= static_cast<U>(p[b]) << (8 * b);
  }
  return std::bit_cast<T>(bits);
}

constexpr char kMagic[8] = {'B', 'O', 'U', 'S', 'S', 'N', 'A', 'P'};

std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

StepperConfig RunConfig::stepper() const
{
  StepperConfig c;
  c.dt = dt;
  c.scheme = scheme;
  c.cfl_safety = cfl_safety;
  c.adaptive = adaptive;
  c.truncation_radius = truncation_radius;
  return c;
}

RunControl RunConfig::control() const
{
  RunControl c;
  c.t_final = t_final;
  c.snapshot_every = snapshot_every;
  return c;
}

RunConfig parse_config_text(const std::string &text)
{
  static const std::set<std::string> known = {
      "dim",       "modes",       "nu",     "kappa",         "dt",
      "t_final",   "snapshot_every", "initial_kind", "seed", "sobolev_exponent",
      "scheme",    "output_dir",  "adaptive", "cfl_safety",  "truncation_radius",
      "galerkin_radius"};

  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw))
  {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty())
    {
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("line " + std::to_string(line) + ": expected `key = value`", line, "");
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!known.count(key))
    {
      throw ConfigError("line " + std::to_string(line) + ": unknown key `" + key + "`", line, key);
    }
    if (auto it = seen.find(key); it != seen.end())
    {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key `" + key +
                            "` (first set on line " + std::to_string(it->second) + ")",
                        line, key);
    }
    seen[key] = line;

    if (key == "dim") cfg.dim = static_cast<int>(to_int(key, value, line));
    else if (key == "modes") cfg.modes = static_cast<int>(to_int(key, value, line));
    else if (key == "nu") cfg.nu = to_double(key, value, line);
    else if (key == "kappa") cfg.kappa = to_double(key, value, line);
    else if (key == "dt") cfg.dt = to_double(key, value, line);
    else if (key == "t_final") cfg.t_final = to_double(key, value, line);
    else if (key == "snapshot_every") cfg.snapshot_every = to_int(key, value, line);
    else if (key == "seed")
    {
      const std::int64_t s = to_int(key, value, line);
      if (s < 0)
      {
        throw ConfigError("line " + std::to_string(line) + ": `seed` must be non-negative", line,
                          key);
      }
      cfg.seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "sobolev_exponent") cfg.sobolev_exponent = to_double(key, value, line);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "adaptive") cfg.adaptive = to_bool(key, value, line);
    else if (key == "cfl_safety") cfg.cfl_safety = to_double(key, value, line);
    else if (key == "truncation_radius") cfg.truncation_radius = to_double(key, value, line);
    else if (key == "galerkin_radius") cfg.galerkin_radius = to_double(key, value, line);
    else if (key == "initial_kind")
    {
      const auto kind = parse_initial_kind(value);
      if (!kind)
      {
        throw ConfigError("line " + std::to_string(line) + ": unknown initial_kind `" + value +
                              "`",
                          line, key);
      }
      cfg.initial_kind = *kind;
    }
    else if (key == "scheme")
    {
      const auto scheme = parse_scheme(value);
      if (!scheme)
      {
        throw ConfigError("line " + std::to_string(line) + ": unknown scheme `" + value + "`",
                          line, key);
      }
      cfg.scheme = *scheme;
    }
  }

  for (const char *required : {"dim", "modes", "t_final"})
  {
    if (!seen.count(required))
    {
      throw ConfigError(std::string("missing required key `") + required + "`", 0, required);
    }
  }
  if (cfg.dim != 2 && cfg.dim != 3) invalid("dim", "must be 2 or 3");
  if (cfg.modes < 4 || cfg.modes % 2 != 0) invalid("modes", "must be even and >= 4");
  if (!(cfg.nu > 0.0)) invalid("nu", "must be positive");
  if (!(cfg.kappa > 0.0)) invalid("kappa", "must be positive");
  if (!(cfg.dt > 0.0)) invalid("dt", "must be positive");
  if (!(cfg.t_final > 0.0)) invalid("t_final", "must be positive");
  if (cfg.t_final < cfg.dt) invalid("t_final", "must be at least dt");
  if (cfg.snapshot_every < 1) invalid("snapshot_every", "must be >= 1");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) invalid("cfl_safety", "must lie in (0, 1]");
  if (cfg.sobolev_exponent && !(*cfg.sobolev_exponent > 0.5 * cfg.dim + 1.0))
  {
    invalid("sobolev_exponent", "must exceed dim/2 + 1");
  }
  if (cfg.truncation_radius < 0.0 || cfg.truncation_radius > (2 * (cfg.modes / 2)) / 3)
  {
    invalid("truncation_radius", "must lie in [0, dealias cutoff]");
  }
  if (!(cfg.galerkin_radius >= 1.0)) invalid("galerkin_radius", "must be >= 1");
  if (cfg.output_dir.empty()) invalid("output_dir", "must not be empty");
  return cfg;
}

RunConfig parse_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path.string(), 0, "");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::uint8_t> encode_snapshot(const SimulationState &state, const PhysicalParams &params)
{
  const GridSpec &grid = state.u.grid;
  std::vector<std::uint8_t> out;
  out.reserve(kSnapshotHeaderBytes + (grid.dim() + 1) * grid.size() * 16);
  for (const char ch : kMagic)
  {
    out.push_back(static_cast<std::uint8_t>(ch));
  }
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.modes()));
  put<double>(out, state.t);
  put<double>(out, params.nu);
  put<double>(out, params.kappa);
  auto emit = [&out](const Coeffs &c) {
    for (const Complex &z : c)
    {
      put<double>(out, z.real());
      put<double>(out, z.imag());
    }
  };
  for (const Coeffs &c : state.u.comps)
  {
    emit(c);
  }
  emit(state.theta.coeffs);
  return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t> &bytes)
{
  if (bytes.size() < sizeof(kMagic) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
  {
    throw SnapshotError(SnapshotError::Kind::bad_magic, "snapshot has bad magic (expected BOUSSNAP)");
  }
  if (bytes.size() < kSnapshotHeaderBytes)
  {
    throw SnapshotError(SnapshotError::Kind::truncated,
                        "snapshot header truncated: expected " +
                            std::to_string(kSnapshotHeaderBytes) + " bytes, got " +
                            std::to_string(bytes.size()));
  }
  const std::uint8_t *p = bytes.data() + 8;
  const auto version = get<std::uint32_t>(p);
  if (version != kSnapshotVersion)
  {
    throw SnapshotError(SnapshotError::Kind::version_mismatch,
                        "snapshot format version " + std::to_string(version) +
                            " is not supported (expected " + std::to_string(kSnapshotVersion) + ")");
  }
  const auto dim = get<std::uint32_t>(p + 4);
  const auto modes = get<std::uint32_t>(p + 8);
  GridSpec grid;
  try
  {
    grid = make_grid(static_cast<int>(dim), static_cast<int>(modes));
  }
  catch (const std::invalid_argument &e)
  {
    throw SnapshotError(SnapshotError::Kind::bad_header, std::string("snapshot header: ") + e.what());
  }
  Snapshot snap;
  snap.state.t = get<double>(p + 12);
  snap.params.nu = get<double>(p + 20);
  snap.params.kappa = get<double>(p + 28);

  const std::size_t expected = kSnapshotHeaderBytes + (dim + 1) * grid.size() * 16;
  if (bytes.size() != expected)
  {
    throw SnapshotError(SnapshotError::Kind::truncated,
                        "snapshot payload length mismatch: expected " + std::to_string(expected) +
                            " bytes, got " + std::to_string(bytes.size()));
  }
  const std::uint8_t *q = bytes.data() + kSnapshotHeaderBytes;
  auto take = [&q, &grid]() {
    Coeffs c(grid.size());
    for (Complex &z : c)
    {
      z = Complex(get<double>(q), get<double>(q + 8));
      q += 16;
    }
    return c;
  };
  snap.state.u = VectorField::zeros(grid);
  for (Coeffs &c : snap.state.u.comps)
  {
    c = take();
  }
  snap.state.theta = ScalarField{grid, take()};
  return snap;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
    {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

void write_snapshot(const SimulationState &state, const PhysicalParams &params,
                    const std::filesystem::path &path)
{
  const auto bytes = encode_snapshot(state, params);
  try
  {
    write_file_atomic(path, std::string(bytes.begin(), bytes.end()));
  }
  catch (const std::runtime_error &e)
  {
    throw SnapshotError(SnapshotError::Kind::io, e.what());
  }
}

Snapshot read_snapshot(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw SnapshotError(SnapshotError::Kind::io, "cannot open snapshot " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

const std::vector<std::string> &diagnostics_columns()
{
  static const std::vector<std::string> columns = {
      "t",          "l2_u",       "l2_theta",           "h1_u",
      "h1_theta",   "gevrey_X",   "tau_used",           "radius_fit",
      "radius_fit_quality", "energy_residual_theta", "energy_residual_u", "div_max"};
  return columns;
}

namespace
{

std::vector<double> fields_of(const DiagnosticsRecord &r)
{
  return {r.t,        r.l2_u,       r.l2_theta,   r.h1_u,
          r.h1_theta, r.gevrey_X,   r.tau_used,   r.radius_fit,
          r.radius_fit_quality, r.energy_residual_theta, r.energy_residual_u, r.div_max};
}

DiagnosticsRecord record_of(const std::vector<double> &v)
{
  DiagnosticsRecord r;
  r.t = v[0];
  r.l2_u = v[1];
  r.l2_theta = v[2];
  r.h1_u = v[3];
  r.h1_theta = v[4];
  r.gevrey_X = v[5];
  r.tau_used = v[6];
  r.radius_fit = v[7];
  r.radius_fit_quality = v[8];
  r.energy_residual_theta = v[9];
  r.energy_residual_u = v[10];
  r.div_max = v[11];
  return r;
}

}  // namespace

std::string format_diagnostics(const std::vector<DiagnosticsRecord> &records)
{
  std::string out;
  const auto &cols = diagnostics_columns();
  for (std::size_t c = 0; c < cols.size(); ++c)
  {
    out += (c ? "," : "") + cols[c];
  }
  out += '\n';
  for (const DiagnosticsRecord &r : records)
  {
    const auto values = fields_of(r);
    for (std::size_t c = 0; c < values.size(); ++c)
    {
      if (c)
      {
        out += ',';
      }
      out += format_double(values[c]);
    }
    out += '\n';
  }
  return out;
}

std::vector<DiagnosticsRecord> parse_diagnostics(const std::string &csv)
{
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line))
  {
    throw std::runtime_error("diagnostics CSV is empty");
  }
  std::string expected;
  for (std::size_t c = 0; c < diagnostics_columns().size(); ++c)
  {
    expected += (c ? "," : "") + diagnostics_columns()[c];
  }
  if (line != expected)
  {
    throw std::runtime_error("diagnostics CSV header mismatch");
  }
  std::vector<DiagnosticsRecord> records;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    std::vector<double> values;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ','))
    {
      values.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (values.size() != diagnostics_columns().size())
    {
      throw std::runtime_error("diagnostics CSV row has " + std::to_string(values.size()) +
                               " fields");
    }
    records.push_back(record_of(values));
  }
  return records;
}

void write_diagnostics(const std::vector<DiagnosticsRecord> &records,
                       const std::filesystem::path &path)
{
  write_file_atomic(path, format_diagnostics(records));
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_diagnostics(buf.str());
}

}  // namespace boussinesq
