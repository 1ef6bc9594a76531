// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include <unistd.h>

#include "boussinesq/commands.hpp"
#include "boussinesq/io.hpp"
#include "doctest.h"
#include "support.hpp"

namespace bq = boussinesq;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
  fs::path path;
  TempDir()
  {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("bq_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

template <typename Ex>
std::string message_of(const std::string &cfg)
{
  try
  {
    bq::parse_config_text(cfg);
  }
  catch (const Ex &e)
  {
    return e.what();
  }
  return "";
}

bq::SimulationState random_state(const bq::GridSpec &g, std::uint64_t seed)
{
  auto [u, th] = bq::synthesize_initial(bq::InitialKind::rough_h1, g, seed);
  return {u, th, 0.125, 7};
}

}  // namespace

TEST_SUITE("config")
{
  TEST_CASE("minimal config gets defaults")
  {
    const bq::RunConfig c = bq::parse_config_text("dim = 2\nmodes = 64\nt_final = 0.5\n");
    CHECK(c.dim == 2);
    CHECK(c.modes == 64);
    CHECK(c.t_final == 0.5);
    CHECK(c.dt == 1e-3);
    CHECK(c.scheme == bq::Scheme::if_rk4);
    CHECK(c.snapshot_every == 10);
    CHECK(c.nu == 1.0);
    CHECK(c.kappa == 1.0);
    CHECK(c.initial_kind == bq::InitialKind::rough_h1);
    CHECK_FALSE(c.sobolev_exponent.has_value());
  }

  TEST_CASE("all keys, comments and whitespace")
  {
    const bq::RunConfig c = bq::parse_config_text(
        "# header comment\n"
        "dim=3\n  modes = 16  # trailing\n t_final = 0.1\n nu = 0.5\nkappa = 0.25\n"
        "dt = 2e-3\nsnapshot_every = 5\ninitial_kind = taylor_green\nseed = 99\n"
        "sobolev_exponent = 3.5\nscheme = if_euler\noutput_dir = results/a\n"
        "adaptive = true\ncfl_safety = 0.25\ntruncation_radius = 2\ngalerkin_radius = 2.5\n\n");
    CHECK(c.dim == 3);
    CHECK(c.nu == 0.5);
    CHECK(c.kappa == 0.25);
    CHECK(c.dt == 2e-3);
    CHECK(c.snapshot_every == 5);
    CHECK(c.initial_kind == bq::InitialKind::taylor_green);
    CHECK(c.seed == 99);
    CHECK(c.sobolev_exponent == 3.5);
    CHECK(c.scheme == bq::Scheme::if_euler);
    CHECK(c.output_dir == "results/a");
    CHECK(c.adaptive);
    CHECK(c.cfl_safety == 0.25);
    CHECK(c.truncation_radius == 2.0);
    CHECK(c.galerkin_radius == 2.5);
    CHECK(c.stepper().scheme == bq::Scheme::if_euler);
    CHECK(c.control().snapshot_every == 5);
  }

  TEST_CASE("errors name the key and line")
  {
    const std::string base = "dim = 2\nmodes = 16\nt_final = 0.5\n";
    const std::string neg = message_of<bq::ConfigError>(base + "nu = -1\n");
    CHECK(neg.find("`nu`") != std::string::npos);
    CHECK(neg.find("positive") != std::string::npos);

    try
    {
      bq::parse_config_text(base + "dt = 1e-3\ndt = 2e-3\n");
      FAIL("duplicate accepted");
    }
    catch (const bq::ConfigError &e)
    {
      CHECK(e.line() == 5);
      CHECK(e.key() == "dt");
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
    try
    {
      bq::parse_config_text(base + "viscosity = 1\n");
      FAIL("unknown key accepted");
    }
    catch (const bq::ConfigError &e)
    {
      CHECK(e.line() == 4);
      CHECK(e.key() == "viscosity");
    }
    CHECK(message_of<bq::ConfigError>(base + "modes2\n").find("line 4") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "seed = abc\n").find("`seed`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "scheme = rk45\n").find("rk45") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "initial_kind = vortex\n").find("vortex") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "adaptive = maybe\n").find("`adaptive`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>("modes = 16\nt_final = 1\n").find("`dim`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "kappa = 0\n").find("`kappa`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "snapshot_every = 0\n").find("`snapshot_every`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "dt = 1\n").find("`t_final`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>("dim = 2\nmodes = 15\nt_final = 1\n").find("`modes`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>("dim = 5\nmodes = 16\nt_final = 1\n").find("`dim`") != std::string::npos);
    CHECK(message_of<bq::ConfigError>(base + "cfl_safety = 2\n").find("`cfl_safety`") != std::string::npos);

    CHECK_THROWS_AS(bq::parse_config("/nonexistent/config.cfg"), bq::ConfigError);
  }

  TEST_CASE("parse_config reads files")
  {
    TempDir dir;
    std::ofstream(dir.path / "a.cfg") << "dim = 2\nmodes = 8\nt_final = 0.01\n";
    CHECK(bq::parse_config(dir.path / "a.cfg").modes == 8);
  }
}

TEST_SUITE("snapshot")
{
  TEST_CASE("round trip is bit-identical")
  {
    for (const auto &g : {bq::make_grid(2, 16), bq::make_grid(3, 8)})
    {
      const bq::SimulationState s = random_state(g, 5);
      const bq::PhysicalParams params{0.3, 0.7};
      const auto bytes = bq::encode_snapshot(s, params);
      CHECK(bytes.size() == bq::kSnapshotHeaderBytes + (g.dim() + 1) * g.size() * 16);
      CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "BOUSSNAP");
      const bq::Snapshot back = bq::decode_snapshot(bytes);
      CHECK(testing::bit_equal(back.state.u, s.u));
      CHECK(testing::bit_equal(back.state.theta, s.theta));
      CHECK(back.state.t == s.t);
      CHECK(back.params.nu == 0.3);
      CHECK(back.params.kappa == 0.7);
      CHECK(bq::encode_snapshot(back.state, back.params) == bytes);

      TempDir dir;
      bq::write_snapshot(s, params, dir.path / "s.bin");
      CHECK(fs::file_size(dir.path / "s.bin") == bytes.size());
      CHECK_FALSE(fs::exists(dir.path / "s.bin.tmp"));
      const bq::Snapshot file = bq::read_snapshot(dir.path / "s.bin");
      CHECK(testing::bit_equal(file.state.theta, s.theta));
    }
  }

  TEST_CASE("little-endian header layout")
  {
    const bq::GridSpec g = bq::make_grid(2, 8);
    const auto bytes = bq::encode_snapshot({bq::VectorField::zeros(g), bq::ScalarField::zeros(g), 1.0, 0}, {});
    CHECK(bytes[8] == bq::kSnapshotVersion);
    CHECK(bytes[9] == 0);
    CHECK(bytes[12] == 2);  // dim
    CHECK(bytes[16] == 8);  // modes
    // t = 1.0 is 0x3FF0000000000000
    CHECK(bytes[20 + 7] == 0x3F);
    CHECK(bytes[20 + 6] == 0xF0);
  }

  TEST_CASE("distinct errors")
  {
    const bq::GridSpec g = bq::make_grid(2, 8);
    const auto good = bq::encode_snapshot(random_state(g, 1), {});
    auto kind_of = [](const std::vector<std::uint8_t> &b) {
      try
      {
        bq::decode_snapshot(b);
      }
      catch (const bq::SnapshotError &e)
      {
        return e.kind();
      }
      return bq::SnapshotError::Kind::io;
    };

    auto magic = good;
    std::fill(magic.begin(), magic.begin() + 8, 'X');
    CHECK(kind_of(magic) == bq::SnapshotError::Kind::bad_magic);

    auto version = good;
    version[8] = 9;
    CHECK(kind_of(version) == bq::SnapshotError::Kind::version_mismatch);

    auto header = good;
    header[12] = 7;
    CHECK(kind_of(header) == bq::SnapshotError::Kind::bad_header);

    auto cut = good;
    cut.resize(cut.size() - 8);
    CHECK(kind_of(cut) == bq::SnapshotError::Kind::truncated);
    try
    {
      bq::decode_snapshot(cut);
    }
    catch (const bq::SnapshotError &e)
    {
      const std::string w = e.what();
      CHECK(w.find(std::to_string(good.size())) != std::string::npos);
      CHECK(w.find(std::to_string(cut.size())) != std::string::npos);
    }
    CHECK(kind_of(std::vector<std::uint8_t>(good.begin(), good.begin() + 20)) ==
          bq::SnapshotError::Kind::truncated);

    try
    {
      bq::read_snapshot("/nonexistent/snap.bin");
      FAIL("missing file accepted");
    }
    catch (const bq::SnapshotError &e)
    {
      CHECK(e.kind() == bq::SnapshotError::Kind::io);
    }
  }
}

TEST_SUITE("csv")
{
  TEST_CASE("header-only, round trip, NaN")
  {
    const std::string empty = bq::format_diagnostics({});
    CHECK(empty ==
          "t,l2_u,l2_theta,h1_u,h1_theta,gevrey_X,tau_used,radius_fit,radius_fit_quality,"
          "energy_residual_theta,energy_residual_u,div_max\n");
    CHECK(bq::parse_diagnostics(empty).empty());

    bq::DiagnosticsRecord r;
    r.t = 0.1;
    r.l2_u = 1.0 / 3.0;
    r.l2_theta = std::nextafter(2.0, 3.0);
    r.gevrey_X = 12345.678901234567;
    r.radius_fit = std::numeric_limits<double>::quiet_NaN();
    r.energy_residual_u = -1e-300;
    const std::string one = bq::format_diagnostics({r});
    CHECK(std::count(one.begin(), one.end(), '\n') == 2);
    const auto back = bq::parse_diagnostics(one);
    REQUIRE(back.size() == 1);
    CHECK(back[0].t == r.t);
    CHECK(back[0].l2_u == r.l2_u);
    CHECK(back[0].l2_theta == r.l2_theta);
    CHECK(back[0].gevrey_X == r.gevrey_X);
    CHECK(std::isnan(back[0].radius_fit));
    CHECK(back[0].energy_residual_u == r.energy_residual_u);

    CHECK_THROWS(bq::parse_diagnostics("a,b\n"));
    CHECK_THROWS(bq::parse_diagnostics(empty + "1,2,3\n"));

    TempDir dir;
    bq::write_diagnostics({r, r}, dir.path / "d.csv");
    CHECK(bq::read_diagnostics(dir.path / "d.csv").size() == 2);
    CHECK_THROWS(bq::write_diagnostics({r}, dir.path / "missing" / "dir" / "d.csv"));
  }
}

TEST_SUITE("commands")
{
  TEST_CASE("run_to_disk, diagnose and spectrum")
  {
    TempDir dir;
    bq::RunConfig cfg = bq::parse_config_text(
        "dim = 2\nmodes = 32\nt_final = 0.05\nsnapshot_every = 20\nseed = 3\n");
    cfg.output_dir = (dir.path / "out").string();
    const bq::RunSummary s = bq::run_to_disk(cfg);
    CHECK(s.status == bq::RunStatus::completed);
    REQUIRE(s.snapshots.size() == 4);  // steps 0, 20, 40, 50
    CHECK(s.snapshots[1].filename() == "snapshot_00000020.bin");
    const auto csv = bq::read_diagnostics(s.diagnostics);
    REQUIRE(csv.size() == 4);
    for (std::size_t n = 1; n < csv.size(); ++n)
    {
      CHECK(csv[n].t > csv[n - 1].t);
      CHECK(csv[n].energy_residual_theta <= 1e-6 * csv[0].l2_theta * csv[0].l2_theta);
    }
    CHECK(csv[0].energy_residual_theta == 0.0);

    // diagnose sorts by time and reproduces the per-snapshot quantities.
    const auto d = bq::diagnose_snapshots({s.snapshots[2], s.snapshots[0], s.snapshots[3], s.snapshots[1]});
    REQUIRE(d.size() == 4);
    for (std::size_t n = 0; n < 4; ++n)
    {
      CHECK(d[n].t == csv[n].t);
      CHECK(d[n].l2_u == csv[n].l2_u);
      CHECK(d[n].gevrey_X == csv[n].gevrey_X);
    }
    // Snapshots 20 steps apart: the per-mode log-mean rule ignores nonlinear
    // transfer inside each interval, so only coarse agreement is expected.
    CHECK(std::abs(d[3].energy_residual_theta) <= 1e-3 * csv[0].l2_theta * csv[0].l2_theta);

    const std::string table = bq::spectrum_table(bq::read_snapshot(s.snapshots[0]).state);
    CHECK(table.rfind("shell,count,max_u,max_theta,energy_u,energy_theta\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') > 10);
  }

  TEST_CASE("oracle_check on a small grid")
  {
    bq::RunConfig cfg = bq::parse_config_text("dim = 2\nmodes = 16\nt_final = 0.02\nseed = 4\n");
    const bq::OracleReport r = bq::oracle_check(cfg);
    CHECK(r.convolution_ran);
    CHECK(r.convection_velocity_deviation <= 1e-12);
    CHECK(r.convection_temperature_deviation <= 1e-12);
    CHECK(r.galerkin.velocity_modes == 28);
    CHECK(r.galerkin.max_antisymmetry_A <= 1e-13);
    CHECK(r.galerkin.max_relative_deviation <= 1e-6);

    bq::RunConfig big = bq::parse_config_text("dim = 2\nmodes = 128\nt_final = 0.002\n");
    CHECK_FALSE(bq::oracle_check(big).convolution_ran);
  }
}
