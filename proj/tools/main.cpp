// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boussinesq/commands.hpp"

namespace bq = boussinesq;

namespace
{

struct Options
{
  std::string config;
  std::vector<std::string> snapshots;
  std::string snapshot;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;
};

bq::RunConfig load_config(const Options &opt)
{
  bq::RunConfig cfg = bq::parse_config(opt.config);
  if (opt.output_dir)
  {
    cfg.output_dir = *opt.output_dir;
  }
  if (opt.seed_override)
  {
    cfg.seed = *opt.seed_override;
  }
  return cfg;
}

int cmd_run(const Options &opt)
{
  const bq::RunConfig cfg = load_config(opt);
  const bq::RunSummary summary = bq::run_to_disk(cfg, opt.quiet ? nullptr : &std::cout);
  if (summary.status == bq::RunStatus::blow_up)
  {
    std::cerr << "blow-up: " << summary.message << '\n';
    return bq::kExitBlowUp;
  }
  if (!opt.quiet)
  {
    std::cout << "wrote " << summary.snapshots.size() << " snapshots and "
              << summary.diagnostics.string() << '\n';
  }
  return bq::kExitOk;
}

int cmd_diagnose(const Options &opt)
{
  std::vector<std::filesystem::path> paths(opt.snapshots.begin(), opt.snapshots.end());
  const auto records = bq::diagnose_snapshots(paths);
  const std::string csv = bq::format_diagnostics(records);
  if (opt.output_dir)
  {
    std::filesystem::create_directories(*opt.output_dir);
    const auto out = std::filesystem::path(*opt.output_dir) / "diagnostics.csv";
    bq::write_file_atomic(out, csv);
    if (!opt.quiet)
    {
      std::cout << "wrote " << out.string() << '\n';
    }
  }
  else
  {
    std::cout << csv;
  }
  return bq::kExitOk;
}

int cmd_oracle(const Options &opt)
{
  const bq::RunConfig cfg = load_config(opt);
  const bq::OracleReport r = bq::oracle_check(cfg);
  std::printf("convolution_compared = %s\n", r.convolution_ran ? "true" : "false");
  if (r.convolution_ran)
  {
    std::printf("convection_velocity_max_rel_dev = %.6e\n", r.convection_velocity_deviation);
    std::printf("convection_temperature_max_rel_dev = %.6e\n", r.convection_temperature_deviation);
  }
  std::printf("galerkin_velocity_modes = %zu\n", r.galerkin.velocity_modes);
  std::printf("galerkin_scalar_modes = %zu\n", r.galerkin.scalar_modes);
  std::printf("galerkin_antisymmetry_A = %.6e\n", r.galerkin.max_antisymmetry_A);
  std::printf("galerkin_antisymmetry_B = %.6e\n", r.galerkin.max_antisymmetry_B);
  std::printf("galerkin_max_rel_l2_dev = %.6e\n", r.galerkin.max_relative_deviation);
  return bq::kExitOk;
}

int cmd_spectrum(const Options &opt)
{
  const bq::Snapshot snap = bq::read_snapshot(opt.snapshot);
  std::cout << bq::spectrum_table(snap.state);
  return bq::kExitOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spectral solver for the periodic Boussinesq equations"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--output-dir", opt.output_dir, "Directory for output files");
    sub->add_flag("--quiet", opt.quiet, "Suppress progress output");
    sub->add_option("--seed-override", opt.seed_override, "Replace the config seed");
  };

  CLI::App *run = app.add_subcommand("run", "Simulate and write snapshots plus diagnostics.csv");
  run->add_option("config", opt.config, "Config file")->required();
  add_common(run);

  CLI::App *diagnose = app.add_subcommand("diagnose", "Diagnostics for stored snapshots");
  diagnose->add_option("snapshots", opt.snapshots, "Snapshot files")->required();
  add_common(diagnose);

  CLI::App *oracle = app.add_subcommand("oracle-check", "Compare solver against the oracles");
  oracle->add_option("config", opt.config, "Config file")->required();
  add_common(oracle);

  CLI::App *spectrum = app.add_subcommand("spectrum", "Shell envelope table of a snapshot");
  spectrum->add_option("snapshot", opt.snapshot, "Snapshot file")->required();
  add_common(spectrum);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? bq::kExitOk : bq::kExitError;
  }

  try
  {
    if (*run) return cmd_run(opt);
    if (*diagnose) return cmd_diagnose(opt);
    if (*oracle) return cmd_oracle(opt);
    if (*spectrum) return cmd_spectrum(opt);
  }
  catch (const bq::ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
  }
  catch (const bq::SnapshotError &e)
  {
    std::cerr << "snapshot error: " << e.what() << '\n';
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
  }
  return bq::kExitError;
}
