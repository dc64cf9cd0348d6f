// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "spectral_sums.h"

int main(int argc, char** argv) {
  CLI::App app{"spectral-sums: eigenvalue-sum inequality verification harness"};
  app.set_version_flag("--version", ss_version());
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a JSON job config and write CSV reports");
  std::string config_path;
  std::string out_dir;
  bool jobs_parallel = false;
  double tolerance_scale = 1.0;
  run->add_option("--config", config_path, "Path to the JSON config")->required();
  run->add_option("--out", out_dir, "Directory for CSV outputs and the run manifest")->required();
  run->add_flag("--jobs-parallel", jobs_parallel, "Run independent jobs concurrently");
  run->add_option("--tolerance-scale", tolerance_scale,
                  "Multiply every report tolerance before deciding pass/fail");

  auto* jobs = app.add_subcommand("jobs", "Describe job types and the config schema");

  CLI11_PARSE(app, argc, argv);

  if (jobs->parsed()) {
    std::fputs(ss_jobs_help(), stdout);
    return 0;
  }

  int exit_code = 0;
  const ss_status st = ss_run_config(config_path.c_str(), out_dir.c_str(), jobs_parallel ? 1 : 0,
                                     tolerance_scale, &exit_code);
  if (st != SS_OK) {
    std::fprintf(stderr, "%s\n", ss_last_error());
    return 3;
  }
  const char* msg = ss_last_error();
  if (exit_code != 0 && msg[0] != '\0') std::fprintf(stderr, "%s\n", msg);
  return exit_code;
}
