// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace spectral_sums {

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  bool jobs_parallel = false;
  double tolerance_scale = 1.0;
};

// Exit-code contract: 0 every applicable report passes, 2 at least one failed
// inequality, 3 solver error, 4 schema violation (error carries a
// line-anchored message). The worst severity across jobs wins.
struct RunResult {
  int exit_code = 0;
  std::string error;                 // empty unless exit_code is 3 or 4
  std::vector<std::string> outputs;  // files written, config order
};

RunResult run_config(const RunOptions& opts);

// Stable help text: job types, config schema sketches, exit codes.
std::string jobs_help();

}  // namespace spectral_sums
