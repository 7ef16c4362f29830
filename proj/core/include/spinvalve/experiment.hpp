#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinvalve/config.hpp"

namespace spinvalve {

struct RunOptions {
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed_override;
  bool quiet = true;  // suppress progress lines on stderr
  int n_threads = 0;
};

struct RunResult {
  std::vector<std::string> files;  // paths written, in order
};

// Runs the configured experiment and writes its output files. All file content
// is a pure function of (config, effective seed); reruns are byte-identical.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& opts);

}  // namespace spinvalve
