#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinvalve/disorder.hpp"

namespace spinvalve {

enum class ExperimentKind { Fig4, Fig5, Bose, Design };

struct ParseError : std::runtime_error {
  int line;         // 1-based line of the offending entry
  std::string key;  // empty when no key applies

  ParseError(int line, std::string key, const std::string& message);
};

// Resolved experiment description. Defaults reproduce the reference setup:
// 20 sites, uniform couplings, greedy schedule of 20 steps, uniform coupling
// disorder, 100 samples.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Fig4;
  int n_sites = 20;
  std::vector<double> couplings;  // empty means uniform
  bool fixed_strategy = false;
  double fixed_tau = 0.0;
  int max_steps = 20;
  std::optional<double> t_max;  // per-step search window for greedy design
  DisorderKind disorder = DisorderKind::UniformCoupling;
  std::vector<double> strengths{0.0};
  int samples = 100;
  std::uint64_t seed = 1;
  std::optional<std::string> output_path;

  // Default window: one excitation round trip. The band velocity is 4 in
  // these units, so t = n_sites / 2 covers distance 2 * n_sites.
  double schedule_t_max() const;
  std::string resolved_output_path() const;
  ChainSpec make_chain() const;
  ScheduleStrategy make_strategy() const;
};

// Flat "key = value" format, '#' starts a comment. Unknown, duplicate, or
// out-of-range keys are rejected with the line number and key in the message.
ExperimentConfig parse_config(std::string_view text);

}  // namespace spinvalve
