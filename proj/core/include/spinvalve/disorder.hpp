#pragma once

#include <cstdint>
#include <vector>

#include "spinvalve/chain.hpp"
#include "spinvalve/rng.hpp"
#include "spinvalve/valve.hpp"

namespace spinvalve {

enum class DisorderKind {
  UniformCoupling,   // delta_n uniform on [-strength, strength]
  GaussianCoupling,  // delta_n normal with stddev = strength
  UniformOnsite,     // eps_n uniform on [-strength, strength], couplings clean
};

struct DisorderModel {
  DisorderKind kind = DisorderKind::UniformCoupling;
  double strength = 0.0;
};

// Draws one realization. The number of u64 draws is fixed by (kind, n_sites)
// alone: N-1 for uniform couplings, 2(N-1) for gaussian, N for on-site. At
// strength 0 every delta comes out exactly zero while the stream still
// advances by the same amount.
DisorderRealization sample_disorder(const DisorderModel& model, const ChainSpec& spec,
                                    RngStream& rng);

struct McSummary {
  int n_samples = 0;
  std::vector<double> per_step_mean;
  std::vector<double> per_step_std;  // population std over the sample set
  double mean_of_max = 0.0;          // mean over samples of each run's best step
  double std_of_max = 0.0;

  // best step of the mean curve, always <= mean_of_max
  double max_of_mean() const;
};

struct McOptions {
  int n_threads = 0;  // <= 0 picks the hardware count
};

// Ensemble of run_composite traces over disorder. Sample i always uses the
// stream (master_seed, i) and results are reduced in index order, so the
// summary is bit-identical for any thread count.
McSummary monte_carlo(const ChainSpec& spec, const ValveSchedule& schedule,
                      const DisorderModel& model, int n_samples,
                      std::uint64_t master_seed, const McOptions& opts = {});

struct SweepResult {
  std::vector<double> deltas;
  std::vector<double> valve_curve;        // mean_of_max per delta
  std::vector<double> valve_std;
  std::vector<double> valve_max_of_mean;  // best step of the mean curve per delta
  std::vector<double> bose_curve;         // plain transmission at fixed t_star
  std::vector<double> bose_std;
};

// Valve ensemble and plain-transmission baseline over a strength grid. Each
// (delta, sample) pair draws a single realization used for both curves, and
// sample i reuses the stream (master_seed, i) at every delta.
SweepResult sweep_delta(const ChainSpec& spec, const ValveSchedule& schedule,
                        const DisorderModel& model, const std::vector<double>& delta_grid,
                        int n_samples, std::uint64_t master_seed, double t_star,
                        const McOptions& opts = {});

}  // namespace spinvalve
