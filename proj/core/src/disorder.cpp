#include "spinvalve/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace spinvalve {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Reduced strictly in sample order; the parallel fill never touches order.
// When every trace is bitwise identical (strength 0) the summary copies the
// shared values instead of averaging, so means and stds are exact.
McSummary summarize(const std::vector<std::vector<double>>& traces) {
  const int n = static_cast<int>(traces.size());
  const int steps = n > 0 ? static_cast<int>(traces[0].size()) : 0;

  McSummary s;
  s.n_samples = n;
  s.per_step_mean.resize(steps);
  s.per_step_std.resize(steps);

  std::vector<double> maxes(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(traces[i].size()) != steps)
      throw std::invalid_argument("sample traces differ in length");
    if (steps > 0) maxes[i] = *std::max_element(traces[i].begin(), traces[i].end());
  }

  bool uniform = true;
  for (int i = 1; i < n && uniform; ++i) uniform = traces[i] == traces[0];
  if (uniform) {
    if (steps > 0) s.per_step_mean = traces[0];
    std::fill(s.per_step_std.begin(), s.per_step_std.end(), 0.0);
    s.mean_of_max = n > 0 ? maxes[0] : 0.0;
    s.std_of_max = 0.0;
    return s;
  }

  for (int k = 0; k < steps; ++k) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += traces[i][k];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = traces[i][k] - mean;
      var += d * d;
    }
    s.per_step_mean[k] = mean;
    s.per_step_std[k] = std::sqrt(std::max(var / n, 0.0));
  }

  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += maxes[i];
  mean /= n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = maxes[i] - mean;
    var += d * d;
  }
  s.mean_of_max = mean;
  s.std_of_max = std::sqrt(std::max(var / n, 0.0));
  return s;
}

void mean_std(const std::vector<double>& xs, double& mean_out, double& std_out) {
  const int n = static_cast<int>(xs.size());
  bool uniform = true;
  for (int i = 1; i < n && uniform; ++i) uniform = xs[i] == xs[0];
  if (uniform) {
    mean_out = n > 0 ? xs[0] : 0.0;
    std_out = 0.0;
    return;
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    var += d * d;
  }
  mean_out = mean;
  std_out = std::sqrt(std::max(var / n, 0.0));
}

}  // namespace

DisorderRealization sample_disorder(const DisorderModel& model, const ChainSpec& spec,
                                    RngStream& rng) {
  require(std::isfinite(model.strength) && model.strength >= 0.0,
          "disorder strength must be non-negative");
  DisorderRealization r = DisorderRealization::none(spec);
  switch (model.kind) {
    case DisorderKind::UniformCoupling:
      for (auto& d : r.coupling_deltas) d = rng.uniform_symmetric(model.strength);
      break;
    case DisorderKind::GaussianCoupling:
      for (auto& d : r.coupling_deltas) d = rng.gaussian(model.strength);
      break;
    case DisorderKind::UniformOnsite:
      for (auto& d : r.onsite_deltas) d = rng.uniform_symmetric(model.strength);
      break;
  }
  return r;
}

double McSummary::max_of_mean() const {
  return per_step_mean.empty() ? 0.0
                               : *std::max_element(per_step_mean.begin(), per_step_mean.end());
}

McSummary monte_carlo(const ChainSpec& spec, const ValveSchedule& schedule,
                      const DisorderModel& model, int n_samples, std::uint64_t master_seed,
                      const McOptions& opts) {
  require(n_samples >= 1, "n_samples must be positive");
  require(schedule.n_sites == spec.n_sites, "schedule was designed for a different chain size");

  std::vector<std::vector<double>> traces(n_samples);
  detail::parallel_for(n_samples, opts.n_threads, [&](int i) {
    RngStream rng = RngStream::for_sample(master_seed, static_cast<std::uint64_t>(i));
    const DisorderRealization real = sample_disorder(model, spec, rng);
    traces[i] = run_composite(spec, real, schedule).fidelities;
  });
  return summarize(traces);
}

SweepResult sweep_delta(const ChainSpec& spec, const ValveSchedule& schedule,
                        const DisorderModel& model, const std::vector<double>& delta_grid,
                        int n_samples, std::uint64_t master_seed, double t_star,
                        const McOptions& opts) {
  require(!delta_grid.empty(), "delta grid must be non-empty");
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    require(std::isfinite(delta_grid[i]) && delta_grid[i] >= 0.0,
            "delta grid entries must be non-negative");
    if (i > 0) require(delta_grid[i] > delta_grid[i - 1], "delta grid must be strictly increasing");
  }
  require(std::isfinite(t_star) && t_star > 0.0, "t_star must be positive");
  require(n_samples >= 1, "n_samples must be positive");
  require(schedule.n_sites == spec.n_sites, "schedule was designed for a different chain size");

  SweepResult r;
  r.deltas = delta_grid;
  for (double delta : delta_grid) {
    const DisorderModel scaled{model.kind, delta};
    std::vector<std::vector<double>> traces(n_samples);
    std::vector<double> bose(n_samples);
    detail::parallel_for(n_samples, opts.n_threads, [&](int i) {
      RngStream rng = RngStream::for_sample(master_seed, static_cast<std::uint64_t>(i));
      const DisorderRealization real = sample_disorder(scaled, spec, rng);
      traces[i] = run_composite(spec, real, schedule).fidelities;
      const Spectrum s = eig_tridiag(build_hamiltonian(spec, real));
      bose[i] = std::norm(transfer_amplitude(s, t_star));
    });
    const McSummary ms = summarize(traces);
    r.valve_curve.push_back(ms.mean_of_max);
    r.valve_std.push_back(ms.std_of_max);
    r.valve_max_of_mean.push_back(ms.max_of_mean());
    double bm = 0.0, bs = 0.0;
    mean_std(bose, bm, bs);
    r.bose_curve.push_back(bm);
    r.bose_std.push_back(bs);
  }
  return r;
}

}  // namespace spinvalve
