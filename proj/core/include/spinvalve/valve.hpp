#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "spinvalve/chain.hpp"

namespace spinvalve {

// Unnormalized chain state carried between protocol steps. Its norm shrinks as
// amplitude is folded into the target: <phi_k|phi_k> = 1 - F_k.
struct PhiState {
  Eigen::VectorXcd amplitudes;

  double norm2() const { return amplitudes.squaredNorm(); }
};

// Receiver-side correction applied after transmission window k. The 2x2 block
// acts on the ordered amplitude pair (target, site N) and rotates the newly
// arrived amplitude a on top of the sqrt(f_prev) already accumulated, leaving
// the target amplitude at sqrt(f_step) on the ideal chain.
struct ValveGate {
  Eigen::Matrix2cd block;
  std::complex<double> a;  // arrival amplitude at the chosen time
  double f_prev = 0.0;     // accumulated fidelity before this step
  double f_step = 0.0;     // f_prev + |a|^2

  // two-qubit embedding in the ordered basis |q_siteN q_target>, identity on
  // |00> and |11>, the block on the one-excitation pair (|01>, |10>)
  Eigen::Matrix4cd embed4() const;
};

// Builds the correction block for arrival amplitude a on top of accumulated
// fidelity f_prev. The fully degenerate case a = 0, f_prev = 0 yields the
// identity block.
ValveGate build_valve_gate(std::complex<double> a, double f_prev);

struct ScheduleStep {
  double t;
  ValveGate gate;
};

// Pick each window length by maximizing the arrival amplitude |a(t)| over
// t in (0, t_max] on a grid with golden-section refinement.
struct GreedyArrival {
  double t_max;
  int grid = kDefaultTimeGrid;
};

// Constant window length tau for every step.
struct FixedInterval {
  double tau;
};

using ScheduleStrategy = std::variant<GreedyArrival, FixedInterval>;

struct ValveSchedule {
  int n_sites = 0;
  std::string strategy;              // "greedy" or "fixed"
  std::vector<ScheduleStep> steps;
  std::vector<double> design_fidelities;  // cumulative fidelity after step k

  int n_steps() const { return static_cast<int>(steps.size()); }
};

struct ProtocolError : std::runtime_error {
  int step;

  ProtocolError(int step, const std::string& what);
};

// Designs a schedule of max_steps windows on the ideal (disorder-free) chain.
// Throws ProtocolError if a step arrives with zero amplitude before anything
// has accumulated, since the correction is undefined there.
ValveSchedule design_schedule(const ChainSpec& spec, const ScheduleStrategy& strategy,
                              int max_steps);

// Replays the accumulation bookkeeping on the ideal chain from the schedule
// times alone (stored gates are ignored): evolve, read off the arrival
// amplitude, project it out, accumulate |a_k|^2. Returns the cumulative
// fidelity after each step.
std::vector<double> run_ideal_recursion(const ChainSpec& spec, const ValveSchedule& schedule);

// |phi_k> in the site basis after the first k steps of the schedule on the
// ideal chain; k = 0 gives |1>. Its norm shrinks exactly by what the target
// has gained: norm2 = 1 - F_k.
PhiState ideal_phi_state(const ChainSpec& spec, const ValveSchedule& schedule, int k);

struct RunTrace {
  std::vector<double> fidelities;  // |target amplitude|^2 after each gate
  Eigen::VectorXcd final_state;    // chain amplitudes 1..N, then the target
};

// Runs the full protocol on chain + target: free evolution for t_k, then the
// stored gate on (target, site N). The realization may differ from the ideal
// chain the schedule was designed on; that mismatch is the whole point.
RunTrace run_composite(const ChainSpec& spec, const DisorderRealization& real,
                       const ValveSchedule& schedule);

}  // namespace spinvalve
