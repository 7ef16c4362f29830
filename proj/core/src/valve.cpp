#include "spinvalve/valve.hpp"

#include <cmath>
#include <utility>

#include "grid_search.hpp"

namespace spinvalve {
namespace {

constexpr double kFidelitySlack = 1e-12;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Ideal-chain state tracked in the eigenbasis; O(N) per step and evaluation.
struct ModeState {
  Spectrum s;
  Eigen::VectorXcd modes;  // V^T phi

  explicit ModeState(const ChainSpec& spec)
      : s(eig_tridiag(build_hamiltonian(spec, DisorderRealization::none(spec)))) {
    // phi_0 = |1>, so modes_m = V(0, m)
    modes = s.eigenvectors.row(0).transpose().cast<std::complex<double>>();
  }

  // arrival amplitude <N| U(t) |phi> without touching the state
  std::complex<double> peek_amplitude(double t) const {
    const int n = s.dim();
    std::complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += s.eigenvectors(n - 1, m) * modes(m) * std::polar(1.0, -s.eigenvalues(m) * t);
    return acc;
  }

  // evolve for t, read off the arrival amplitude, project it out of site N
  std::complex<double> advance(double t) {
    const int n = s.dim();
    for (int m = 0; m < n; ++m) modes(m) *= std::polar(1.0, -s.eigenvalues(m) * t);
    std::complex<double> a = 0.0;
    for (int m = 0; m < n; ++m) a += s.eigenvectors(n - 1, m) * modes(m);
    for (int m = 0; m < n; ++m) modes(m) -= a * s.eigenvectors(n - 1, m);
    return a;
  }
};

}  // namespace

ProtocolError::ProtocolError(int step_, const std::string& what_arg)
    : std::runtime_error(what_arg), step(step_) {}

ValveGate build_valve_gate(std::complex<double> a, double f_prev) {
  require(std::isfinite(a.real()) && std::isfinite(a.imag()) && std::isfinite(f_prev),
          "valve gate inputs must be finite");
  require(f_prev >= 0.0, "accumulated fidelity must be non-negative");
  const double f_step = f_prev + std::norm(a);
  require(f_step <= 1.0 + kFidelitySlack, "accumulated fidelity cannot exceed 1");

  ValveGate g;
  g.a = a;
  g.f_prev = f_prev;
  g.f_step = f_step;
  if (f_step == 0.0) {
    g.block = Eigen::Matrix2cd::Identity();
  } else {
    const double s = std::sqrt(f_prev);
    const double inv = 1.0 / std::sqrt(f_step);
    g.block(0, 0) = inv * s;
    g.block(0, 1) = inv * std::conj(a);
    g.block(1, 0) = -inv * a;
    g.block(1, 1) = inv * s;
  }
  return g;
}

Eigen::Matrix4cd ValveGate::embed4() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m.block<2, 2>(1, 1) = block;
  return m;
}

ValveSchedule design_schedule(const ChainSpec& spec, const ScheduleStrategy& strategy,
                              int max_steps) {
  require(max_steps >= 1, "max_steps must be positive");
  const GreedyArrival* greedy = std::get_if<GreedyArrival>(&strategy);
  const FixedInterval* fixed = std::get_if<FixedInterval>(&strategy);
  if (greedy) {
    require(std::isfinite(greedy->t_max) && greedy->t_max > 0.0, "t_max must be positive");
    require(greedy->grid >= 2, "grid must have at least two points");
  } else {
    require(std::isfinite(fixed->tau) && fixed->tau > 0.0, "tau must be positive");
  }

  ValveSchedule out;
  out.n_sites = spec.n_sites;
  out.strategy = greedy ? "greedy" : "fixed";
  ModeState phi(spec);
  double f_acc = 0.0;
  for (int k = 1; k <= max_steps; ++k) {
    double t_k;
    if (greedy) {
      auto gain = [&phi](double t) { return std::abs(phi.peek_amplitude(t)); };
      t_k = detail::maximize_on_grid(gain, greedy->t_max, greedy->grid).t;
    } else {
      t_k = fixed->tau;
    }
    const std::complex<double> a = phi.advance(t_k);
    if (f_acc + std::norm(a) == 0.0)
      throw ProtocolError(k, "degenerate step " + std::to_string(k) +
                                 ": nothing has accumulated and nothing is arriving");
    const ValveGate gate = build_valve_gate(a, f_acc);
    f_acc = gate.f_step;
    out.steps.push_back({t_k, gate});
    out.design_fidelities.push_back(f_acc);
  }
  return out;
}

std::vector<double> run_ideal_recursion(const ChainSpec& spec, const ValveSchedule& sched) {
  require(sched.n_sites == spec.n_sites, "schedule was designed for a different chain size");
  ModeState phi(spec);
  double f_acc = 0.0;
  std::vector<double> out;
  out.reserve(sched.steps.size());
  for (const auto& st : sched.steps) {
    require(std::isfinite(st.t), "step times must be finite");
    f_acc += std::norm(phi.advance(st.t));
    out.push_back(f_acc);
  }
  return out;
}

PhiState ideal_phi_state(const ChainSpec& spec, const ValveSchedule& sched, int k) {
  require(sched.n_sites == spec.n_sites, "schedule was designed for a different chain size");
  require(k >= 0 && k <= sched.n_steps(), "step index out of range");
  ModeState phi(spec);
  for (int i = 0; i < k; ++i) phi.advance(sched.steps[i].t);
  PhiState out;
  out.amplitudes = phi.s.eigenvectors.cast<std::complex<double>>() * phi.modes;
  return out;
}

RunTrace run_composite(const ChainSpec& spec, const DisorderRealization& real,
                       const ValveSchedule& sched) {
  require(sched.n_sites == spec.n_sites, "schedule was designed for a different chain size");
  const int n = spec.n_sites;
  const Spectrum s = eig_tridiag(build_hamiltonian(spec, real));
  const Eigen::MatrixXcd vc = s.eigenvectors.cast<std::complex<double>>();

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n + 1);
  psi(0) = 1.0;
  RunTrace tr;
  tr.fidelities.reserve(sched.steps.size());
  for (const auto& st : sched.steps) {
    require(std::isfinite(st.t), "step times must be finite");
    // free evolution of the chain block; the detached target idles
    Eigen::VectorXcd modes = vc.transpose() * psi.head(n);
    for (int m = 0; m < n; ++m) modes(m) *= std::polar(1.0, -s.eigenvalues(m) * st.t);
    psi.head(n) = vc * modes;
    // correction on the pair (target, site N)
    const std::complex<double> tgt = psi(n);
    const std::complex<double> last = psi(n - 1);
    psi(n) = st.gate.block(0, 0) * tgt + st.gate.block(0, 1) * last;
    psi(n - 1) = st.gate.block(1, 0) * tgt + st.gate.block(1, 1) * last;
    tr.fidelities.push_back(std::norm(psi(n)));
  }
  tr.final_state = std::move(psi);
  return tr;
}

}  // namespace spinvalve
