#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace spinvalve {

// Nearest-neighbour XX chain of n_sites qubits with optional on-site terms.
// Couplings are the base (design) values; disorder enters multiplicatively on
// top of them. All dynamics happens in the one-excitation sector, where the
// Hamiltonian is a real symmetric tridiagonal matrix with hopping 2*c_n and
// diagonal 2*e_n. Times are in units of the inverse base coupling.
struct ChainSpec {
  int n_sites;
  std::vector<double> couplings;  // length n_sites - 1, strictly positive
  std::vector<double> onsite;     // length n_sites

  ChainSpec(int n_sites, std::vector<double> couplings, std::vector<double> onsite);

  // unit couplings, zero on-site terms
  static ChainSpec uniform(int n_sites);
};

// One quasi-static disorder sample. coupling_deltas are relative errors
// (effective coupling c_n * (1 + delta_n)), onsite_deltas are absolute shifts.
// The all-zero realization reproduces the ideal chain exactly.
struct DisorderRealization {
  std::vector<double> coupling_deltas;  // length n_sites - 1
  std::vector<double> onsite_deltas;    // length n_sites

  static DisorderRealization none(const ChainSpec& spec);
};

// Single-excitation Hamiltonian in site basis: diag(n) = 2 (e_n + eps_n),
// offdiag(n) = 2 c_n (1 + delta_n).
struct SingleExcMatrix {
  int dim = 0;
  std::vector<double> diag;
  std::vector<double> offdiag;
};

// Eigenvalues ascending; eigenvector m sits in column m.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// U(t) = V exp(-i diag(lambda) t) V^T. Unitary and symmetric.
struct Propagator {
  Eigen::MatrixXcd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

struct TimeOpt {
  double t_star;
  double value;
};

SingleExcMatrix build_hamiltonian(const ChainSpec& spec, const DisorderRealization& real);

Spectrum eig_tridiag(const SingleExcMatrix& matrix);

Propagator propagator(const Spectrum& spectrum, double t);

// end-to-end amplitude <n_sites| U |1>
std::complex<double> transfer_amplitude(const Propagator& u);

// same amplitude straight from the mode decomposition, without forming U
std::complex<double> transfer_amplitude(const Spectrum& spectrum, double t);

inline constexpr int kDefaultTimeGrid = 2000;

// default search horizon for transmission-time optimization
double default_time_horizon(const ChainSpec& spec);

// Best plain-transmission fidelity |<n_sites|U(t)|1>|^2 over t in (0, t_max]:
// grid scan plus golden-section refinement of every near-top local maximum,
// ties in value resolved toward the earliest time.
TimeOpt max_bose_fidelity(const ChainSpec& spec, const DisorderRealization& real,
                          double t_max, int grid = kDefaultTimeGrid);
TimeOpt max_bose_fidelity(const ChainSpec& spec, const DisorderRealization& real);

}  // namespace spinvalve
