#include "spinvalve/chain.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

#include "grid_search.hpp"
#include "hash.hpp"

namespace spinvalve {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

std::string matrix_fingerprint(const SingleExcMatrix& m) {
  std::string bytes;
  bytes.append(reinterpret_cast<const char*>(m.diag.data()), m.diag.size() * sizeof(double));
  bytes.append(reinterpret_cast<const char*>(m.offdiag.data()), m.offdiag.size() * sizeof(double));
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a64(bytes)));
  return buf;
}

}  // namespace

ChainSpec::ChainSpec(int n_sites_, std::vector<double> couplings_, std::vector<double> onsite_)
    : n_sites(n_sites_), couplings(std::move(couplings_)), onsite(std::move(onsite_)) {
  require(n_sites >= 2, "chain needs at least two sites");
  require(couplings.size() == static_cast<std::size_t>(n_sites - 1),
          "couplings must have n_sites - 1 entries");
  require(onsite.size() == static_cast<std::size_t>(n_sites),
          "onsite must have n_sites entries");
  require(all_finite(couplings) && all_finite(onsite), "chain parameters must be finite");
  for (double c : couplings) require(c > 0.0, "couplings must be strictly positive");
}

ChainSpec ChainSpec::uniform(int n_sites) {
  require(n_sites >= 2, "chain needs at least two sites");
  return ChainSpec(n_sites, std::vector<double>(n_sites - 1, 1.0),
                   std::vector<double>(n_sites, 0.0));
}

DisorderRealization DisorderRealization::none(const ChainSpec& spec) {
  return {std::vector<double>(spec.n_sites - 1, 0.0), std::vector<double>(spec.n_sites, 0.0)};
}

SingleExcMatrix build_hamiltonian(const ChainSpec& spec, const DisorderRealization& real) {
  require(real.coupling_deltas.size() == spec.couplings.size(),
          "coupling_deltas must have n_sites - 1 entries");
  require(real.onsite_deltas.size() == spec.onsite.size(),
          "onsite_deltas must have n_sites entries");
  require(all_finite(real.coupling_deltas) && all_finite(real.onsite_deltas),
          "disorder must be finite");

  SingleExcMatrix m;
  m.dim = spec.n_sites;
  m.diag.resize(spec.n_sites);
  m.offdiag.resize(spec.n_sites - 1);
  for (int i = 0; i < spec.n_sites; ++i)
    m.diag[i] = 2.0 * (spec.onsite[i] + real.onsite_deltas[i]);
  for (int i = 0; i + 1 < spec.n_sites; ++i)
    m.offdiag[i] = 2.0 * spec.couplings[i] * (1.0 + real.coupling_deltas[i]);
  return m;
}

Spectrum eig_tridiag(const SingleExcMatrix& m) {
  require(m.dim >= 1, "matrix dimension must be positive");
  require(m.diag.size() == static_cast<std::size_t>(m.dim), "diag length mismatch");
  require(m.offdiag.size() == static_cast<std::size_t>(m.dim - 1), "offdiag length mismatch");
  require(all_finite(m.diag) && all_finite(m.offdiag), "matrix entries must be finite");

  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(m.diag.data(), m.dim);
  Eigen::VectorXd sub = m.dim > 1
                            ? Eigen::Map<const Eigen::VectorXd>(m.offdiag.data(), m.dim - 1)
                            : Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed for matrix " + matrix_fingerprint(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

Propagator propagator(const Spectrum& s, double t) {
  require(std::isfinite(t), "time must be finite");
  require(s.dim() >= 1 && s.eigenvectors.rows() == s.dim() && s.eigenvectors.cols() == s.dim(),
          "spectrum is malformed");
  const int n = s.dim();
  Eigen::VectorXcd phases(n);
  for (int m = 0; m < n; ++m) phases(m) = std::polar(1.0, -s.eigenvalues(m) * t);
  const Eigen::MatrixXcd vc = s.eigenvectors.cast<std::complex<double>>();
  Propagator u;
  u.entries = vc * phases.asDiagonal() * vc.transpose();
  return u;
}

std::complex<double> transfer_amplitude(const Propagator& u) {
  require(u.dim() >= 1, "propagator is empty");
  return u.entries(u.dim() - 1, 0);
}

std::complex<double> transfer_amplitude(const Spectrum& s, double t) {
  const int n = s.dim();
  std::complex<double> acc = 0.0;
  for (int m = 0; m < n; ++m)
    acc += s.eigenvectors(n - 1, m) * s.eigenvectors(0, m) * std::polar(1.0, -s.eigenvalues(m) * t);
  return acc;
}

double default_time_horizon(const ChainSpec& spec) { return 2.0 * spec.n_sites; }

TimeOpt max_bose_fidelity(const ChainSpec& spec, const DisorderRealization& real,
                          double t_max, int grid) {
  require(std::isfinite(t_max) && t_max > 0.0, "t_max must be positive");
  require(grid >= 2, "grid must have at least two points");
  const Spectrum s = eig_tridiag(build_hamiltonian(spec, real));
  auto fid = [&s](double t) { return std::norm(transfer_amplitude(s, t)); };
  const auto best = detail::maximize_on_grid(fid, t_max, grid);
  return {best.t, best.value};
}

TimeOpt max_bose_fidelity(const ChainSpec& spec, const DisorderRealization& real) {
  return max_bose_fidelity(spec, real, default_time_horizon(spec), kDefaultTimeGrid);
}

}  // namespace spinvalve
