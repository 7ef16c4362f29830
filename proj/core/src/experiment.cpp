#include "spinvalve/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "spinvalve/schedule_io.hpp"

#include "hash.hpp"

namespace spinvalve {
namespace {

namespace fs = std::filesystem;

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Fig4:
      return "fig4";
    case ExperimentKind::Fig5:
      return "fig5";
    case ExperimentKind::Bose:
      return "bose";
    case ExperimentKind::Design:
      return "design";
  }
  return "?";
}

const char* disorder_name(DisorderKind k) {
  switch (k) {
    case DisorderKind::UniformCoupling:
      return "uniform";
    case DisorderKind::GaussianCoupling:
      return "gaussian";
    case DisorderKind::UniformOnsite:
      return "onsite";
  }
  return "?";
}

std::string join17(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt17(xs[i]);
  }
  return out;
}

// Stable rendering of everything that shapes the numbers (seed and output
// location excluded); hashed into the file headers so results can be matched
// back to their exact setup.
std::string canonical_config(const ExperimentConfig& c) {
  std::string s;
  s += "experiment=";
  s += kind_name(c.experiment);
  s += "\nn_sites=" + std::to_string(c.n_sites);
  s += "\ncouplings=" + (c.couplings.empty() ? std::string("uniform") : join17(c.couplings));
  s += "\nstrategy=";
  s += c.fixed_strategy ? "fixed(" + fmt17(c.fixed_tau) + ")" : std::string("greedy");
  s += "\nmax_steps=" + std::to_string(c.max_steps);
  s += "\nt_max=" + fmt17(c.schedule_t_max());
  s += "\ndisorder=";
  s += disorder_name(c.disorder);
  s += "\nstrengths=" + join17(c.strengths);
  s += "\nsamples=" + std::to_string(c.samples);
  s += '\n';
  return s;
}

std::string header(const ExperimentConfig& c, std::uint64_t seed) {
  char fp[20];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a64(canonical_config(c))));
  std::string h = "# spinvalve ";
  h += kind_name(c.experiment);
  h += " seed=" + std::to_string(seed) + " config=" + fp + "\n";
  h += "# n_sites=" + std::to_string(c.n_sites) +
       " couplings=" + (c.couplings.empty() ? std::string("uniform") : join17(c.couplings)) +
       " strategy=" + (c.fixed_strategy ? "fixed(" + fmt12(c.fixed_tau) + ")" : std::string("greedy")) +
       " max_steps=" + std::to_string(c.max_steps) + " t_max=" + fmt12(c.schedule_t_max()) +
       " disorder=" + disorder_name(c.disorder) + " samples=" + std::to_string(c.samples) + "\n";
  return h;
}

// ascending strengths with 0 always present, duplicates dropped
std::vector<double> delta_grid_of(const ExperimentConfig& c) {
  std::vector<double> ds = c.strengths;
  ds.push_back(0.0);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file for writing: " + p.string());
  f << body;
  f.close();
  if (!f) throw std::runtime_error("failed writing output file: " + p.string());
}

void progress(const RunOptions& opts, const std::string& msg) {
  if (!opts.quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

std::string run_fig4(const ExperimentConfig& cfg, const RunOptions& opts, std::uint64_t seed) {
  const ChainSpec spec = cfg.make_chain();
  const ValveSchedule sched = design_schedule(spec, cfg.make_strategy(), cfg.max_steps);
  const std::vector<double> deltas = delta_grid_of(cfg);

  std::string body = header(cfg, seed);
  body += "# per-step mean and population std of the target fidelity over the sample set\n";
  body += "delta,k,mean_F,std_F\n";
  for (double d : deltas) {
    progress(opts, "fig4: delta=" + fmt12(d));
    const McSummary ms = monte_carlo(spec, sched, {cfg.disorder, d}, cfg.samples, seed,
                                     {opts.n_threads});
    for (std::size_t k = 0; k < ms.per_step_mean.size(); ++k) {
      body += fmt12(d);
      body += ',' + std::to_string(k + 1);
      body += ',' + fmt12(ms.per_step_mean[k]);
      body += ',' + fmt12(ms.per_step_std[k]);
      body += '\n';
    }
  }
  return body;
}

std::string run_fig5(const ExperimentConfig& cfg, const RunOptions& opts, std::uint64_t seed) {
  const ChainSpec spec = cfg.make_chain();
  const ValveSchedule sched = design_schedule(spec, cfg.make_strategy(), cfg.max_steps);
  const TimeOpt opt = max_bose_fidelity(spec, DisorderRealization::none(spec));
  const std::vector<double> deltas = delta_grid_of(cfg);

  progress(opts, "fig5: sweeping " + std::to_string(deltas.size()) + " strengths");
  const SweepResult sw = sweep_delta(spec, sched, {cfg.disorder, 0.0}, deltas, cfg.samples,
                                     seed, opt.t_star, {opts.n_threads});

  std::string body = header(cfg, seed);
  body += "# baseline: plain transmission at t_star=" + fmt17(opt.t_star) +
          " ideal_F=" + fmt17(opt.value) + "\n";
  body += "# std columns are population stds over the sample set\n";
  body += "delta,valve_mean_of_max,valve_std,valve_max_of_mean,bose_mean,bose_std\n";
  for (std::size_t i = 0; i < sw.deltas.size(); ++i) {
    body += fmt12(sw.deltas[i]);
    body += ',' + fmt12(sw.valve_curve[i]);
    body += ',' + fmt12(sw.valve_std[i]);
    body += ',' + fmt12(sw.valve_max_of_mean[i]);
    body += ',' + fmt12(sw.bose_curve[i]);
    body += ',' + fmt12(sw.bose_std[i]);
    body += '\n';
  }
  return body;
}

std::string run_bose(const ExperimentConfig& cfg, const RunOptions& opts, std::uint64_t seed) {
  const ChainSpec spec = cfg.make_chain();
  const double horizon = default_time_horizon(spec);
  const TimeOpt opt = max_bose_fidelity(spec, DisorderRealization::none(spec));
  const Spectrum s = eig_tridiag(build_hamiltonian(spec, DisorderRealization::none(spec)));

  progress(opts, "bose: scanning " + std::to_string(kDefaultTimeGrid) + " times");
  std::string body = header(cfg, seed);
  body += "# best window: t_star=" + fmt17(opt.t_star) + " F=" + fmt17(opt.value) + "\n";
  body += "t,fidelity\n";
  bool inserted = false;
  for (int i = 1; i <= kDefaultTimeGrid; ++i) {
    const double t = horizon * i / kDefaultTimeGrid;
    if (!inserted && opt.t_star < t) {
      body += fmt12(opt.t_star);
      body += ',' + fmt12(opt.value);
      body += '\n';
      inserted = true;
    }
    body += fmt12(t);
    body += ',' + fmt12(std::norm(transfer_amplitude(s, t)));
    body += '\n';
  }
  if (!inserted) {
    body += fmt12(opt.t_star);
    body += ',' + fmt12(opt.value);
    body += '\n';
  }
  return body;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::uint64_t seed = opts.seed_override ? *opts.seed_override : cfg.seed;
  const fs::path dir = opts.output_dir.empty() ? fs::path(".") : fs::path(opts.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                             ec.message());

  const fs::path out = dir / cfg.resolved_output_path();
  RunResult res;
  switch (cfg.experiment) {
    case ExperimentKind::Fig4:
      write_text(out, run_fig4(cfg, opts, seed));
      break;
    case ExperimentKind::Fig5:
      write_text(out, run_fig5(cfg, opts, seed));
      break;
    case ExperimentKind::Bose:
      write_text(out, run_bose(cfg, opts, seed));
      break;
    case ExperimentKind::Design: {
      const ChainSpec spec = cfg.make_chain();
      progress(opts, "design: " + std::to_string(cfg.max_steps) + " steps");
      const ValveSchedule sched = design_schedule(spec, cfg.make_strategy(), cfg.max_steps);
      write_schedule_file(out.string(), sched);
      break;
    }
  }
  res.files.push_back(out.string());
  return res;
}

}  // namespace spinvalve
