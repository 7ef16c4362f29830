#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinvalve/config.hpp"
#include "spinvalve/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spin-chain state transfer with a receiver valve"};
  std::string config_path;
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--output", output_dir, "directory for result files");
  app.add_option("--seed", seed, "override the seed from the config");
  app.add_flag("--quiet", quiet, "suppress progress and summary output");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + config_path);

    const spinvalve::ExperimentConfig cfg = spinvalve::parse_config(text.str());
    spinvalve::RunOptions opts;
    opts.output_dir = output_dir;
    opts.seed_override = seed;
    opts.quiet = quiet;
    if (const char* env = std::getenv("SPINVALVE_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) opts.n_threads = n;
    }

    const spinvalve::RunResult res = spinvalve::run_experiment(cfg, opts);
    if (!quiet)
      for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
