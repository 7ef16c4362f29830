#include "spinvalve/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>

namespace spinvalve {
namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(int line, const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty() || errno == ERANGE || !std::isfinite(x))
    throw ParseError(line, key, "expected a finite number, got '" + v + "'");
  return x;
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty() || errno == ERANGE)
    throw ParseError(line, key, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
  if (v.empty() || v[0] == '-' || v[0] == '+')
    throw ParseError(line, key, "expected an unsigned integer, got '" + v + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw ParseError(line, key, "expected an unsigned integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// either an explicit list or a start:step:stop range
std::vector<double> parse_strengths(int line, const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : v) {
      if (c == ':') {
        parts.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(trim(cur));
    if (parts.size() != 3) throw ParseError(line, key, "range must be start:step:stop");
    const double start = parse_real(line, key, parts[0]);
    const double step = parse_real(line, key, parts[1]);
    const double stop = parse_real(line, key, parts[2]);
    if (start < 0.0) throw ParseError(line, key, "range start must be non-negative");
    if (step <= 0.0) throw ParseError(line, key, "range step must be positive");
    if (stop < start) throw ParseError(line, key, "range stop must be at least start");
    const long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ParseError(line, key, "range expands to too many values");
    for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  for (const auto& tok : split_list(v)) {
    const double x = parse_real(line, key, tok);
    if (x < 0.0) throw ParseError(line, key, "strengths must be non-negative");
    out.push_back(x);
  }
  if (out.empty()) throw ParseError(line, key, "expected at least one strength");
  return out;
}

}  // namespace

ParseError::ParseError(int line_, std::string key_, const std::string& message)
    : std::runtime_error("config line " + std::to_string(line_) +
                         (key_.empty() ? std::string() : ", key '" + key_ + "'") + ": " + message),
      line(line_),
      key(std::move(key_)) {}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  int couplings_line = 0;
  int lineno = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    std::string line(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "", "missing key before '='");
    if (value.empty()) throw ParseError(lineno, key, "missing value");
    if (!seen.insert(key).second) throw ParseError(lineno, key, "duplicate key");

    if (key == "experiment") {
      if (value == "fig4")
        cfg.experiment = ExperimentKind::Fig4;
      else if (value == "fig5")
        cfg.experiment = ExperimentKind::Fig5;
      else if (value == "bose")
        cfg.experiment = ExperimentKind::Bose;
      else if (value == "design")
        cfg.experiment = ExperimentKind::Design;
      else
        throw ParseError(lineno, key, "expected fig4, fig5, bose, or design");
    } else if (key == "n_sites") {
      const long long n = parse_int(lineno, key, value);
      if (n < 2 || n > 16384) throw ParseError(lineno, key, "n_sites must be in [2, 16384]");
      cfg.n_sites = static_cast<int>(n);
    } else if (key == "coupling_profile") {
      if (value == "uniform") {
        cfg.couplings.clear();
      } else {
        cfg.couplings.clear();
        for (const auto& tok : split_list(value)) {
          const double c = parse_real(lineno, key, tok);
          if (c <= 0.0) throw ParseError(lineno, key, "couplings must be strictly positive");
          cfg.couplings.push_back(c);
        }
        if (cfg.couplings.empty()) throw ParseError(lineno, key, "expected at least one coupling");
        couplings_line = lineno;
      }
    } else if (key == "schedule.strategy") {
      if (value == "greedy") {
        cfg.fixed_strategy = false;
      } else if (value.rfind("fixed(", 0) == 0 && value.back() == ')') {
        const std::string inner = trim(value.substr(6, value.size() - 7));
        const double tau = parse_real(lineno, key, inner);
        if (tau <= 0.0) throw ParseError(lineno, key, "tau must be positive");
        cfg.fixed_strategy = true;
        cfg.fixed_tau = tau;
      } else {
        throw ParseError(lineno, key, "expected greedy or fixed(<tau>)");
      }
    } else if (key == "schedule.max_steps") {
      const long long k = parse_int(lineno, key, value);
      if (k < 1 || k > 1000000) throw ParseError(lineno, key, "max_steps must be in [1, 1000000]");
      cfg.max_steps = static_cast<int>(k);
    } else if (key == "schedule.t_max") {
      const double t = parse_real(lineno, key, value);
      if (t <= 0.0) throw ParseError(lineno, key, "t_max must be positive");
      cfg.t_max = t;
    } else if (key == "disorder.model") {
      if (value == "uniform")
        cfg.disorder = DisorderKind::UniformCoupling;
      else if (value == "gaussian")
        cfg.disorder = DisorderKind::GaussianCoupling;
      else if (value == "onsite")
        cfg.disorder = DisorderKind::UniformOnsite;
      else
        throw ParseError(lineno, key, "expected uniform, gaussian, or onsite");
    } else if (key == "disorder.strengths") {
      cfg.strengths = parse_strengths(lineno, key, value);
    } else if (key == "samples") {
      const long long n = parse_int(lineno, key, value);
      if (n < 1 || n > 100000000) throw ParseError(lineno, key, "samples must be in [1, 100000000]");
      cfg.samples = static_cast<int>(n);
    } else if (key == "seed") {
      cfg.seed = parse_u64(lineno, key, value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      throw ParseError(lineno, key, "unknown key");
    }
  }

  if (!cfg.couplings.empty() &&
      cfg.couplings.size() != static_cast<std::size_t>(cfg.n_sites - 1)) {
    throw ParseError(couplings_line, "coupling_profile",
                     "expected " + std::to_string(cfg.n_sites - 1) + " couplings, got " +
                         std::to_string(cfg.couplings.size()));
  }
  return cfg;
}

double ExperimentConfig::schedule_t_max() const {
  return t_max ? *t_max : n_sites / 2.0;
}

std::string ExperimentConfig::resolved_output_path() const {
  if (output_path) return *output_path;
  switch (experiment) {
    case ExperimentKind::Fig4:
      return "fig4.csv";
    case ExperimentKind::Fig5:
      return "fig5.csv";
    case ExperimentKind::Bose:
      return "bose.csv";
    case ExperimentKind::Design:
      return "design.schedule";
  }
  return "out.csv";
}

ChainSpec ExperimentConfig::make_chain() const {
  if (couplings.empty()) return ChainSpec::uniform(n_sites);
  return ChainSpec(n_sites, couplings, std::vector<double>(n_sites, 0.0));
}

ScheduleStrategy ExperimentConfig::make_strategy() const {
  if (fixed_strategy) return FixedInterval{fixed_tau};
  return GreedyArrival{schedule_t_max(), kDefaultTimeGrid};
}

}  // namespace spinvalve
