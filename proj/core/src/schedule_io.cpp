#include "spinvalve/schedule_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinvalve {
namespace {

constexpr double kBookkeepingTol = 1e-12;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("schedule line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string schedule_to_string(const ValveSchedule& sched) {
  if (sched.steps.size() != sched.design_fidelities.size())
    throw std::invalid_argument("schedule steps and design_fidelities are out of sync");
  if (sched.n_sites < 2) throw std::invalid_argument("schedule has no valid chain size");
  if (sched.strategy.empty() || sched.strategy.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("schedule strategy must be a single token");

  std::string out = "valve-schedule v1 N=" + std::to_string(sched.n_sites) +
                    " strategy=" + sched.strategy + "\n";
  for (std::size_t i = 0; i < sched.steps.size(); ++i) {
    const auto& st = sched.steps[i];
    const double f_prev = i == 0 ? 0.0 : sched.design_fidelities[i - 1];
    out += std::to_string(i + 1);
    out += ' ';
    out += fmt17(st.t);
    out += ' ';
    out += fmt17(st.gate.a.real());
    out += ' ';
    out += fmt17(st.gate.a.imag());
    out += ' ';
    out += fmt17(f_prev);
    out += ' ';
    out += fmt17(sched.design_fidelities[i]);
    out += '\n';
  }
  return out;
}

ValveSchedule schedule_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(1, "missing header");

  std::istringstream header(line);
  std::string magic, version, nfield, sfield, extra;
  if (!(header >> magic) || magic != "valve-schedule") fail(1, "not a valve-schedule file");
  if (!(header >> version) || version != "v1") fail(1, "unsupported version");
  if (!(header >> nfield) || nfield.rfind("N=", 0) != 0) fail(1, "missing N= field");
  if (!(header >> sfield) || sfield.rfind("strategy=", 0) != 0) fail(1, "missing strategy= field");
  if (header >> extra) fail(1, "unexpected trailing header field");

  ValveSchedule out;
  try {
    std::size_t used = 0;
    out.n_sites = std::stoi(nfield.substr(2), &used);
    if (used != nfield.size() - 2) fail(1, "malformed N= field");
  } catch (const std::invalid_argument&) {
    fail(1, "malformed N= field");
  } catch (const std::out_of_range&) {
    fail(1, "malformed N= field");
  }
  if (out.n_sites < 2) fail(1, "chain size must be at least 2");
  out.strategy = sfield.substr(9);
  if (out.strategy.empty()) fail(1, "empty strategy name");

  int lineno = 1;
  int k = 0;
  double prev_f = 0.0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    long index = 0;
    double t = 0, re = 0, im = 0, f_prev = 0, f_k = 0;
    if (!(ls >> index >> t >> re >> im >> f_prev >> f_k))
      fail(lineno, "expected 'k t re_a im_a f_prev f_k'");
    std::string trailing;
    if (ls >> trailing) fail(lineno, "unexpected trailing field");
    ++k;
    if (index != k) fail(lineno, "step index out of order");
    if (!std::isfinite(t) || t <= 0.0) fail(lineno, "step time must be positive");
    if (!std::isfinite(re) || !std::isfinite(im) || !std::isfinite(f_prev) || !std::isfinite(f_k))
      fail(lineno, "fields must be finite");
    if (std::abs(f_prev - prev_f) > kBookkeepingTol)
      fail(lineno, "f_prev does not continue the previous step");

    ValveGate gate;
    try {
      gate = build_valve_gate({re, im}, f_prev);
    } catch (const std::invalid_argument& e) {
      fail(lineno, e.what());
    }
    if (std::abs(gate.f_step - f_k) > kBookkeepingTol)
      fail(lineno, "f_k is inconsistent with f_prev + |a|^2");

    out.steps.push_back({t, gate});
    // keep the file's scalar verbatim so rewriting reproduces the bytes
    out.design_fidelities.push_back(f_k);
    prev_f = f_k;
  }
  return out;
}

void write_schedule_file(const std::string& path, const ValveSchedule& sched) {
  const std::string body = schedule_to_string(sched);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open schedule file for writing: " + path);
  f << body;
  f.close();
  if (!f) throw std::runtime_error("failed writing schedule file: " + path);
}

ValveSchedule read_schedule_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open schedule file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return schedule_from_string(ss.str());
}

}  // namespace spinvalve
