#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "spinvalve/config.hpp"

using namespace spinvalve;

TEST_CASE("empty config yields defaults") {
  const auto cfg = parse_config("");
  CHECK(cfg.experiment == ExperimentKind::Fig4);
  CHECK(cfg.n_sites == 20);
  CHECK(cfg.couplings.empty());
  CHECK(std::holds_alternative<GreedyArrival>(cfg.make_strategy()));
  CHECK(cfg.max_steps == 20);
  CHECK(!cfg.t_max.has_value());
  CHECK(cfg.schedule_t_max() == 10.0);
  CHECK(cfg.disorder == DisorderKind::UniformCoupling);
  REQUIRE(cfg.strengths.size() == 1);
  CHECK(cfg.strengths[0] == 0.0);
  CHECK(cfg.samples == 100);
  CHECK(cfg.seed == 1);
  CHECK(cfg.resolved_output_path() == "fig4.csv");

  const auto spec = cfg.make_chain();
  CHECK(spec.n_sites == 20);
  for (double c : spec.couplings) CHECK(c == 1.0);
}

TEST_CASE("comments and whitespace are tolerated") {
  const auto cfg = parse_config(
      "# transmission experiment\n"
      "\n"
      "  experiment = bose   # trailing comment\n"
      "\tn_sites\t=\t12\n"
      "samples=7\n");
  CHECK(cfg.experiment == ExperimentKind::Bose);
  CHECK(cfg.n_sites == 12);
  CHECK(cfg.samples == 7);
  CHECK(cfg.resolved_output_path() == "bose.csv");
  CHECK(cfg.schedule_t_max() == 6.0);
}

TEST_CASE("all experiment kinds parse") {
  CHECK(parse_config("experiment = fig4\n").experiment == ExperimentKind::Fig4);
  CHECK(parse_config("experiment = fig5\n").experiment == ExperimentKind::Fig5);
  CHECK(parse_config("experiment = design\n").experiment == ExperimentKind::Design);
  CHECK(parse_config("experiment = design\n").resolved_output_path() == "design.schedule");
  CHECK(parse_config("experiment = fig5\n").resolved_output_path() == "fig5.csv");
  CHECK_THROWS_AS(parse_config("experiment = fig6\n"), ParseError);
}

TEST_CASE("disorder models and strength grids") {
  const auto g = parse_config("disorder.model = gaussian\n");
  CHECK(g.disorder == DisorderKind::GaussianCoupling);
  const auto o = parse_config("disorder.model = onsite\n");
  CHECK(o.disorder == DisorderKind::UniformOnsite);

  const auto range = parse_config("disorder.strengths = 0:0.05:0.5\n");
  REQUIRE(range.strengths.size() == 11);
  CHECK(range.strengths.front() == 0.0);
  CHECK(range.strengths[1] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(range.strengths.back() == doctest::Approx(0.5).epsilon(1e-12));

  const auto list = parse_config("disorder.strengths = 0, 0.1, 0.25\n");
  REQUIRE(list.strengths.size() == 3);
  CHECK(list.strengths[2] == 0.25);

  const auto spaced = parse_config("disorder.strengths = 0.1 0.2\n");
  REQUIRE(spaced.strengths.size() == 2);

  CHECK_THROWS_AS(parse_config("disorder.strengths = 0.1, -0.2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("disorder.strengths = 0.5:0.05:0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("disorder.model = poisson\n"), ParseError);
}

TEST_CASE("schedule strategies") {
  const auto f = parse_config("schedule.strategy = fixed(2.5)\n");
  const auto fs = f.make_strategy();
  REQUIRE(std::holds_alternative<FixedInterval>(fs));
  CHECK(std::get<FixedInterval>(fs).tau == 2.5);

  const auto g = parse_config("schedule.strategy = greedy\nschedule.t_max = 7.5\n");
  const auto gs = g.make_strategy();
  REQUIRE(std::holds_alternative<GreedyArrival>(gs));
  CHECK(std::get<GreedyArrival>(gs).t_max == 7.5);
  CHECK(g.schedule_t_max() == 7.5);

  CHECK_THROWS_AS(parse_config("schedule.strategy = fixed(0)\n"), ParseError);
  CHECK_THROWS_AS(parse_config("schedule.strategy = lazy\n"), ParseError);
  CHECK_THROWS_AS(parse_config("schedule.t_max = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_config("schedule.t_max = -3\n"), ParseError);
  CHECK_THROWS_AS(parse_config("schedule.max_steps = 0\n"), ParseError);
}

TEST_CASE("explicit coupling profiles") {
  const auto cfg = parse_config(
      "n_sites = 4\n"
      "coupling_profile = 1.0, 0.8, 1.2\n");
  const auto spec = cfg.make_chain();
  REQUIRE(spec.couplings.size() == 3);
  CHECK(spec.couplings[1] == 0.8);

  CHECK_NOTHROW(parse_config("coupling_profile = uniform\n").make_chain());

  CHECK_THROWS_AS(parse_config("n_sites = 4\ncoupling_profile = 1.0, 0.8\n"), ParseError);
  CHECK_THROWS_AS(parse_config("coupling_profile = 1.0, -0.5, 1.0\nn_sites = 4\n"), ParseError);
}

TEST_CASE("errors carry the line number and key") {
  try {
    parse_config("n_sites = 20\nsamples = 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.key == "samples");
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("samples") != std::string::npos);
  }

  try {
    parse_config("experiment = fig4\nn_sites : 20\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_config("unknown_key = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("n_sites = \n"), ParseError);
  CHECK_THROWS_AS(parse_config("n_sites = twenty\n"), ParseError);
  CHECK_THROWS_AS(parse_config("n_sites = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("n_sites = -4\n"), ParseError);
  CHECK_THROWS_AS(parse_config("samples = 1e9\n"), ParseError);
  CHECK_THROWS_AS(parse_config("seed = -1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("n_sites = 8\nn_sites = 9\n"), ParseError);
}

TEST_CASE("large seeds survive") {
  const auto cfg = parse_config("seed = 18446744073709551615\n");
  CHECK(cfg.seed == UINT64_MAX);
}

TEST_CASE("output path override") {
  const auto cfg = parse_config("output_path = runs/out.csv\n");
  CHECK(cfg.resolved_output_path() == "runs/out.csv");
}
