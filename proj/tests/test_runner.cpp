#include <cmath>
#include <string>

#include "doctest.h"
#include "nakamoto/attack_economics.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/runner.hpp"

using namespace nakamoto;

namespace {

// Linear market, R = 50 plus a small uniform fee market, explicit grids.
Scenario linear_surface() {
  return parse_scenario(R"({
    "seed": 11,
    "network": {"tau": 1, "block_reward": 50},
    "fee_market": {"sigma": 10, "capacity": 5, "fees": {"law": "uniform", "lo": 0, "hi": 1}, "samples": 4000},
    "miners": [{"id": 1, "cost": {"type": "linear", "c": 1}}, {"id": 2, "cost": {"type": "linear", "c": 1}}],
    "attack": {"h_star": 40, "lead_margin": 0.2,
               "sweep": {"alpha": [0, 0.5, 1], "kappa": [1, 1.5, 2], "duration": [10], "phi_tilde": [3, "market"]}}
  })");
}

// 60 against 40 at D = 100 with no fees: L = 5 and three attack blocks on average.
Scenario hitting_time(const char* mode, unsigned threads, std::size_t reps) {
  Scenario s = parse_scenario(R"({
    "seed": 3,
    "network": {"tau": 1, "block_reward": 100},
    "miners": [{"id": 1, "cost": {"type": "linear", "c": 1}}],
    "attack": {"h_star": 60, "R_tilde": 80, "sweep": {"alpha": [1], "h_attack": [60]}}
  })");
  s.mode = parse_mode(mode);
  s.threads = threads;
  s.replications = reps;
  return s;
}

}  // namespace

TEST_CASE("format_double uses 12 significant digits") {
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(123456789.123456789) == "123456789.123");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(2.5e-20) == "2.5e-20");
  CHECK(format_double(kMissing).empty());
}

TEST_CASE("CSV table round trip with quoting") {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x,y"}, {"", "say \"hi\""}};
  const auto csv = t.to_csv();
  CHECK(csv == "a,b\n1,\"x,y\"\n,\"say \"\"hi\"\"\"\n");
  const auto back = Table::from_csv(csv);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(Table::from_csv("a,b\n1\n"), ValidationError);
  CHECK_THROWS_AS(Table::from_csv("a\n\"open\n"), ValidationError);
}

TEST_CASE("expand_grid varies the last axis fastest") {
  SweepGrid g;
  g.alpha = {0.0, 1.0};
  g.kappa = {1.0, 2.0};
  g.phi_tilde = {PhiFromMarket{}, 5.0};
  const auto pts = expand_grid(g);
  REQUIRE(pts.size() == 8);
  CHECK(pts[0].alpha == 0.0);
  CHECK(pts[0].kappa == 1.0);
  CHECK(std::holds_alternative<PhiFromMarket>(pts[0].phi_tilde));
  CHECK(std::holds_alternative<double>(pts[1].phi_tilde));
  CHECK(pts[2].kappa == 2.0);
  CHECK(pts[4].alpha == 1.0);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].index == i);
}

TEST_CASE("analytic linear sweep reproduces the closed-form surface") {
  const Scenario s = linear_surface();
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 18);
  for (const auto& r : rows) {
    CAPTURE(r.point);
    CHECK(r.h_attack * (1.0 + r.alpha) == doctest::Approx(1.2 * r.H));
    CHECK(r.duration == 10.0);
    const double expected = linear_net_cost(r.h_attack, s.tau * r.H, s.block_reward + r.Phi,
                                            s.block_reward + r.Phi_tilde, r.kappa, r.alpha, r.duration);
    CHECK(r.net_cost == doctest::Approx(expected).epsilon(1e-9).scale(s.block_reward));
    CHECK(std::isnan(r.sim_net_cost));
  }
  // alpha = 1 removes the premium: kappa has no effect.
  CHECK(rows[12].net_cost == doctest::Approx(rows[16].net_cost).epsilon(1e-12));
  // with alpha = 0 the premium adds h/(tau H) (R+Phi)(kappa-1) L per unit of kappa.
  const auto& r0 = rows[0];
  const auto& r1 = rows[2];
  CHECK(r1.net_cost - r0.net_cost ==
        doctest::Approx(r0.h_attack / r0.H * (s.block_reward + r0.Phi) * 0.5 * r0.duration).epsilon(1e-9));
}

TEST_CASE("cross mode agrees on the hitting-time example") {
  const auto rows = run_sweep(hitting_time("cross", 1, 20000));
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.duration == doctest::Approx(5.0));
  CHECK(r.net_cost == doctest::Approx(0.6 * 20.0 * 5.0));
  CHECK(r.sim_duration == doctest::Approx(5.0).epsilon(0.05));
  REQUIRE(r.agree.has_value());
  CHECK(*r.agree);
}

TEST_CASE("simulated output is deterministic and thread-count invariant") {
  const auto one = rows_to_table(run_sweep(hitting_time("simulate", 1, 2000))).to_csv();
  const auto again = rows_to_table(run_sweep(hitting_time("simulate", 1, 2000))).to_csv();
  const auto four = rows_to_table(run_sweep(hitting_time("simulate", 4, 2000))).to_csv();
  CHECK(one == again);
  CHECK(one == four);
  Scenario reseeded = hitting_time("simulate", 1, 2000);
  reseeded.seed = 4;
  CHECK(rows_to_table(run_sweep(reseeded)).to_csv() != one);
}

TEST_CASE("report is recomputed identically from the CSV") {
  Scenario s = linear_surface();
  s.mode = RunMode::Analytic;
  const auto rows = run_sweep(s);
  const auto csv = rows_to_table(rows).to_csv();
  const auto parsed = rows_from_table(Table::from_csv(csv));
  CHECK(sweep_report(parsed) == sweep_report(rows));
  CHECK(rows_to_table(parsed).to_csv() == csv);
  CHECK(csv.rfind("schema_version,point,alpha,kappa,", 0) == 0);

  auto t = Table::from_csv(csv);
  t.rows[0][0] = "99";
  CHECK_THROWS_AS(rows_from_table(t), ValidationError);
  t = Table::from_csv(csv);
  std::swap(t.header[2], t.header[3]);
  CHECK_THROWS_AS(rows_from_table(t), ValidationError);
}

TEST_CASE("sweep errors carry the point coordinates") {
  Scenario s = linear_surface();
  s.attack.lead_margin.reset();
  try {
    run_sweep(s);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("point 0") != std::string::npos);
    CHECK(msg.find("alpha=0") != std::string::npos);
    CHECK(msg.find("lead_margin") != std::string::npos);
  }
}

TEST_CASE("equilibrium table lists every miner") {
  const auto t = equilibrium_table(linear_surface());
  CHECK(t.rows.size() == 2);
  CHECK(t.header.front() == "schema_version");
}

TEST_CASE("pos run needs a pos block") {
  CHECK_THROWS_AS(run_pos(linear_surface()), ValidationError);
}
