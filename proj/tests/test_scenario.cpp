#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "nakamoto/errors.hpp"
#include "nakamoto/scenario.hpp"

using namespace nakamoto;

namespace {

const char* kMinimal = R"({
  "seed": 5,
  "network": {"block_reward": 100},
  "miners": [{"id": 1, "cost": {"type": "linear", "c": 1}}]
})";

// Splices `extra` (a JSON member list) into the minimal document.
std::string with(const std::string& extra) {
  std::string s = kMinimal;
  s.insert(s.rfind('}'), ",\n" + extra);
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal scenario picks up defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.seed == 5);
  CHECK(s.mode == RunMode::Analytic);
  CHECK(s.replications == 1000);
  CHECK(s.tau == 1.0);
  CHECK(s.block_reward == 100.0);
  CHECK(s.market.sigma == 0.0);
  CHECK(s.market.capacity == 1);
  CHECK(s.mempool == MempoolMode::Persistent);
  CHECK(s.attack.epoch == 2600);
  CHECK(s.attack.sweep.size() == 1);
  CHECK_FALSE(s.pos.has_value());
  REQUIRE(s.miners.size() == 1);
  CHECK(s.miners[0].cost.is_linear());
}

TEST_CASE("required fields are reported by path") {
  CHECK(error_of(R"({"network": {"block_reward": 1}, "miners": []})").find("seed") != std::string::npos);
  CHECK(error_of(R"({"seed": 1, "miners": []})").find("network") != std::string::npos);
  CHECK(error_of(R"({"seed": 1, "network": {}, "miners": []})").find("network.block_reward") !=
        std::string::npos);
  CHECK(error_of(R"({"seed": 1, "network": {"block_reward": 1}, "miners": []})").find("miners") !=
        std::string::npos);
}

TEST_CASE("unknown fields are rejected") {
  const auto msg = error_of(with(R"("netwrok": {})"));
  CHECK(msg.find("netwrok") != std::string::npos);
  const auto nested = error_of(with(R"("attack": {"sweep": {"alpah": [0]}})"));
  CHECK(nested.find("attack.sweep.alpah") != std::string::npos);
}

TEST_CASE("invalid grids name the offending entry") {
  CHECK(error_of(with(R"("attack": {"sweep": {"kappa": [1, 0.5]}})")).find("attack.sweep.kappa[1]") !=
        std::string::npos);
  CHECK(error_of(with(R"("attack": {"sweep": {"alpha": []}})")).find("attack.sweep.alpha") !=
        std::string::npos);
  CHECK(error_of(with(R"("attack": {"sweep": {"alpha": [1.5]}})")).find("attack.sweep.alpha[0]") !=
        std::string::npos);
  CHECK_FALSE(error_of(with(R"("attack": {"sweep": {"retarget": [100], "h_rent": [10]}})")).empty());
}

TEST_CASE("inside portion cannot exceed the pre-attack power") {
  const auto msg =
      error_of(with(R"("attack": {"h_star": 10, "sweep": {"alpha": [0.5], "h_attack": [30]}})"));
  CHECK(msg.find("attack.sweep.alpha[0]") != std::string::npos);
  CHECK(error_of(with(R"("attack": {"h_star": 15, "sweep": {"alpha": [0.5], "h_attack": [30]}})")).empty());
}

TEST_CASE("kappa and alpha are linear-only knobs") {
  const std::string convex = R"({
    "seed": 1, "network": {"block_reward": 10},
    "miners": [{"id": 1, "cost": {"type": "power", "gamma": 1, "p": 2}}],
    "attack": {"attacker": 1, "sweep": {"kappa": [2]}}
  })";
  CHECK(error_of(convex).find("kappa") != std::string::npos);
}

TEST_CASE("parse errors carry line and column") {
  const auto msg = error_of("{\n  \"seed\": 1,\n  \"network\": {\"block_reward\": }\n}");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("mode strings") {
  CHECK(parse_mode("cross") == RunMode::Cross);
  CHECK(std::string(to_string(RunMode::Simulate)) == "simulate");
  CHECK_THROWS_AS(parse_mode("fast"), ValidationError);
}

TEST_CASE("echo is a fixed point of parse") {
  const std::string full = R"({
    "seed": 42, "mode": "cross", "replications": 77, "threads": 2,
    "network": {"tau": 2, "block_reward": 12.5},
    "fee_market": {"sigma": 3, "capacity": 4, "fees": {"law": "empirical", "fees": [1, 2, 3]},
                   "arrivals": "fixed", "mempool": "windowed", "interval_law": "exponential",
                   "bid_beta": 0.5, "samples": 99},
    "miners": [{"id": 3, "cost": {"type": "power", "gamma": 0.1, "p": 3}},
               {"id": 4, "cost": {"type": "premium", "c": 1, "kappa": 1.5, "alpha": 0.25}}],
    "attack": {"attacker": 4, "h_star": 1, "R_tilde": 10, "lead_margin": 0.1, "v_attack": 3,
               "escrow": 6, "entry": {"rate": 0.5, "cap": 2}, "epoch": 100,
               "sweep": {"alpha": ["auto", 0], "kappa": [1, 2], "h_attack": [5, "auto"],
                         "retarget": ["none", 50], "duration": [4, "auto"],
                         "phi_tilde": ["market", "benchmark", 1.5]}},
    "pos": {"slot_time": 12, "block_reward": 2, "interest_rate": 0.05, "exchange_rate": 3,
            "share": 0.7, "horizon_slots": 500, "v_attack": 1},
    "output": {"dir": "results"}
  })";
  const Scenario s = parse_scenario(full);
  const std::string echo = echo_scenario(s);
  CHECK(echo_scenario(parse_scenario(echo)) == echo);
  CHECK(echo_scenario(parse_scenario(kMinimal)) == echo_scenario(parse_scenario(echo_scenario(parse_scenario(kMinimal)))));
  CHECK(s.attack.sweep.size() == 2 * 2 * 2 * 2 * 2 * 3);
  CHECK(s.output_dir == "results");
}

TEST_CASE("load_scenario reads files and reports missing ones") {
  const auto path = std::filesystem::temp_directory_path() / "nakamoto_test_scenario.json";
  {
    std::ofstream(path) << kMinimal;
  }
  CHECK(load_scenario(path).seed == 5);
  std::filesystem::remove(path);
  CHECK_THROWS(load_scenario(path));
}
