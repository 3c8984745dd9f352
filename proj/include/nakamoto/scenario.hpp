#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nakamoto/equilibrium.hpp"
#include "nakamoto/fee_market.hpp"
#include "nakamoto/fork_sim.hpp"
#include "nakamoto/network.hpp"

namespace nakamoto {

enum class RunMode { Analytic, Simulate, Cross };

const char* to_string(RunMode m);
// Accepts "analytic", "simulate", "cross". Throws ValidationError otherwise.
RunMode parse_mode(const std::string& s);

// Where the attack-chain fees of a sweep point come from.
struct PhiFromMarket {};     // fee market at the attack-chain interval
struct PhiFromBenchmark {};  // forced equal to the benchmark Phi
using PhiTildeSource = std::variant<PhiFromMarket, PhiFromBenchmark, double>;

// Sweep axes. nullopt entries mean "derive it": alpha from h*/h_A, h_A from
// the cost-minimising power (or the lead margin), d as no retarget, L as the
// expected race length.
struct SweepGrid {
  std::vector<std::optional<double>> alpha{std::nullopt};
  std::vector<double> kappa{1.0};
  std::vector<std::optional<double>> h_attack{std::nullopt};
  std::vector<double> h_rent{0.0};
  std::vector<std::optional<int>> retarget{std::nullopt};
  std::vector<std::optional<double>> duration{std::nullopt};
  std::vector<PhiTildeSource> phi_tilde{PhiFromMarket{}};

  std::size_t size() const;
};

struct AttackSettings {
  std::optional<std::int64_t> attacker;  // miner id; none means a fresh outside miner
  std::optional<CostFunction> cost;      // defaults to the attacker's, else the cheapest linear miner's
  std::optional<double> h_star;          // overrides the equilibrium allocation
  std::optional<double> R_tilde;         // defaults to R
  std::optional<double> lead_margin;     // derived h_A gives attack - honest = margin * H
  double v_attack = 0.0;
  std::optional<int> escrow;
  EntryRule entry = NoEntry{};
  int epoch = 2600;
  SweepGrid sweep;
};

struct PoSSettings {
  double slot_time = 1.0;
  double block_reward = 0.0;
  double interest_rate = 0.0;
  double exchange_rate = 1.0;
  double share = 0.6;
  int horizon_slots = 100000;
  double v_attack = 0.0;
};

struct Scenario {
  std::uint64_t seed = 0;
  RunMode mode = RunMode::Analytic;
  std::size_t replications = 1000;
  std::uint64_t event_budget = 10'000'000;
  unsigned threads = 0;

  double tau = 1.0;
  double block_reward = 0.0;
  FeeMarket market;
  MempoolMode mempool = MempoolMode::Persistent;
  IntervalLaw interval_law = IntervalLaw::Fixed;
  double bid_beta = 0.0;
  std::size_t fee_samples = 10000;

  std::vector<MinerSpec> miners;
  AttackSettings attack;
  std::optional<PoSSettings> pos;
  std::string output_dir = "out";

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Throws ValidationError on parse errors (with line and column) and on
// schema or semantic violations (with the field path).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

// Canonical JSON with every default written out; parse_scenario(echo(s))
// reproduces s.
std::string echo_scenario(const Scenario& s);

}  // namespace nakamoto
