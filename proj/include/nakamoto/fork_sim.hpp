#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "nakamoto/cost_function.hpp"
#include "nakamoto/fee_market.hpp"
#include "nakamoto/network.hpp"
#include "nakamoto/stats.hpp"

namespace nakamoto {

// Reveal as soon as the attack chain is heavier than the honest chain.
struct LeadByOne {};

// Recipients wait for `w` honest confirmations. The attacker stops mining once
// it holds at least w+1 blocks and leads, and reveals when the honest chain
// reaches w blocks.
struct Escrow {
  int w = 1;
};

using StopRule = std::variant<LeadByOne, Escrow>;

struct NoRetarget {};

// Retrospective difficulty retarget every `epoch` blocks. The fork happens
// `blocks_to_retarget` blocks before the next boundary; the earlier part of
// that epoch was mined at exactly tau per block.
struct EpochRetarget {
  int epoch = 2600;
  int blocks_to_retarget = 2600;
};

using RetargetRule = std::variant<NoRetarget, EpochRetarget>;

struct NoEntry {};

// Equally efficient fringe miners restore the honest chain to H at the fork.
struct ImmediateEntry {};

// Honest power grows linearly at `rate` per time unit up to `cap`
// (cap = H for efficient entrants, below H when entrants are less efficient).
struct DelayedEntry {
  double rate = 0.0;
  double cap = 0.0;
};

using EntryRule = std::variant<NoEntry, ImmediateEntry, DelayedEntry>;

struct RaceConfig {
  double attack_power = 0.0;     // total power on the attack chain, rented included
  double honest_power = 0.0;     // H - alpha h_A - h_rent
  double benchmark_power = 0.0;  // H before the attack
  double difficulty = 1.0;       // D at the fork
  double tau = 1.0;
  double block_reward = 0.0;     // reward per attack block

  // Attacker's running cost is attacker_cost(own_power) + extra_cost_rate per
  // unit time while mining. own_power < 0 means "all of attack_power".
  CostFunction attacker_cost = CostFunction::linear(0.0);
  double own_power = -1.0;
  double extra_cost_rate = 0.0;

  FeeMarket market;
  BidAdjustPolicy bids;
  MempoolMode mempool = MempoolMode::Persistent;

  StopRule stop = LeadByOne{};
  RetargetRule retarget = NoRetarget{};
  EntryRule entry = NoEntry{};

  std::uint64_t seed = 0;
  std::uint64_t event_budget = 10'000'000;

  void validate() const;
  // The attack wins with probability one when its power exceeds every honest
  // power level the race can reach.
  bool guaranteed() const;
};

struct RetargetEvent {
  double time = 0.0;
  bool attack_chain = false;
  double new_difficulty = 0.0;

  bool operator==(const RetargetEvent&) const = default;
};

struct SimTrace {
  double duration = 0.0;
  int attack_blocks = 0;
  int honest_blocks = 0;
  double attack_fees = 0.0;
  double orphaned_honest_fees = 0.0;
  double mining_time = 0.0;  // time the attacker actually mined
  double realized_mining_cost = 0.0;
  double realized_attack_cost = 0.0;  // mining cost - attack block rewards - attack fees
  double attack_weight = 0.0;         // sum of block difficulties, attack chain
  double honest_weight = 0.0;
  int honest_blocks_at_suspend = -1;  // escrow only; -1 if the attacker never suspended
  bool guaranteed = true;
  std::vector<RetargetEvent> retargets;

  bool operator==(const SimTrace&) const = default;
};

// Throws SimulationBudgetExceeded when the race exceeds cfg.event_budget events.
SimTrace run_race(const RaceConfig& cfg);

struct BatchSummary {
  std::size_t replications = 0;
  Estimate duration;
  Estimate attack_blocks;
  Estimate honest_blocks;
  Estimate attack_fees;
  Estimate orphaned_honest_fees;
  Estimate mining_cost;
  Estimate attack_cost;
  std::vector<double> durations;  // per replication, in replication order
  std::vector<double> attack_costs;
  bool guaranteed = true;
};

// Replication k runs with seed split_seed(cfg.seed, k). Per-run errors are
// rethrown with the replication index attached. threads = 0 picks the
// hardware concurrency; results do not depend on the thread count.
BatchSummary run_batch(const RaceConfig& cfg, std::size_t replications, unsigned threads = 0);

// Summary of traces given in any order.
BatchSummary summarize(std::span<const SimTrace> traces);

struct ChainSegment {
  int blocks = 0;
  double difficulty = 0.0;
};

enum class ForkWinner { Public, Challenger };

// Heaviest-chain rule over post-fork segments; equal weight keeps the public chain.
ForkWinner heaviest_chain(std::span<const ChainSegment> public_chain,
                          std::span<const ChainSegment> challenger);

double chain_weight(std::span<const ChainSegment> chain);

}  // namespace nakamoto
