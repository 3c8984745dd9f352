#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nakamoto/fee_market.hpp"
#include "nakamoto/network.hpp"
#include "nakamoto/stats.hpp"

namespace nakamoto {

// Proof-of-Stake chain with longest-chain fork choice. The fee market's tau
// is the slot time.
struct PoSParams {
  double slot_time = 1.0;      // tau_s
  double block_reward = 0.0;   // R_s, fiat
  double interest_rate = 0.0;  // r, per unit time
  double exchange_rate = 1.0;  // e_s, fiat per coin
  FeeMarket market;

  void validate() const;
};

struct StakeSet {
  std::map<MinerId, double> stakes;
  double total = 0.0;
};

// Free-entry stake S = (R_s + Phi_s) / (tau_s r e_s), split across validators
// in proportion to `weights` (shares are indeterminate under linear staking
// costs). Throws NoEquilibrium for non-positive revenue or staking cost.
StakeSet pos_equilibrium(const PoSParams& params, double Phi_s,
                         const std::vector<std::pair<MinerId, double>>& weights);

// (s/S)(R_s + Phi_s)/tau_s - r s e_s per unit time.
double staking_profit_rate(const PoSParams& params, double Phi_s, double stake, double total);

struct PoSAttackTrace {
  int slots = 0;
  int attack_blocks = 0;
  int honest_blocks = 0;
  int benchmark_attacker_blocks = 0;  // A's blocks over the same slots in an independent no-attack run
  double attack_fees = 0.0;
  double honest_fees = 0.0;
  double benchmark_fees = 0.0;  // no-attack chain, one block per slot
  double duration = 0.0;
  bool completed = false;   // attack branch overtook within the horizon
  bool guaranteed = true;   // share > 1/2

  double attack_fees_per_block() const;
  double benchmark_fees_per_block() const;
};

// One slot every tau_s; the proposer is A with probability `share` = s_A/S,
// drawn independently. A's blocks go only to the attack branch, everyone
// else's only to the honest branch. Stops when the attack branch is longer
// or after `horizon_slots` slots.
PoSAttackTrace simulate_pos_attack(double share, const PoSParams& params, int horizon_slots,
                                   std::uint64_t seed,
                                   MempoolMode mempool = MempoolMode::Persistent);

struct PoSBatchSummary {
  std::size_t replications = 0;
  Estimate slots;
  Estimate attack_blocks;
  Estimate benchmark_attacker_blocks;
  Estimate block_count_gap;  // attack_blocks - benchmark_attacker_blocks
  Estimate attack_fee_per_block;
  Estimate benchmark_fee_per_block;
  Estimate fee_gap;  // attack minus benchmark, per replication
  std::size_t incomplete = 0;
};

PoSBatchSummary run_pos_batch(double share, const PoSParams& params, int horizon_slots,
                              std::size_t replications, std::uint64_t seed,
                              MempoolMode mempool = MempoolMode::Persistent);

struct PoSAttackCost {
  double attack_cost = 0.0;
  bool ic_holds = false;  // attack_cost >= V_attack
};

// (s_A / (tau_s S)) (Phi_s - Phi~_s) L, the attack cost after free entry.
PoSAttackCost pos_attack_cost(double s_attack, double total_stake, double Phi_s, double Phi_tilde_s,
                              double duration, double slot_time, double v_attack = 0.0);

// Staking cost minus attack-chain rewards before free entry is imposed:
// r s_A e_s L - (s_A/S)(R~_s + Phi~_s) L / tau_s.
double pos_attack_cost_gross(const PoSParams& params, double s_attack, double total_stake,
                             double Phi_tilde_s, double duration);

}  // namespace nakamoto
