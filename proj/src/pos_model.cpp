#include "nakamoto/pos_model.hpp"

#include <cmath>
#include <numeric>

#include "nakamoto/errors.hpp"
#include "nakamoto/random.hpp"

namespace nakamoto {

void PoSParams::validate() const {
  require(slot_time > 0.0, "slot time must be positive");
  require(block_reward >= 0.0, "block reward must be non-negative");
  require(interest_rate >= 0.0, "interest rate must be non-negative");
  require(exchange_rate > 0.0, "exchange rate must be positive");
  market.validate();
}

StakeSet pos_equilibrium(const PoSParams& params, double Phi_s,
                         const std::vector<std::pair<MinerId, double>>& weights) {
  params.validate();
  const double unit_cost = params.slot_time * params.interest_rate * params.exchange_rate;
  if (!(unit_cost > 0.0)) throw NoEquilibrium("staking cost r e_s tau_s must be positive");
  const double revenue = params.block_reward + Phi_s;
  if (!(revenue > 0.0)) throw NoEquilibrium("R_s + Phi_s must be positive");

  StakeSet out;
  out.total = revenue / unit_cost;
  double weight_sum = 0.0;
  for (const auto& [id, w] : weights) {
    require(w >= 0.0, "validator weights must be non-negative");
    weight_sum += w;
  }
  if (weights.empty() || weight_sum <= 0.0) return out;
  // The last validator absorbs rounding so the stakes sum to S exactly.
  double assigned = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& [id, w] = weights[i];
    const double s = i + 1 == weights.size() ? out.total - assigned : out.total * (w / weight_sum);
    out.stakes[id] = s;
    assigned += s;
  }
  return out;
}

double staking_profit_rate(const PoSParams& params, double Phi_s, double stake, double total) {
  require(total > 0.0, "total stake must be positive");
  return stake / total * (params.block_reward + Phi_s) / params.slot_time -
         params.interest_rate * stake * params.exchange_rate;
}

double PoSAttackTrace::attack_fees_per_block() const {
  return attack_blocks > 0 ? attack_fees / attack_blocks : 0.0;
}

double PoSAttackTrace::benchmark_fees_per_block() const {
  return slots > 0 ? benchmark_fees / slots : 0.0;
}

PoSAttackTrace simulate_pos_attack(double share, const PoSParams& params, int horizon_slots,
                                   std::uint64_t seed, MempoolMode mempool) {
  params.validate();
  require(share >= 0.0 && share <= 1.0, "stake share must lie in [0, 1]");
  require(horizon_slots >= 1, "horizon must be at least one slot");

  PoSAttackTrace tr;
  tr.guaranteed = share > 0.5;
  Rng proposer_rng = make_rng(split_seed(seed, 0));
  Rng benchmark_rng = make_rng(split_seed(seed, 2));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  ArrivalStream arrivals(params.market, split_seed(seed, 1));

  Mempool attack_pool, honest_pool, benchmark_pool;
  const int b = params.market.capacity;
  const bool windowed = mempool == MempoolMode::Windowed;

  for (int slot = 1; slot <= horizon_slots; ++slot) {
    const double t = slot * params.slot_time;
    while (arrivals.peek().arrival <= t) {
      const Transaction tx = arrivals.pop();
      attack_pool.push(tx);
      honest_pool.push(tx);
      benchmark_pool.push(tx);
    }
    tr.slots = slot;
    tr.benchmark_fees += benchmark_pool.take_top_fees(b);
    if (windowed) benchmark_pool.clear();
    if (u01(benchmark_rng) < share) ++tr.benchmark_attacker_blocks;

    if (u01(proposer_rng) < share) {
      tr.attack_fees += attack_pool.take_top_fees(b);
      if (windowed) attack_pool.clear();
      ++tr.attack_blocks;
    } else {
      tr.honest_fees += honest_pool.take_top_fees(b);
      if (windowed) honest_pool.clear();
      ++tr.honest_blocks;
    }
    if (tr.attack_blocks > tr.honest_blocks) {
      tr.completed = true;
      break;
    }
  }
  tr.duration = tr.slots * params.slot_time;
  return tr;
}

PoSBatchSummary run_pos_batch(double share, const PoSParams& params, int horizon_slots,
                              std::size_t replications, std::uint64_t seed, MempoolMode mempool) {
  require(replications >= 1, "replications must be >= 1");
  RunningStats slots, attack, bench, gap, fee_attack, fee_bench, fee_gap;
  PoSBatchSummary out;
  out.replications = replications;
  for (std::size_t k = 0; k < replications; ++k) {
    const auto tr = simulate_pos_attack(share, params, horizon_slots, split_seed(seed, k), mempool);
    if (!tr.completed) ++out.incomplete;
    slots.add(tr.slots);
    attack.add(tr.attack_blocks);
    bench.add(tr.benchmark_attacker_blocks);
    gap.add(tr.attack_blocks - tr.benchmark_attacker_blocks);
    fee_attack.add(tr.attack_fees_per_block());
    fee_bench.add(tr.benchmark_fees_per_block());
    fee_gap.add(tr.attack_fees_per_block() - tr.benchmark_fees_per_block());
  }
  out.slots = to_estimate(slots);
  out.attack_blocks = to_estimate(attack);
  out.benchmark_attacker_blocks = to_estimate(bench);
  out.block_count_gap = to_estimate(gap);
  out.attack_fee_per_block = to_estimate(fee_attack);
  out.benchmark_fee_per_block = to_estimate(fee_bench);
  out.fee_gap = to_estimate(fee_gap);
  return out;
}

PoSAttackCost pos_attack_cost(double s_attack, double total_stake, double Phi_s, double Phi_tilde_s,
                              double duration, double slot_time, double v_attack) {
  require(total_stake > 0.0 && slot_time > 0.0, "stake and slot time must be positive");
  require(s_attack >= 0.0 && s_attack <= total_stake, "attacker stake must lie in [0, S]");
  PoSAttackCost out;
  out.attack_cost = s_attack / (slot_time * total_stake) * (Phi_s - Phi_tilde_s) * duration;
  out.ic_holds = out.attack_cost >= v_attack;
  return out;
}

double pos_attack_cost_gross(const PoSParams& params, double s_attack, double total_stake,
                             double Phi_tilde_s, double duration) {
  require(total_stake > 0.0, "total stake must be positive");
  return params.interest_rate * s_attack * params.exchange_rate * duration -
         s_attack / total_stake * (params.block_reward + Phi_tilde_s) * duration / params.slot_time;
}

}  // namespace nakamoto
