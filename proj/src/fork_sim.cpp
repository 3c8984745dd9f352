#include "nakamoto/fork_sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "nakamoto/errors.hpp"
#include "nakamoto/random.hpp"

namespace nakamoto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ChainState {
  double difficulty = 0.0;
  int blocks = 0;
  double weight = 0.0;
  double fees = 0.0;
  double last_block_time = 0.0;
  int next_boundary = 0;  // block count at which the next retarget happens
  double boundary_time = 0.0;
  bool first_boundary = true;
  Mempool pool;
};

double honest_power_at(const RaceConfig& cfg, double t) {
  return std::visit(overloaded{
                        [&](const NoEntry&) { return cfg.honest_power; },
                        [&](const ImmediateEntry&) { return cfg.benchmark_power; },
                        [&](const DelayedEntry& e) {
                          if (cfg.honest_power >= e.cap) return cfg.honest_power;
                          return std::min(e.cap, cfg.honest_power + e.rate * t);
                        },
                    },
                    cfg.entry);
}

double max_honest_power(const RaceConfig& cfg) {
  return std::visit(overloaded{
                        [&](const NoEntry&) { return cfg.honest_power; },
                        [&](const ImmediateEntry&) { return cfg.benchmark_power; },
                        [&](const DelayedEntry& e) {
                          return e.rate > 0.0 ? std::max(e.cap, cfg.honest_power) : cfg.honest_power;
                        },
                    },
                    cfg.entry);
}

void maybe_retarget(const RaceConfig& cfg, ChainState& chain, double t, bool attack_chain,
                    std::vector<RetargetEvent>& events) {
  const auto* rule = std::get_if<EpochRetarget>(&cfg.retarget);
  if (!rule || chain.blocks != chain.next_boundary) return;
  double elapsed = t - chain.boundary_time;
  if (chain.first_boundary) {
    elapsed += static_cast<double>(rule->epoch - rule->blocks_to_retarget) * cfg.tau;
    chain.first_boundary = false;
  }
  chain.difficulty *= static_cast<double>(rule->epoch) * cfg.tau / elapsed;
  chain.boundary_time = t;
  chain.next_boundary += rule->epoch;
  events.push_back({t, attack_chain, chain.difficulty});
}

void init_retarget(const RaceConfig& cfg, ChainState& chain) {
  const auto* rule = std::get_if<EpochRetarget>(&cfg.retarget);
  if (!rule) {
    chain.next_boundary = -1;
    return;
  }
  if (rule->blocks_to_retarget == 0) {
    // Boundary sits at the fork: nothing changes until a full post-fork epoch.
    chain.first_boundary = false;
    chain.next_boundary = rule->epoch;
  } else {
    chain.next_boundary = rule->blocks_to_retarget;
  }
}

}  // namespace

void RaceConfig::validate() const {
  require(attack_power > 0.0, "attack power must be positive");
  require(honest_power >= 0.0, "honest power must be non-negative");
  require(difficulty > 0.0, "difficulty must be positive");
  require(tau > 0.0, "tau must be positive");
  require(block_reward >= 0.0, "block reward must be non-negative");
  require(extra_cost_rate >= 0.0, "extra cost rate must be non-negative");
  require(event_budget > 0, "event budget must be positive");
  market.validate();
  if (const auto* e = std::get_if<Escrow>(&stop)) require(e->w >= 1, "escrow w must be >= 1");
  if (const auto* r = std::get_if<EpochRetarget>(&retarget)) {
    require(r->epoch >= 1, "retarget epoch must be >= 1");
    require(r->blocks_to_retarget >= 0 && r->blocks_to_retarget <= r->epoch,
            "blocks to retarget must lie in [0, epoch]");
  }
  if (std::holds_alternative<ImmediateEntry>(entry)) {
    require(benchmark_power > 0.0, "immediate entry needs the benchmark power H");
  }
  if (const auto* e = std::get_if<DelayedEntry>(&entry)) {
    require(e->rate >= 0.0 && e->cap >= 0.0, "delayed entry needs rate, cap >= 0");
  }
}

bool RaceConfig::guaranteed() const { return attack_power > max_honest_power(*this); }

SimTrace run_race(const RaceConfig& cfg) {
  cfg.validate();
  SimTrace trace;
  trace.guaranteed = cfg.guaranteed();

  Rng block_rng = make_rng(split_seed(cfg.seed, 0));
  std::uniform_real_distribution<double> thin(0.0, 1.0);
  ArrivalStream arrivals(cfg.market, split_seed(cfg.seed, 1));

  ChainState attack;
  ChainState honest;
  attack.difficulty = honest.difficulty = cfg.difficulty;
  init_retarget(cfg, attack);
  init_retarget(cfg, honest);

  const bool windowed = cfg.mempool == MempoolMode::Windowed;
  const int capacity = cfg.market.capacity;
  const double honest_cap = max_honest_power(cfg);
  const auto* escrow = std::get_if<Escrow>(&cfg.stop);

  // Arrivals up to t enter both pools; bids react to the honest chain only.
  auto ingest = [&](double t) {
    while (arrivals.peek().arrival <= t) {
      Transaction tx = arrivals.pop();
      if (cfg.bids.enabled()) {
        const double observed =
            honest.blocks == 0 ? cfg.tau : honest.last_block_time / static_cast<double>(honest.blocks);
        tx.fee = cfg.bids.adjust(tx.fee, observed, cfg.tau);
      }
      attack.pool.push(tx);
      honest.pool.push(tx);
    }
  };

  auto attack_leads = [&] { return attack.weight > honest.weight; };

  double t = 0.0;
  bool mining = true;
  std::uint64_t events = 0;
  while (true) {
    if (++events > cfg.event_budget) {
      throw SimulationBudgetExceeded("race exceeded event budget of " +
                                     std::to_string(cfg.event_budget) + " events");
    }
    const double attack_rate = mining ? cfg.attack_power / attack.difficulty : 0.0;
    const double honest_rate = honest_cap / honest.difficulty;
    const double dt_attack = draw_exponential(block_rng, attack_rate);
    const double dt_honest = draw_exponential(block_rng, honest_rate);
    if (!std::isfinite(dt_attack) && !std::isfinite(dt_honest)) {
      throw SimulationBudgetExceeded("race cannot progress: no block production on either chain");
    }
    const bool attack_event = dt_attack <= dt_honest;
    const double dt = attack_event ? dt_attack : dt_honest;
    t += dt;
    if (mining) trace.mining_time += dt;

    if (attack_event) {
      ingest(t);
      attack.fees += attack.pool.take_top_fees(capacity);
      if (windowed) attack.pool.clear();
      attack.weight += attack.difficulty;
      ++attack.blocks;
      attack.last_block_time = t;
      maybe_retarget(cfg, attack, t, true, trace.retargets);
    } else {
      const double power_now = honest_power_at(cfg, t);
      if (power_now < honest_cap && thin(block_rng) * honest_cap > power_now) continue;
      ingest(t);
      honest.fees += honest.pool.take_top_fees(capacity);
      if (windowed) honest.pool.clear();
      honest.weight += honest.difficulty;
      ++honest.blocks;
      honest.last_block_time = t;
      maybe_retarget(cfg, honest, t, false, trace.retargets);
    }

    if (!escrow) {
      if (attack_leads()) break;
      continue;
    }
    if (attack_leads() && honest.blocks >= escrow->w) break;
    const bool suspend = attack.blocks >= escrow->w + 1 && attack_leads();
    if (suspend && mining && trace.honest_blocks_at_suspend < 0) {
      trace.honest_blocks_at_suspend = honest.blocks;
    }
    mining = !suspend;
  }

  trace.duration = t;
  trace.attack_blocks = attack.blocks;
  trace.honest_blocks = honest.blocks;
  trace.attack_fees = attack.fees;
  trace.orphaned_honest_fees = honest.fees;
  trace.attack_weight = attack.weight;
  trace.honest_weight = honest.weight;
  const double own = cfg.own_power < 0.0 ? cfg.attack_power : cfg.own_power;
  const double cost_rate = cfg.attacker_cost.eval(own) + cfg.extra_cost_rate;
  trace.realized_mining_cost = cost_rate * trace.mining_time;
  trace.realized_attack_cost = trace.realized_mining_cost -
                               static_cast<double>(attack.blocks) * cfg.block_reward - attack.fees;
  return trace;
}

BatchSummary summarize(std::span<const SimTrace> traces) {
  RunningStats duration, attack_blocks, honest_blocks, attack_fees, orphaned, mining, cost;
  BatchSummary out;
  out.replications = traces.size();
  for (const auto& tr : traces) {
    duration.add(tr.duration);
    attack_blocks.add(tr.attack_blocks);
    honest_blocks.add(tr.honest_blocks);
    attack_fees.add(tr.attack_fees);
    orphaned.add(tr.orphaned_honest_fees);
    mining.add(tr.realized_mining_cost);
    cost.add(tr.realized_attack_cost);
    out.durations.push_back(tr.duration);
    out.attack_costs.push_back(tr.realized_attack_cost);
    out.guaranteed = out.guaranteed && tr.guaranteed;
  }
  out.duration = to_estimate(duration);
  out.attack_blocks = to_estimate(attack_blocks);
  out.honest_blocks = to_estimate(honest_blocks);
  out.attack_fees = to_estimate(attack_fees);
  out.orphaned_honest_fees = to_estimate(orphaned);
  out.mining_cost = to_estimate(mining);
  out.attack_cost = to_estimate(cost);
  return out;
}

BatchSummary run_batch(const RaceConfig& cfg, std::size_t replications, unsigned threads) {
  require(replications >= 1, "replications must be >= 1");
  cfg.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replications));

  std::vector<SimTrace> traces(replications);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> failed_at(threads, replications);

  auto work = [&](unsigned worker) {
    for (std::size_t k = worker; k < replications; k += threads) {
      RaceConfig local = cfg;
      local.seed = split_seed(cfg.seed, k);
      try {
        traces[k] = run_race(local);
      } catch (...) {
        errors[worker] = std::current_exception();
        failed_at[worker] = k;
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  // Report the lowest failing replication so errors are deterministic.
  std::size_t first = replications;
  std::exception_ptr err;
  for (unsigned w = 0; w < threads; ++w) {
    if (errors[w] && failed_at[w] < first) {
      first = failed_at[w];
      err = errors[w];
    }
  }
  if (err) {
    const std::string where = "replication " + std::to_string(first) + ": ";
    try {
      std::rethrow_exception(err);
    } catch (const SimulationBudgetExceeded& e) {
      throw SimulationBudgetExceeded(where + e.what());
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    }
  }
  return summarize(traces);
}

double chain_weight(std::span<const ChainSegment> chain) {
  double w = 0.0;
  for (const auto& s : chain) w += static_cast<double>(s.blocks) * s.difficulty;
  return w;
}

ForkWinner heaviest_chain(std::span<const ChainSegment> public_chain,
                          std::span<const ChainSegment> challenger) {
  return chain_weight(challenger) > chain_weight(public_chain) ? ForkWinner::Challenger
                                                               : ForkWinner::Public;
}

}  // namespace nakamoto
