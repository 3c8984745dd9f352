#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "nakamoto/network.hpp"
#include "nakamoto/random.hpp"
#include "nakamoto/stats.hpp"

namespace nakamoto {

struct Transaction {
  double arrival = 0.0;
  double fee = 0.0;
  std::uint64_t seq = 0;  // position in the arrival stream
};

// Pending transactions, extracted highest fee first; ties go to the earlier
// arrival and then to the lower sequence number.
class Mempool {
 public:
  void push(const Transaction& tx);
  // Removes up to `capacity` transactions and returns them in extraction order.
  std::vector<Transaction> take_top(int capacity);
  // Sum of the fees take_top(capacity) would return, removing them.
  double take_top_fees(int capacity);
  void clear();

  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }
  double pending_fees() const;
  std::vector<Transaction> pending() const;

 private:
  struct Lower {
    bool operator()(const Transaction& a, const Transaction& b) const {
      if (a.fee != b.fee) return a.fee < b.fee;
      if (a.arrival != b.arrival) return a.arrival > b.arrival;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Transaction, std::vector<Transaction>, Lower> heap_;
};

// Persistent: leftovers stay pending across blocks. Windowed: a block only
// sees what arrived since the previous block on its chain.
enum class MempoolMode { Persistent, Windowed };

// Users observing a slow public chain scale their bid by
// 1 + beta * max(0, observed_interval / tau - 1). beta = 0 disables it.
struct BidAdjustPolicy {
  double beta = 0.0;

  bool enabled() const { return beta > 0.0; }
  double adjust(double fee, double observed_interval, double tau) const;
};

// Sequential arrivals of the fee market. Poisson law: exponential gaps with
// rate sigma. Fixed law: evenly spaced at 1/sigma.
class ArrivalStream {
 public:
  ArrivalStream(const FeeMarket& market, std::uint64_t seed);

  const Transaction& peek() const { return next_; }
  Transaction pop();

 private:
  void advance();

  const FeeMarket* market_;
  Rng rng_;
  Transaction next_;
  std::uint64_t count_ = 0;
  double clock_ = 0.0;
  bool zero_fees_;
};

// All arrivals in [0, horizon].
std::vector<Transaction> generate_arrivals(const FeeMarket& market, double horizon,
                                           std::uint64_t seed);

// Applies the bid policy given the public chain's block instants: a
// transaction arriving at t sees the mean completed inter-block time of the
// public chain up to t (tau before the first block).
void apply_bid_policy(std::vector<Transaction>& arrivals, std::span<const double> public_blocks,
                      double tau, const BidAdjustPolicy& policy);

struct ChainReplay {
  std::vector<double> block_fees;
  std::vector<int> block_sizes;
  double arrived_fees = 0.0;
  double remaining_fees = 0.0;  // still pending after the last block
  double dropped_fees = 0.0;    // discarded between windows (windowed mode)
  std::vector<std::uint64_t> included;  // seq ids confirmed on this chain
};

// Replays one chain over a shared arrival stream. Arrivals exactly at a block
// instant are included in that block.
ChainReplay replay_chain(std::span<const Transaction> arrivals, std::span<const double> block_times,
                         int capacity, MempoolMode mode = MempoolMode::Persistent);

// Generates a stream over [0, horizon], applies `policy` against
// `block_times` as the public chain, and replays that chain.
// Throws DomainError unless block_times is strictly increasing within [0, horizon].
ChainReplay simulate_mempool(std::uint64_t seed, double horizon, std::span<const double> block_times,
                             const FeeMarket& market, const BidAdjustPolicy& policy = {},
                             MempoolMode mode = MempoolMode::Persistent);

// Expected fees of one block: the top-`capacity` sum among the transactions
// arriving over one inter-block interval with mean `interval`. Zero exactly
// when the market is uncongested (tau*sigma <= b). Throws on n_samples < 1.
Estimate expected_fees_per_block(const FeeMarket& market, double interval, std::size_t n_samples,
                                 std::uint64_t seed, IntervalLaw law = IntervalLaw::Fixed);

// Fees of the best `capacity` transactions left over after honest blocks at
// tau, 2tau, ... <= attack_length have been filled from the arrivals over
// [0, attack_length].
Estimate second_tier_fees(const FeeMarket& market, double attack_length, std::size_t n_samples,
                          std::uint64_t seed);

// Top-k sum of `fees` (partially reorders the input).
double top_k_sum(std::vector<double>& fees, int k);

}  // namespace nakamoto
