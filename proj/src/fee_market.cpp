#include "nakamoto/fee_market.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "nakamoto/errors.hpp"

namespace nakamoto {

void FeeMarket::validate() const {
  require(tau > 0.0, "fee market requires tau > 0");
  require(sigma >= 0.0 && std::isfinite(sigma), "fee market requires sigma >= 0");
  require(capacity >= 1, "block capacity must be >= 1");
}

void NetworkParams::validate() const {
  require(tau > 0.0, "tau must be positive");
  require(block_reward >= 0.0, "block reward must be non-negative");
  require(difficulty > 0.0, "difficulty must be positive");
  market.validate();
}

bool NetworkParams::difficulty_consistent_with(double aggregate_power) const {
  const double expected = tau * aggregate_power;
  return std::abs(difficulty - expected) <= 1e-9 * std::abs(expected);
}

void Mempool::push(const Transaction& tx) { heap_.push(tx); }

std::vector<Transaction> Mempool::take_top(int capacity) {
  std::vector<Transaction> out;
  while (capacity-- > 0 && !heap_.empty()) {
    out.push_back(heap_.top());
    heap_.pop();
  }
  return out;
}

double Mempool::take_top_fees(int capacity) {
  double sum = 0.0;
  while (capacity-- > 0 && !heap_.empty()) {
    sum += heap_.top().fee;
    heap_.pop();
  }
  return sum;
}

void Mempool::clear() { heap_ = {}; }

double Mempool::pending_fees() const {
  double sum = 0.0;
  for (const auto& tx : pending()) sum += tx.fee;
  return sum;
}

std::vector<Transaction> Mempool::pending() const {
  auto copy = heap_;
  std::vector<Transaction> out;
  out.reserve(copy.size());
  while (!copy.empty()) {
    out.push_back(copy.top());
    copy.pop();
  }
  return out;
}

double BidAdjustPolicy::adjust(double fee, double observed_interval, double tau) const {
  if (!enabled()) return fee;
  return fee * (1.0 + beta * std::max(0.0, observed_interval / tau - 1.0));
}

ArrivalStream::ArrivalStream(const FeeMarket& market, std::uint64_t seed)
    : market_(&market), rng_(make_rng(seed)), zero_fees_(market.uncongested()) {
  advance();
}

Transaction ArrivalStream::pop() {
  Transaction out = next_;
  advance();
  return out;
}

void ArrivalStream::advance() {
  const double sigma = market_->sigma;
  if (sigma <= 0.0) {
    next_ = {std::numeric_limits<double>::infinity(), 0.0, count_};
    return;
  }
  if (market_->arrivals == ArrivalLaw::Fixed) {
    clock_ = static_cast<double>(count_ + 1) / sigma;
  } else {
    clock_ += draw_exponential(rng_, sigma);
  }
  // The fee draw happens even when fees are forced to zero so both regimes
  // consume the same random stream.
  const double fee = market_->fees.sample(rng_);
  next_ = {clock_, zero_fees_ ? 0.0 : fee, count_};
  ++count_;
}

std::vector<Transaction> generate_arrivals(const FeeMarket& market, double horizon,
                                           std::uint64_t seed) {
  ArrivalStream stream(market, seed);
  std::vector<Transaction> out;
  while (stream.peek().arrival <= horizon) out.push_back(stream.pop());
  return out;
}

void apply_bid_policy(std::vector<Transaction>& arrivals, std::span<const double> public_blocks,
                      double tau, const BidAdjustPolicy& policy) {
  if (!policy.enabled()) return;
  std::size_t seen = 0;
  for (auto& tx : arrivals) {
    while (seen < public_blocks.size() && public_blocks[seen] <= tx.arrival) ++seen;
    const double observed = seen == 0 ? tau : public_blocks[seen - 1] / static_cast<double>(seen);
    tx.fee = policy.adjust(tx.fee, observed, tau);
  }
}

ChainReplay replay_chain(std::span<const Transaction> arrivals, std::span<const double> block_times,
                         int capacity, MempoolMode mode) {
  ChainReplay out;
  Mempool pool;
  std::size_t next = 0;
  for (const auto& tx : arrivals) out.arrived_fees += tx.fee;
  for (double t : block_times) {
    if (mode == MempoolMode::Windowed) {
      out.dropped_fees += pool.pending_fees();
      pool.clear();
    }
    while (next < arrivals.size() && arrivals[next].arrival <= t) pool.push(arrivals[next++]);
    double fees = 0.0;
    const auto block = pool.take_top(capacity);
    for (const auto& tx : block) {
      fees += tx.fee;
      out.included.push_back(tx.seq);
    }
    out.block_fees.push_back(fees);
    out.block_sizes.push_back(static_cast<int>(block.size()));
  }
  while (next < arrivals.size()) pool.push(arrivals[next++]);
  out.remaining_fees = pool.pending_fees();
  return out;
}

ChainReplay simulate_mempool(std::uint64_t seed, double horizon, std::span<const double> block_times,
                             const FeeMarket& market, const BidAdjustPolicy& policy,
                             MempoolMode mode) {
  market.validate();
  for (std::size_t i = 0; i < block_times.size(); ++i) {
    require(block_times[i] >= 0.0 && block_times[i] <= horizon, "block time outside horizon");
    require(i == 0 || block_times[i] > block_times[i - 1], "block times must be strictly increasing");
  }
  auto arrivals = generate_arrivals(market, horizon, seed);
  apply_bid_policy(arrivals, block_times, market.tau, policy);
  return replay_chain(arrivals, block_times, market.capacity, mode);
}

double top_k_sum(std::vector<double>& fees, int k) {
  if (k <= 0 || fees.empty()) return 0.0;
  const auto n = static_cast<std::ptrdiff_t>(fees.size());
  if (k < n) {
    std::nth_element(fees.begin(), fees.begin() + (k - 1), fees.end(), std::greater<>());
    return std::accumulate(fees.begin(), fees.begin() + k, 0.0);
  }
  return std::accumulate(fees.begin(), fees.end(), 0.0);
}

namespace {

std::size_t draw_count(const FeeMarket& market, double interval, Rng& rng) {
  const double expected = market.sigma * interval;
  if (expected <= 0.0) return 0;
  if (market.arrivals == ArrivalLaw::Fixed) return static_cast<std::size_t>(std::llround(expected));
  return static_cast<std::size_t>(std::poisson_distribution<long long>(expected)(rng));
}

}  // namespace

Estimate expected_fees_per_block(const FeeMarket& market, double interval, std::size_t n_samples,
                                 std::uint64_t seed, IntervalLaw law) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  require(interval > 0.0, "interval must be positive");
  market.validate();
  if (market.uncongested()) return {0.0, 0.0, n_samples};

  Rng rng = make_rng(seed);
  RunningStats stats;
  std::vector<double> fees;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double gap = law == IntervalLaw::Exponential ? draw_exponential(rng, 1.0 / interval)
                                                       : interval;
    const std::size_t n = draw_count(market, gap, rng);
    fees.resize(n);
    for (auto& f : fees) f = market.fees.sample(rng);
    stats.add(top_k_sum(fees, market.capacity));
  }
  return to_estimate(stats);
}

Estimate second_tier_fees(const FeeMarket& market, double attack_length, std::size_t n_samples,
                          std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  require(attack_length > 0.0, "attack length must be positive");
  market.validate();

  const auto honest_blocks = static_cast<std::size_t>(std::floor(attack_length / market.tau + 1e-12));
  std::vector<double> block_times(honest_blocks);
  for (std::size_t k = 0; k < honest_blocks; ++k) {
    block_times[k] = market.tau * static_cast<double>(k + 1);
  }

  RunningStats stats;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto arrivals = generate_arrivals(market, attack_length, split_seed(seed, s));
    Mempool pool;
    std::size_t next = 0;
    for (double t : block_times) {
      while (next < arrivals.size() && arrivals[next].arrival <= t) pool.push(arrivals[next++]);
      pool.take_top_fees(market.capacity);
    }
    while (next < arrivals.size()) pool.push(arrivals[next++]);
    stats.add(pool.take_top_fees(market.capacity));
  }
  return to_estimate(stats);
}

}  // namespace nakamoto
