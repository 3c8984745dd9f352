#pragma once

#include <cstdint>

#include "nakamoto/fee_distribution.hpp"

namespace nakamoto {

struct MinerId {
  std::int64_t value = 0;
  auto operator<=>(const MinerId&) const = default;
};

// How many transactions arrive over an interval of expected count sigma*t.
enum class ArrivalLaw {
  Poisson,
  Fixed,  // exactly round(sigma*t); used for deterministic checks
};

// Law of the time between consecutive blocks at a given mean interval.
enum class IntervalLaw {
  Fixed,
  Exponential,
};

// Fee market inputs. Transactions have unit size, so `capacity` counts transactions.
struct FeeMarket {
  double tau = 1.0;       // target inter-block time
  double sigma = 0.0;     // mean arrivals per time unit
  int capacity = 1;       // b
  FeeDistribution fees = FeeDistribution::degenerate(0.0);
  ArrivalLaw arrivals = ArrivalLaw::Poisson;

  // Blocks are not full on average at the target rate, so users bid zero.
  bool uncongested() const { return tau * sigma <= static_cast<double>(capacity); }
  void validate() const;
};

struct NetworkParams {
  double tau = 1.0;
  double block_reward = 0.0;  // R
  double difficulty = 1.0;    // D, in hash*time
  FeeMarket market;

  void validate() const;
  // D = tau*H to relative 1e-9.
  bool difficulty_consistent_with(double aggregate_power) const;
};

}  // namespace nakamoto
