#pragma once

#include <variant>
#include <vector>

#include "nakamoto/random.hpp"

namespace nakamoto {

struct DegenerateFees {
  double value = 0.0;
};

struct UniformFees {
  double lo = 0.0;
  double hi = 1.0;
};

struct ExponentialFees {
  double mean = 1.0;
};

// Resampled from observed fees.
struct EmpiricalFees {
  std::vector<double> fees;
};

// Law of the fee per unit of block space offered by one transaction.
class FeeDistribution {
 public:
  using Variant = std::variant<DegenerateFees, UniformFees, ExponentialFees, EmpiricalFees>;

  FeeDistribution(DegenerateFees v);
  FeeDistribution(UniformFees v);
  FeeDistribution(ExponentialFees v);
  // Sorts the fees; throws on an empty list or a negative fee.
  FeeDistribution(EmpiricalFees v);

  static FeeDistribution degenerate(double v) { return DegenerateFees{v}; }
  static FeeDistribution uniform(double lo, double hi) { return UniformFees{lo, hi}; }
  static FeeDistribution exponential(double mean) { return ExponentialFees{mean}; }
  static FeeDistribution empirical(std::vector<double> fees) { return EmpiricalFees{std::move(fees)}; }

  const Variant& variant() const { return v_; }

  double mean() const;
  double variance() const;
  // Non-decreasing in u; u is clamped to [0, 1].
  double quantile(double u) const;
  double sample(Rng& rng) const;

  // True when all mass sits on one value.
  bool is_point_mass() const;

 private:
  Variant v_;
};

}  // namespace nakamoto
