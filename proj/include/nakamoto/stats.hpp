#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace nakamoto {

// Welford accumulator for a sample mean and its standard error.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return count_ ? mean_ : std::numeric_limits<double>::quiet_NaN(); }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

inline Estimate to_estimate(const RunningStats& s) { return {s.mean(), s.std_error(), s.count()}; }

// Upper 1% point of the standard normal.
inline constexpr double kZ99OneSided = 2.3263478740408408;

// One-sided test of mean(a) > mean(b) for independent estimates at 99%.
inline bool exceeds_at_99(const Estimate& a, const Estimate& b) {
  const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  const double diff = a.mean - b.mean;
  if (se == 0.0) return diff > 0.0;
  return diff / se > kZ99OneSided;
}

inline bool within_standard_errors(double x, double y, double se, double k = 3.0) {
  return std::abs(x - y) <= k * se;
}

}  // namespace nakamoto
