#include "nakamoto/fee_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nakamoto/errors.hpp"

namespace nakamoto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double uniform01(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

}  // namespace

FeeDistribution::FeeDistribution(DegenerateFees v) : v_(v) {
  require(std::isfinite(v.value) && v.value >= 0.0, "degenerate fee must be >= 0");
}

FeeDistribution::FeeDistribution(UniformFees v) : v_(v) {
  require(v.lo >= 0.0 && v.lo < v.hi && std::isfinite(v.hi), "uniform fees require 0 <= lo < hi");
}

FeeDistribution::FeeDistribution(ExponentialFees v) : v_(v) {
  require(std::isfinite(v.mean) && v.mean > 0.0, "exponential fees require mean > 0");
}

FeeDistribution::FeeDistribution(EmpiricalFees v) {
  require(!v.fees.empty(), "empirical fee list is empty");
  for (double f : v.fees) require(std::isfinite(f) && f >= 0.0, "empirical fees must be >= 0");
  std::sort(v.fees.begin(), v.fees.end());
  v_ = std::move(v);
}

double FeeDistribution::mean() const {
  return std::visit(overloaded{
                        [](const DegenerateFees& d) { return d.value; },
                        [](const UniformFees& d) { return 0.5 * (d.lo + d.hi); },
                        [](const ExponentialFees& d) { return d.mean; },
                        [](const EmpiricalFees& d) {
                          return std::accumulate(d.fees.begin(), d.fees.end(), 0.0) /
                                 static_cast<double>(d.fees.size());
                        },
                    },
                    v_);
}

double FeeDistribution::variance() const {
  return std::visit(overloaded{
                        [](const DegenerateFees&) { return 0.0; },
                        [](const UniformFees& d) { return (d.hi - d.lo) * (d.hi - d.lo) / 12.0; },
                        [](const ExponentialFees& d) { return d.mean * d.mean; },
                        [this](const EmpiricalFees& d) {
                          const double m = mean();
                          double acc = 0.0;
                          for (double f : d.fees) acc += (f - m) * (f - m);
                          return acc / static_cast<double>(d.fees.size());
                        },
                    },
                    v_);
}

double FeeDistribution::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  return std::visit(overloaded{
                        [](const DegenerateFees& d) { return d.value; },
                        [u](const UniformFees& d) { return d.lo + u * (d.hi - d.lo); },
                        [u](const ExponentialFees& d) {
                          if (u >= 1.0) return std::numeric_limits<double>::infinity();
                          return -d.mean * std::log1p(-u);
                        },
                        [u](const EmpiricalFees& d) {
                          const auto n = d.fees.size();
                          auto idx = static_cast<std::size_t>(u * static_cast<double>(n));
                          return d.fees[std::min(idx, n - 1)];
                        },
                    },
                    v_);
}

double FeeDistribution::sample(Rng& rng) const {
  return std::visit(overloaded{
                        [](const DegenerateFees& d) { return d.value; },
                        [&rng](const UniformFees& d) { return d.lo + uniform01(rng) * (d.hi - d.lo); },
                        [&rng](const ExponentialFees& d) {
                          return std::exponential_distribution<double>(1.0 / d.mean)(rng);
                        },
                        [&rng](const EmpiricalFees& d) {
                          std::uniform_int_distribution<std::size_t> pick(0, d.fees.size() - 1);
                          return d.fees[pick(rng)];
                        },
                    },
                    v_);
}

bool FeeDistribution::is_point_mass() const {
  if (std::holds_alternative<DegenerateFees>(v_)) return true;
  if (const auto* e = std::get_if<EmpiricalFees>(&v_)) return e->fees.front() == e->fees.back();
  return false;
}

}  // namespace nakamoto
