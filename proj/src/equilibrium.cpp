#include "nakamoto/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nakamoto/errors.hpp"
#include "nakamoto/fee_market.hpp"
#include "nakamoto/roots.hpp"

namespace nakamoto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double convex_supply(const std::vector<const MinerSpec*>& convex, double H, double R, double Phi,
                     double tau) {
  double total = 0.0;
  for (const auto* m : convex) total += best_response(*m, H, R, Phi, tau);
  return total;
}

}  // namespace

double Equilibrium::allocation(MinerId id) const {
  auto it = allocations.find(id);
  return it == allocations.end() ? 0.0 : it->second;
}

double Equilibrium::profit(const MinerSpec& m) const {
  const double h = allocation(m.id);
  return h / (tau * H) * (R + Phi) - m.cost.eval(h);
}

double best_response(const MinerSpec& m, double H, double R, double Phi, double tau) {
  require(H > 0.0, "best_response requires H > 0");
  require(tau > 0.0, "best_response requires tau > 0");
  const double revenue = (R + Phi) / (tau * H);
  if (revenue <= 0.0) return 0.0;

  if (m.cost.is_linear()) {
    const double slope = m.cost.linear_slope();
    return slope < revenue ? kInf : 0.0;
  }
  const auto& power = std::get<PowerCost>(m.cost.variant());
  // First-order condition gamma p h^(p-1) = revenue; profit at the optimum is positive.
  return std::pow(revenue / (power.gamma * power.p), 1.0 / (power.p - 1.0));
}

Equilibrium solve_equilibrium(const std::vector<MinerSpec>& miners, double R, double tau,
                              double Phi, const EquilibriumOptions& options) {
  if (miners.empty()) throw NoEquilibrium("no miners");
  require(tau > 0.0, "tau must be positive");
  const double revenue = R + Phi;
  if (!(revenue > 0.0)) throw NoEquilibrium("R + Phi must be positive for mining to occur");

  std::vector<const MinerSpec*> convex;
  std::vector<const MinerSpec*> cheapest_linear;
  double min_slope = kInf;
  for (const auto& m : miners) {
    if (!m.cost.is_linear()) {
      convex.push_back(&m);
      continue;
    }
    const double s = m.cost.linear_slope();
    if (s < min_slope) {
      min_slope = s;
      cheapest_linear.clear();
    }
    if (s == min_slope) cheapest_linear.push_back(&m);
  }
  if (min_slope == 0.0) throw NoEquilibrium("zero-cost linear miner makes H unbounded");

  Equilibrium eq;
  eq.R = R;
  eq.Phi = Phi;
  eq.tau = tau;

  // Free entry of the cheapest linear miners pins H, unless convex miners
  // alone already exceed that level.
  bool linear_active = false;
  if (!cheapest_linear.empty()) {
    const double h_free = revenue / (min_slope * tau);
    const double supply = convex_supply(convex, h_free, R, Phi, tau);
    if (supply < h_free) {
      eq.H = h_free;
      linear_active = true;
      const double share = (h_free - supply) / static_cast<double>(cheapest_linear.size());
      for (const auto* m : cheapest_linear) eq.allocations[m->id] = share;
    }
  }

  if (!linear_active) {
    if (convex.empty()) throw NoEquilibrium("no miner can profit");
    auto excess = [&](double log_h) {
      const double H = std::exp(log_h);
      return std::log(convex_supply(convex, H, R, Phi, tau)) - log_h;
    };
    // excess is strictly decreasing in log H.
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (excess(lo) <= 0.0 && guard++ < options.max_iterations) lo -= 8.0;
    guard = 0;
    while (excess(hi) >= 0.0 && guard++ < options.max_iterations) hi += 8.0;
    try {
      eq.H = std::exp(find_root(excess, lo, hi, 1e-15,
                                static_cast<std::uintmax_t>(options.max_iterations)));
    } catch (const NoRoot& e) {
      throw NoEquilibrium(std::string("aggregate power did not converge: ") + e.what());
    }
  }

  for (const auto& m : miners) {
    if (eq.allocations.count(m.id)) continue;
    double h = m.cost.is_linear() ? 0.0 : best_response(m, eq.H, R, Phi, tau);
    eq.allocations[m.id] = h;
  }
  // Re-normalise the convex-only fixed point so that the allocations sum to H exactly.
  if (!linear_active) {
    double total = 0.0;
    for (const auto& [id, h] : eq.allocations) total += h;
    eq.H = total;
  }
  for (const auto& m : miners) {
    const double h = eq.allocations[m.id];
    const double profit = h / (tau * eq.H) * revenue - m.cost.eval(h);
    if (h > 0.0 && profit >= -1e-9 * revenue) eq.active.insert(m.id);
  }
  eq.D = tau * eq.H;
  return eq;
}

Equilibrium solve_equilibrium(const std::vector<MinerSpec>& miners, double R,
                              const FeeMarket& market, std::size_t fee_samples,
                              std::uint64_t seed, const EquilibriumOptions& options) {
  const Estimate phi = expected_fees_per_block(market, market.tau, fee_samples, seed);
  return solve_equilibrium(miners, R, market.tau, phi.mean, options);
}

}  // namespace nakamoto
