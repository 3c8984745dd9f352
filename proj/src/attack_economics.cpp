#include "nakamoto/attack_economics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nakamoto/errors.hpp"
#include "nakamoto/roots.hpp"

namespace nakamoto {

double min_attack_power(double h_star, double H) {
  require(H > 0.0, "H must be positive");
  require(h_star >= 0.0, "h* must be non-negative");
  require(h_star <= H, "h* cannot exceed H");
  return std::max(0.5 * H, H - h_star);
}

double min_attack_power_with_rent(double h_star, double H, double h_rent) {
  require(h_rent >= 0.0, "rented power must be non-negative");
  require(h_star + h_rent <= H * (1.0 + 1e-12), "h* + h_rent cannot exceed H");
  if (h_rent == 0.0) return min_attack_power(h_star, H);
  return std::max({0.0, 0.5 * H - h_rent, H - h_star - 2.0 * h_rent});
}

double hitting_time_duration(double difficulty, double attack_power, double honest_power) {
  require(difficulty > 0.0, "difficulty must be positive");
  if (!(attack_power > honest_power)) {
    throw DomainError("expected duration is infinite unless attack power exceeds honest power");
  }
  return difficulty / (attack_power - honest_power);
}

std::optional<double> try_optimal_attack_power(const CostFunction& cost, double D,
                                               double attack_revenue) {
  require(D > 0.0, "difficulty must be positive");
  if (cost.is_linear()) return std::nullopt;
  const double target = attack_revenue / D;
  if (target <= 0.0) return 0.0;
  auto foc = [&](double h) { return cost.marginal(h) - target; };
  const auto [lo, hi] = expand_bracket(foc, 0.0, 1.0);
  return find_root(foc, lo, hi, 1e-13);
}

double optimal_attack_power(const CostFunction& cost, double D, double attack_revenue) {
  auto h = try_optimal_attack_power(cost, D, attack_revenue);
  if (!h) throw NotUnique("optimal attack power is not unique under linear costs");
  return *h;
}

double optimal_attack_power_with_fees(const CostFunction& cost, double D, double R_tilde,
                                      const std::function<double(double)>& fees,
                                      double initial_power, const FixedPointOptions& options) {
  if (cost.is_linear()) throw NotUnique("optimal attack power is not unique under linear costs");
  require(initial_power > 0.0, "fixed point needs a positive starting power");
  double h = initial_power;
  for (int i = 0; i < options.max_iterations; ++i) {
    const double target = optimal_attack_power(cost, D, R_tilde + fees(h));
    if (!(target > 0.0)) throw NoRoot("attack power collapsed to zero");
    const double next = (1.0 - options.damping) * target + options.damping * h;
    if (std::abs(next - h) <= options.tolerance * std::max(1.0, std::abs(h))) return next;
    h = next;
  }
  throw NoRoot("attack power / fee fixed point did not converge");
}

double AttackPlan::alpha(double h_attack) const {
  if (h_attack <= 0.0) return 1.0;
  return std::clamp(h_star / h_attack, 0.0, 1.0);
}

void AttackPlan::validate(const BenchmarkState& bench) const {
  require(h_star >= 0.0 && h_star <= bench.H * (1.0 + 1e-12), "h* must lie in [0, H]");
  require(h_rent >= 0.0, "rented power must be non-negative");
  require(h_rent <= bench.H - h_star + 1e-12 * bench.H, "cannot rent more than H - h*");
  require(v_attack >= 0.0, "V_attack must be non-negative");
  require(R_tilde >= 0.0 && Phi_tilde >= 0.0, "attack-chain rewards must be non-negative");
}

AttackPlan make_plan(const Equilibrium& eq, const MinerSpec& attacker) {
  AttackPlan plan;
  plan.attacker = attacker.id;
  plan.cost = attacker.cost;
  plan.h_star = eq.allocation(attacker.id);
  plan.R_tilde = eq.R;
  plan.Phi_tilde = eq.Phi;
  return plan;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::ZeroCost: return "zero";
    case Regime::PositiveCost: return "positive";
    case Regime::NegativeCost: return "negative";
  }
  return "?";
}

double attack_power_used(const AttackPlan& plan, const BenchmarkState& bench) {
  const double h_min = min_attack_power_with_rent(plan.h_star, bench.H, plan.h_rent);
  if (plan.deployed >= 0.0) {
    if (plan.deployed < h_min * (1.0 - 1e-12)) {
      throw DomainError("deployed power " + std::to_string(plan.deployed) +
                        " is below the minimum " + std::to_string(h_min));
    }
    return plan.deployed;
  }
  const auto h_tilde = try_optimal_attack_power(plan.cost, bench.difficulty(), plan.attack_revenue());
  return h_tilde ? std::max(*h_tilde, h_min) : h_min;
}

double attack_cost(const AttackPlan& plan, const BenchmarkState& bench, double duration) {
  plan.validate(bench);
  const double D = bench.difficulty();
  const double h = attack_power_used(plan, bench);
  const double per_time = plan.cost.eval(h) - h / D * plan.attack_revenue() +
                          plan.h_rent / D * (bench.Phi - plan.Phi_tilde);
  return per_time * duration;
}

AttackAssessment net_cost(const AttackPlan& plan, const BenchmarkState& bench, double duration) {
  plan.validate(bench);
  require(duration >= 0.0, "attack duration must be non-negative");
  const double D = bench.difficulty();
  AttackAssessment a;
  a.h_min = min_attack_power_with_rent(plan.h_star, bench.H, plan.h_rent);
  a.h_tilde = try_optimal_attack_power(plan.cost, D, plan.attack_revenue());
  a.h_used = attack_power_used(plan, bench);
  a.duration = duration;
  a.attack_cost = attack_cost(plan, bench, duration);
  const double honest_flow =
      plan.h_star / D * bench.revenue_per_block() - plan.cost.inside().eval(plan.h_star);
  a.opportunity_cost = honest_flow * duration;
  a.net_cost = a.opportunity_cost + a.attack_cost;
  a.ic_holds = a.net_cost >= plan.v_attack;

  a.regime = classify_net_cost(a.net_cost, bench, duration);
  return a;
}

Regime classify_net_cost(double net, const BenchmarkState& bench, double duration) {
  const double tol = 1e-9 * bench.revenue_per_block() * std::max(1.0, duration / bench.tau);
  if (std::abs(net) <= tol) return Regime::ZeroCost;
  return net > 0.0 ? Regime::PositiveCost : Regime::NegativeCost;
}

double linear_net_cost(double h_attack, double tau_H, double revenue, double attack_revenue,
                       double kappa, double alpha, double duration) {
  require(tau_H > 0.0, "tau H must be positive");
  require(kappa >= 1.0, "kappa must be >= 1");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  return h_attack / tau_H *
         (revenue - attack_revenue + revenue * (kappa - 1.0) * (1.0 - alpha)) * duration;
}

BreakEven break_even_power(const CostFunction& cost, double D, double revenue,
                           double attack_revenue, double h_star) {
  require(D > 0.0, "difficulty must be positive");
  require(h_star >= 0.0, "h* must be non-negative");
  if (cost.is_linear()) throw DomainError("break-even power requires a strictly convex cost");
  if (attack_revenue == revenue) return {h_star, true};
  if (attack_revenue < revenue) {
    throw NoRoot("no break-even power above h*: attack revenue below honest revenue");
  }
  const double honest_flow = h_star / D * revenue - cost.eval(h_star);
  auto gap = [&](double h) { return h / D * attack_revenue - cost.eval(h) - honest_flow; };
  // gap peaks at the cost-minimising attack power and falls without bound.
  const double start = std::max(h_star, optimal_attack_power(cost, D, attack_revenue));
  if (gap(start) <= 0.0) return {start, false};
  const auto [lo, hi] = expand_bracket(gap, start, std::max(2.0 * start, 1e-12));
  return {find_root(gap, lo, hi, 1e-14), false};
}

CostFamily power_cost_family(double p, const BenchmarkState& bench) {
  require(p > 1.0, "power family requires p > 1");
  const double revenue_per_hash = bench.revenue_per_hash();
  return [p, revenue_per_hash](double h_star) {
    require(h_star > 0.0, "power family needs h* > 0");
    return CostFunction::power(revenue_per_hash / (p * std::pow(h_star, p - 1.0)), p);
  };
}

double critical_incumbent_power(const CostFamily& family, const BenchmarkState& bench,
                                double attack_revenue) {
  const double H = bench.H;
  const double D = bench.difficulty();
  const double revenue = bench.revenue_per_block();
  if (!(attack_revenue > revenue)) {
    throw NoRoot("critical incumbent power needs attack revenue above honest revenue");
  }
  auto g = [&](double h) {
    return h + break_even_power(family(h), D, revenue, attack_revenue, h).power - H;
  };
  const double lo = 1e-9 * H;
  const double hi = 0.5 * H;
  if (!(g(lo) < 0.0 && g(hi) > 0.0)) throw NoRoot("h + h_bar(h) - H has no sign change on (0, H/2]");
  const double h_hat = find_root(g, lo, hi, 1e-13);
  if (!(h_hat < 0.5 * H)) throw NoRoot("critical incumbent power is not below H/2");
  return h_hat;
}

DifficultyAdjustment difficulty_adjust(double D, int blocks_to_retarget, double h_attack, double H,
                                       int epoch) {
  if (!(h_attack > 0.0)) throw DomainError("attack power must be positive");
  require(D > 0.0 && H > 0.0, "D and H must be positive");
  require(epoch >= 1, "epoch must be >= 1");
  require(blocks_to_retarget >= 0 && blocks_to_retarget <= epoch, "d must lie in [0, epoch]");
  const double d = blocks_to_retarget;
  const double e = epoch;
  // Y' = D e / ((e - d) h_A + d H), algebraically D' / h_A.
  const double denom = (e - d) * h_attack + d * H;
  DifficultyAdjustment out;
  out.interval = D * e / denom;
  out.difficulty = D * e * h_attack / denom;
  return out;
}

RetargetedAttackCost attack_cost_with_retarget(const AttackPlan& plan, const BenchmarkState& bench,
                                               int blocks_to_retarget, double duration_pre,
                                               double duration_post, double Phi_tilde,
                                               double Phi_tilde_post, int epoch) {
  plan.validate(bench);
  require(duration_pre >= 0.0 && duration_post >= 0.0, "durations must be non-negative");
  const double D = bench.difficulty();
  const double h = attack_power_used(plan, bench);
  RetargetedAttackCost out;
  out.adjustment = difficulty_adjust(D, blocks_to_retarget, h, bench.H, epoch);
  const double c = plan.cost.eval(h);
  out.attack_cost = duration_pre * (c - h / D * (plan.R_tilde + Phi_tilde)) +
                    duration_post * (c - h / out.adjustment.difficulty * (plan.R_tilde + Phi_tilde_post));

  const double total = duration_pre + duration_post;
  if (h < bench.H && plan.h_star > 0.0) {
    const double benchmark_flow = c - h / D * bench.revenue_per_block();
    out.inequalities_hold = out.attack_cost < benchmark_flow * total;
  } else if (h > bench.H) {
    out.inequalities_hold = out.attack_cost > 0.0;
  }
  return out;
}

double outside_attack_cost(double m, double Phi, double second_tier, double duration, double tau) {
  if (!(m > 1.0)) throw DomainError("outside attack requires m = h_A/H > 1");
  require(duration > 0.0 && tau > 0.0, "duration and tau must be positive");
  return Phi - second_tier;
}

}  // namespace nakamoto
