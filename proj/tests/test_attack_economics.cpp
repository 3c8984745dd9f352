#include <cmath>

#include "doctest.h"
#include "nakamoto/attack_economics.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/fee_market.hpp"

using namespace nakamoto;

namespace {

// H = 100, tau = 1, R = Phi = 50: revenue per hash m = 1.
BenchmarkState bench100() { return {100.0, 1.0, 50.0, 50.0}; }

AttackPlan power_plan(double gamma, double h_star, double R_tilde, double Phi_tilde) {
  AttackPlan p;
  p.cost = CostFunction::power(gamma, 2.0);
  p.h_star = h_star;
  p.R_tilde = R_tilde;
  p.Phi_tilde = Phi_tilde;
  return p;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("minimum attack power") {
  CHECK(min_attack_power(0.0, 100.0) == 100.0);
  CHECK(min_attack_power(60.0, 100.0) == 50.0);
  CHECK(min_attack_power(40.0, 100.0) == 60.0);
  CHECK_THROWS_AS(min_attack_power(120.0, 100.0), DomainError);
  // renting: own power needed shrinks, never below zero
  CHECK(min_attack_power_with_rent(40.0, 100.0, 0.0) == 60.0);
  CHECK(min_attack_power_with_rent(40.0, 100.0, 10.0) == 40.0);
  CHECK(min_attack_power_with_rent(40.0, 100.0, 60.0) == 0.0);
}

TEST_CASE("hitting-time duration") {
  CHECK(hitting_time_duration(100.0, 60.0, 40.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(hitting_time_duration(100.0, 40.0, 40.0), DomainError);
}

TEST_CASE("optimal attack power") {
  const auto quad = CostFunction::power(1.0, 2.0);
  CHECK(optimal_attack_power(quad, 100.0, 120.0) == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(optimal_attack_power(quad, 100.0, 0.0) == 0.0);
  CHECK_THROWS_AS(optimal_attack_power(CostFunction::linear(1.0), 100.0, 120.0), NotUnique);
  CHECK_FALSE(try_optimal_attack_power(CostFunction::premium(1.0, 2.0, 0.5), 100.0, 1.0).has_value());
  // cubic: 3 gamma h^2 = rev / D
  const auto cubic = CostFunction::power(0.5, 3.0);
  CHECK(optimal_attack_power(cubic, 10.0, 30.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("optimal attack power with interval-dependent fees") {
  const auto cost = CostFunction::power(0.01, 2.0);
  // fees per block fall as the attack chain speeds up
  auto fees = [](double h) { return 40.0 * std::sqrt(100.0 / h); };
  const double h = optimal_attack_power_with_fees(cost, 100.0, 50.0, fees, 80.0);
  CHECK(optimal_attack_power(cost, 100.0, 50.0 + fees(h)) == doctest::Approx(h).epsilon(1e-7));
  CHECK_THROWS_AS(optimal_attack_power_with_fees(CostFunction::linear(1.0), 100.0, 50.0, fees, 80.0),
                  NotUnique);
}

TEST_CASE("attack cost: plug-in values") {
  // D = 100, R + Phi = 100, R~ + Phi~ = 120, h_min not binding once H is large
  BenchmarkState b{1e-3, 1e5, 50.0, 50.0};  // tau H = 100, h_min = 5e-4
  auto plan = power_plan(1.0, 0.0, 50.0, 70.0);
  CHECK(attack_cost(plan, b, 1.0) == doctest::Approx(0.36 - 0.72));

  // symmetric linear cost, fully outside with kappa = 1 and unchanged fees
  auto lin = bench100();
  AttackPlan l;
  l.cost = CostFunction::linear(1.0);
  l.h_star = 0.0;
  l.R_tilde = 50.0;
  l.Phi_tilde = 50.0;
  CHECK(attack_cost(l, lin, 7.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("renting lowers the cost when attack-chain fees are higher") {
  const auto b = bench100();
  auto plan = power_plan(1.0 / 160.0, 45.0, 50.0, 60.0);
  plan.deployed = 60.0;
  const double without = attack_cost(plan, b, 5.0);
  plan.h_rent = 10.0;
  const double with = attack_cost(plan, b, 5.0);
  CHECK(with < without);
  CHECK(without - with == doctest::Approx(10.0 / 100.0 * 10.0 * 5.0));
}

TEST_CASE("renting makes any incumbent able to attack") {
  const auto b = bench100();
  for (double h_star : {5.0, 20.0, 40.0}) {
    const double h_rent = 50.0 - h_star + 1.0;
    CHECK(min_attack_power_with_rent(h_star, b.H, h_rent) <= h_star);
    auto plan = power_plan(1.0 / (2.0 * h_star), h_star, 50.0, 60.0);
    plan.h_rent = h_rent;
    plan.deployed = h_star;
    const auto a = net_cost(plan, b, 5.0);
    // the attack flow beats the honest flow term by term
    const double honest_flow = h_star / 100.0 * 100.0 - plan.cost.eval(h_star);
    const double attack_flow = h_star / 100.0 * 110.0 - plan.cost.eval(h_star);
    CHECK(attack_flow > honest_flow);
    CHECK(a.attack_cost < -a.opportunity_cost);
    CHECK(a.net_cost < 0.0);
  }
}

TEST_CASE("net cost decomposition and the sign trichotomy") {
  const auto b = bench100();
  const double L = 5.0;
  // h* = m / (2 gamma) = 80 with gamma = 1/160
  for (auto [phi_tilde, regime] : {std::pair{40.0, Regime::PositiveCost}, std::pair{50.0, Regime::ZeroCost},
                                   std::pair{60.0, Regime::NegativeCost}}) {
    const auto plan = power_plan(1.0 / 160.0, 80.0, 50.0, phi_tilde);
    const auto a = net_cost(plan, b, L);
    CHECK(a.h_min == 50.0);
    REQUIRE(a.h_tilde.has_value());
    CHECK(*a.h_tilde >= a.h_min);
    CHECK(a.h_used == doctest::Approx(80.0 * (50.0 + phi_tilde) / 100.0));
    CHECK(a.net_cost == a.opportunity_cost + a.attack_cost);
    CHECK(a.regime == regime);
    CHECK(a.ic_holds == (a.net_cost >= plan.v_attack));
  }
}

TEST_CASE("net cost is positive whenever attack revenue falls short") {
  const auto b = bench100();
  for (double h_star : {10.0, 30.0, 60.0, 80.0}) {
    for (double phi_tilde : {0.0, 20.0, 49.0}) {
      auto plan = power_plan(1.0 / (2.0 * h_star), h_star, 50.0, phi_tilde);
      CHECK(net_cost(plan, b, 3.0).net_cost > 0.0);
      plan.deployed = min_attack_power(h_star, b.H) + 7.0;
      CHECK(net_cost(plan, b, 3.0).net_cost > 0.0);
    }
  }
}

TEST_CASE("linear closed form") {
  CHECK(linear_net_cost(50.0, 100.0, 100.0, 100.0, 2.0, 0.5, 5.0) == doctest::Approx(125.0));
  // Budish reduction
  CHECK(linear_net_cost(50.0, 100.0, 100.0, 100.0, 1.0, 0.0, 5.0) == 0.0);
  CHECK(linear_net_cost(80.0, 100.0, 100.0, 100.0, 3.0, 0.0, 2.0) ==
        doctest::Approx(80.0 / 100.0 * 2.0 * 100.0 * 2.0));

  // matches the general decomposition for a premium cost
  const auto b = bench100();
  for (double alpha : {0.0, 0.25, 0.5}) {
    for (double kappa : {1.0, 1.5, 2.0}) {
      for (double phi_tilde : {30.0, 50.0, 70.0}) {
        AttackPlan p;
        p.cost = CostFunction::premium(1.0, kappa, alpha);
        p.deployed = 100.0;
        p.h_star = alpha * 100.0;
        p.R_tilde = 50.0;
        p.Phi_tilde = phi_tilde;
        const auto a = net_cost(p, b, 5.0);
        CHECK(a.net_cost == doctest::Approx(
                                linear_net_cost(100.0, 100.0, 100.0, 50.0 + phi_tilde, kappa, alpha, 5.0))
                                .scale(1.0));
      }
    }
  }
}

TEST_CASE("linear closed form monotonicity") {
  for (double kappa = 1.1; kappa <= 3.0; kappa += 0.3) {
    double prev = INFINITY;
    for (double alpha = 0.0; alpha <= 0.9; alpha += 0.1) {
      const double v = linear_net_cost(60.0, 100.0, 100.0, 100.0, kappa, alpha, 5.0);
      CHECK(v < prev);
      prev = v;
    }
  }
  for (double alpha = 0.0; alpha <= 0.9; alpha += 0.3) {
    double prev = -INFINITY;
    for (double kappa = 1.0; kappa <= 3.0; kappa += 0.25) {
      const double v = linear_net_cost(60.0, 100.0, 100.0, 100.0, kappa, alpha, 5.0);
      CHECK(v > prev);
      prev = v;
    }
  }
  double prev = -INFINITY;
  for (double gap = -20.0; gap <= 20.0; gap += 5.0) {
    const double v = linear_net_cost(60.0, 100.0, 100.0, 100.0 - gap, 1.5, 0.5, 5.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("break-even power") {
  const auto quad = CostFunction::power(1.0, 2.0);
  const double oracle = (1.2 + std::sqrt(1.44 - 1.0)) / 2.0;
  const auto be = break_even_power(quad, 100.0, 100.0, 120.0, 0.5);
  CHECK_FALSE(be.degenerate);
  CHECK(be.power == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(be.power == doctest::Approx(0.9316624790355).epsilon(1e-12));

  const auto eq = break_even_power(quad, 100.0, 100.0, 100.0, 0.5);
  CHECK(eq.degenerate);
  CHECK(eq.power == 0.5);
  CHECK_THROWS_AS(break_even_power(quad, 100.0, 100.0, 90.0, 0.5), NoRoot);
  CHECK_THROWS_AS(break_even_power(CostFunction::linear(1.0), 100.0, 100.0, 120.0, 0.5), DomainError);

  // increasing in h* when h* is the incumbent's own optimum
  const auto family = power_cost_family(2.0, bench100());
  double prev = 0.0;
  for (double h = 2.0; h <= 50.0; h += 4.0) {
    const double v = break_even_power(family(h), 100.0, 100.0, 120.0, h).power;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("critical incumbent power: quadratic family closed form") {
  const auto b = bench100();
  const auto family = power_cost_family(2.0, b);
  // optimality of h* at the benchmark
  for (double h : {10.0, 40.0}) {
    CHECK(family(h).marginal(h) == doctest::Approx(b.revenue_per_hash()));
  }
  const double rho = 1.2;
  const double h_hat = critical_incumbent_power(family, b, rho * 100.0);
  CHECK(h_hat == doctest::Approx(100.0 / (1.0 + rho + std::sqrt(rho * rho - 1.0))).epsilon(1e-9));
  CHECK(h_hat < 50.0);
  const double h_bar = break_even_power(family(h_hat), 100.0, 100.0, 120.0, h_hat).power;
  CHECK(std::abs(h_hat + h_bar - 100.0) <= 1e-6 * 100.0);

  CHECK_THROWS_AS(critical_incumbent_power(family, b, 100.0), NoRoot);
}

TEST_CASE("critical incumbent power: cubic family against nested bisection") {
  const auto b = bench100();
  const double rho = 1.3;
  const double m = 1.0;
  auto h_bar = [&](double hs) {
    auto gap = [&](double h) { return rho * m * h - m * h * h * h / (3.0 * hs * hs) - 2.0 * m * hs / 3.0; };
    return bisect(gap, std::sqrt(rho) * hs, 10.0 * hs);
  };
  const double oracle = bisect([&](double hs) { return hs + h_bar(hs) - 100.0; }, 1e-6, 50.0);
  const double h_hat = critical_incumbent_power(power_cost_family(3.0, b), b, rho * 100.0);
  CHECK(h_hat == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("incumbents above the critical power profit from attacking") {
  const auto b = bench100();
  const auto family = power_cost_family(2.0, b);
  const double h_hat = critical_incumbent_power(family, b, 120.0);
  for (double h_star : {h_hat + 0.5, h_hat + 5.0, 45.0}) {
    AttackPlan p;
    p.cost = family(h_star);
    p.h_star = h_star;
    p.R_tilde = 50.0;
    p.Phi_tilde = 70.0;
    const double h_bar = break_even_power(p.cost, 100.0, 100.0, 120.0, h_star).power;
    REQUIRE(h_bar - 1e-3 > min_attack_power(h_star, 100.0));
    p.deployed = h_bar - 1e-3;
    CHECK(net_cost(p, b, 5.0).net_cost < 0.0);
    // the internal optimum uses outside power too
    CHECK(optimal_attack_power(p.cost, 100.0, 120.0) > h_star);
  }
}

TEST_CASE("difficulty adjustment") {
  const auto full = difficulty_adjust(100.0, 2600, 60.0, 100.0);
  CHECK(full.interval == 1.0);
  const auto half = difficulty_adjust(100.0, 1300, 60.0, 100.0);
  CHECK(half.difficulty == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(half.interval == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(difficulty_adjust(100.0, 500, 60.0, 100.0).difficulty < 100.0);
  CHECK(difficulty_adjust(100.0, 500, 160.0, 100.0).difficulty > 100.0);
  CHECK(difficulty_adjust(100.0, 0, 60.0, 100.0).difficulty == doctest::Approx(100.0));
  CHECK_THROWS_AS(difficulty_adjust(100.0, 1300, 0.0, 100.0), DomainError);
  CHECK_THROWS_AS(difficulty_adjust(100.0, 2601, 60.0, 100.0), DomainError);
}

TEST_CASE("attack cost across a retarget") {
  const auto b = bench100();
  // full-epoch retarget: post segment runs at the benchmark interval
  AttackPlan p = power_plan(1.0 / 160.0, 80.0, 50.0, 55.0);
  p.deployed = 60.0;
  const auto r = attack_cost_with_retarget(p, b, 2600, 3.0, 4.0, 55.0, 50.0);
  const double c = p.cost.eval(60.0);
  CHECK(r.attack_cost == doctest::Approx(3.0 * (c - 0.6 * 105.0) + 4.0 * (c - 100.0)));
  CHECK(r.adjustment.interval == 1.0);
  CHECK(r.inequalities_hold);

  // outside attack with linear free-entry costs is costly
  AttackPlan out;
  out.cost = CostFunction::linear(1.0);
  out.deployed = 150.0;
  out.R_tilde = 50.0;
  out.Phi_tilde = 40.0;
  for (int d : {0, 1300, 2600}) {
    const auto ro = attack_cost_with_retarget(out, b, d, 2.0, 3.0, 40.0, 45.0);
    CHECK(ro.attack_cost > 0.0);
    CHECK(ro.inequalities_hold);
  }
}

TEST_CASE("inside attack raises post-retarget fees") {
  FeeMarket m;
  m.sigma = 40.0;
  m.capacity = 10;
  m.fees = FeeDistribution::uniform(0.0, 1.0);
  const auto adj = difficulty_adjust(100.0, 1300, 60.0, 100.0);
  const auto post = expected_fees_per_block(m, adj.interval, 20000, 1);
  const auto bench = expected_fees_per_block(m, 1.0, 20000, 2);
  CHECK(adj.interval > 1.0);
  CHECK(exceeds_at_99(post, bench));
}

TEST_CASE("outside attack cost") {
  CHECK_THROWS_AS(outside_attack_cost(1.0, 5.0, 4.0, 10.0, 1.0), DomainError);
  CHECK(outside_attack_cost(1.5, 5.0, 4.0, 10.0, 1.0) == 1.0);

  // flat fees and a pool that never runs dry: the second tier is a full block
  FeeMarket flat;
  flat.sigma = 30.0;
  flat.capacity = 10;
  flat.arrivals = ArrivalLaw::Fixed;
  flat.fees = FeeDistribution::degenerate(0.3);
  const double Phi = expected_fees_per_block(flat, 1.0, 10, 1).mean;
  const double tier = second_tier_fees(flat, 10.0, 10, 2).mean;
  CHECK(outside_attack_cost(1.5, Phi, tier, 10.0, 1.0) == doctest::Approx(0.0).scale(1.0));

  FeeMarket u = flat;
  u.arrivals = ArrivalLaw::Poisson;
  u.sigma = 20.0;
  u.fees = FeeDistribution::uniform(0.0, 1.0);
  const auto phi = expected_fees_per_block(u, 1.0, 40000, 3);
  double prev = INFINITY;
  for (double L : {2.0, 5.0, 10.0, 20.0}) {
    const auto t = second_tier_fees(u, L, 20000, 4);
    const double cost = outside_attack_cost(1.5, phi.mean, t.mean, L, 1.0);
    CHECK(cost > 0.0);
    CHECK(cost <= prev + 3.0 * t.std_error);
    prev = cost;
  }
}

TEST_CASE("plans from an equilibrium") {
  Equilibrium eq;
  eq.H = 100.0;
  eq.R = 50.0;
  eq.Phi = 50.0;
  eq.D = 100.0;
  eq.allocations[MinerId{7}] = 30.0;
  const MinerSpec a{MinerId{7}, CostFunction::power(1.0 / 60.0, 2.0)};
  const auto plan = make_plan(eq, a);
  CHECK(plan.h_star == 30.0);
  CHECK(plan.attack_revenue() == 100.0);
  CHECK(plan.alpha(60.0) == 0.5);
  auto bad = plan;
  bad.h_rent = 80.0;
  CHECK_THROWS_AS(bad.validate(eq.benchmark()), DomainError);
  auto low = plan;
  low.deployed = 40.0;  // below h_min = 70
  CHECK_THROWS_AS(attack_power_used(low, eq.benchmark()), DomainError);
}
