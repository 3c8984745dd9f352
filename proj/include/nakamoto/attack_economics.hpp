#pragma once

#include <functional>
#include <optional>

#include "nakamoto/cost_function.hpp"
#include "nakamoto/equilibrium.hpp"
#include "nakamoto/network.hpp"

namespace nakamoto {

// h_min = max(H/2, H - h*): the least power that out-mines the honest remainder.
double min_attack_power(double h_star, double H);

// Own power needed when h_rent of incumbent power is rented as well:
// max(H/2 - h_rent, H - h* - 2 h_rent), floored at zero.
double min_attack_power_with_rent(double h_star, double H, double h_rent);

// Expected race length D / (attack power - honest power).
double hitting_time_duration(double difficulty, double attack_power, double honest_power);

// argmin_h c(h) - (h/D) * attack_revenue, where attack_revenue = R~ + Phi~.
// Throws NotUnique for linear costs.
double optimal_attack_power(const CostFunction& cost, double D, double attack_revenue);
// nullopt where optimal_attack_power would throw NotUnique.
std::optional<double> try_optimal_attack_power(const CostFunction& cost, double D,
                                               double attack_revenue);

struct FixedPointOptions {
  double damping = 0.5;
  double tolerance = 1e-8;
  int max_iterations = 200;
};

// Optimal attack power when the attack-chain fees depend on the deployed
// power through the block interval: damped iteration of
// h <- optimal_attack_power(cost, D, R~ + fees(h)), starting from
// `initial_power` > 0. Throws NoRoot on failure.
double optimal_attack_power_with_fees(const CostFunction& cost, double D, double R_tilde,
                                      const std::function<double(double)>& fees,
                                      double initial_power, const FixedPointOptions& options = {});

struct AttackPlan {
  MinerId attacker;
  CostFunction cost = CostFunction::linear(0.0);  // c_A; a premium cost blends outside power
  double h_star = 0.0;     // pre-attack power
  double deployed = -1.0;  // own attack power; negative selects max(h~, h_min)
  double h_rent = 0.0;
  double v_attack = 0.0;
  double R_tilde = 0.0;    // reward per attack-chain block
  double Phi_tilde = 0.0;  // fees per attack-chain block

  double attack_revenue() const { return R_tilde + Phi_tilde; }
  // Inside share h*/h_A of the deployed power, clamped to [0, 1].
  double alpha(double h_attack) const;
  void validate(const BenchmarkState& bench) const;
};

AttackPlan make_plan(const Equilibrium& eq, const MinerSpec& attacker);

enum class Regime { ZeroCost, PositiveCost, NegativeCost };

const char* to_string(Regime r);

struct AttackAssessment {
  double h_min = 0.0;
  std::optional<double> h_tilde;
  double h_used = 0.0;
  double duration = 0.0;
  double attack_cost = 0.0;       // C_attack
  double opportunity_cost = 0.0;  // forgone honest profit over the attack
  double net_cost = 0.0;          // opportunity_cost + attack_cost
  bool ic_holds = false;          // net_cost >= V_attack
  Regime regime = Regime::ZeroCost;
};

// Power the plan deploys: plan.deployed if set (must reach h_min), else
// max(h~, h_min), or h_min when h~ is not unique.
double attack_power_used(const AttackPlan& plan, const BenchmarkState& bench);

// C_attack = (c_A(h) - (h/D)(R~+Phi~) + (h_rent/D)(Phi - Phi~)) * L.
double attack_cost(const AttackPlan& plan, const BenchmarkState& bench, double duration);

AttackAssessment net_cost(const AttackPlan& plan, const BenchmarkState& bench, double duration);

// Sign of a net cost with tolerance 1e-9 (R+Phi) max(1, L/tau).
Regime classify_net_cost(double net, const BenchmarkState& bench, double duration);

// Closed form of the linear net cost:
// (h/(tau H)) * (R+Phi - (R~+Phi~) + (R+Phi)(kappa-1)(1-alpha)) * L.
double linear_net_cost(double h_attack, double tau_H, double revenue, double attack_revenue,
                       double kappa, double alpha, double duration);

struct BreakEven {
  double power = 0.0;
  bool degenerate = false;  // attack and honest revenue coincide; power == h*
};

// h > h* with (h*/D)(R+Phi) - c(h*) = (h/D)(R~+Phi~) - c(h). Throws NoRoot when
// R~+Phi~ < R+Phi and DomainError for linear costs.
BreakEven break_even_power(const CostFunction& cost, double D, double revenue,
                           double attack_revenue, double h_star);

// Cost schedule of an incumbent whose best response is h*.
using CostFamily = std::function<CostFunction(double h_star)>;

// gamma h^p with gamma chosen so that h* is optimal at the benchmark.
CostFamily power_cost_family(double p, const BenchmarkState& bench);

// Root of h + h_bar(h) = H on (0, H/2]. Throws NoRoot without a sign change.
double critical_incumbent_power(const CostFamily& family, const BenchmarkState& bench,
                                double attack_revenue);

struct DifficultyAdjustment {
  double difficulty = 0.0;  // D'
  double interval = 0.0;    // Y' = D'/h_A
};

// Retrospective retarget after the attack chain mined the last
// `blocks_to_retarget` blocks of an epoch with h_A.
DifficultyAdjustment difficulty_adjust(double D, int blocks_to_retarget, double h_attack, double H,
                                       int epoch = 2600);

struct RetargetedAttackCost {
  double attack_cost = 0.0;
  DifficultyAdjustment adjustment;
  // Inside attack with h* > 0: cost below the forgone honest flow.
  // Outside attack: cost positive. Vacuous otherwise.
  bool inequalities_hold = true;
};

RetargetedAttackCost attack_cost_with_retarget(const AttackPlan& plan, const BenchmarkState& bench,
                                               int blocks_to_retarget, double duration_pre,
                                               double duration_post, double Phi_tilde,
                                               double Phi_tilde_post, int epoch = 2600);

// Net cost of a fully outside attack that stops one block ahead:
// Phi - Phi~(L), where Phi~(L) is the second-tier block. Throws for m <= 1.
double outside_attack_cost(double m, double Phi, double second_tier, double duration, double tau);

}  // namespace nakamoto
