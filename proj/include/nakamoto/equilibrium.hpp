#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "nakamoto/cost_function.hpp"
#include "nakamoto/network.hpp"

namespace nakamoto {

struct MinerSpec {
  MinerId id;
  CostFunction cost;
};

// The pre-attack chain as seen by an attacker: aggregate power, target
// interval, block reward and expected fees per block.
struct BenchmarkState {
  double H = 1.0;
  double tau = 1.0;
  double R = 0.0;
  double Phi = 0.0;

  double difficulty() const { return tau * H; }
  double revenue_per_block() const { return R + Phi; }
  // Expected revenue per unit of hash power per unit time.
  double revenue_per_hash() const { return (R + Phi) / (tau * H); }
};

struct Equilibrium {
  double H = 0.0;
  std::map<MinerId, double> allocations;
  std::set<MinerId> active;
  double Phi = 0.0;
  double R = 0.0;
  double tau = 1.0;
  double D = 0.0;

  BenchmarkState benchmark() const { return {H, tau, R, Phi}; }
  double allocation(MinerId id) const;
  // (h/(tau H))(R+Phi) - c(h) per unit time.
  double profit(const MinerSpec& m) const;
};

struct EquilibriumOptions {
  int max_iterations = 500;
};

// Price-taking optimum of (h/(tau H))(R+Phi) - c(h) over h >= 0.
// Zero when profit cannot be made positive (ties included); +infinity for a
// linear cost strictly below the revenue per hash.
double best_response(const MinerSpec& m, double H, double R, double Phi, double tau);

// Fixed point of best responses with sum h*_i = H and D = tau H.
// Throws NoEquilibrium for R+Phi <= 0, an empty population, or non-convergence.
Equilibrium solve_equilibrium(const std::vector<MinerSpec>& miners, double R, double tau,
                              double Phi, const EquilibriumOptions& options = {});

// As above with Phi taken from the fee market at the target interval.
Equilibrium solve_equilibrium(const std::vector<MinerSpec>& miners, double R,
                              const FeeMarket& market, std::size_t fee_samples,
                              std::uint64_t seed, const EquilibriumOptions& options = {});

}  // namespace nakamoto
