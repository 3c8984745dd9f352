#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nakamoto/pos_model.hpp"
#include "nakamoto/scenario.hpp"
#include "nakamoto/stats.hpp"

namespace nakamoto {

// Bumped whenever a CSV column is added, removed or reordered.
inline constexpr int kCsvSchemaVersion = 1;

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// Floats in every CSV use 12 significant digits; NaN means "not computed"
// and is written as an empty field.
std::string format_double(double v);

// A header plus string cells, written as RFC 4180 CSV with '\n' line ends.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  // Throws ValidationError on ragged rows or unterminated quotes.
  static Table from_csv(const std::string& text);
  std::size_t column(const std::string& name) const;
};

// One point of the attack sweep, before derived values are resolved.
struct SweepPoint {
  std::size_t index = 0;
  std::optional<double> alpha;
  double kappa = 1.0;
  std::optional<double> h_attack;
  double h_rent = 0.0;
  std::optional<int> retarget;
  std::optional<double> duration;
  PhiTildeSource phi_tilde;
};

// Cartesian product in the fixed order alpha, kappa, h_attack, h_rent,
// retarget, duration, phi_tilde (last axis varies fastest).
std::vector<SweepPoint> expand_grid(const SweepGrid& grid);

// Missing values are NaN (numbers) or nullopt (flags).
struct ResultRow {
  std::size_t point = 0;
  double alpha = 0.0;
  double kappa = 1.0;
  double h_attack = 0.0;
  double h_rent = 0.0;
  int retarget = -1;  // -1: no retarget
  std::string phi_source;
  double H = 0.0;
  double D = 0.0;
  double Phi = 0.0;
  double Phi_se = 0.0;
  double Phi_tilde = 0.0;
  double Phi_tilde_se = 0.0;
  double duration = 0.0;
  double h_min = 0.0;
  double honest_power = 0.0;

  double attack_cost = kMissing;
  double opportunity_cost = kMissing;
  double net_cost = kMissing;
  double net_cost_se = kMissing;
  std::string regime;  // empty unless analytic
  std::optional<bool> ic_holds;

  std::size_t sim_reps = 0;
  double sim_duration = kMissing;
  double sim_duration_se = kMissing;
  double sim_phi_tilde = kMissing;
  double sim_net_cost = kMissing;
  double sim_net_cost_se = kMissing;
  std::optional<bool> agree;  // |analytic - simulated| <= 3 combined standard errors
};

// Equilibrium and benchmark fees shared by every sweep point.
struct SweepContext {
  Equilibrium eq;
  Estimate Phi;
  CostFunction attacker_cost = CostFunction::linear(0.0);
  double h_star = 0.0;  // attacker's pre-attack power
  double R_tilde = 0.0;
};

SweepContext prepare_sweep(const Scenario& s);

// Errors are rethrown with the point's coordinates in the message.
ResultRow evaluate_point(const Scenario& s, const SweepContext& ctx, const SweepPoint& p);

// Evaluates the grid (or only its first point) concurrently; rows come back
// in grid order whatever the completion order.
std::vector<ResultRow> run_sweep(const Scenario& s, bool first_point_only = false);

Table rows_to_table(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_table(const Table& t);

// Verdict lines computed from the rows alone.
std::string sweep_report(const std::vector<ResultRow>& rows);

Table equilibrium_table(const Scenario& s);

struct PoSResult {
  double share = 0.0;
  double total_stake = 0.0;
  double slot_time = 1.0;
  PoSBatchSummary batch;
  double duration = 0.0;
  double attack_cost = 0.0;
  bool ic_holds = false;
};

// Throws ValidationError if the scenario has no pos block.
PoSResult run_pos(const Scenario& s);
Table pos_table(const PoSResult& r);
std::string pos_report(const Table& t);

}  // namespace nakamoto
