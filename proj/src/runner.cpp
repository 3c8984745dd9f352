#include "nakamoto/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "nakamoto/attack_economics.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/fork_sim.hpp"
#include "nakamoto/random.hpp"

namespace nakamoto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Child streams of the scenario seed.
enum Stream : std::uint64_t { kBenchmarkFees = 0, kAttackFees = 1, kRaces = 2, kPostRetargetFees = 3, kPoS = 4 };

std::uint64_t point_seed(std::uint64_t seed, Stream stream, std::size_t index) {
  return split_seed(split_seed(seed, stream), index);
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) return kMissing;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ValidationError(what + ": not a number: \"" + s + "\"");
  return v;
}

std::string format_flag(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

std::optional<bool> parse_flag(const std::string& s, const std::string& what) {
  if (s.empty()) return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw ValidationError(what + ": expected true or false, got \"" + s + "\"");
}

std::string phi_source_name(const PhiTildeSource& p) {
  return std::visit(overloaded{
                        [](const PhiFromMarket&) { return std::string("market"); },
                        [](const PhiFromBenchmark&) { return std::string("benchmark"); },
                        [](double v) { return "fixed:" + format_double(v); },
                    },
                    p);
}

std::string describe(const SweepPoint& p) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("auto"); };
  std::ostringstream os;
  os << "point " << p.index << " (alpha=" << opt(p.alpha) << ", kappa=" << format_double(p.kappa)
     << ", h_attack=" << opt(p.h_attack) << ", h_rent=" << format_double(p.h_rent)
     << ", retarget=" << (p.retarget ? std::to_string(*p.retarget) : "none") << ", duration=" << opt(p.duration)
     << ", phi_tilde=" << phi_source_name(p.phi_tilde) << "): ";
  return os.str();
}

[[noreturn]] void rethrow_at(const std::string& where) {
  try {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(where + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + e.what());
  } catch (const NoEquilibrium& e) {
    throw NoEquilibrium(where + e.what());
  } catch (const NoRoot& e) {
    throw NoRoot(where + e.what());
  } catch (const NotUnique& e) {
    throw NotUnique(where + e.what());
  } catch (const SimulationBudgetExceeded& e) {
    throw SimulationBudgetExceeded(where + e.what());
  }
}

double linear_price(const CostFunction& f) {
  if (const auto* l = std::get_if<LinearCost>(&f.variant())) return l->c;
  return std::get<LinearPremiumCost>(f.variant()).c;
}

unsigned resolve_threads(unsigned requested) {
  return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

ResultRow evaluate(const Scenario& s, const SweepContext& ctx, const SweepPoint& p, unsigned batch_threads) {
  const BenchmarkState bench{ctx.eq.H, s.tau, s.block_reward, ctx.Phi.mean};
  const double H = bench.H;
  const double D = bench.difficulty();
  const double rent = p.h_rent;
  const bool linear = ctx.attacker_cost.is_linear();

  auto market_fees = [&](double interval, Stream stream) {
    return expected_fees_per_block(s.market, interval, s.fee_samples, point_seed(s.seed, stream, p.index),
                                   s.interval_law);
  };

  // Resolve own attack power h and the inside part of it.
  double h = 0.0;
  double inside = 0.0;
  if (p.alpha) {
    if (p.h_attack) {
      h = *p.h_attack;
    } else if (s.attack.lead_margin) {
      h = (H * (1.0 + *s.attack.lead_margin) - 2.0 * rent) / (1.0 + *p.alpha);
    } else {
      throw ValidationError("a numeric alpha needs h_attack or attack.lead_margin");
    }
    inside = *p.alpha * h;
    if (inside > ctx.h_star * (1.0 + 1e-12) + 1e-12 * H) {
      throw ValidationError("alpha * h_A = " + format_double(inside) + " exceeds the attacker's pre-attack power h* = " +
                            format_double(ctx.h_star));
    }
  } else {
    if (p.h_attack) {
      h = *p.h_attack;
    } else if (s.attack.lead_margin) {
      const double target = H * (1.0 + *s.attack.lead_margin) - 2.0 * rent;
      h = target - ctx.h_star;
      if (h < ctx.h_star) h = 0.5 * target;
    } else if (!linear) {
      const double h_min = min_attack_power_with_rent(ctx.h_star, H, rent);
      double h_tilde = 0.0;
      if (std::holds_alternative<PhiFromMarket>(p.phi_tilde)) {
        auto fees = [&](double x) { return market_fees(D / (x + rent), kAttackFees).mean; };
        h_tilde = optimal_attack_power_with_fees(ctx.attacker_cost, D, ctx.R_tilde, fees, std::max(h_min, ctx.h_star));
      } else {
        const double phi = std::holds_alternative<PhiFromBenchmark>(p.phi_tilde) ? ctx.Phi.mean
                                                                                  : std::get<double>(p.phi_tilde);
        h_tilde = optimal_attack_power(ctx.attacker_cost, D, ctx.R_tilde + phi);
      }
      h = std::max(h_tilde, h_min);
    } else {
      throw ValidationError("linear attacker costs need h_attack or attack.lead_margin");
    }
    inside = std::min(ctx.h_star, h);
  }
  if (!(h > 0.0)) throw ValidationError("attack power resolves to " + format_double(h) + ", must be positive");
  const double alpha = inside / h;
  const double total = h + rent;
  const double honest = H - inside - rent;
  if (honest < -1e-12 * H) throw ValidationError("inside plus rented power exceeds H");

  AttackPlan plan;
  plan.cost = linear ? CostFunction::premium(linear_price(ctx.attacker_cost), p.kappa, alpha) : ctx.attacker_cost;
  plan.h_star = inside;
  plan.deployed = h;
  plan.h_rent = rent;
  plan.v_attack = s.attack.v_attack;
  plan.R_tilde = ctx.R_tilde;

  ResultRow row;
  row.point = p.index;
  row.alpha = alpha;
  row.kappa = p.kappa;
  row.h_attack = h;
  row.h_rent = rent;
  row.retarget = p.retarget.value_or(-1);
  row.phi_source = phi_source_name(p.phi_tilde);
  row.H = H;
  row.D = D;
  row.Phi = ctx.Phi.mean;
  row.Phi_se = ctx.Phi.std_error;
  row.honest_power = std::max(0.0, honest);
  row.h_min = min_attack_power_with_rent(inside, H, rent);

  auto phi_for = [&](double interval, Stream stream) -> Estimate {
    return std::visit(overloaded{
                          [&](const PhiFromMarket&) { return market_fees(interval, stream); },
                          [&](const PhiFromBenchmark&) { return Estimate{ctx.Phi.mean, 0.0, 0}; },
                          [&](double v) { return Estimate{v, 0.0, 0}; },
                      },
                      p.phi_tilde);
  };
  const Estimate phi_tilde = phi_for(D / total, kAttackFees);
  plan.Phi_tilde = phi_tilde.mean;
  row.Phi_tilde = phi_tilde.mean;
  row.Phi_tilde_se = phi_tilde.std_error;
  row.duration = p.duration ? *p.duration : hitting_time_duration(D, total, row.honest_power);

  if (s.mode != RunMode::Simulate) {
    auto a = net_cost(plan, bench, row.duration);
    double se = total / D * row.duration * phi_tilde.std_error;
    if (p.retarget) {
      const double pre = std::min(row.duration, *p.retarget * D / total);
      const double post = row.duration - pre;
      const auto adj = difficulty_adjust(D, *p.retarget, h, H, s.attack.epoch);
      const Estimate phi_post = phi_for(adj.interval, kPostRetargetFees);
      const auto r = attack_cost_with_retarget(plan, bench, *p.retarget, pre, post, phi_tilde.mean, phi_post.mean,
                                               s.attack.epoch);
      a.attack_cost = r.attack_cost;
      a.net_cost = a.opportunity_cost + a.attack_cost;
      a.regime = classify_net_cost(a.net_cost, bench, row.duration);
      a.ic_holds = a.net_cost >= plan.v_attack;
      se = std::hypot(h / D * pre * phi_tilde.std_error, h / adj.difficulty * post * phi_post.std_error);
    }
    row.attack_cost = a.attack_cost;
    row.opportunity_cost = a.opportunity_cost;
    row.net_cost = a.net_cost;
    row.net_cost_se = se;
    row.regime = to_string(a.regime);
    row.ic_holds = a.ic_holds;
  }

  if (s.mode != RunMode::Analytic) {
    RaceConfig cfg;
    cfg.attack_power = total;
    cfg.honest_power = row.honest_power;
    cfg.benchmark_power = H;
    cfg.difficulty = D;
    cfg.tau = s.tau;
    cfg.block_reward = ctx.R_tilde;
    cfg.attacker_cost = plan.cost;
    cfg.own_power = h;
    // renters are paid what they would have earned honestly
    cfg.extra_cost_rate = rent / D * bench.revenue_per_block();
    cfg.market = s.market;
    cfg.bids = BidAdjustPolicy{s.bid_beta};
    cfg.mempool = s.mempool;
    if (s.attack.escrow) cfg.stop = Escrow{*s.attack.escrow};
    if (p.retarget) cfg.retarget = EpochRetarget{s.attack.epoch, *p.retarget};
    cfg.entry = s.attack.entry;
    cfg.seed = point_seed(s.seed, kRaces, p.index);
    cfg.event_budget = s.event_budget;

    const auto batch = run_batch(cfg, s.replications, batch_threads);
    const double honest_flow = inside / D * bench.revenue_per_block() - plan.cost.inside().eval(inside);
    RunningStats net;
    for (std::size_t k = 0; k < batch.replications; ++k) {
      net.add(honest_flow * batch.durations[k] + batch.attack_costs[k]);
    }
    row.sim_reps = batch.replications;
    row.sim_duration = batch.duration.mean;
    row.sim_duration_se = batch.duration.std_error;
    row.sim_phi_tilde = batch.attack_blocks.mean > 0.0 ? batch.attack_fees.mean / batch.attack_blocks.mean : 0.0;
    row.sim_net_cost = net.mean();
    row.sim_net_cost_se = net.std_error();
  }
  if (s.mode == RunMode::Cross) {
    row.agree = within_standard_errors(row.net_cost, row.sim_net_cost, std::hypot(row.sim_net_cost_se, row.net_cost_se));
  }
  return row;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "schema_version", "point",        "alpha",          "kappa",        "h_attack",     "h_rent",
      "retarget",       "phi_source",   "H",              "D",            "Phi",          "Phi_se",
      "Phi_tilde",      "Phi_tilde_se", "duration",       "h_min",        "honest_power", "attack_cost",
      "opportunity_cost", "net_cost",   "net_cost_se",    "regime",       "ic_holds",     "sim_reps",
      "sim_duration",   "sim_duration_se", "sim_phi_tilde", "sim_net_cost", "sim_net_cost_se", "agree"};
  return cols;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (v == 0.0) return "0";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Table::to_csv() const {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cell(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

Table Table::from_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ValidationError("csv: unterminated quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ValidationError("csv: missing header row");
  Table t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) {
      throw ValidationError("csv: row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                            " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ValidationError("csv: missing column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<SweepPoint> expand_grid(const SweepGrid& g) {
  std::vector<SweepPoint> out;
  out.reserve(g.size());
  for (const auto& alpha : g.alpha)
    for (double kappa : g.kappa)
      for (const auto& h : g.h_attack)
        for (double rent : g.h_rent)
          for (const auto& d : g.retarget)
            for (const auto& L : g.duration)
              for (const auto& phi : g.phi_tilde) out.push_back({out.size(), alpha, kappa, h, rent, d, L, phi});
  return out;
}

SweepContext prepare_sweep(const Scenario& s) {
  s.validate();
  SweepContext ctx;
  ctx.Phi = expected_fees_per_block(s.market, s.tau, s.fee_samples, split_seed(s.seed, kBenchmarkFees), s.interval_law);
  ctx.eq = solve_equilibrium(s.miners, s.block_reward, s.tau, ctx.Phi.mean);
  ctx.R_tilde = s.attack.R_tilde.value_or(s.block_reward);

  const MinerSpec* attacker = nullptr;
  for (const auto& m : s.miners) {
    if (s.attack.attacker && m.id.value == *s.attack.attacker) attacker = &m;
  }
  if (s.attack.cost) {
    ctx.attacker_cost = *s.attack.cost;
  } else if (attacker) {
    ctx.attacker_cost = attacker->cost;
  } else {
    // A fresh outside attacker buys power at the cheapest linear price.
    const MinerSpec* cheapest = nullptr;
    for (const auto& m : s.miners) {
      if (m.cost.is_linear() && (!cheapest || m.cost.linear_slope() < cheapest->cost.linear_slope())) cheapest = &m;
    }
    if (!cheapest) throw ValidationError("attack.cost: required when there is no attacker and no linear miner");
    ctx.attacker_cost = CostFunction::linear(cheapest->cost.linear_slope());
  }
  ctx.h_star = s.attack.h_star ? *s.attack.h_star : (attacker ? ctx.eq.allocation(attacker->id) : 0.0);
  if (ctx.h_star > ctx.eq.H * (1.0 + 1e-12)) {
    throw ValidationError("attack.h_star: " + format_double(ctx.h_star) + " exceeds H = " + format_double(ctx.eq.H));
  }
  return ctx;
}

ResultRow evaluate_point(const Scenario& s, const SweepContext& ctx, const SweepPoint& p) {
  try {
    return evaluate(s, ctx, p, resolve_threads(s.threads));
  } catch (...) {
    rethrow_at(describe(p));
  }
}

std::vector<ResultRow> run_sweep(const Scenario& s, bool first_point_only) {
  const auto ctx = prepare_sweep(s);
  auto points = expand_grid(s.attack.sweep);
  if (first_point_only) points.resize(1);

  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(s.threads), points.size()));
  // Parallelise across points when there are enough of them, else inside each batch.
  const unsigned batch_threads = threads > 1 ? 1 : resolve_threads(s.threads);
  std::vector<ResultRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = evaluate(s, ctx, points[i], batch_threads);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (...) {
      rethrow_at(describe(points[i]));
    }
  }
  return rows;
}

Table rows_to_table(const std::vector<ResultRow>& rows) {
  Table t;
  t.header = sweep_columns();
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(kCsvSchemaVersion),
                      std::to_string(r.point),
                      format_double(r.alpha),
                      format_double(r.kappa),
                      format_double(r.h_attack),
                      format_double(r.h_rent),
                      r.retarget < 0 ? "" : std::to_string(r.retarget),
                      r.phi_source,
                      format_double(r.H),
                      format_double(r.D),
                      format_double(r.Phi),
                      format_double(r.Phi_se),
                      format_double(r.Phi_tilde),
                      format_double(r.Phi_tilde_se),
                      format_double(r.duration),
                      format_double(r.h_min),
                      format_double(r.honest_power),
                      format_double(r.attack_cost),
                      format_double(r.opportunity_cost),
                      format_double(r.net_cost),
                      format_double(r.net_cost_se),
                      r.regime,
                      format_flag(r.ic_holds),
                      std::to_string(r.sim_reps),
                      format_double(r.sim_duration),
                      format_double(r.sim_duration_se),
                      format_double(r.sim_phi_tilde),
                      format_double(r.sim_net_cost),
                      format_double(r.sim_net_cost_se),
                      format_flag(r.agree)});
  }
  return t;
}

std::vector<ResultRow> rows_from_table(const Table& t) {
  if (t.header != sweep_columns()) throw ValidationError("csv: header does not match the sweep schema");
  std::vector<ResultRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& c = t.rows[i];
    const std::string where = "csv row " + std::to_string(i + 1);
    if (c[0] != std::to_string(kCsvSchemaVersion)) throw ValidationError(where + ": unsupported schema_version " + c[0]);
    auto num = [&](std::size_t k) { return parse_double(c[k], where + " " + t.header[k]); };
    ResultRow r;
    r.point = static_cast<std::size_t>(num(1));
    r.alpha = num(2);
    r.kappa = num(3);
    r.h_attack = num(4);
    r.h_rent = num(5);
    r.retarget = c[6].empty() ? -1 : static_cast<int>(num(6));
    r.phi_source = c[7];
    r.H = num(8);
    r.D = num(9);
    r.Phi = num(10);
    r.Phi_se = num(11);
    r.Phi_tilde = num(12);
    r.Phi_tilde_se = num(13);
    r.duration = num(14);
    r.h_min = num(15);
    r.honest_power = num(16);
    r.attack_cost = num(17);
    r.opportunity_cost = num(18);
    r.net_cost = num(19);
    r.net_cost_se = num(20);
    r.regime = c[21];
    r.ic_holds = parse_flag(c[22], where + " ic_holds");
    r.sim_reps = static_cast<std::size_t>(num(23));
    r.sim_duration = num(24);
    r.sim_duration_se = num(25);
    r.sim_phi_tilde = num(26);
    r.sim_net_cost = num(27);
    r.sim_net_cost_se = num(28);
    r.agree = parse_flag(c[29], where + " agree");
    out.push_back(std::move(r));
  }
  return out;
}

std::string sweep_report(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "Sweep points: " << rows.size() << "\n";
  if (rows.empty()) return os.str();
  const auto& first = rows.front();
  os << "Benchmark: H = " << format_double(first.H) << ", D = " << format_double(first.D)
     << ", Phi = " << format_double(first.Phi) << " (se " << format_double(first.Phi_se) << ")\n";

  int inside = 0, inside_up = 0, outside = 0, outside_down = 0;
  int positive = 0, zero = 0, negative = 0, analytic = 0, ic = 0, crossed = 0, agreed = 0;
  for (const auto& r : rows) {
    if (r.phi_source == "market") {
      const Estimate tilde{r.Phi_tilde, r.Phi_tilde_se, 0}, phi{r.Phi, r.Phi_se, 0};
      if (r.h_attack + r.h_rent < r.H) {
        ++inside;
        inside_up += exceeds_at_99(tilde, phi);
      } else if (r.h_attack + r.h_rent > r.H) {
        ++outside;
        outside_down += exceeds_at_99(phi, tilde);
      }
    }
    if (!r.regime.empty()) {
      ++analytic;
      positive += r.regime == "positive";
      zero += r.regime == "zero";
      negative += r.regime == "negative";
      ic += r.ic_holds.value_or(false);
    }
    if (r.agree) {
      ++crossed;
      agreed += *r.agree;
    }
  }
  if (inside) {
    os << "Attack-chain fees above the benchmark at 99% confidence: " << inside_up << " of " << inside
       << " points with attack power below H\n";
  }
  if (outside) {
    os << "Attack-chain fees below the benchmark at 99% confidence: " << outside_down << " of " << outside
       << " points with attack power above H\n";
  }
  if (analytic) {
    os << "Net cost regimes: positive " << positive << ", zero " << zero << ", negative " << negative << "\n";
    os << "Incentive compatibility (net cost >= V_attack): holds at " << ic << " of " << analytic << " points\n";
  }
  if (crossed) {
    os << "Simulated net cost within 3 standard errors of the analytic value: " << agreed << " of " << crossed
       << " points\n";
  }
  return os.str();
}

Table equilibrium_table(const Scenario& s) {
  const auto ctx = prepare_sweep(s);
  Table t;
  t.header = {"schema_version", "miner_id", "cost_type", "allocation", "active", "profit_rate", "H", "D", "Phi", "Phi_se"};
  for (const auto& m : s.miners) {
    const char* type = std::visit(overloaded{
                                      [](const LinearCost&) { return "linear"; },
                                      [](const LinearPremiumCost&) { return "premium"; },
                                      [](const PowerCost&) { return "power"; },
                                  },
                                  m.cost.variant());
    t.rows.push_back({std::to_string(kCsvSchemaVersion), std::to_string(m.id.value), type,
                      format_double(ctx.eq.allocation(m.id)), ctx.eq.active.count(m.id) ? "true" : "false",
                      format_double(ctx.eq.profit(m)), format_double(ctx.eq.H), format_double(ctx.eq.D),
                      format_double(ctx.Phi.mean), format_double(ctx.Phi.std_error)});
  }
  return t;
}

PoSResult run_pos(const Scenario& s) {
  s.validate();
  if (!s.pos) throw ValidationError("pos: the scenario has no pos block");
  const auto& ps = *s.pos;
  PoSParams params;
  params.slot_time = ps.slot_time;
  params.block_reward = ps.block_reward;
  params.interest_rate = ps.interest_rate;
  params.exchange_rate = ps.exchange_rate;
  params.market = s.market;
  params.market.tau = ps.slot_time;

  const auto phi = expected_fees_per_block(params.market, ps.slot_time, s.fee_samples,
                                           split_seed(split_seed(s.seed, kPoS), 0), s.interval_law);
  PoSResult r;
  r.share = ps.share;
  r.slot_time = ps.slot_time;
  r.total_stake = pos_equilibrium(params, phi.mean, {}).total;
  r.batch = run_pos_batch(ps.share, params, ps.horizon_slots, s.replications, split_seed(split_seed(s.seed, kPoS), 1),
                          s.mempool);
  r.duration = r.batch.slots.mean * ps.slot_time;
  const auto cost = pos_attack_cost(ps.share * r.total_stake, r.total_stake, r.batch.benchmark_fee_per_block.mean,
                                    r.batch.attack_fee_per_block.mean, r.duration, ps.slot_time, ps.v_attack);
  r.attack_cost = cost.attack_cost;
  r.ic_holds = cost.ic_holds;
  return r;
}

Table pos_table(const PoSResult& r) {
  Table t;
  t.header = {"schema_version", "share", "S", "slot_time", "reps", "slots", "slots_se", "attack_blocks",
              "attack_blocks_se", "benchmark_attacker_blocks", "benchmark_attacker_blocks_se", "block_gap",
              "block_gap_se", "Phi_s", "Phi_tilde_s", "fee_gap", "fee_gap_se", "duration", "attack_cost",
              "ic_holds", "incomplete"};
  const auto& b = r.batch;
  t.rows.push_back({std::to_string(kCsvSchemaVersion), format_double(r.share), format_double(r.total_stake),
                    format_double(r.slot_time), std::to_string(b.replications), format_double(b.slots.mean),
                    format_double(b.slots.std_error), format_double(b.attack_blocks.mean),
                    format_double(b.attack_blocks.std_error), format_double(b.benchmark_attacker_blocks.mean),
                    format_double(b.benchmark_attacker_blocks.std_error), format_double(b.block_count_gap.mean),
                    format_double(b.block_count_gap.std_error), format_double(b.benchmark_fee_per_block.mean),
                    format_double(b.attack_fee_per_block.mean), format_double(b.fee_gap.mean),
                    format_double(b.fee_gap.std_error), format_double(r.duration), format_double(r.attack_cost),
                    r.ic_holds ? "true" : "false", std::to_string(b.incomplete)});
  return t;
}

std::string pos_report(const Table& t) {
  std::ostringstream os;
  for (const auto& row : t.rows) {
    auto num = [&](const char* col) { return parse_double(row[t.column(col)], col); };
    const double gap = num("block_gap"), gap_se = num("block_gap_se");
    const double fee_gap = num("fee_gap"), fee_se = num("fee_gap_se");
    os << "Stake share " << row[t.column("share")] << ", free-entry stake S = " << row[t.column("S")] << "\n";
    os << "Attacker blocks with minus without the attack: " << format_double(gap) << " (se " << format_double(gap_se)
       << "), equal within 3 standard errors: " << (std::abs(gap) <= 3.0 * gap_se ? "yes" : "no") << "\n";
    os << "Attack-branch fees per block above the benchmark at 99% confidence: "
       << (fee_se > 0.0 ? (fee_gap / fee_se > kZ99OneSided ? "yes" : "no") : (fee_gap > 0.0 ? "yes" : "no")) << "\n";
    os << "Attack cost " << row[t.column("attack_cost")] << ", incentive compatibility "
       << (row[t.column("ic_holds")] == "true" ? "holds" : "fails") << "\n";
    if (row[t.column("incomplete")] != "0") {
      os << "Warning: " << row[t.column("incomplete")] << " replications did not overtake within the horizon\n";
    }
  }
  return os.str();
}

}  // namespace nakamoto
