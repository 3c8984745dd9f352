#include "nakamoto/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nakamoto/errors.hpp"

namespace nakamoto {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

// Strict object reader: every key must be consumed, otherwise finish() reports it.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() || it->is_null() ? nullptr : &*it;
  }

  const json& need(const std::string& key) {
    const json* v = find(key);
    if (!v) fail(at(key), "required field is missing");
    return *v;
  }

  double number(const std::string& key, double def) {
    const json* v = find(key);
    return v ? as_number(*v, at(key)) : def;
  }
  std::optional<double> opt_number(const std::string& key) {
    const json* v = find(key);
    return v ? std::optional(as_number(*v, at(key))) : std::nullopt;
  }
  std::uint64_t uint(const std::string& key, std::uint64_t def) {
    const json* v = find(key);
    return v ? as_uint(*v, at(key)) : def;
  }
  std::string string(const std::string& key, const std::string& def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_string()) fail(at(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(at(it.key()), "unknown field");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }
  static std::uint64_t as_uint(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    fail(path, "expected a non-negative integer");
  }
  static std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

CostFunction parse_cost(const json& j, const std::string& path) {
  Obj o(j, path);
  const std::string type = o.string("type", "");
  try {
    if (type == "linear") {
      const double c = o.number("c", 1.0);
      o.finish();
      return CostFunction::linear(c);
    }
    if (type == "premium") {
      const double c = o.number("c", 1.0);
      const double kappa = o.number("kappa", 1.0);
      const double alpha = o.number("alpha", 0.0);
      o.finish();
      return CostFunction::premium(c, kappa, alpha);
    }
    if (type == "power") {
      const double gamma = o.number("gamma", 1.0);
      const double p = o.number("p", 2.0);
      o.finish();
      return CostFunction::power(gamma, p);
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(o.at("type"), "expected linear, premium or power");
}

ojson cost_to_json(const CostFunction& f) {
  return std::visit(overloaded{
                        [](const LinearCost& c) { return ojson{{"type", "linear"}, {"c", c.c}}; },
                        [](const LinearPremiumCost& c) {
                          return ojson{{"type", "premium"}, {"c", c.c}, {"kappa", c.kappa}, {"alpha", c.alpha}};
                        },
                        [](const PowerCost& c) { return ojson{{"type", "power"}, {"gamma", c.gamma}, {"p", c.p}}; },
                    },
                    f.variant());
}

FeeDistribution parse_fees(const json& j, const std::string& path) {
  Obj o(j, path);
  const std::string law = o.string("law", "");
  try {
    if (law == "degenerate") {
      const double v = o.number("value", 0.0);
      o.finish();
      if (v < 0.0) fail(o.at("value"), "fees must be non-negative");
      return FeeDistribution::degenerate(v);
    }
    if (law == "uniform") {
      const double lo = o.number("lo", 0.0), hi = o.number("hi", 1.0);
      o.finish();
      if (!(lo >= 0.0 && hi >= lo)) fail(path, "uniform fees need 0 <= lo <= hi");
      return FeeDistribution::uniform(lo, hi);
    }
    if (law == "exponential") {
      const double mean = o.number("mean", 1.0);
      o.finish();
      if (!(mean > 0.0)) fail(o.at("mean"), "mean must be positive");
      return FeeDistribution::exponential(mean);
    }
    if (law == "empirical") {
      const json& arr = o.need("fees");
      o.finish();
      if (!arr.is_array()) fail(o.at("fees"), "expected an array");
      std::vector<double> fees;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        fees.push_back(Obj::as_number(arr[i], o.at("fees") + "[" + std::to_string(i) + "]"));
      }
      return FeeDistribution::empirical(std::move(fees));
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(o.at("law"), "expected degenerate, uniform, exponential or empirical");
}

ojson fees_to_json(const FeeDistribution& f) {
  return std::visit(overloaded{
                        [](const DegenerateFees& d) { return ojson{{"law", "degenerate"}, {"value", d.value}}; },
                        [](const UniformFees& u) { return ojson{{"law", "uniform"}, {"lo", u.lo}, {"hi", u.hi}}; },
                        [](const ExponentialFees& e) { return ojson{{"law", "exponential"}, {"mean", e.mean}}; },
                        [](const EmpiricalFees& e) { return ojson{{"law", "empirical"}, {"fees", e.fees}}; },
                    },
                    f.variant());
}

template <class T, class F>
std::vector<T> parse_axis(Obj& o, const std::string& key, std::vector<T> def, F&& item) {
  const json* v = o.find(key);
  if (!v) return def;
  const std::string path = o.at(key);
  if (!v->is_array()) fail(path, "expected an array");
  if (v->empty()) fail(path, "sweep grid is empty");
  std::vector<T> out;
  for (std::size_t i = 0; i < v->size(); ++i) out.push_back(item((*v)[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::optional<double> auto_or_number(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() != "auto") fail(path, "expected a number or \"auto\"");
    return std::nullopt;
  }
  return Obj::as_number(v, path);
}

SweepGrid parse_sweep(const json& j, const std::string& path) {
  Obj o(j, path);
  SweepGrid g;
  g.alpha = parse_axis(o, "alpha", g.alpha, auto_or_number);
  g.kappa = parse_axis(o, "kappa", g.kappa, Obj::as_number);
  g.h_attack = parse_axis(o, "h_attack", g.h_attack, auto_or_number);
  g.h_rent = parse_axis(o, "h_rent", g.h_rent, Obj::as_number);
  g.retarget = parse_axis(o, "retarget", g.retarget, [](const json& v, const std::string& p) -> std::optional<int> {
    if (v.is_string()) {
      if (v.get<std::string>() != "none") fail(p, "expected an integer or \"none\"");
      return std::nullopt;
    }
    return static_cast<int>(Obj::as_int(v, p));
  });
  g.duration = parse_axis(o, "duration", g.duration, auto_or_number);
  g.phi_tilde = parse_axis(o, "phi_tilde", g.phi_tilde, [](const json& v, const std::string& p) -> PhiTildeSource {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "market") return PhiFromMarket{};
      if (s == "benchmark") return PhiFromBenchmark{};
      fail(p, "expected a number, \"market\" or \"benchmark\"");
    }
    return Obj::as_number(v, p);
  });
  o.finish();
  return g;
}

template <class T>
ojson axis_to_json(const std::vector<std::optional<T>>& axis, const char* none) {
  ojson arr = ojson::array();
  for (const auto& v : axis) {
    if (v) arr.push_back(*v);
    else arr.push_back(none);
  }
  return arr;
}

EntryRule parse_entry(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "none") return NoEntry{};
    if (s == "immediate") return ImmediateEntry{};
    fail(path, "expected \"none\", \"immediate\" or {rate, cap}");
  }
  Obj o(j, path);
  DelayedEntry d{o.number("rate", 0.0), o.number("cap", 0.0)};
  o.finish();
  return d;
}

ojson entry_to_json(const EntryRule& e) {
  return std::visit(overloaded{
                        [](const NoEntry&) { return ojson("none"); },
                        [](const ImmediateEntry&) { return ojson("immediate"); },
                        [](const DelayedEntry& d) { return ojson{{"rate", d.rate}, {"cap", d.cap}}; },
                    },
                    e);
}

template <class E>
E parse_enum(Obj& o, const std::string& key, E def, std::initializer_list<std::pair<const char*, E>> names) {
  const json* v = o.find(key);
  if (!v) return def;
  if (v->is_string()) {
    for (const auto& [n, e] : names) {
      if (v->get<std::string>() == n) return e;
    }
  }
  std::string allowed;
  for (const auto& [n, e] : names) allowed += std::string(allowed.empty() ? "" : ", ") + n;
  fail(o.at(key), "expected one of " + allowed);
}

// 1-based line and column of a byte offset.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Analytic: return "analytic";
    case RunMode::Simulate: return "simulate";
    case RunMode::Cross: return "cross";
  }
  return "?";
}

RunMode parse_mode(const std::string& s) {
  if (s == "analytic") return RunMode::Analytic;
  if (s == "simulate") return RunMode::Simulate;
  if (s == "cross") return RunMode::Cross;
  throw ValidationError("mode: expected analytic, simulate or cross, got \"" + s + "\"");
}

std::size_t SweepGrid::size() const {
  return alpha.size() * kappa.size() * h_attack.size() * h_rent.size() * retarget.size() *
         duration.size() * phi_tilde.size();
}

void Scenario::validate() const {
  auto check = [](bool ok, const std::string& path, const std::string& what) {
    if (!ok) fail(path, what);
  };
  check(replications >= 1, "replications", "must be >= 1");
  check(event_budget >= 1, "event_budget", "must be >= 1");
  check(tau > 0.0, "network.tau", "must be positive");
  check(block_reward >= 0.0, "network.block_reward", "must be non-negative");
  check(market.sigma >= 0.0, "fee_market.sigma", "must be non-negative");
  check(market.capacity >= 1, "fee_market.capacity", "must be >= 1");
  check(bid_beta >= 0.0, "fee_market.bid_beta", "must be non-negative");
  check(fee_samples >= 1, "fee_market.samples", "must be >= 1");

  check(!miners.empty(), "miners", "at least one miner is required");
  std::set<MinerId> ids;
  for (std::size_t i = 0; i < miners.size(); ++i) {
    check(ids.insert(miners[i].id).second, "miners[" + std::to_string(i) + "].id", "duplicate miner id");
  }

  const auto& a = attack;
  if (a.attacker) check(ids.count(MinerId{*a.attacker}) > 0, "attack.attacker", "no miner with this id");
  if (a.h_star) check(*a.h_star >= 0.0, "attack.h_star", "must be non-negative");
  if (a.R_tilde) check(*a.R_tilde >= 0.0, "attack.R_tilde", "must be non-negative");
  if (a.lead_margin) check(*a.lead_margin > 0.0, "attack.lead_margin", "must be positive");
  check(a.v_attack >= 0.0, "attack.v_attack", "must be non-negative");
  if (a.escrow) check(*a.escrow >= 1, "attack.escrow", "must be >= 1");
  check(a.epoch >= 1, "attack.epoch", "must be >= 1");
  if (const auto* d = std::get_if<DelayedEntry>(&a.entry)) {
    check(d->rate >= 0.0 && d->cap >= 0.0, "attack.entry", "rate and cap must be non-negative");
  }

  const auto& g = a.sweep;
  const std::string sp = "attack.sweep.";
  auto nonempty = [&](std::size_t n, const char* axis) { check(n > 0, sp + axis, "sweep grid is empty"); };
  nonempty(g.alpha.size(), "alpha");
  nonempty(g.kappa.size(), "kappa");
  nonempty(g.h_attack.size(), "h_attack");
  nonempty(g.h_rent.size(), "h_rent");
  nonempty(g.retarget.size(), "retarget");
  nonempty(g.duration.size(), "duration");
  nonempty(g.phi_tilde.size(), "phi_tilde");
  auto at = [&](const char* axis, std::size_t i) { return sp + axis + "[" + std::to_string(i) + "]"; };
  for (std::size_t i = 0; i < g.alpha.size(); ++i) {
    if (g.alpha[i]) check(*g.alpha[i] >= 0.0 && *g.alpha[i] <= 1.0, at("alpha", i), "alpha must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < g.kappa.size(); ++i) check(g.kappa[i] >= 1.0, at("kappa", i), "kappa must be >= 1");
  for (std::size_t i = 0; i < g.h_attack.size(); ++i) {
    if (g.h_attack[i]) check(*g.h_attack[i] > 0.0, at("h_attack", i), "must be positive");
  }
  for (std::size_t i = 0; i < g.h_rent.size(); ++i) check(g.h_rent[i] >= 0.0, at("h_rent", i), "must be non-negative");
  for (std::size_t i = 0; i < g.retarget.size(); ++i) {
    if (!g.retarget[i]) continue;
    check(*g.retarget[i] >= 0 && *g.retarget[i] <= a.epoch, at("retarget", i), "d must lie in [0, epoch]");
    for (double r : g.h_rent) check(r == 0.0, at("retarget", i), "retargeting is not supported together with renting");
  }
  for (std::size_t i = 0; i < g.duration.size(); ++i) {
    if (g.duration[i]) check(*g.duration[i] > 0.0, at("duration", i), "must be positive");
  }
  for (std::size_t i = 0; i < g.phi_tilde.size(); ++i) {
    if (const auto* v = std::get_if<double>(&g.phi_tilde[i])) check(*v >= 0.0, at("phi_tilde", i), "must be non-negative");
  }

  // Inside/outside premium only makes sense for a linear attacker.
  std::optional<CostFunction> cost = a.cost;
  if (!cost && a.attacker) {
    for (const auto& m : miners) {
      if (m.id.value == *a.attacker) cost = m.cost;
    }
  }
  if (cost && !cost->is_linear()) {
    for (std::size_t i = 0; i < g.kappa.size(); ++i) {
      check(g.kappa[i] == 1.0, at("kappa", i), "kappa applies to linear attacker costs only");
    }
    for (std::size_t i = 0; i < g.alpha.size(); ++i) {
      check(!g.alpha[i], at("alpha", i), "alpha is derived from h*/h_A for convex attacker costs");
    }
  }
  if (a.h_star) {
    for (std::size_t i = 0; i < g.alpha.size(); ++i) {
      for (const auto& h : g.h_attack) {
        if (g.alpha[i] && h) {
          check(*g.alpha[i] * *h <= *a.h_star * (1.0 + 1e-12), at("alpha", i),
                "alpha * h_A exceeds the attacker's pre-attack power h*");
        }
      }
    }
  }

  if (pos) {
    check(pos->slot_time > 0.0, "pos.slot_time", "must be positive");
    check(pos->block_reward >= 0.0, "pos.block_reward", "must be non-negative");
    check(pos->interest_rate > 0.0, "pos.interest_rate", "must be positive");
    check(pos->exchange_rate > 0.0, "pos.exchange_rate", "must be positive");
    check(pos->share > 0.0 && pos->share <= 1.0, "pos.share", "must lie in (0, 1]");
    check(pos->horizon_slots >= 1, "pos.horizon_slots", "must be >= 1");
    check(pos->v_attack >= 0.0, "pos.v_attack", "must be non-negative");
  }
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error at " + locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }

  Scenario s;
  Obj top(root, "");
  const auto version = top.uint("schema_version", 1);
  if (version != 1) fail("schema_version", "only version 1 is supported");
  s.seed = Obj::as_uint(top.need("seed"), "seed");
  s.mode = parse_enum(top, "mode", RunMode::Analytic,
                      {{"analytic", RunMode::Analytic}, {"simulate", RunMode::Simulate}, {"cross", RunMode::Cross}});
  s.replications = top.uint("replications", s.replications);
  s.event_budget = top.uint("event_budget", s.event_budget);
  s.threads = static_cast<unsigned>(top.uint("threads", 0));

  {
    Obj n(top.need("network"), "network");
    s.tau = n.number("tau", 1.0);
    s.block_reward = Obj::as_number(n.need("block_reward"), "network.block_reward");
    n.finish();
  }
  if (const json* f = top.find("fee_market")) {
    Obj m(*f, "fee_market");
    s.market.sigma = m.number("sigma", 0.0);
    const auto cap = m.uint("capacity", 1);
    if (cap > 1'000'000'000) fail("fee_market.capacity", "too large");
    s.market.capacity = static_cast<int>(cap);
    if (const json* fees = m.find("fees")) s.market.fees = parse_fees(*fees, "fee_market.fees");
    s.market.arrivals =
        parse_enum(m, "arrivals", ArrivalLaw::Poisson, {{"poisson", ArrivalLaw::Poisson}, {"fixed", ArrivalLaw::Fixed}});
    s.mempool = parse_enum(m, "mempool", MempoolMode::Persistent,
                           {{"persistent", MempoolMode::Persistent}, {"windowed", MempoolMode::Windowed}});
    s.interval_law = parse_enum(m, "interval_law", IntervalLaw::Fixed,
                                {{"fixed", IntervalLaw::Fixed}, {"exponential", IntervalLaw::Exponential}});
    s.bid_beta = m.number("bid_beta", 0.0);
    s.fee_samples = m.uint("samples", s.fee_samples);
    m.finish();
  }
  s.market.tau = s.tau;

  {
    const json& arr = top.need("miners");
    if (!arr.is_array()) fail("miners", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "miners[" + std::to_string(i) + "]";
      Obj m(arr[i], path);
      const auto id = Obj::as_int(m.need("id"), path + ".id");
      const auto cost = parse_cost(m.need("cost"), path + ".cost");
      m.finish();
      s.miners.push_back({MinerId{id}, cost});
    }
  }

  if (const json* aj = top.find("attack")) {
    Obj a(*aj, "attack");
    if (const json* v = a.find("attacker")) s.attack.attacker = Obj::as_int(*v, "attack.attacker");
    if (const json* v = a.find("cost")) s.attack.cost = parse_cost(*v, "attack.cost");
    s.attack.h_star = a.opt_number("h_star");
    s.attack.R_tilde = a.opt_number("R_tilde");
    s.attack.lead_margin = a.opt_number("lead_margin");
    s.attack.v_attack = a.number("v_attack", 0.0);
    if (const json* v = a.find("escrow")) s.attack.escrow = static_cast<int>(Obj::as_int(*v, "attack.escrow"));
    if (const json* v = a.find("entry")) s.attack.entry = parse_entry(*v, "attack.entry");
    s.attack.epoch = static_cast<int>(a.uint("epoch", 2600));
    if (const json* v = a.find("sweep")) s.attack.sweep = parse_sweep(*v, "attack.sweep");
    a.finish();
  }

  if (const json* pj = top.find("pos")) {
    Obj p(*pj, "pos");
    PoSSettings ps;
    ps.slot_time = p.number("slot_time", ps.slot_time);
    ps.block_reward = p.number("block_reward", ps.block_reward);
    ps.interest_rate = Obj::as_number(p.need("interest_rate"), "pos.interest_rate");
    ps.exchange_rate = p.number("exchange_rate", ps.exchange_rate);
    ps.share = p.number("share", ps.share);
    ps.horizon_slots = static_cast<int>(p.uint("horizon_slots", static_cast<std::uint64_t>(ps.horizon_slots)));
    ps.v_attack = p.number("v_attack", 0.0);
    p.finish();
    s.pos = ps;
  }

  if (const json* oj = top.find("output")) {
    Obj o(*oj, "output");
    s.output_dir = o.string("dir", s.output_dir);
    o.finish();
  }
  top.finish();
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string echo_scenario(const Scenario& s) {
  ojson root;
  root["schema_version"] = 1;
  root["seed"] = s.seed;
  root["mode"] = to_string(s.mode);
  root["replications"] = s.replications;
  root["event_budget"] = s.event_budget;
  root["threads"] = s.threads;
  root["network"] = {{"tau", s.tau}, {"block_reward", s.block_reward}};
  root["fee_market"] = {
      {"sigma", s.market.sigma},
      {"capacity", s.market.capacity},
      {"fees", fees_to_json(s.market.fees)},
      {"arrivals", s.market.arrivals == ArrivalLaw::Poisson ? "poisson" : "fixed"},
      {"mempool", s.mempool == MempoolMode::Persistent ? "persistent" : "windowed"},
      {"interval_law", s.interval_law == IntervalLaw::Fixed ? "fixed" : "exponential"},
      {"bid_beta", s.bid_beta},
      {"samples", s.fee_samples},
  };
  ojson miners = ojson::array();
  for (const auto& m : s.miners) miners.push_back({{"id", m.id.value}, {"cost", cost_to_json(m.cost)}});
  root["miners"] = miners;

  const auto& a = s.attack;
  ojson attack;
  attack["attacker"] = a.attacker ? ojson(*a.attacker) : ojson(nullptr);
  attack["cost"] = a.cost ? cost_to_json(*a.cost) : ojson(nullptr);
  attack["h_star"] = a.h_star ? ojson(*a.h_star) : ojson(nullptr);
  attack["R_tilde"] = a.R_tilde ? ojson(*a.R_tilde) : ojson(nullptr);
  attack["lead_margin"] = a.lead_margin ? ojson(*a.lead_margin) : ojson(nullptr);
  attack["v_attack"] = a.v_attack;
  attack["escrow"] = a.escrow ? ojson(*a.escrow) : ojson(nullptr);
  attack["entry"] = entry_to_json(a.entry);
  attack["epoch"] = a.epoch;
  ojson phi = ojson::array();
  for (const auto& p : a.sweep.phi_tilde) {
    std::visit(overloaded{
                   [&](const PhiFromMarket&) { phi.push_back("market"); },
                   [&](const PhiFromBenchmark&) { phi.push_back("benchmark"); },
                   [&](double v) { phi.push_back(v); },
               },
               p);
  }
  attack["sweep"] = {
      {"alpha", axis_to_json(a.sweep.alpha, "auto")},
      {"kappa", a.sweep.kappa},
      {"h_attack", axis_to_json(a.sweep.h_attack, "auto")},
      {"h_rent", a.sweep.h_rent},
      {"retarget", axis_to_json(a.sweep.retarget, "none")},
      {"duration", axis_to_json(a.sweep.duration, "auto")},
      {"phi_tilde", phi},
  };
  root["attack"] = attack;

  if (s.pos) {
    root["pos"] = {
        {"slot_time", s.pos->slot_time},         {"block_reward", s.pos->block_reward},
        {"interest_rate", s.pos->interest_rate}, {"exchange_rate", s.pos->exchange_rate},
        {"share", s.pos->share},                 {"horizon_slots", s.pos->horizon_slots},
        {"v_attack", s.pos->v_attack},
    };
  }
  root["output"] = {{"dir", s.output_dir}};
  return root.dump(2) + "\n";
}

}  // namespace nakamoto
