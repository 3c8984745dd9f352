// Command-line front end: equilibrium, attack, sweep, pos and validate verbs
// over a JSON scenario file. Exit codes: 0 ok, 2 invalid input,
// 3 no convergence, 4 simulation budget exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/runner.hpp"
#include "nakamoto/scenario.hpp"

namespace fs = std::filesystem;
using namespace nakamoto;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kNoConvergence = 3, kBudget = 4 };

struct Options {
  std::string scenario;
  std::string out;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.scenario);
  if (o.reps) s.replications = *o.reps;
  if (o.seed) s.seed = *o.seed;
  if (o.mode) s.mode = parse_mode(*o.mode);
  if (!o.out.empty()) s.output_dir = o.out;
  s.validate();
  return s;
}

// Writes the CSV, then builds the report from the file as written so the
// verdicts always match what downstream tools will read.
void emit(const Scenario& s, const std::string& verb, const Table& table,
          std::string (*report)(const Table&)) {
  const fs::path dir = s.output_dir;
  fs::create_directories(dir);
  const fs::path csv = dir / (verb + ".csv");
  write_file(csv, table.to_csv());
  const Table parsed = Table::from_csv(read_file(csv));
  std::string text = "# " + verb + " report\n\n" + report(parsed) + "\n# scenario (defaults applied)\n" + echo_scenario(s);
  write_file(dir / (verb + "_report.txt"), text);
  std::cout << report(parsed) << "wrote " << csv.string() << "\n";
}

std::string sweep_report_from(const Table& t) { return sweep_report(rows_from_table(t)); }

std::string equilibrium_report(const Table& t) {
  std::ostringstream os;
  if (t.rows.empty()) return "no miners\n";
  const auto& r = t.rows.front();
  os << "H = " << r[t.column("H")] << ", D = " << r[t.column("D")] << ", Phi = " << r[t.column("Phi")] << "\n";
  int active = 0;
  for (const auto& row : t.rows) active += row[t.column("active")] == "true";
  os << "Active miners: " << active << " of " << t.rows.size() << "\n";
  return os.str();
}

int run(const std::string& verb, const Options& o) {
  if (verb == "validate") {
    const Scenario s = load(o);
    std::cout << "scenario is valid\n" << echo_scenario(s);
    return kOk;
  }
  const Scenario s = load(o);
  if (verb == "equilibrium") {
    emit(s, verb, equilibrium_table(s), equilibrium_report);
  } else if (verb == "attack") {
    emit(s, verb, rows_to_table(run_sweep(s, true)), sweep_report_from);
  } else if (verb == "sweep") {
    emit(s, verb, rows_to_table(run_sweep(s)), sweep_report_from);
  } else if (verb == "pos") {
    emit(s, verb, pos_table(run_pos(s)), pos_report);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majority-attack economics for Nakamoto-consensus chains"};
  app.require_subcommand(1);
  Options opts;
  std::string verb;
  const std::pair<const char*, const char*> verbs[] = {
      {"equilibrium", "free-entry benchmark: H, D, fees and per-miner power"},
      {"attack", "net cost of the first sweep point"},
      {"sweep", "net cost over the full attack grid"},
      {"pos", "proof-of-stake attack by the configured stake share"},
      {"validate", "check the scenario and print it with defaults filled in"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", opts.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output directory (overrides the scenario)");
    sub->add_option("--reps", opts.reps, "replications per simulated point")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "base seed");
    sub->add_option("--mode", opts.mode, "analytic, simulate or cross")
        ->check(CLI::IsMember({"analytic", "simulate", "cross"}));
    sub->callback([&verb, sub] { verb = sub->get_name(); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    return run(verb, opts);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const NoEquilibrium& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const NoRoot& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const NotUnique& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const SimulationBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kInvalid;
  }
}
