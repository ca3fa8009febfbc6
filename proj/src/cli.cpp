#include "qthermo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qthermo/dyadic_qubit.hpp"
#include "qthermo/epsilon_machine.hpp"
#include "qthermo/erasure_bound.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/machine_io.hpp"
#include "qthermo/rng.hpp"
#include "qthermo/szilard_box.hpp"

namespace qthermo::cli {

namespace {

using nlohmann::ordered_json;

// Numbers leave the program with 12 significant digits.
std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ordered_json num(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

const char* name(Subcommand s) {
  switch (s) {
    case Subcommand::bound: return "bound";
    case Subcommand::machine: return "machine";
    case Subcommand::simulate: return "simulate";
    case Subcommand::box: return "box";
  }
  return "?";
}

const char* name(Protocol p) {
  switch (p) {
    case Protocol::repeatability: return "repeatability";
    case Protocol::reset: return "reset";
    case Protocol::rand: return "rand";
    case Protocol::perpetuum: return "perpetuum";
  }
  return "?";
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = name(c.subcommand);
  j["format"] = c.format == Format::json ? "json" : "csv";
  j["seed"] = c.seed;
  switch (c.subcommand) {
    case Subcommand::bound:
      j["n"] = c.n;
      j["n_to"] = c.n_to.value_or(c.n);
      j["temperature"] = num(c.temperature);
      break;
    case Subcommand::machine:
    case Subcommand::simulate:
      if (c.dyadic) j["dyadic"] = *c.dyadic;
      if (c.file) j["file"] = *c.file;
      if (c.subcommand == Subcommand::machine) {
        if (c.emit) j["emit"] = *c.emit;
      } else {
        j["steps"] = c.steps;
        j["start"] = c.start;
        j["resamples"] = c.resamples;
      }
      break;
    case Subcommand::box:
      j["protocol"] = name(c.protocol);
      j["policy"] = c.honest ? "honest" : "pt-free";
      j["trials"] = c.trials;
      j["summary_only"] = c.summary_only;
      break;
  }
  return j;
}

std::string config_comment(const RunConfig& c) {
  std::string line = "# config";
  const ordered_json cfg = config_json(c);
  for (const auto& [k, v] : cfg.items()) {
    line += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return line;
}

void emit_csv(std::ostream& out, const RunConfig& c, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  out << config_comment(c) << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

int run_bound(const RunConfig& c, std::ostream& out) {
  const int last = c.n_to.value_or(c.n);
  if (last < c.n) throw domain_error("--n-to must be >= --n");
  std::vector<ordered_json> rows;
  for (int n = c.n; n <= last; ++n) {
    const FamilyIndex idx(n);
    const BitQuantity bits = erased_information(idx);
    ordered_json r;
    r["n"] = n;
    r["erased_bits"] = num(bits.bits());
    r["lower_bound_bits"] = n;
    r["heat_joules"] = num(landauer_heat(bits, c.temperature).joules);
    r["ceiling_joules"] = num(qubit_landauer_ceiling(c.temperature).joules);
    rows.push_back(std::move(r));
  }
  if (c.format == Format::csv) {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
      table.push_back({r["n"].dump(), fmt12(r["erased_bits"].get<double>()),
                       r["lower_bound_bits"].dump(), fmt12(r["heat_joules"].get<double>()),
                       fmt12(r["ceiling_joules"].get<double>())});
    }
    emit_csv(out, c, {"n", "erased_bits", "lower_bound_bits", "heat_joules", "ceiling_joules"},
             table);
    return kExitOk;
  }
  ordered_json report;
  report["config"] = config_json(c);
  if (rows.size() == 1) {
    for (auto& [k, v] : rows.front().items()) report[k] = v;
  } else {
    report["rows"] = rows;
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

EpsilonMachine machine_for(const RunConfig& c) {
  if (c.dyadic.has_value() == c.file.has_value()) {
    throw usage_error{"exactly one of --dyadic or --file is required"};
  }
  if (c.dyadic) return build_dyadic_machine(FamilyIndex(*c.dyadic));
  return load_machine(*c.file);
}

int run_machine(const RunConfig& c, std::ostream& out) {
  const EpsilonMachine m = machine_for(c);
  if (c.emit) save_machine(m, *c.emit);
  const double complexity = statistical_complexity(m).bits();
  const double erased = mean_erased_information(m).bits();
  ordered_json r;
  r["states"] = m.state_count();
  r["choices"] = m.choice_count();
  r["statistical_complexity_bits"] = num(complexity);
  r["mean_erased_bits"] = num(erased);
  if (c.dyadic) r["formula_erased_bits"] = num(erased_information(FamilyIndex(*c.dyadic)).bits());
  if (c.format == Format::csv) {
    std::vector<std::string> header, row;
    for (const auto& [k, v] : r.items()) {
      header.push_back(k);
      row.push_back(v.is_number_float() ? fmt12(v.get<double>()) : v.dump());
    }
    emit_csv(out, c, header, {row});
    return kExitOk;
  }
  ordered_json report;
  report["config"] = config_json(c);
  for (auto& [k, v] : r.items()) report[k] = v;
  out << report.dump(2) << '\n';
  return kExitOk;
}

int run_simulate(const RunConfig& c, std::ostream& out) {
  const EpsilonMachine m = machine_for(c);
  const double analytic = mean_erased_information(m).bits();
  const TrajectoryRecord rec = sample_trajectory(m, c.start, c.steps, c.seed);
  const EmpiricalErasure emp = empirical_erasure(rec, m, c.resamples);
  const ProbabilityVector pi = stationary(m);
  const StateOccupancy occ = state_occupancy(rec, m.state_count());
  double max_z = 0.0;
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    if (occ.standard_error[s] > 0.0) {
      max_z = std::max(max_z, std::abs(occ.frequency[s] - pi[s]) / occ.standard_error[s]);
    }
  }
  ordered_json r;
  r["analytic_erased_bits"] = num(analytic);
  r["empirical_erased_bits"] = num(emp.estimate_bits);
  r["standard_error_bits"] = num(emp.standard_error_bits);
  r["within_3sigma"] = std::abs(emp.estimate_bits - analytic) <= 3.0 * emp.standard_error_bits;
  r["excluded_states"] = emp.excluded_states;
  r["max_occupancy_z"] = num(max_z);
  if (c.format == Format::csv) {
    std::vector<std::string> header, row;
    for (const auto& [k, v] : r.items()) {
      header.push_back(k);
      row.push_back(v.is_number_float() ? fmt12(v.get<double>()) : v.dump());
    }
    emit_csv(out, c, header, {row});
    return kExitOk;
  }
  ordered_json report;
  report["config"] = config_json(c);
  for (auto& [k, v] : r.items()) report[k] = v;
  out << report.dump(2) << '\n';
  return kExitOk;
}

ordered_json ledger_json(const std::vector<LedgerEntry>& entries) {
  ordered_json arr = ordered_json::array();
  for (const LedgerEntry& e : entries) {
    arr.push_back({{"tag", e.tag},
                   {"work_on_system_kT", num(e.work_on_system)},
                   {"work_extracted_kT", num(e.work_extracted)},
                   {"heat_dissipated_kT", num(e.heat_dissipated)},
                   {"record_bits_created", num(e.record_bits_created)},
                   {"record_bits_erased", num(e.record_bits_erased)}});
  }
  return arr;
}

struct TrialResult {
  std::uint64_t seed;
  LedgerTotals totals;
  std::vector<LedgerEntry> entries;
  ordered_json detail;
  bool violation;
};

TrialResult run_trial(const RunConfig& c, std::uint64_t seed) {
  const AccountingPolicy policy =
      c.honest ? AccountingPolicy::landauer_honest : AccountingPolicy::pt_free_measurement;
  TrialResult t{seed, {}, {}, ordered_json::object(), false};
  if (c.protocol == Protocol::perpetuum) {
    const AuditReport a = perpetuum_audit(seed, policy);
    t.totals = a.totals;
    t.entries = a.entries;
    t.violation = a.violation;
    t.detail["loop_iterations"] = a.loop_iterations;
    t.detail["measurements"] = a.measurements;
    return t;
  }
  Box box = Box::unknown(true, false, seed);
  switch (c.protocol) {
    case Protocol::repeatability: {
      const int a = box.pt_measurement(Partition::computational, policy);
      const int b = box.pt_measurement(Partition::computational, policy);
      const int p = box.pt_measurement(Partition::phase, policy);
      const int q = box.pt_measurement(Partition::phase, policy);
      t.detail["computational"] = {a, b};
      t.detail["phase"] = {p, q};
      t.detail["agree"] = a == b && p == q;
      box.erase_records();
      break;
    }
    case Protocol::reset: {
      box.reset();
      t.detail["final_side"] = box.layout().side(Partition::computational, box.ontic_cell());
      break;
    }
    case Protocol::rand: {
      box = Box::localized(box.layout().cell_at(0, 0), true, true, seed);
      box.rand();
      const std::size_t cell = box.ontic_cell();
      t.detail["x"] = box.layout().side(Partition::computational, cell);
      t.detail["y"] = box.layout().side(Partition::phase, cell);
      break;
    }
    case Protocol::perpetuum:
      break;
  }
  t.totals = box.ledger().totals();
  t.entries = box.ledger().entries();
  t.violation = t.totals.net_work_extracted() > 0.0;
  return t;
}

int run_box(const RunConfig& c, std::ostream& out) {
  if (c.trials == 0) throw domain_error("--trials must be positive");
  std::vector<TrialResult> trials;
  trials.reserve(c.trials);
  for (std::uint64_t i = 0; i < c.trials; ++i) trials.push_back(run_trial(c, mix_seed(c.seed, i)));

  LedgerTotals sum;
  bool violation = false;
  double iterations = 0.0, agree = 0.0;
  std::array<std::uint64_t, 4> rand_counts{};
  for (const TrialResult& t : trials) {
    sum.work_on_system += t.totals.work_on_system;
    sum.work_extracted += t.totals.work_extracted;
    sum.heat_dissipated += t.totals.heat_dissipated;
    sum.record_bits_created += t.totals.record_bits_created;
    sum.record_bits_erased += t.totals.record_bits_erased;
    violation = violation || t.violation;
    if (t.detail.contains("loop_iterations")) iterations += t.detail["loop_iterations"].get<double>();
    if (t.detail.contains("agree") && t.detail["agree"].get<bool>()) agree += 1.0;
    if (t.detail.contains("x")) {
      ++rand_counts[static_cast<std::size_t>(2 * t.detail["x"].get<int>() + t.detail["y"].get<int>())];
    }
  }
  const double n = static_cast<double>(c.trials);

  ordered_json agg;
  agg["net_work_extracted_kT"] = num(sum.net_work_extracted());
  agg["net_work_extracted_per_trial_kT"] = num(sum.net_work_extracted() / n);
  agg["heat_kT"] = num(sum.heat_dissipated);
  agg["record_bits"] = num(sum.record_bits_created);
  agg["violation_flag"] = violation;
  switch (c.protocol) {
    case Protocol::perpetuum: agg["mean_loop_iterations"] = num(iterations / n); break;
    case Protocol::repeatability: agg["agreement_rate"] = num(agree / n); break;
    case Protocol::rand:
      agg["outputs"] = {{"00", rand_counts[0]}, {"01", rand_counts[1]},
                        {"10", rand_counts[2]}, {"11", rand_counts[3]}};
      break;
    case Protocol::reset: agg["work_on_system_per_trial_kT"] = num(sum.work_on_system / n); break;
  }

  if (c.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    auto row = [&](std::string label, std::uint64_t seed, const LedgerTotals& t, bool flag) {
      rows.push_back({std::move(label), std::to_string(seed), fmt12(t.net_work_extracted()),
                      fmt12(t.heat_dissipated), fmt12(t.record_bits_created),
                      flag ? "true" : "false"});
    };
    if (!c.summary_only) {
      for (std::size_t i = 0; i < trials.size(); ++i) {
        row(std::to_string(i), trials[i].seed, trials[i].totals, trials[i].violation);
      }
    }
    row("total", c.seed, sum, violation);
    emit_csv(out, c, {"trial", "seed", "net_work_extracted_kT", "heat_kT", "record_bits", "violation_flag"},
             rows);
  } else {
    ordered_json report;
    report["config"] = config_json(c);
    if (!c.summary_only) {
      ordered_json arr = ordered_json::array();
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const TrialResult& t = trials[i];
        ordered_json j;
        j["trial"] = i;
        j["seed"] = t.seed;
        for (auto& [k, v] : t.detail.items()) j[k] = v;
        j["net_work_extracted_kT"] = num(t.totals.net_work_extracted());
        j["heat_kT"] = num(t.totals.heat_dissipated);
        j["record_bits"] = num(t.totals.record_bits_created);
        j["violation_flag"] = t.violation;
        j["ledger"] = ledger_json(t.entries);
        arr.push_back(std::move(j));
      }
      report["trials"] = std::move(arr);
    }
    report["audit"] = std::move(agg);
    out << report.dump(2) << '\n';
  }
  return violation ? kExitViolation : kExitOk;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Erased-information bounds, epsilon-machines and Szilard-box audits", "qthermo"};
  app.require_subcommand(1);

  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "64-bit master seed (default 0)");
    sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* bound = app.add_subcommand("bound", "erased information and Landauer heat for family n");
  add_common(bound);
  bound->add_option("--n", c.n, "family index, 0..24")->required();
  bound->add_option("--n-to", c.n_to, "emit one row per n up to this value");
  bound->add_option("--temperature", c.temperature, "bath temperature in kelvin (default 300)");

  auto add_machine_source = [&](CLI::App* sub) {
    auto* d = sub->add_option("--dyadic", c.dyadic, "dyadic qubit machine for family n (1..12)");
    auto* f = sub->add_option("--file", c.file, "machine-definition JSON file");
    d->excludes(f);
  };
  auto* machine = app.add_subcommand("machine", "statistical complexity and mean erased bits");
  add_common(machine);
  add_machine_source(machine);
  machine->add_option("--emit", c.emit, "write the machine definition to this path");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo erasure vs the analytic value");
  add_common(simulate);
  add_machine_source(simulate);
  simulate->add_option("--steps", c.steps, "trajectory length (>= 10000)");
  simulate->add_option("--start", c.start, "start state index (default 0)");
  simulate->add_option("--resamples", c.resamples, "bootstrap resamples (default 200)");

  auto* box = app.add_subcommand("box", "partitioned-box protocols with work/heat ledgers");
  add_common(box);
  std::string protocol, policy;
  box->add_option("--protocol", protocol, "repeatability | reset | rand | perpetuum")
      ->required()
      ->check(CLI::IsMember({"repeatability", "reset", "rand", "perpetuum"}));
  box->add_option("--policy", policy, "honest | pt-free")
      ->required()
      ->check(CLI::IsMember({"honest", "pt-free"}));
  box->add_option("--trials", c.trials, "independent trials (default 1)");
  box->add_flag("--summary-only", c.summary_only, "omit per-trial ledgers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw usage_error{app.help(), true};
  } catch (const CLI::ParseError& e) {
    throw usage_error{e.what()};
  }

  c.format = format == "csv" ? Format::csv : Format::json;
  if (bound->parsed()) {
    c.subcommand = Subcommand::bound;
  } else if (machine->parsed()) {
    c.subcommand = Subcommand::machine;
  } else if (simulate->parsed()) {
    c.subcommand = Subcommand::simulate;
  } else {
    c.subcommand = Subcommand::box;
    c.honest = policy == "honest";
    if (protocol == "repeatability") c.protocol = Protocol::repeatability;
    else if (protocol == "reset") c.protocol = Protocol::reset;
    else if (protocol == "rand") c.protocol = Protocol::rand;
    else c.protocol = Protocol::perpetuum;
  }
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::bound: return run_bound(config, out);
      case Subcommand::machine: return run_machine(config, out);
      case Subcommand::simulate: return run_simulate(config, out);
      case Subcommand::box: return run_box(config, out);
    }
  } catch (const usage_error& e) {
    err << "usage: " << e.message << '\n';
    return kExitUsage;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const structural_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const convergence_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const state_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const usage_error& e) {
    if (e.help) {
      out << e.message;
      return kExitOk;
    }
    err << "usage: " << e.message << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace qthermo::cli
