// Copyright 2026 The lossft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lossft/checker.hpp"
#include "lossft/circuit.hpp"
#include "lossft/fault.hpp"
#include "lossft/loss_mapping.hpp"
#include "lossft/protocols.hpp"
#include "lossft/sim.hpp"

namespace {

using namespace lossft;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitEngine = 3;

int default_jobs() {
  if (const char* env = std::getenv("LOSSFT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

/// key=value overlay; an explicit --config wins over command-line flags.
void apply_config_file(const std::string& path,
                       const std::map<std::string, std::string*>& str_keys,
                       const std::map<std::string, int*>& int_keys,
                       const std::map<std::string, uint64_t*>& u64_keys,
                       const std::map<std::string, bool*>& bool_keys) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config",
                                 path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      size_t x = s.find_first_not_of(" \t");
      size_t y = s.find_last_not_of(" \t");
      s = x == std::string::npos ? "" : s.substr(x, y - x + 1);
    };
    trim(key);
    trim(val);
    if (auto it = str_keys.find(key); it != str_keys.end()) {
      *it->second = val;
    } else if (auto it2 = int_keys.find(key); it2 != int_keys.end()) {
      *it2->second = std::stoi(val);
    } else if (auto it3 = u64_keys.find(key); it3 != u64_keys.end()) {
      *it3->second = std::stoull(val);
    } else if (auto it4 = bool_keys.find(key); it4 != bool_keys.end()) {
      *it4->second = val == "1" || val == "true" || val == "yes";
    } else {
      throw CLI::ValidationError("--config", "unknown key: " + key);
    }
  }
}

FaultModel parse_model(const std::string& faults, const std::string& pauli_set,
                       const std::string& loss_set) {
  FaultModel m;
  m.include_pauli = faults.find("pauli") != std::string::npos;
  m.include_loss = faults.find("loss") != std::string::npos;
  if (!m.include_pauli && !m.include_loss)
    throw CLI::ValidationError("--faults", "need at least one of pauli,loss");
  if (pauli_set == "full15")
    m.two_qubit_paulis = TwoQubitPauliSet::full15;
  else if (pauli_set == "one_sided6")
    m.two_qubit_paulis = TwoQubitPauliSet::one_sided6;
  else
    throw CLI::ValidationError("--pauli-set", "expected full15|one_sided6");
  if (loss_set == "paper5")
    m.loss_combos = LossComboSet::paper5;
  else if (loss_set == "full9")
    m.loss_combos = LossComboSet::full9;
  else
    throw CLI::ValidationError("--loss-set", "expected paper5|full9");
  return m;
}

LruStrategy parse_lru(std::string s) {
  for (char& c : s)
    if (c == '-') c = '_';
  return lru_strategy_from_string(s);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_check(const std::string& protocol, const std::string& lru, const std::string& faults,
              const std::string& pauli_set, const std::string& loss_set, int rounds,
              uint64_t branch_cap, const std::string& format, const std::string& output,
              int jobs, bool timings, bool skip_input) {
  FaultModel model = parse_model(faults, pauli_set, loss_set);
  LruStrategy strategy = parse_lru(lru);
  ProtocolBuild build = protocol == "shor" ? build_shor_ec(strategy, rounds)
                                           : build_protocol(protocol, strategy);
  CheckOptions o;
  o.jobs = jobs;
  o.timings = timings;
  o.branch_cap = branch_cap;
  CheckReport rep = check_single_faults(build, model, o);

  std::string body;
  if (format == "json")
    body = report_json(rep);
  else if (format == "csv")
    body = report_csv(rep);
  else if (format == "markdown")
    body = report_markdown(rep);
  else
    throw CLI::ValidationError("--format", "expected json|csv|markdown");
  write_output(output, body);

  bool input_ok = true;
  if (!skip_input) {
    std::vector<InputDamageResult> inputs = check_input_correction(build, o);
    int bad = 0;
    for (const InputDamageResult& r : inputs)
      if (!r.ok) ++bad;
    input_ok = bad == 0;
    std::cerr << "input-damage handling: " << (inputs.size() - bad) << "/" << inputs.size()
              << " cases ok\n";
  }
  std::cerr << "single-fault sweep: " << rep.ok << "/" << rep.specs << " specs ok, "
            << rep.violations << " violations, " << rep.truncated << " truncated\n";
  if (rep.truncated) return kExitEngine;
  if (rep.violations || !input_ok) return kExitViolation;
  return kExitOk;
}

int cmd_counts(const std::string& output) {
  std::ostringstream os;
  os << "| protocol | none | data_pre | post_zero_ancilla | at07_generic |\n";
  os << "|---|---|---|---|---|\n";
  for (const char* name : {"steane", "shor", "knill"}) {
    os << "| " << name << " |";
    for (LruStrategy s : {LruStrategy::none, LruStrategy::data_pre,
                          LruStrategy::post_zero_ancilla, LruStrategy::at07_generic}) {
      os << ' ' << count_lrus(build_protocol(name, s)) << " |";
    }
    os << "\n";
  }
  write_output(output, os.str());
  return kExitOk;
}

/// The qubit that first acts as a CNOT control and then as a CNOT target; a
/// single fresh-|0> replacement is not equivalent to its loss, two
/// replacements are.
Circuit control_then_target_circuit() {
  Circuit c(3);
  c.prep_z(0);
  c.prep_z(1);
  c.prep_x(2);
  c.cnot(0, 1);
  c.cnot(2, 0);
  c.meas_z(0, "m0");
  c.meas_z(1, "m1");
  c.meas_x(2, "m2");
  return c;
}

int cmd_equiv(int count, int qubits, uint64_t seed, bool demo_counterexample) {
  if (demo_counterexample) {
    Circuit c = control_then_target_circuit();
    ReplacementPlan full = replacement_plan(c, 0, 0);
    ReplacementPlan single;
    single.insertions.push_back(full.insertions.at(0));
    EquivResult with_single = verify_plan(c, 0, 0, single);
    EquivResult with_full = verify_plan(c, 0, 0, full);
    std::cout << "control-then-target circuit, loss of qubit 0 at its preparation\n";
    std::cout << "single |0> replacement: "
              << (with_single.equivalent ? "equivalent" : "NOT equivalent") << "\n";
    if (!with_single.equivalent) std::cout << with_single.witness << "\n";
    std::cout << "full plan (" << full.insertions.size()
              << " replacements): " << (with_full.equivalent ? "equivalent" : "NOT equivalent")
              << "\n";
    return !with_single.equivalent && with_full.equivalent ? kExitViolation : kExitEngine;
  }
  if (count == 0) {
    std::cerr << "warning: empty corpus, nothing checked\n";
    return kExitOk;
  }
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    bool control_role = i % 2 == 0;
    int q = int(rng() % qubits);
    int loss_index = -1;
    Circuit c = random_role_circuit(rng, qubits, q, control_role, false, &loss_index);
    EquivResult res = verify_equivalence(c, loss_index, q);
    if (!res.equivalent) {
      ++failures;
      std::cout << "counterexample at corpus index " << i << ":\n" << res.witness << "\n";
    }
  }
  std::cout << (count - failures) << "/" << count << " corpus circuits equivalent\n";
  return failures ? kExitViolation : kExitOk;
}

int cmd_locations(const std::string& unit, const std::string& lru, const std::string& faults,
                  const std::string& pauli_set, const std::string& loss_set, int rounds,
                  const std::string& output) {
  FaultModel model = parse_model(faults, pauli_set, loss_set);
  LruStrategy strategy = parse_lru(lru);
  Circuit circ(1);
  if (unit == "steane" || unit == "knill") {
    circ = build_protocol(unit, strategy).circuit;
  } else if (unit == "shor") {
    circ = build_shor_ec(strategy, rounds).circuit;
  } else if (unit == "cat") {
    Circuit c(5);
    append_cat_block(c, {0, 1, 2, 3, 4}, "v", "cat", false);
    circ = c;
  } else if (unit == "encode-zero") {
    circ = encode_logical(CssCode::steane(), false);
  } else if (unit == "encode-plus") {
    circ = encode_logical(CssCode::steane(), true);
  } else {
    throw CLI::ValidationError("--unit",
                               "expected steane|shor|knill|cat|encode-zero|encode-plus");
  }
  std::vector<FaultSpec> specs = enumerate_fault_locations(circ, model);
  std::ostringstream os;
  for (const FaultSpec& s : specs) {
    const Op* op = circ.find_location(s.location);
    os << s.location << "\t" << s.code() << "\t" << to_string(op->type) << "\t" << op->tag
       << "\n";
  }
  os << "total\t" << specs.size() << "\n";
  write_output(output, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loss-aware fault-tolerance verification for stabilizer EC gadgets"};
  app.require_subcommand(1);

  std::string protocol = "steane", lru = "data_pre", faults = "pauli,loss";
  std::string pauli_set = "full15", loss_set = "full9";
  std::string format = "json", output, config, unit = "steane";
  int rounds = 3, jobs = default_jobs(), qubits = 6, count = 200;
  uint64_t branch_cap = uint64_t{1} << 20, seed = 0;
  bool timings = false, skip_input = false, demo_counterexample = false;

  CLI::App* check = app.add_subcommand("check", "exhaustive single-fault sweep of a gadget");
  check->add_option("--protocol", protocol, "steane|shor|knill");
  check->add_option("--lru", lru, "none|data-pre|post-zero|at07");
  check->add_option("--faults", faults, "comma list of pauli,loss");
  check->add_option("--pauli-set", pauli_set, "full15|one_sided6");
  check->add_option("--loss-set", loss_set, "paper5|full9");
  check->add_option("--rounds", rounds, "syndrome repetitions (shor)");
  check->add_option("--branch-cap", branch_cap, "abort past this many branches");
  check->add_option("--format", format, "json|csv|markdown");
  check->add_option("--output", output, "report path (default stdout)");
  check->add_option("--jobs", jobs, "parallel workers (env LOSSFT_JOBS)");
  check->add_flag("--timings", timings, "include wall times (non-deterministic output)");
  check->add_flag("--skip-input-correction", skip_input, "sweep only");
  check->add_option("--config", config, "key=value file; overrides flags");

  CLI::App* counts = app.add_subcommand("counts", "loss-replacement unit count matrix");
  counts->add_option("--output", output, "path (default stdout)");

  CLI::App* equiv = app.add_subcommand("equiv", "loss vs replacement equivalence corpus");
  equiv->add_option("--count", count, "number of random circuits");
  equiv->add_option("--qubits", qubits, "circuit width");
  equiv->add_option("--seed", seed, "corpus seed");
  equiv->add_flag("--demo-counterexample", demo_counterexample,
                  "run the control-then-target circuit instead of the corpus");
  equiv->add_option("--config", config, "key=value file; overrides flags");

  CLI::App* locations = app.add_subcommand("locations", "enumerate fault locations");
  locations->add_option("--unit", unit, "steane|shor|knill|cat|encode-zero|encode-plus");
  locations->add_option("--lru", lru, "strategy for gadget units");
  locations->add_option("--faults", faults, "comma list of pauli,loss");
  locations->add_option("--pauli-set", pauli_set, "full15|one_sided6");
  locations->add_option("--loss-set", loss_set, "paper5|full9");
  locations->add_option("--rounds", rounds, "syndrome repetitions (shor)");
  locations->add_option("--output", output, "path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!config.empty()) {
      apply_config_file(config,
                        {{"protocol", &protocol},
                         {"lru", &lru},
                         {"faults", &faults},
                         {"pauli-set", &pauli_set},
                         {"loss-set", &loss_set},
                         {"format", &format},
                         {"output", &output},
                         {"unit", &unit}},
                        {{"rounds", &rounds}, {"jobs", &jobs}, {"qubits", &qubits},
                         {"count", &count}},
                        {{"branch-cap", &branch_cap}, {"seed", &seed}},
                        {{"timings", &timings}, {"skip-input-correction", &skip_input}});
    }
    if (check->parsed())
      return cmd_check(protocol, lru, faults, pauli_set, loss_set, rounds, branch_cap, format,
                       output, jobs, timings, skip_input);
    if (counts->parsed()) return cmd_counts(output);
    if (equiv->parsed()) return cmd_equiv(count, qubits, seed, demo_counterexample);
    if (locations->parsed())
      return cmd_locations(unit, lru, faults, pauli_set, loss_set, rounds, output);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
  return kExitConfig;
}
