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

#ifndef LOSSFT_SIM_HPP
#define LOSSFT_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossft/circuit.hpp"
#include "lossft/css_code.hpp"
#include "lossft/fault.hpp"
#include "lossft/tableau.hpp"

namespace lossft {

/// Exact dyadic rational num / 2^log2_den for branch probabilities.
struct Dyadic {
  uint64_t num = 1;
  int log2_den = 0;

  void halve();
  void normalize();
  Dyadic plus(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const;
  double approx() const;
  std::string to_string() const;  // "3/2^4", "1", "0"
};

enum class Certainty : uint8_t {
  deterministic,  // forced by the state
  fair_random,    // genuine coin flip, weight halves per branch
  lost_unknown    // readout of a lost qubit: both values, full weight, flagged
};

const char* to_string(Certainty c);

/// One recorded measurement: which classical slot, which value, how certain.
struct Outcome {
  int slot = -1;
  uint8_t bit = 0;
  Certainty certainty = Certainty::deterministic;
};

/// Named CSS codes referenced by circuits ("steane" is always present).
class CodeRegistry {
 public:
  CodeRegistry();
  void add(const std::string& name, CssCode code);
  const CssCode& get(const std::string& name) const;
  bool has(const std::string& name) const;
  static const CodeRegistry& standard();

 private:
  std::map<std::string, CssCode> codes_;
};

/// Maps classical bit names to dense slots for a circuit.
struct ClassicalLayout {
  std::vector<std::string> names;  // slot -> name
  int slot(const std::string& name) const;
  static ClassicalLayout of(const Circuit& c);

 private:
  std::map<std::string, int> index_;
};

/// One branch of a nondeterministic stabilizer execution.
struct SimBranch {
  Tableau tab;
  std::vector<uint8_t> lost;       // by circuit qubit
  std::vector<int8_t> classical;   // by classical slot; -1 = unset
  std::vector<Outcome> record;     // in recording mode
  std::string path;                // one token per nondeterministic choice:
                                   // 0/1 fair coin, u/v lost readout,
                                   // s/t loss collapse, I/X/Y/Z replacement
  Dyadic weight;
  bool adversarial = false;        // lost readouts or arbitrary replacements
};

struct RunOptions {
  uint64_t branch_cap = uint64_t{1} << 20;
  /// Introduce qubits into the tableau at first touch instead of up front.
  bool lazy_qubits = false;
  /// Drop qubits after their last use and merge identical branches.
  bool retire = false;
  std::vector<int> keep_alive;  // qubits exempt from retirement
  bool keep_record = true;
  /// Follow this choice string instead of branching (witness replay).
  const std::string* replay = nullptr;
  const CodeRegistry* codes = nullptr;  // default: CodeRegistry::standard()
  std::ostream* trace = nullptr;        // per-op execution dump
};

struct RunResult {
  std::vector<SimBranch> branches;
  uint64_t peak_branches = 1;
  uint64_t merges = 0;
  uint64_t retries = 0;
};

/// Branch count exceeded RunOptions::branch_cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replay string exhausted or inconsistent with the execution.
class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the circuit under the given faults over every nondeterministic
/// branch. Faults fire at their location the first time it executes (not
/// during verification retries). Throws TruncationError past the branch cap
/// and std::logic_error if a fault-free verification retry rejects.
RunResult run_circuit(const Circuit& c, const std::vector<FaultSpec>& faults,
                      const RunOptions& opt);

/// Sum of branch weights (normalized).
Dyadic total_weight(const std::vector<SimBranch>& branches);

}  // namespace lossft

#endif  // LOSSFT_SIM_HPP
