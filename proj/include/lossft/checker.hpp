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

#ifndef LOSSFT_CHECKER_HPP
#define LOSSFT_CHECKER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lossft/css_code.hpp"
#include "lossft/fault.hpp"
#include "lossft/protocols.hpp"
#include "lossft/sim.hpp"

namespace lossft {

/// One concrete fault-tolerance failure: a terminal branch whose residual
/// damage admits a Pauli completion that flips (or destroys) the logical
/// readout after an ideal correction round.
struct Violation {
  std::string test_state;         // "zero" | "plus"
  std::string branch_path;        // nondeterminism tokens of the branch
  std::vector<int> lost_outputs;  // lost output-data qubits at termination
  std::string completion;         // Pauli letters aligned with lost_outputs
  std::string syndrome_path;      // outcome bits of the ideal syndrome round
  std::string detail;

  bool operator==(const Violation& o) const = default;
};

/// Outcome of checking one fault spec across both test states.
struct FaultResult {
  FaultSpec spec;
  std::string op;   // op type name at the location
  std::string tag;  // location tag
  bool ok = true;
  bool truncated = false;
  uint64_t branches = 0;  // terminal branches examined across both test states
  std::vector<Violation> witnesses;
  double wall_time_s = 0;  // only populated when timings are requested
};

struct CheckReport {
  std::string protocol;
  std::string strategy;
  std::string code;
  FaultModel model;
  uint64_t specs = 0;
  uint64_t ok = 0;
  uint64_t violations = 0;
  uint64_t truncated = 0;
  std::vector<FaultResult> rows;  // enumeration order (location, then type)
  double wall_time_s = 0;
  bool timings = false;

  bool all_ok() const { return violations == 0 && truncated == 0; }
};

struct CheckOptions {
  int jobs = 1;                   // >1 runs the sweep with OpenMP
  bool first_witness_only = true; // keep only the first witness per spec
  bool timings = false;           // record wall times (breaks determinism)
  uint64_t branch_cap = uint64_t{1} << 20;
  const CodeRegistry* codes = nullptr;
};

/// The gadget preceded by an ideal logical test-state preparation on its
/// input block (locations outside the gadget's fault-location range).
Circuit test_circuit(const ProtocolBuild& b, bool plus_state);

/// Residual-damage assessment for one terminal branch: for every Pauli
/// completion on the branch's lost output qubits (reinitialized to |0> and
/// completed adversarially), run an ideal decode round — measure all
/// generators over every outcome path, apply the lookup correction — and
/// require a deterministic, correct logical readout in the test basis.
/// Returns true (and leaves `out` untouched) iff every completion passes.
bool assess_branch(const ProtocolBuild& b, const CssCode& code, const SimBranch& branch,
                   char logical_basis, const std::string& test_state, Violation* out);

/// Exhaustive single-fault sweep over both logical test states.
CheckReport check_single_faults(const ProtocolBuild& b, const FaultModel& m,
                                const CheckOptions& o);

/// Re-executes a violation witness independently: replays the branch path
/// under the same fault, applies the recorded completion, follows the
/// recorded syndrome path, and returns the logical readout bit (1 = flipped).
/// Throws ReplayError if the witness does not match the execution.
int replay_witness(const ProtocolBuild& b, const FaultSpec& spec, const Violation& v,
                   const CheckOptions& o);

/// Fault-free handling of damaged inputs: each single Pauli or loss on one
/// input qubit must be absorbed by the gadget.
struct InputDamageResult {
  int qubit = -1;
  char damage = 'I';  // 'X' 'Y' 'Z' or 'L'
  bool ok = false;         // residual assessment passed on every branch
  bool corrected = false;  // every branch ends in the exact codeword
  bool residual_loss = false;
  uint64_t branches = 0;
  std::string detail;
};

std::vector<InputDamageResult> check_input_correction(const ProtocolBuild& b,
                                                      const CheckOptions& o);

// Deterministic report serialization. JSON is canonical and round-trips
// byte-exactly through report_from_json + report_json.
std::string report_json(const CheckReport& r);
CheckReport report_from_json(const std::string& text);
std::string report_csv(const CheckReport& r);
std::string report_markdown(const CheckReport& r);

}  // namespace lossft

#endif  // LOSSFT_CHECKER_HPP
