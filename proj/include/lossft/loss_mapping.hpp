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

#ifndef LOSSFT_LOSS_MAPPING_HPP
#define LOSSFT_LOSS_MAPPING_HPP

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lossft/circuit.hpp"

namespace lossft {

/// How a qubit participates in one post-loss operation.
enum class RoleEvent { cnot_control, cnot_target, cz_party, meas_z, meas_x, lru };

const char* to_string(RoleEvent e);

/// The ordered uses of one qubit strictly after a loss point (waits skipped).
/// CZ counts as a control-style role: a |0> on either party absorbs the gate.
struct RoleProfile {
  int qubit = -1;
  int loss_index = -1;  // op index where the loss fires (after that op)
  std::vector<std::pair<int, RoleEvent>> events;  // (op index, role)
};

/// Computes the role profile. The op at loss_index must act on q and must not
/// be a measurement (loss faults fire before measurements, not after).
/// Post-loss hadamard or prep ops on q are outside the rewriting's domain and
/// throw std::invalid_argument.
RoleProfile role_profile(const Circuit& c, int loss_index, int q);

/// One fresh-state insertion: re-prepare q in |0> (kind '0') or |+> ('+')
/// immediately before the op at op_index.
struct Insertion {
  int op_index = -1;
  char kind = '0';
  bool at_measurement = false;  // inserted to randomize a basis-mismatched readout
};

struct ReplacementPlan {
  std::vector<Insertion> insertions;
  bool single_replacement() const { return insertions.size() == 1; }
};

/// Rewrites "q is lost after loss_index" into fresh-state replacements:
///   - before each CNOT/CZ on q, |0> for control-style roles and |+> for the
///     target role, unless the previous use of q was a gate in the same role
///     (the absorbing state is still in place);
///   - before each measurement of q, unless the basis matches the previous
///     gate role (meas_x after control-style, meas_z after target), in which
///     case the absorbing state already gives a fair readout;
///   - an LRU on q ends the walk (it re-initializes the qubit either way).
ReplacementPlan replacement_plan(const Circuit& c, int loss_index, int q);

struct EquivResult {
  bool equivalent = false;
  std::string witness;  // non-empty description of the first mismatch
};

/// Checks, by exact dense execution, that losing q after loss_index is
/// equivalent to executing `plan` instead: for every record of measurement
/// outcomes, the weighted sum of reduced states on the other qubits matches,
/// with readouts of q compared set-wise (feasible values, not probabilities).
/// Requires a block-free circuit small enough for the dense engine.
EquivResult verify_plan(const Circuit& c, int loss_index, int q, const ReplacementPlan& plan,
                        int max_slots = 13);

/// verify_plan with the plan produced by replacement_plan.
EquivResult verify_equivalence(const Circuit& c, int loss_index, int q, int max_slots = 13);

/// Random circuit where qubit q is used in a single role after its
/// preparation: control-style gates (control_role) or CNOT targets, ending in
/// the basis-matched measurement, with random gates and measurements on the
/// other qubits. With mixed_role, q alternates roles instead (its final
/// measurement then matches the last role). All preparations are at the
/// start; *loss_index receives the index of q's preparation.
Circuit random_role_circuit(std::mt19937_64& rng, int n_qubits, int q, bool control_role,
                            bool mixed_role, int* loss_index);

}  // namespace lossft

#endif  // LOSSFT_LOSS_MAPPING_HPP
