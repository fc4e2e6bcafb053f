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

#ifndef LOSSFT_FAULT_HPP
#define LOSSFT_FAULT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lossft/circuit.hpp"

namespace lossft {

/// A single fault attached to a circuit location. Faults act after the ideal
/// operation, except at measurement locations where they act just before the
/// readout. p0/l0 affect operand 0 (or, for whole-block ops such as the
/// correction step, the single targeted data qubit in `qubit`); p1/l1 affect
/// operand 1 of a two-qubit gate.
struct FaultSpec {
  int64_t location = -1;
  char p0 = 'I', p1 = 'I';
  bool l0 = false, l1 = false;
  int qubit = -1;  // block-op faults only: the targeted qubit

  bool has_loss() const { return l0 || l1; }
  bool trivial() const { return p0 == 'I' && p1 == 'I' && !l0 && !l1; }

  /// Compact ascii form: "X", "L", "XI", "LL", "LX", "q3:Y", ...
  std::string code() const;
  /// Inverse of code(); needs the circuit to resolve arity.
  static FaultSpec from_code(const Circuit& c, int64_t location, const std::string& code);

  bool operator==(const FaultSpec& o) const {
    return location == o.location && p0 == o.p0 && p1 == o.p1 && l0 == o.l0 && l1 == o.l1 &&
           qubit == o.qubit;
  }
};

enum class TwoQubitPauliSet {
  full15,     // all two-qubit Paulis except the identity
  one_sided6  // {IX,IY,IZ,XI,YI,ZI}
};

enum class LossComboSet {
  paper5,  // {LI, IL, LL, LX, XL} on two-qubit gates; loss restricted to
           // preparation and two-qubit gate locations
  full9    // loss with any partner Pauli, on every location
};

struct FaultModel {
  bool include_pauli = true;
  bool include_loss = true;
  TwoQubitPauliSet two_qubit_paulis = TwoQubitPauliSet::full15;
  LossComboSet loss_combos = LossComboSet::full9;
};

/// Enumerates every single-fault spec for the circuit under the model, in a
/// deterministic order: locations ascending; per location Pauli faults first
/// (X,Y,Z for one qubit; lexicographic with I<X<Y<Z for two), then loss
/// combinations. Classical-only ops carry no faults. Whole-block ops (the
/// correction and frame steps) enumerate per-target single-qubit faults.
std::vector<FaultSpec> enumerate_fault_locations(const Circuit& c, const FaultModel& m);

}  // namespace lossft

#endif  // LOSSFT_FAULT_HPP
