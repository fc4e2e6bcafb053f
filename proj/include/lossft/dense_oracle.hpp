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

#ifndef LOSSFT_DENSE_ORACLE_HPP
#define LOSSFT_DENSE_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lossft/circuit.hpp"
#include "lossft/fault.hpp"
#include "lossft/sim.hpp"

namespace lossft {

/// Gaussian integer amplitude; the enclosing state divides by sqrt(2)^exp.
struct Complex64 {
  int64_t re = 0, im = 0;
  bool operator==(const Complex64& o) const { return re == o.re && im == o.im; }
};

/// Exact density matrix over dims x dims with entries m[r*dims+c] / 2^log2_den.
struct DenseMatrix {
  int dims = 1;
  int log2_den = 0;
  std::vector<Complex64> m;

  static DenseMatrix zero(int dims);
  void reduce();  // strip common factors of 2 for canonical comparison
  bool operator==(const DenseMatrix& o) const;
  /// acc += w * rho, exactly.
  void accumulate(const DenseMatrix& rho, const Dyadic& w);
  std::string to_string() const;
};

/// One branch of the reference state-vector execution. Loss and replacement
/// are purified: abandoned modes keep their own slots, which the reduced
/// density matrix later traces out.
struct DenseBranch {
  std::vector<Complex64> amp;  // size 2^num_slots, divided by sqrt(2)^sqrt2_exp
  int sqrt2_exp = 0;
  int num_slots = 0;
  std::vector<int> slot_of;  // circuit qubit -> current slot
  std::vector<uint8_t> lost;
  std::vector<uint8_t> dirty;  // qubit has been acted on since its last slot
  std::vector<int8_t> classical;
  std::vector<Outcome> record;
  std::string path;
  Dyadic weight;
  bool adversarial = false;
};

struct OracleOptions {
  int max_slots = 13;
  uint64_t branch_cap = uint64_t{1} << 16;
  const CodeRegistry* codes = nullptr;
  /// Measurements of this circuit qubit do not scale the branch weight
  /// (used when comparing ensembles on the complement of one qubit).
  int setwise_qubit = -1;
  /// After executing op index .first, branch over the four Pauli completions
  /// on qubit .second (arbitrary-replacement insertions).
  std::vector<std::pair<int, int>> completions;
};

/// Runs the circuit on exact dense state vectors with the same branching
/// conventions (tokens, weights, adversarial flags) as the tableau engine.
std::vector<DenseBranch> oracle_run(const Circuit& c, const std::vector<FaultSpec>& faults,
                                    const OracleOptions& opt);

/// Reduced density matrix over the listed circuit qubits (qubits[0] is the
/// least significant row/column bit); everything else is traced out.
DenseMatrix reduced_density(const DenseBranch& b, const std::vector<int>& qubits);

/// Expands a tableau branch into the same representation: a state vector over
/// the tableau's qubits, then the reduced matrix over the requested qubits.
/// Qubits absent from the tableau are taken to be |0>.
DenseMatrix tableau_reduced_density(const Tableau& t, const std::vector<int>& qubits);

}  // namespace lossft

#endif  // LOSSFT_DENSE_ORACLE_HPP
