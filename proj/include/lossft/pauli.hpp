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

#ifndef LOSSFT_PAULI_HPP
#define LOSSFT_PAULI_HPP

#include <string>

#include "lossft/bits.hpp"

namespace lossft {

/// A signed n-qubit Pauli operator.
///
/// Internally the operator is i^phase * prod_q X_q^{x_q} Z_q^{z_q} with phase
/// tracked mod 4 (products of Hermitian Paulis pass through odd i-powers, e.g.
/// X*Z = -iY). Externally only Hermitian operators with sign +/-1 are exposed;
/// sign() throws if the current phase would leave a factor of i.
class Pauli {
 public:
  Pauli() = default;
  explicit Pauli(int n) : x(n), z(n) {}

  /// Parses "+XZI", "-IYZ", "XX" (no sign means +).
  static Pauli from_string(const std::string& s);
  /// Single-qubit P on wire q of an n-qubit operator; c is one of IXYZ.
  static Pauli single(int n, int q, char c);

  int num_qubits() const { return x.size(); }
  bool is_identity() const { return !x.any() && !z.any() && phase % 4 == 0; }
  /// 'I','X','Y','Z' at qubit q.
  char at(int q) const;
  void set(int q, char c);

  /// Hermitian sign: +1 or -1. Throws std::logic_error if the operator
  /// carries a stray factor of i (never happens for products of an even
  /// number of anticommuting factors).
  int sign() const;
  void negate() { phase = (phase + 2) & 3; }

  /// Number of qubits acted on non-trivially.
  int weight() const;

  bool commutes_with(const Pauli& o) const {
    return (BitVec::dot(x, o.z) ^ BitVec::dot(z, o.x)) == 0;
  }

  Pauli operator*(const Pauli& o) const;
  bool operator==(const Pauli& o) const {
    return x == o.x && z == o.z && (phase & 3) == (o.phase & 3);
  }
  bool operator!=(const Pauli& o) const { return !(*this == o); }

  std::string to_string() const;

  BitVec x, z;
  uint8_t phase = 0;  // power of i, mod 4
};

}  // namespace lossft

#endif  // LOSSFT_PAULI_HPP
