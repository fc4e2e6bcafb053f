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

#ifndef LOSSFT_CSS_CODE_HPP
#define LOSSFT_CSS_CODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lossft/pauli.hpp"

namespace lossft {

/// Syndrome of a Pauli error against both stabilizer families.
/// z_checks = h_z * x_support (detects X-type errors),
/// x_checks = h_x * z_support (detects Z-type errors).
struct Syndrome {
  BitVec z_checks;
  BitVec x_checks;
  bool trivial() const { return !z_checks.any() && !x_checks.any(); }
};

enum class LogicalTag {
  identity,
  logical_x,
  logical_y,
  logical_z,
  detectable,                 // syndrome outside the decode tables
  uncorrectable_after_decode  // normalizer element mixing several logical qubits
};

const char* to_string(LogicalTag t);

/// Result of classically decoding a transversal single-basis measurement.
struct MeasDecode {
  bool in_table = true;
  BitVec syndrome;    // parity checks of the matching classical code
  BitVec correction;  // decoded error support on the bit string
  int logical_bit = 0;
};

/// A CSS stabilizer code defined by two orthogonal parity-check matrices.
class CssCode {
 public:
  /// Validates orthogonality, derives k, logical representatives (via
  /// symplectic completion), distance (brute force) and lookup decode tables
  /// up to weight (d-1)/2. Throws std::invalid_argument on malformed input
  /// (non-orthogonal rows, k <= 0, n > 64).
  static CssCode build(const BinMat& hx, const BinMat& hz);

  /// The [[7,1,3]] code built from the Hamming checks
  /// {0001111, 0110011, 1010101} used for both families.
  static const CssCode& steane();

  int n() const { return n_; }
  int k() const { return k_; }
  int distance() const { return d_; }
  const BinMat& hx() const { return hx_; }
  const BinMat& hz() const { return hz_; }
  /// Support of the i-th logical X (an X-type operator) / logical Z.
  const BitVec& logical_x(int i = 0) const { return lx_[i]; }
  const BitVec& logical_z(int i = 0) const { return lz_[i]; }

  Syndrome syndrome(const Pauli& p) const;
  /// Minimal-weight correction for a syndrome, from the lookup tables.
  /// Ties were broken at table-build time by weight, then lowest qubit index.
  /// Throws std::invalid_argument if a syndrome half has no table entry.
  Pauli decode(const Syndrome& s) const;
  /// Classifies a residual Pauli after an ideal decode round.
  LogicalTag logical_effect(const Pauli& residual) const;

  /// Decodes a transversal measurement record (bit i = outcome of qubit i).
  /// basis 'z': checks h_z, errors are X-type, logical support = logical Z.
  /// basis 'x': checks h_x, errors are Z-type, logical support = logical X.
  /// logical_bit is the parity on the logical support after flipping the
  /// decoded error positions.
  MeasDecode decode_measurement(const BitVec& bits, char basis, int logical_index = 0) const;

  /// Round-trips through the on-disk format (header, n, k, hx/hz rows).
  static CssCode parse(const std::string& text);
  std::string serialize() const;

 private:
  CssCode() = default;
  void build_logicals();
  void build_distance_and_tables();

  int n_ = 0, k_ = 0, d_ = 0;
  BinMat hx_, hz_;
  std::vector<BitVec> lx_, lz_;
  // syndrome (packed bits, row i -> bit i) -> error support
  std::unordered_map<uint64_t, BitVec> table_x_;  // keyed by h_z syndromes
  std::unordered_map<uint64_t, BitVec> table_z_;  // keyed by h_x syndromes
};

uint64_t pack_bits(const BitVec& v);

}  // namespace lossft

#endif  // LOSSFT_CSS_CODE_HPP
