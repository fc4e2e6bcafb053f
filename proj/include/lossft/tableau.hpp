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

#ifndef LOSSFT_TABLEAU_HPP
#define LOSSFT_TABLEAU_HPP

#include <string>
#include <vector>

#include "lossft/pauli.hpp"

namespace lossft {

/// Stabilizer tableau for a pure n-qubit state: n stabilizer rows plus n
/// destabilizer rows, bit-packed, with phases tracked as powers of i (mod 4)
/// in the X^x Z^z row convention. Columns are identified by external qubit
/// ids so that qubits can be introduced lazily and retired (dropped) once
/// they are measured out and never used again.
///
/// Measurements are split into probe + project so a branching caller can
/// realize both outcomes on copies:
///   int p = t.find_anticommuting(P);
///   if (p < 0)  bit = t.deterministic_value(P);          // no collapse
///   else        copy.project(P, bit, p);                 // for bit in {0,1}
class Tableau {
 public:
  Tableau() = default;
  /// n qubits in |0...0>, external ids 0..n-1.
  static Tableau zeros(int n);

  int num_qubits() const { return n_; }
  /// Column of an external qubit id, or -1 if the qubit is not tracked.
  int col(int qubit_id) const {
    return qubit_id < int(col_.size()) ? col_[qubit_id] : -1;
  }
  int id_of_col(int c) const { return ids_[c]; }
  const std::vector<int>& ids() const { return ids_; }

  /// Introduces a fresh qubit in |0>.
  void add_qubit(int qubit_id);

  // Gates, addressed by column.
  void h(int a);
  void cnot(int control, int target);
  void cz(int a, int b);
  /// Applies a Pauli error to the state (flips signs of anticommuting rows).
  void apply_pauli(char p, int a);
  /// Same for an operator given by x/z supports over columns.
  void apply_pauli(const BitVec& x, const BitVec& z);

  // Single-qubit computational/X-basis measurement machinery.
  int find_z_anticommuting(int a) const;  // stabilizer row index or -1
  int find_x_anticommuting(int a) const;
  bool deterministic_z(int a) const;
  bool deterministic_x(int a) const;
  void project_z(int a, bool outcome, int pivot);
  void project_x(int a, bool outcome, int pivot);

  // Joint Pauli measurement (P over columns; P.sign() must be defined).
  int find_anticommuting(const Pauli& p) const;
  bool deterministic_value(const Pauli& p) const;
  void project(const Pauli& p, bool outcome, int pivot);

  /// Collapse-to-basis resets (measure, discard the outcome, flip into the
  /// target state). These never branch.
  void reset_z(int a);
  void reset_x(int a);

  /// Removes a qubit that is in a definite single-qubit stabilizer state
  /// (post-measurement). Throws std::logic_error if still entangled.
  void drop_qubit(int a);

  /// Reduced row echelon form on the stabilizer rows with freshly derived
  /// canonical destabilizers; states are equal iff canonical forms match.
  void canonicalize();
  /// Byte key for branch merging; call canonicalize() first.
  std::string key_bytes() const;

  Pauli stabilizer_row(int i) const;
  Pauli destabilizer_row(int i) const;
  /// Debug: verifies commutation/pairing/phase invariants; throws on failure.
  void check_invariants() const;
  std::string to_string() const;

 private:
  int words() const { return wd_; }
  uint64_t* sx(int r) { return &sx_[size_t(r) * wd_]; }
  uint64_t* sz(int r) { return &sz_[size_t(r) * wd_]; }
  uint64_t* dx(int r) { return &dx_[size_t(r) * wd_]; }
  uint64_t* dz(int r) { return &dz_[size_t(r) * wd_]; }
  const uint64_t* sx(int r) const { return &sx_[size_t(r) * wd_]; }
  const uint64_t* sz(int r) const { return &sz_[size_t(r) * wd_]; }
  const uint64_t* dx(int r) const { return &dx_[size_t(r) * wd_]; }
  const uint64_t* dz(int r) const { return &dz_[size_t(r) * wd_]; }

  bool get(const uint64_t* p, int c) const { return (p[c >> 6] >> (c & 63)) & 1; }
  static void put(uint64_t* p, int c, bool v) {
    uint64_t m = uint64_t{1} << (c & 63);
    if (v)
      p[c >> 6] |= m;
    else
      p[c >> 6] &= ~m;
  }

  // phase update for dst := dst * src in the X^x Z^z convention
  static uint8_t mult_phase(uint8_t pd, const uint64_t* xd, const uint64_t* zd, uint8_t ps,
                            const uint64_t* xs, const uint64_t* zs, int wd);
  void row_mult_stab(int dst, int src);    // stab[dst] *= stab[src]
  void row_mult_destab(int dst, int src);  // destab[dst] *= stab[src]
  bool anticommutes_stab(int r, const uint64_t* px, const uint64_t* pz) const;
  bool anticommutes_destab(int r, const uint64_t* px, const uint64_t* pz) const;
  int find_anticommuting_masks(const uint64_t* px, const uint64_t* pz) const;
  void project_masks(const uint64_t* px, const uint64_t* pz, uint8_t phase, bool outcome,
                     int pivot);
  bool deterministic_masks(const uint64_t* px, const uint64_t* pz, uint8_t phase) const;
  void reset_generic(int a, bool x_basis);

  int n_ = 0;
  int wd_ = 1;
  std::vector<int> ids_;
  std::vector<int> col_;
  std::vector<uint64_t> sx_, sz_, dx_, dz_;
  std::vector<uint8_t> sp_, dp_;
};

}  // namespace lossft

#endif  // LOSSFT_TABLEAU_HPP
