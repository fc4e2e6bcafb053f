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

#ifndef LOSSFT_CIRCUIT_HPP
#define LOSSFT_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace lossft {

enum class OpType {
  prep_z,
  prep_x,
  hadamard,
  cnot,
  cz,
  wait,
  lru,
  meas_z,
  meas_x,
  parity,          // classical XOR of named bits into a new named bit
  classical_pauli, // Pauli on targets, conditioned on a classical expression
  decode_correct,  // decode a syndrome source, apply the correction to targets
};

const char* to_string(OpType t);
OpType op_type_from_string(const std::string& s);
bool is_measurement(OpType t);
bool is_gate_arity2(OpType t);
/// Ops acting on a whole listed qubit block (faults enumerate per qubit).
bool is_block_op(OpType t);
/// Purely classical bookkeeping; carries no fault location.
bool is_classical_only(OpType t);

/// One circuit operation. Fields beyond `type`, `location`, `qubits`, `tag`
/// are populated per kind:
///   meas_z/meas_x : out (outcome name)
///   parity        : out, args (input bit names)
///   classical_pauli: pauli (letters aligned with qubits), and either
///                    args (condition = XOR of named bits) or cond_decode
///                    (condition = decoded logical bit of code/basis over args)
///   decode_correct: code, targets = qubits, and either a transversal source
///                    (basis + args = per-qubit outcome names) or a repeated
///                    source (rounds = per-round syndrome bit names, majority
///                    voted over complete syndrome vectors)
struct Op {
  OpType type{};
  int64_t location = -1;
  std::vector<int> qubits;
  std::string tag;
  std::string out;
  std::vector<std::string> args;
  std::string pauli;
  std::string code;
  char basis = 0;
  bool cond_decode = false;
  std::vector<std::vector<std::string>> rounds;
};

enum class AcceptKind {
  all_zero,   // accept iff every named bit is 0
  css_verify  // accept iff decoded syndrome trivial and logical bit 0
};

/// A contiguous verification region. If the accept predicate fails on a
/// branch, the block's qubits are re-prepared fresh and its member ops are
/// re-executed fault-free (ideal re-preparation retry).
struct Block {
  int begin = -1, end = -1;  // inclusive op index range
  std::string tag;
  AcceptKind accept{};
  std::vector<std::string> bits;
  std::string code;    // css_verify
  char basis = 0;      // css_verify: measurement basis of `bits`
};

class Circuit {
 public:
  explicit Circuit(int n, int64_t location_base = 0) : n_(n), loc_base_(location_base) {}

  int num_qubits() const { return n_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Op* find_location(int64_t loc) const;
  /// Index of the block containing op i, or -1.
  int block_of(int i) const { return op_block_[i]; }
  /// Index of the op defining a classical bit name, or -1.
  int def_index(const std::string& name) const;

  /// Appends an op, assigning location_base + index when op.location < 0.
  /// Validates operands and classical references; throws std::invalid_argument.
  int add(Op op);

  // Builder shorthands; each returns the location id.
  int64_t prep_z(int q, std::string tag = "");
  int64_t prep_x(int q, std::string tag = "");
  int64_t hadamard(int q, std::string tag = "");
  int64_t cnot(int control, int target, std::string tag = "");
  int64_t cz(int a, int b, std::string tag = "");
  int64_t wait(int q, std::string tag = "");
  int64_t lru(int q, std::string tag = "");
  int64_t meas_z(int q, std::string out, std::string tag = "");
  int64_t meas_x(int q, std::string out, std::string tag = "");
  void parity(std::string out, std::vector<std::string> inputs, std::string tag = "");
  int64_t classical_pauli(std::vector<int> targets, std::string pauli,
                          std::vector<std::string> cond, std::string tag = "");
  int64_t classical_pauli_decoded(std::vector<int> targets, std::string pauli, std::string code,
                                  char basis, std::vector<std::string> bits, std::string tag = "");
  int64_t decode_correct_transversal(std::string code, char basis, std::vector<std::string> bits,
                                     std::vector<int> targets, std::string tag = "");
  int64_t decode_correct_repeated(std::string code, std::vector<std::vector<std::string>> rounds,
                                  std::vector<int> targets, std::string tag = "");

  void begin_block(std::string tag);
  void end_block_all_zero(std::vector<std::string> bits);
  void end_block_css(std::string code, char basis, std::vector<std::string> bits);

  /// Qubits touched by ops inside block b (sorted, unique).
  std::vector<int> block_qubits(int b) const;

  /// Full structural validation (used after parsing).
  void validate() const;

  /// a followed by b on the same qubit count; locations must not collide.
  static Circuit concat(const Circuit& a, const Circuit& b);

 private:
  void check_qubit(int q) const;

  int n_ = 0;
  int64_t loc_base_ = 0;
  std::vector<Op> ops_;
  std::vector<Block> blocks_;
  std::vector<int> op_block_;
  std::unordered_map<std::string, int> defs_;
  std::unordered_map<int64_t, int> loc_index_;
  int open_block_ = -1;
};

/// Line-oriented text round-trip (`loc; kind; qubits; tag; key=value...`,
/// verification blocks as bracketed regions).
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace lossft

#endif  // LOSSFT_CIRCUIT_HPP
