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

#ifndef LOSSFT_PROTOCOLS_HPP
#define LOSSFT_PROTOCOLS_HPP

#include <string>
#include <vector>

#include "lossft/circuit.hpp"
#include "lossft/css_code.hpp"

namespace lossft {

/// Where loss-replacement units are placed in a gadget.
enum class LruStrategy {
  none,               // no LRUs
  data_pre,           // one LRU per data qubit, before the correction round
  post_zero_ancilla,  // one LRU per qubit of each verified |0>-type ancilla
  at07_generic        // LRUs after every ancilla/verifier preparation
                      // (plus the data, for the Steane gadget)
};

const char* to_string(LruStrategy s);
LruStrategy lru_strategy_from_string(const std::string& s);

struct ProtocolBuild {
  Circuit circuit;
  std::vector<int> input_data;   // qubits carrying the logical state at entry
  std::vector<int> output_data;  // qubits carrying it at exit
  std::string code_name;
  std::string protocol;  // "steane" | "shor" | "knill"
  LruStrategy strategy = LruStrategy::none;
};

/// Appends the standard CSS encoder onto the listed qubits: |+> preparations
/// on the pivot columns of the generator matrix (the X checks, extended by
/// logical X for the plus state), |0> elsewhere, then a CNOT fan-out from
/// each pivot across its generator row. 7 preparations + 9 CNOTs for the
/// [[7,1,3]] code, either kind.
void append_encode(Circuit& c, const CssCode& code, const std::vector<int>& qubits,
                   bool plus_kind, const std::string& tag);

/// Standalone encoder circuit on qubits 0..n-1 (for direct inspection).
Circuit encode_logical(const CssCode& code, bool plus_kind);

/// Appends a verified ancilla preparation as a retry block:
///   zero kind: encode ancilla |0>-type, encode an identical verifier,
///              transversal CNOT ancilla->verifier, verifier measured in Z;
///   plus kind: dual (verifier->ancilla CNOT, verifier measured in X).
/// Accepts iff the decoded verifier syndrome is trivial and its logical bit
/// is 0. LRUs, when requested, go right after the corresponding encoder and
/// before the verification coupling, so that any replacement errors they
/// introduce are themselves subject to the verification.
void append_verified_ancilla(Circuit& c, const CssCode& code, const std::vector<int>& anc,
                             const std::vector<int>& ver, bool plus_kind,
                             const std::string& bit_prefix, const std::string& anc_tag,
                             bool anc_lrus, bool ver_lrus);

/// Appends a verified 4-qubit cat preparation as a retry block. ids =
/// {c1, c2, c3, c4, verifier}: |+> on c1, growth CNOTs c1->c2, c2->c3,
/// c1->c4 (two independent growth arms ending at c3 and c4), verification
/// CNOTs c3->v and c4->v, measure v in Z, accept iff 0.
/// 5 preparations and 5 CNOTs.
void append_cat_block(Circuit& c, const std::vector<int>& ids, const std::string& bit,
                      const std::string& tag_prefix, bool post_prep_lrus);

/// Steane-style correction round on data qubits 0..6 (gadget width 35):
/// verified |0>-type ancilla couples as transversal control onto the data and
/// is measured in X (corrects Z errors), then a verified |+>-type ancilla
/// receives a transversal CNOT from the data and is measured in Z (corrects
/// X errors).
ProtocolBuild build_steane_ec(LruStrategy strategy);

/// Cat-state syndrome extraction on data qubits 0..6: per round, each of the
/// six generators is measured with a fresh verified 4-cat (CNOT coupling for
/// X generators, CZ for Z generators, sorted support order), cat qubits
/// measured in X, stabilizer value = parity of the four bits. The per-round
/// syndromes (X-generator bits then Z-generator bits) are majority-voted
/// two-of-three into one correction; three distinct rounds correct nothing.
ProtocolBuild build_shor_ec(LruStrategy strategy, int rounds = 3);

/// Teleportation-based correction: verified |+>-type and |0>-type ancillas
/// form a logical Bell pair (transversal CNOT plus->zero), the data couples
/// as transversal control onto the plus half, data measured in X and plus
/// half in Z; decoded logical bits drive conditional logical X / logical Z
/// on the zero half, which becomes the output data block.
ProtocolBuild build_knill_ec(LruStrategy strategy);

/// Builder by protocol name ("steane" | "shor" | "knill").
ProtocolBuild build_protocol(const std::string& name, LruStrategy strategy);

/// Number of LRU locations the build emitted.
int count_lrus(const ProtocolBuild& b);

}  // namespace lossft

#endif  // LOSSFT_PROTOCOLS_HPP
