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

#include "lossft/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace lossft {

const char* to_string(LruStrategy s) {
  switch (s) {
    case LruStrategy::none: return "none";
    case LruStrategy::data_pre: return "data_pre";
    case LruStrategy::post_zero_ancilla: return "post_zero_ancilla";
    case LruStrategy::at07_generic: return "at07_generic";
  }
  return "?";
}

LruStrategy lru_strategy_from_string(const std::string& s) {
  if (s == "none") return LruStrategy::none;
  if (s == "data_pre") return LruStrategy::data_pre;
  if (s == "post_zero_ancilla" || s == "post_zero") return LruStrategy::post_zero_ancilla;
  if (s == "at07_generic" || s == "at07") return LruStrategy::at07_generic;
  throw std::invalid_argument("unknown LRU strategy: " + s);
}

void append_encode(Circuit& c, const CssCode& code, const std::vector<int>& qubits,
                   bool plus_kind, const std::string& tag) {
  if (int(qubits.size()) != code.n())
    throw std::invalid_argument("encode: qubit list does not match code length");
  BinMat gens = code.hx();
  if (plus_kind) gens.append_row(code.logical_x(0));
  std::vector<int> pivots = gens.rref();
  std::vector<char> is_pivot(code.n(), 0);
  for (int p : pivots) is_pivot[p] = 1;
  for (int j = 0; j < code.n(); ++j) {
    if (is_pivot[j])
      c.prep_x(qubits[j], tag);
    else
      c.prep_z(qubits[j], tag);
  }
  for (int i = 0; i < int(pivots.size()); ++i) {
    for (int j = 0; j < code.n(); ++j)
      if (j != pivots[i] && gens.row(i).get(j)) c.cnot(qubits[pivots[i]], qubits[j], tag);
  }
}

Circuit encode_logical(const CssCode& code, bool plus_kind) {
  Circuit c(code.n());
  std::vector<int> q(code.n());
  for (int i = 0; i < code.n(); ++i) q[i] = i;
  append_encode(c, code, q, plus_kind, "encode");
  return c;
}

namespace {

void append_lrus(Circuit& c, const std::vector<int>& qubits, const std::string& tag) {
  for (int q : qubits) c.lru(q, tag);
}

std::vector<std::string> bit_names(const std::string& prefix, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

}  // namespace

void append_verified_ancilla(Circuit& c, const CssCode& code, const std::vector<int>& anc,
                             const std::vector<int>& ver, bool plus_kind,
                             const std::string& bit_prefix, const std::string& anc_tag,
                             bool anc_lrus, bool ver_lrus) {
  c.begin_block(anc_tag);
  append_encode(c, code, anc, plus_kind, anc_tag);
  if (anc_lrus) append_lrus(c, anc, "lru");
  append_encode(c, code, ver, plus_kind, "verifier-encode");
  if (ver_lrus) append_lrus(c, ver, "lru");
  // Errors of the detected family flow from the ancilla onto the verifier:
  // X errors ride the control of a CNOT, Z errors ride the target.
  for (int i = 0; i < code.n(); ++i) {
    if (plus_kind)
      c.cnot(ver[i], anc[i], "verify-couple");
    else
      c.cnot(anc[i], ver[i], "verify-couple");
  }
  std::vector<std::string> bits = bit_names(bit_prefix, code.n());
  for (int i = 0; i < code.n(); ++i) {
    if (plus_kind)
      c.meas_x(ver[i], bits[i], "verify-meas");
    else
      c.meas_z(ver[i], bits[i], "verify-meas");
  }
  c.end_block_css("steane", plus_kind ? 'x' : 'z', bits);
}

void append_cat_block(Circuit& c, const std::vector<int>& ids, const std::string& bit,
                      const std::string& tag_prefix, bool post_prep_lrus) {
  if (ids.size() != 5) throw std::invalid_argument("cat block wants 4 cat qubits + verifier");
  int c1 = ids[0], c2 = ids[1], c3 = ids[2], c4 = ids[3], v = ids[4];
  c.begin_block(tag_prefix);
  c.prep_x(c1, tag_prefix + "-prep");
  c.prep_z(c2, tag_prefix + "-prep");
  c.prep_z(c3, tag_prefix + "-prep");
  c.prep_z(c4, tag_prefix + "-prep");
  c.prep_z(v, tag_prefix + "-prep");
  if (post_prep_lrus) append_lrus(c, ids, "lru");
  c.cnot(c1, c2, tag_prefix + "-grow");
  c.cnot(c2, c3, tag_prefix + "-grow");
  c.cnot(c1, c4, tag_prefix + "-grow");
  c.cnot(c3, v, tag_prefix + "-verify");
  c.cnot(c4, v, tag_prefix + "-verify");
  c.meas_z(v, bit, tag_prefix + "-verify-meas");
  c.end_block_all_zero({bit});
}

ProtocolBuild build_steane_ec(LruStrategy strategy) {
  const CssCode& code = CssCode::steane();
  Circuit c(35);
  std::vector<int> data, anc_z, ver_z, anc_x, ver_x;
  for (int i = 0; i < 7; ++i) {
    data.push_back(i);
    anc_z.push_back(7 + i);
    ver_z.push_back(14 + i);
    anc_x.push_back(21 + i);
    ver_x.push_back(28 + i);
  }
  bool at07 = strategy == LruStrategy::at07_generic;
  if (strategy == LruStrategy::data_pre || at07) append_lrus(c, data, "data-lru");

  // Z-error correction: verified |0>-type ancilla as transversal control.
  bool post_zero = strategy == LruStrategy::post_zero_ancilla;
  append_verified_ancilla(c, code, anc_z, ver_z, false, "vz", "ancilla-encode", at07 || post_zero,
                          at07);
  for (int i = 0; i < 7; ++i) c.cnot(anc_z[i], data[i], "couple");
  std::vector<std::string> za = bit_names("za", 7);
  for (int i = 0; i < 7; ++i) c.meas_x(anc_z[i], za[i], "syndrome-meas");
  c.decode_correct_transversal("steane", 'x', za, data, "correct");

  // X-error correction: verified |+>-type ancilla as transversal target.
  append_verified_ancilla(c, code, anc_x, ver_x, true, "vx", "ancilla-encode", at07, at07);
  for (int i = 0; i < 7; ++i) c.cnot(data[i], anc_x[i], "couple");
  std::vector<std::string> xa = bit_names("xa", 7);
  for (int i = 0; i < 7; ++i) c.meas_z(anc_x[i], xa[i], "syndrome-meas");
  c.decode_correct_transversal("steane", 'z', xa, data, "correct");

  return ProtocolBuild{std::move(c), data, data, "steane", "steane", strategy};
}

ProtocolBuild build_shor_ec(LruStrategy strategy, int rounds) {
  const CssCode& code = CssCode::steane();
  int per_round = code.hx().rows() + code.hz().rows();
  Circuit c(7 + rounds * per_round * 5);
  std::vector<int> data;
  for (int i = 0; i < 7; ++i) data.push_back(i);
  bool at07 = strategy == LruStrategy::at07_generic;
  if (strategy == LruStrategy::data_pre) append_lrus(c, data, "data-lru");

  std::vector<std::vector<std::string>> round_bits;
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::string> bits;
    for (int s = 0; s < per_round; ++s) {
      bool x_type = s < code.hx().rows();
      const BinMat& h = x_type ? code.hx() : code.hz();
      BitVec row = h.row(x_type ? s : s - code.hx().rows());
      std::vector<int> support = row.support();
      if (support.size() != 4)
        throw std::logic_error("cat extraction expects weight-4 generators");
      int base = 7 + (r * per_round + s) * 5;
      std::vector<int> ids = {base, base + 1, base + 2, base + 3, base + 4};
      std::string id = std::to_string(r) + "_" + std::to_string(s);
      append_cat_block(c, ids, "catv" + id, "cat", at07);
      for (int k = 0; k < 4; ++k) {
        if (x_type)
          c.cnot(ids[k], support[k], "couple");
        else
          c.cz(ids[k], support[k], "couple");
      }
      std::vector<std::string> mb = bit_names("cm" + id + "_", 4);
      for (int k = 0; k < 4; ++k) c.meas_x(ids[k], mb[k], "cat-meas");
      c.parity("syn" + id, mb, "parity");
      bits.push_back("syn" + id);
    }
    round_bits.push_back(std::move(bits));
  }
  c.decode_correct_repeated("steane", round_bits, data, "correct");
  return ProtocolBuild{std::move(c), data, data, "steane", "shor", strategy};
}

ProtocolBuild build_knill_ec(LruStrategy strategy) {
  const CssCode& code = CssCode::steane();
  Circuit c(35);
  std::vector<int> data, plus, plusver, zero, zerover;
  for (int i = 0; i < 7; ++i) {
    data.push_back(i);
    plus.push_back(7 + i);
    plusver.push_back(14 + i);
    zero.push_back(21 + i);
    zerover.push_back(28 + i);
  }
  bool at07 = strategy == LruStrategy::at07_generic;
  if (strategy == LruStrategy::data_pre) append_lrus(c, data, "data-lru");

  bool post_zero = strategy == LruStrategy::post_zero_ancilla;
  append_verified_ancilla(c, code, plus, plusver, true, "pv", "plus-encode", at07, at07);
  append_verified_ancilla(c, code, zero, zerover, false, "zv", "ancilla-encode", at07 || post_zero,
                          at07);

  for (int i = 0; i < 7; ++i) c.cnot(plus[i], zero[i], "bell");
  for (int i = 0; i < 7; ++i) c.cnot(data[i], plus[i], "couple");
  std::vector<std::string> tx = bit_names("tx", 7);
  std::vector<std::string> tz = bit_names("tz", 7);
  for (int i = 0; i < 7; ++i) c.meas_x(data[i], tx[i], "teleport-meas");
  for (int i = 0; i < 7; ++i) c.meas_z(plus[i], tz[i], "teleport-meas");

  // Teleportation frame. The joint state right before the readouts satisfies
  // output = X^w Z^v (teleported input) with w the plus half's Z record and v
  // the data's X record, where w and v are the raw physical words (the
  // stabilizer-group parts of the frame act trivially, so qubit-wise undoing
  // is equivalent to a logical-class correction up to the recorded
  // measurement flips, which it also cancels).
  for (int i = 0; i < 7; ++i) c.classical_pauli({zero[i]}, "X", {tz[i]}, "correct");
  for (int i = 0; i < 7; ++i) c.classical_pauli({zero[i]}, "Z", {tx[i]}, "correct");

  return ProtocolBuild{std::move(c), data, zero, "steane", "knill", strategy};
}

ProtocolBuild build_protocol(const std::string& name, LruStrategy strategy) {
  if (name == "steane") return build_steane_ec(strategy);
  if (name == "shor") return build_shor_ec(strategy);
  if (name == "knill") return build_knill_ec(strategy);
  throw std::invalid_argument("unknown protocol: " + name);
}

int count_lrus(const ProtocolBuild& b) {
  int n = 0;
  for (const Op& op : b.circuit.ops())
    if (op.type == OpType::lru) ++n;
  return n;
}

}  // namespace lossft
