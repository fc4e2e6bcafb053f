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

#include "lossft/fault.hpp"

#include <algorithm>
#include <stdexcept>

namespace lossft {

namespace {

char effect_char(char p, bool l) { return l ? 'L' : p; }

void decode_effect(char c, char* p, bool* l) {
  *l = (c == 'L');
  *p = *l ? 'I' : c;
  if (!*l && c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
    throw std::invalid_argument("bad fault letter '" + std::string(1, c) + "'");
}

}  // namespace

std::string FaultSpec::code() const {
  if (qubit >= 0) return "q" + std::to_string(qubit) + ":" + std::string(1, effect_char(p0, l0));
  std::string s(1, effect_char(p0, l0));
  if (p1 != 'I' || l1) {
    s.push_back(effect_char(p1, l1));
  } else if (p0 == 'I' && !l0) {
    throw std::logic_error("FaultSpec::code on trivial fault");
  }
  return s;
}

FaultSpec FaultSpec::from_code(const Circuit& c, int64_t location, const std::string& code) {
  const Op* op = c.find_location(location);
  if (!op) throw std::invalid_argument("unknown location " + std::to_string(location));
  FaultSpec f;
  f.location = location;
  if (!code.empty() && code[0] == 'q') {
    auto colon = code.find(':');
    if (colon == std::string::npos || colon + 2 != code.size())
      throw std::invalid_argument("bad block fault code '" + code + "'");
    f.qubit = std::stoi(code.substr(1, colon - 1));
    decode_effect(code[colon + 1], &f.p0, &f.l0);
    if (std::find(op->qubits.begin(), op->qubits.end(), f.qubit) == op->qubits.end())
      throw std::invalid_argument("fault qubit not targeted by the op");
    return f;
  }
  size_t arity = is_gate_arity2(op->type) ? 2 : 1;
  // code() drops a trailing identity half ("XI" prints as "X"), so a single
  // letter is valid at a two-qubit location and means identity on operand 1.
  bool padded = arity == 2 && code.size() == 1;
  if (code.size() != arity && !padded)
    throw std::invalid_argument("fault code arity mismatch '" + code + "'");
  decode_effect(code[0], &f.p0, &f.l0);
  if (code.size() == 2) decode_effect(code[1], &f.p1, &f.l1);
  return f;
}

std::vector<FaultSpec> enumerate_fault_locations(const Circuit& c, const FaultModel& m) {
  std::vector<FaultSpec> out;
  static const char kPaulis[3] = {'X', 'Y', 'Z'};
  for (const Op& op : c.ops()) {
    if (is_classical_only(op.type)) continue;
    auto push = [&](FaultSpec f) {
      f.location = op.location;
      out.push_back(f);
    };
    if (is_block_op(op.type)) {
      for (int q : op.qubits) {
        if (m.include_pauli)
          for (char p : kPaulis) push(FaultSpec{.p0 = p, .qubit = q});
        if (m.include_loss && m.loss_combos == LossComboSet::full9)
          push(FaultSpec{.l0 = true, .qubit = q});
      }
      continue;
    }
    bool two = is_gate_arity2(op.type);
    bool prep = (op.type == OpType::prep_z || op.type == OpType::prep_x);
    if (!two) {
      if (m.include_pauli)
        for (char p : kPaulis) push(FaultSpec{.p0 = p});
      if (m.include_loss && (m.loss_combos == LossComboSet::full9 || prep))
        push(FaultSpec{.l0 = true});
      continue;
    }
    if (m.include_pauli) {
      if (m.two_qubit_paulis == TwoQubitPauliSet::full15) {
        for (char a : {'I', 'X', 'Y', 'Z'})
          for (char b : {'I', 'X', 'Y', 'Z'}) {
            if (a == 'I' && b == 'I') continue;
            push(FaultSpec{.p0 = a, .p1 = b});
          }
      } else {
        for (char b : kPaulis) push(FaultSpec{.p1 = b});  // IX IY IZ
        for (char a : kPaulis) push(FaultSpec{.p0 = a});  // XI YI ZI
      }
    }
    if (m.include_loss) {
      push(FaultSpec{.l0 = true});               // LI
      push(FaultSpec{.l1 = true});               // IL
      push(FaultSpec{.l0 = true, .l1 = true});   // LL
      if (m.loss_combos == LossComboSet::paper5) {
        push(FaultSpec{.p1 = 'X', .l0 = true});  // LX
        push(FaultSpec{.p0 = 'X', .l1 = true});  // XL
      } else {
        for (char b : kPaulis) push(FaultSpec{.p1 = b, .l0 = true});  // LX LY LZ
        for (char a : kPaulis) push(FaultSpec{.p0 = a, .l1 = true});  // XL YL ZL
      }
    }
  }
  return out;
}

}  // namespace lossft
