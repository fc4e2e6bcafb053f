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

#include "lossft/pauli.hpp"

#include <stdexcept>

namespace lossft {

Pauli Pauli::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Pauli: empty string");
  size_t start = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    start = 1;
  }
  if (s.size() == start) throw std::invalid_argument("Pauli: sign without letters");
  Pauli p(int(s.size() - start));
  for (size_t i = start; i < s.size(); i++) p.set(int(i - start), s[i]);
  if (neg) p.negate();
  return p;
}

Pauli Pauli::single(int n, int q, char c) {
  Pauli p(n);
  p.set(q, c);
  return p;
}

char Pauli::at(int q) const {
  bool xb = x.get(q), zb = z.get(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void Pauli::set(int q, char c) {
  // Keep the exposed sign unchanged: adding/removing a Y adjusts the i-power.
  if (x.get(q) && z.get(q)) phase = (phase + 3) & 3;
  switch (c) {
    case 'I': x.set(q, false); z.set(q, false); break;
    case 'X': x.set(q, true); z.set(q, false); break;
    case 'Z': x.set(q, false); z.set(q, true); break;
    case 'Y':
      x.set(q, true);
      z.set(q, true);
      phase = (phase + 1) & 3;
      break;
    default:
      throw std::invalid_argument("Pauli: unexpected letter '" + std::string(1, c) + "'");
  }
}

int Pauli::sign() const {
  int ny = 0;
  for (size_t i = 0; i < x.words().size(); i++)
    ny += __builtin_popcountll(x.words()[i] & z.words()[i]);
  int e = (int(phase) - ny) & 3;
  if (e == 0) return 1;
  if (e == 2) return -1;
  throw std::logic_error("Pauli: non-Hermitian phase");
}

int Pauli::weight() const {
  int c = 0;
  for (size_t i = 0; i < x.words().size(); i++)
    c += __builtin_popcountll(x.words()[i] | z.words()[i]);
  return c;
}

Pauli Pauli::operator*(const Pauli& o) const {
  if (num_qubits() != o.num_qubits()) throw std::invalid_argument("Pauli: size mismatch");
  Pauli r = *this;
  // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{<z1,x2>} X^{x1+x2} Z^{z1+z2}
  r.phase = uint8_t((phase + o.phase + 2 * (BitVec::dot(z, o.x) ? 1 : 0)) & 3);
  r.x ^= o.x;
  r.z ^= o.z;
  return r;
}

std::string Pauli::to_string() const {
  std::string s;
  s.reserve(size_t(num_qubits()) + 1);
  s.push_back(sign() < 0 ? '-' : '+');
  for (int q = 0; q < num_qubits(); q++) s.push_back(at(q));
  return s;
}

}  // namespace lossft
