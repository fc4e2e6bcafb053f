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

#include "lossft/bits.hpp"

namespace lossft {

BitVec BitVec::from_string(const std::string& s) {
  BitVec v(int(s.size()));
  for (size_t i = 0; i < s.size(); i++) {
    if (s[i] == '1')
      v.set(int(i), true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVec: expected 0/1, got '" + std::string(1, s[i]) + "'");
  }
  return v;
}

BinMat BinMat::from_strings(std::initializer_list<const char*> rows) {
  std::vector<std::string> v(rows.begin(), rows.end());
  return from_strings(v);
}

BinMat BinMat::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) return BinMat();
  BinMat m(0, int(rows[0].size()));
  for (const auto& r : rows) m.append_row(BitVec::from_string(r));
  return m;
}

std::vector<int> BinMat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows(); c++) {
    int p = -1;
    for (int i = r; i < rows(); i++)
      if (rows_[i].get(c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows_[p], rows_[r]);
    for (int i = 0; i < rows(); i++)
      if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
    pivots.push_back(c);
    r++;
  }
  return pivots;
}

int BinMat::rank() const {
  BinMat copy = *this;
  return int(copy.rref().size());
}

bool BinMat::in_row_space(const BitVec& v) const {
  BinMat copy = *this;
  copy.rref();
  BitVec acc = v;
  for (int i = 0; i < copy.rows(); i++) {
    int lead = copy.rows_[i].lowest_set();
    if (lead >= 0 && acc.get(lead)) acc ^= copy.rows_[i];
  }
  return !acc.any();
}

bool BinMat::solve_combination(const BitVec& v, BitVec* out_combo) const {
  // Augment each row with an identity tag, reduce, then peel v.
  int n = rows();
  std::vector<BitVec> work(n, BitVec(cols_ + n));
  for (int i = 0; i < n; i++) {
    for (int c = 0; c < cols_; c++)
      if (rows_[i].get(c)) work[i].set(c, true);
    work[i].set(cols_ + i, true);
  }
  BitVec acc(cols_ + n);
  for (int c = 0; c < cols_; c++)
    if (v.get(c)) acc.set(c, true);
  int r = 0;
  for (int c = 0; c < cols_ && r < n; c++) {
    int p = -1;
    for (int i = r; i < n; i++)
      if (work[i].get(c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(work[p], work[r]);
    for (int i = 0; i < n; i++)
      if (i != r && work[i].get(c)) work[i] ^= work[r];
    if (acc.get(c)) acc ^= work[r];
    r++;
  }
  for (int c = 0; c < cols_; c++)
    if (acc.get(c)) return false;
  if (out_combo) {
    *out_combo = BitVec(n);
    for (int i = 0; i < n; i++)
      if (acc.get(cols_ + i)) out_combo->set(i, true);
  }
  return true;
}

}  // namespace lossft
