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

#ifndef LOSSFT_BITS_HPP
#define LOSSFT_BITS_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lossft {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  /// Parses "0110..."; bit i of the string becomes bit i of the vector.
  static BitVec from_string(const std::string& s);

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  void operator^=(const BitVec& o) {
    for (size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
  }
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  int popcount() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }
  /// Parity of the AND of two vectors (inner product over GF(2)).
  static bool dot(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (size_t i = 0; i < a.w_.size(); i++) acc ^= a.w_[i] & b.w_[i];
    return __builtin_parityll(acc);
  }
  /// Index of the lowest set bit, or -1 if none.
  int lowest_set() const {
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i]) return int(i * 64 + __builtin_ctzll(w_[i]));
    return -1;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < n_; i++)
      if (get(i)) s.push_back(i);
    return s;
  }
  std::string to_string() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; i++)
      if (get(i)) s[i] = '1';
    return s;
  }
  const std::vector<uint64_t>& words() const { return w_; }

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

/// Dense matrix over GF(2); rows are BitVecs of a common width.
class BinMat {
 public:
  BinMat() = default;
  BinMat(int rows, int cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
  /// Rows given as "0101..." strings, all of equal length.
  static BinMat from_strings(std::initializer_list<const char*> rows);
  static BinMat from_strings(const std::vector<std::string>& rows);

  int rows() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  BitVec& row(int i) { return rows_[i]; }
  const BitVec& row(int i) const { return rows_[i]; }
  void append_row(const BitVec& r) {
    if (r.size() != cols_) throw std::invalid_argument("BinMat: row width mismatch");
    rows_.push_back(r);
  }
  bool operator==(const BinMat& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

  /// Syndrome-style product: bit i of the result is <row_i, v>.
  BitVec mul_vec(const BitVec& v) const {
    BitVec out(rows());
    for (int i = 0; i < rows(); i++)
      if (BitVec::dot(rows_[i], v)) out.set(i, true);
    return out;
  }

  int rank() const;
  /// Reduced row echelon form (in place); returns pivot columns in order.
  std::vector<int> rref();
  /// True if v is in the row space.
  bool in_row_space(const BitVec& v) const;
  /// Solves x * M = v for x (row-vector combination), if possible.
  bool solve_combination(const BitVec& v, BitVec* out_combo) const;

 private:
  int cols_ = 0;
  std::vector<BitVec> rows_;
};

}  // namespace lossft

#endif  // LOSSFT_BITS_HPP
