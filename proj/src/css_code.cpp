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

#include "lossft/css_code.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace lossft {

const char* to_string(LogicalTag t) {
  switch (t) {
    case LogicalTag::identity: return "identity";
    case LogicalTag::logical_x: return "logical_x";
    case LogicalTag::logical_y: return "logical_y";
    case LogicalTag::logical_z: return "logical_z";
    case LogicalTag::detectable: return "detectable";
    case LogicalTag::uncorrectable_after_decode: return "uncorrectable_after_decode";
  }
  return "?";
}

uint64_t pack_bits(const BitVec& v) {
  if (v.size() > 64) throw std::invalid_argument("pack_bits: more than 64 bits");
  return v.words().empty() ? 0 : v.words()[0];
}

namespace {

// Basis of the null space {v : m * v = 0}.
std::vector<BitVec> null_space(const BinMat& m) {
  BinMat r = m;
  std::vector<int> pivots = r.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (int f = 0; f < m.cols(); f++) {
    if (is_pivot[f]) continue;
    BitVec v(m.cols());
    v.set(f, true);
    for (size_t i = 0; i < pivots.size(); i++)
      if (r.row(int(i)).get(f)) v.set(pivots[i], true);
    basis.push_back(v);
  }
  return basis;
}

// Iterates supports of a fixed weight in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  int w = int(c.size());
  for (int i = w - 1; i >= 0; i--) {
    if (c[i] < n - (w - i)) {
      c[i]++;
      for (int j = i + 1; j < w; j++) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

BitVec support_vec(int n, const std::vector<int>& supp) {
  BitVec v(n);
  for (int q : supp) v.set(q, true);
  return v;
}

}  // namespace

CssCode CssCode::build(const BinMat& hx, const BinMat& hz) {
  if (hx.cols() != hz.cols() || hx.cols() == 0)
    throw std::invalid_argument("CssCode: check matrices must share a positive width");
  if (hx.cols() > 64) throw std::invalid_argument("CssCode: n > 64 unsupported");
  for (int i = 0; i < hx.rows(); i++)
    for (int j = 0; j < hz.rows(); j++)
      if (BitVec::dot(hx.row(i), hz.row(j)))
        throw std::invalid_argument("CssCode: h_x and h_z rows are not orthogonal");
  CssCode c;
  c.n_ = hx.cols();
  c.hx_ = hx;
  c.hz_ = hz;
  c.k_ = c.n_ - hx.rank() - hz.rank();
  if (c.k_ <= 0) throw std::invalid_argument("CssCode: no logical qubits (k <= 0)");
  c.build_logicals();
  c.build_distance_and_tables();
  return c;
}

void CssCode::build_logicals() {
  // Representatives of ker(h_z)/rowspace(h_x) and ker(h_x)/rowspace(h_z).
  auto quotient_reps = [&](const BinMat& ker_of, const BinMat& mod_out) {
    std::vector<BitVec> reps;
    BinMat work = mod_out;
    for (const BitVec& v : null_space(ker_of)) {
      if (!work.in_row_space(v)) {
        reps.push_back(v);
        work.append_row(v);
      }
    }
    return reps;
  };
  lx_ = quotient_reps(hz_, hx_);
  lz_ = quotient_reps(hx_, hz_);
  if (int(lx_.size()) != k_ || int(lz_.size()) != k_)
    throw std::logic_error("CssCode: logical representative count mismatch");

  // Symplectic Gram-Schmidt so that <lx_i, lz_j> = delta_ij.
  for (int i = 0; i < k_; i++) {
    int j = -1;
    for (int m = i; m < k_; m++)
      if (BitVec::dot(lx_[i], lz_[m])) {
        j = m;
        break;
      }
    if (j < 0) throw std::logic_error("CssCode: degenerate logical pairing");
    std::swap(lz_[i], lz_[j]);
    for (int m = i + 1; m < k_; m++) {
      if (BitVec::dot(lx_[m], lz_[i])) lx_[m] ^= lx_[i];
      if (BitVec::dot(lx_[i], lz_[m])) lz_[m] ^= lz_[i];
    }
  }
}

void CssCode::build_distance_and_tables() {
  // Distance: lightest normalizer element outside the stabilizer, per family.
  BinMat rx = hx_, rz = hz_;
  rx.rref();
  rz.rref();
  d_ = 0;
  for (int w = 1; w <= n_ && d_ == 0; w++) {
    std::vector<int> comb(w);
    for (int i = 0; i < w; i++) comb[i] = i;
    do {
      BitVec v = support_vec(n_, comb);
      bool x_logical = !hz_.mul_vec(v).any() && !rx.in_row_space(v);
      bool z_logical = !hx_.mul_vec(v).any() && !rz.in_row_space(v);
      if (x_logical || z_logical) {
        d_ = w;
        break;
      }
    } while (next_combination(comb, n_));
  }
  if (d_ == 0) throw std::logic_error("CssCode: no logical operator found");

  int t = (d_ - 1) / 2;
  for (int w = 0; w <= t; w++) {
    std::vector<int> comb(w);
    for (int i = 0; i < w; i++) comb[i] = i;
    do {
      BitVec v = support_vec(n_, comb);
      table_x_.emplace(pack_bits(hz_.mul_vec(v)), v);
      table_z_.emplace(pack_bits(hx_.mul_vec(v)), v);
    } while (w > 0 && next_combination(comb, n_));
  }
}

const CssCode& CssCode::steane() {
  static const CssCode code = [] {
    BinMat h = BinMat::from_strings({"0001111", "0110011", "1010101"});
    CssCode c = build(h, h);
    assert(c.n() == 7 && c.k() == 1 && c.distance() == 3);
    return c;
  }();
  return code;
}

Syndrome CssCode::syndrome(const Pauli& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("syndrome: qubit count mismatch");
  return Syndrome{hz_.mul_vec(p.x), hx_.mul_vec(p.z)};
}

Pauli CssCode::decode(const Syndrome& s) const {
  auto ix = table_x_.find(pack_bits(s.z_checks));
  auto iz = table_z_.find(pack_bits(s.x_checks));
  if (ix == table_x_.end() || iz == table_z_.end())
    throw std::invalid_argument("decode: syndrome outside lookup tables");
  Pauli p(n_);
  p.x = ix->second;
  p.z = iz->second;
  // Canonical Hermitian phase: i^{#Y}.
  int ny = 0;
  for (int q = 0; q < n_; q++) ny += (p.x.get(q) && p.z.get(q)) ? 1 : 0;
  p.phase = uint8_t(ny & 3);
  return p;
}

LogicalTag CssCode::logical_effect(const Pauli& residual) const {
  Syndrome s = syndrome(residual);
  if (!table_x_.count(pack_bits(s.z_checks)) || !table_z_.count(pack_bits(s.x_checks)))
    return LogicalTag::detectable;
  Pauli corr = decode(s);
  BitVec px = residual.x;
  px ^= corr.x;
  BitVec pz = residual.z;
  pz ^= corr.z;
  assert(!hz_.mul_vec(px).any() && !hx_.mul_vec(pz).any());
  int hits = 0, hx_bit = 0, hz_bit = 0;
  for (int j = 0; j < k_; j++) {
    int a = BitVec::dot(px, lz_[j]) ? 1 : 0;  // logical X_j component
    int b = BitVec::dot(pz, lx_[j]) ? 1 : 0;  // logical Z_j component
    if (a || b) {
      hits++;
      hx_bit = a;
      hz_bit = b;
    }
  }
  if (hits == 0) return LogicalTag::identity;
  if (hits > 1) return LogicalTag::uncorrectable_after_decode;
  if (hx_bit && hz_bit) return LogicalTag::logical_y;
  return hx_bit ? LogicalTag::logical_x : LogicalTag::logical_z;
}

MeasDecode CssCode::decode_measurement(const BitVec& bits, char basis, int logical_index) const {
  if (bits.size() != n_) throw std::invalid_argument("decode_measurement: bit count mismatch");
  if (basis != 'z' && basis != 'x') throw std::invalid_argument("decode_measurement: basis must be 'z' or 'x'");
  MeasDecode out;
  const BinMat& checks = (basis == 'z') ? hz_ : hx_;
  const auto& table = (basis == 'z') ? table_x_ : table_z_;
  const BitVec& supp = (basis == 'z') ? lz_[logical_index] : lx_[logical_index];
  out.syndrome = checks.mul_vec(bits);
  auto it = table.find(pack_bits(out.syndrome));
  out.in_table = (it != table.end());
  out.correction = out.in_table ? it->second : BitVec(n_);
  out.logical_bit = (BitVec::dot(bits, supp) ^ BitVec::dot(out.correction, supp)) ? 1 : 0;
  return out;
}

CssCode CssCode::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, k = -1;
  std::vector<std::string> hx_rows, hz_rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!header) {
      if (tok != "css") throw std::invalid_argument("code file: expected 'css v1' header");
      std::string ver;
      ls >> ver;
      if (ver != "v1") throw std::invalid_argument("code file: unsupported version '" + ver + "'");
      header = true;
    } else if (tok == "n") {
      ls >> n;
    } else if (tok == "k") {
      ls >> k;
    } else if (tok == "hx" || tok == "hz") {
      std::string row;
      ls >> row;
      (tok == "hx" ? hx_rows : hz_rows).push_back(row);
    } else {
      throw std::invalid_argument("code file: unexpected token '" + tok + "'");
    }
  }
  if (n <= 0 || k <= 0) throw std::invalid_argument("code file: missing n or k");
  for (const auto& r : hx_rows)
    if (int(r.size()) != n) throw std::invalid_argument("code file: hx row width != n");
  for (const auto& r : hz_rows)
    if (int(r.size()) != n) throw std::invalid_argument("code file: hz row width != n");
  CssCode c = build(BinMat::from_strings(hx_rows), BinMat::from_strings(hz_rows));
  if (c.k() != k) throw std::invalid_argument("code file: declared k does not match checks");
  return c;
}

std::string CssCode::serialize() const {
  std::ostringstream out;
  out << "css v1\n" << "n " << n_ << "\n" << "k " << k_ << "\n";
  for (int i = 0; i < hx_.rows(); i++) out << "hx " << hx_.row(i).to_string() << "\n";
  for (int i = 0; i < hz_.rows(); i++) out << "hz " << hz_.row(i).to_string() << "\n";
  return out.str();
}

}  // namespace lossft
