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

#include "lossft/tableau.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace lossft {

namespace {

bool parity_and(const uint64_t* a, const uint64_t* b, int wd) {
  uint64_t acc = 0;
  for (int w = 0; w < wd; ++w) acc ^= a[w] & b[w];
  return std::popcount(acc) & 1;
}

}  // namespace

Tableau Tableau::zeros(int n) {
  Tableau t;
  for (int q = 0; q < n; ++q) t.add_qubit(q);
  return t;
}

void Tableau::add_qubit(int qubit_id) {
  if (qubit_id < 0) throw std::invalid_argument("tableau: negative qubit id");
  if (col(qubit_id) >= 0) throw std::logic_error("tableau: qubit already present");
  int c = n_;
  int need_words = (c >> 6) + 1;
  if (need_words > wd_) {
    // Re-stride every row to the wider word count.
    auto widen = [&](std::vector<uint64_t>& v) {
      std::vector<uint64_t> out(size_t(n_) * need_words, 0);
      for (int r = 0; r < n_; ++r)
        std::memcpy(&out[size_t(r) * need_words], &v[size_t(r) * wd_], size_t(wd_) * 8);
      v = std::move(out);
    };
    widen(sx_);
    widen(sz_);
    widen(dx_);
    widen(dz_);
    wd_ = need_words;
  }
  // Append one stabilizer row (+Z on the new column) and one destabilizer
  // row (+X); existing rows gain an implicit zero column.
  auto append_row = [&](std::vector<uint64_t>& v) { v.resize(v.size() + wd_, 0); };
  append_row(sx_);
  append_row(sz_);
  append_row(dx_);
  append_row(dz_);
  sp_.push_back(0);
  dp_.push_back(0);
  n_ += 1;
  put(sz(n_ - 1), c, true);
  put(dx(n_ - 1), c, true);
  ids_.push_back(qubit_id);
  if (qubit_id >= int(col_.size())) col_.resize(qubit_id + 1, -1);
  col_[qubit_id] = c;
}

uint8_t Tableau::mult_phase(uint8_t pd, const uint64_t* xd, const uint64_t* zd, uint8_t ps,
                            const uint64_t* xs, const uint64_t* zs, int wd) {
  (void)xd;
  (void)zs;
  uint8_t s = uint8_t((pd + ps) & 3);
  if (parity_and(zd, xs, wd)) s = uint8_t((s + 2) & 3);
  return s;
}

void Tableau::row_mult_stab(int dst, int src) {
  sp_[dst] = mult_phase(sp_[dst], sx(dst), sz(dst), sp_[src], sx(src), sz(src), wd_);
  for (int w = 0; w < wd_; ++w) {
    sx(dst)[w] ^= sx(src)[w];
    sz(dst)[w] ^= sz(src)[w];
  }
}

void Tableau::row_mult_destab(int dst, int src) {
  dp_[dst] = mult_phase(dp_[dst], dx(dst), dz(dst), sp_[src], sx(src), sz(src), wd_);
  for (int w = 0; w < wd_; ++w) {
    dx(dst)[w] ^= sx(src)[w];
    dz(dst)[w] ^= sz(src)[w];
  }
}

void Tableau::h(int a) {
  for (int r = 0; r < n_; ++r) {
    bool x = get(sx(r), a), z = get(sz(r), a);
    if (x && z) sp_[r] = uint8_t((sp_[r] + 2) & 3);
    put(sx(r), a, z);
    put(sz(r), a, x);
    x = get(dx(r), a);
    z = get(dz(r), a);
    if (x && z) dp_[r] = uint8_t((dp_[r] + 2) & 3);
    put(dx(r), a, z);
    put(dz(r), a, x);
  }
}

void Tableau::cnot(int control, int target) {
  // In the X^x Z^z convention the conjugation is phase-free:
  // x_t ^= x_c and z_c ^= z_t.
  for (int r = 0; r < n_; ++r) {
    put(sx(r), target, get(sx(r), target) ^ get(sx(r), control));
    put(sz(r), control, get(sz(r), control) ^ get(sz(r), target));
    put(dx(r), target, get(dx(r), target) ^ get(dx(r), control));
    put(dz(r), control, get(dz(r), control) ^ get(dz(r), target));
  }
}

void Tableau::cz(int a, int b) {
  for (int r = 0; r < n_; ++r) {
    bool xa = get(sx(r), a), xb = get(sx(r), b);
    if (xa && xb) sp_[r] = uint8_t((sp_[r] + 2) & 3);
    put(sz(r), a, get(sz(r), a) ^ xb);
    put(sz(r), b, get(sz(r), b) ^ xa);
    xa = get(dx(r), a);
    xb = get(dx(r), b);
    if (xa && xb) dp_[r] = uint8_t((dp_[r] + 2) & 3);
    put(dz(r), a, get(dz(r), a) ^ xb);
    put(dz(r), b, get(dz(r), b) ^ xa);
  }
}

void Tableau::apply_pauli(char p, int a) {
  bool px = (p == 'X' || p == 'Y');
  bool pz = (p == 'Z' || p == 'Y');
  if (!px && !pz) {
    if (p == 'I') return;
    throw std::invalid_argument("tableau: bad pauli letter");
  }
  for (int r = 0; r < n_; ++r) {
    if ((px && get(sz(r), a)) ^ (pz && get(sx(r), a))) sp_[r] = uint8_t((sp_[r] + 2) & 3);
    if ((px && get(dz(r), a)) ^ (pz && get(dx(r), a))) dp_[r] = uint8_t((dp_[r] + 2) & 3);
  }
}

void Tableau::apply_pauli(const BitVec& x, const BitVec& z) {
  if (x.size() != n_ || z.size() != n_)
    throw std::invalid_argument("tableau: pauli size mismatch");
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  for (int c = 0; c < n_; ++c) {
    if (x.get(c)) px[c >> 6] |= uint64_t{1} << (c & 63);
    if (z.get(c)) pz[c >> 6] |= uint64_t{1} << (c & 63);
  }
  for (int r = 0; r < n_; ++r) {
    if (parity_and(sx(r), pz.data(), wd_) ^ parity_and(sz(r), px.data(), wd_))
      sp_[r] = uint8_t((sp_[r] + 2) & 3);
    if (parity_and(dx(r), pz.data(), wd_) ^ parity_and(dz(r), px.data(), wd_))
      dp_[r] = uint8_t((dp_[r] + 2) & 3);
  }
}

bool Tableau::anticommutes_stab(int r, const uint64_t* px, const uint64_t* pz) const {
  return parity_and(sx(r), pz, wd_) ^ parity_and(sz(r), px, wd_);
}

bool Tableau::anticommutes_destab(int r, const uint64_t* px, const uint64_t* pz) const {
  return parity_and(dx(r), pz, wd_) ^ parity_and(dz(r), px, wd_);
}

int Tableau::find_anticommuting_masks(const uint64_t* px, const uint64_t* pz) const {
  for (int r = 0; r < n_; ++r)
    if (anticommutes_stab(r, px, pz)) return r;
  return -1;
}

void Tableau::project_masks(const uint64_t* px, const uint64_t* pz, uint8_t phase,
                            bool outcome, int pivot) {
  if (pivot < 0 || pivot >= n_ || !anticommutes_stab(pivot, px, pz))
    throw std::logic_error("tableau: bad projection pivot");
  for (int r = 0; r < n_; ++r) {
    if (r != pivot && anticommutes_stab(r, px, pz)) row_mult_stab(r, pivot);
    if (anticommutes_destab(r, px, pz)) row_mult_destab(r, pivot);
  }
  // Old pivot stabilizer becomes the destabilizer of the measured operator.
  std::memcpy(dx(pivot), sx(pivot), size_t(wd_) * 8);
  std::memcpy(dz(pivot), sz(pivot), size_t(wd_) * 8);
  dp_[pivot] = sp_[pivot];
  std::memcpy(sx(pivot), px, size_t(wd_) * 8);
  std::memcpy(sz(pivot), pz, size_t(wd_) * 8);
  sp_[pivot] = uint8_t((phase + (outcome ? 2 : 0)) & 3);
}

bool Tableau::deterministic_masks(const uint64_t* px, const uint64_t* pz,
                                  uint8_t phase) const {
  std::vector<uint64_t> ax(wd_, 0), az(wd_, 0);
  uint8_t ap = 0;
  for (int i = 0; i < n_; ++i) {
    if (!anticommutes_destab(i, px, pz)) continue;
    ap = mult_phase(ap, ax.data(), az.data(), sp_[i], sx(i), sz(i), wd_);
    for (int w = 0; w < wd_; ++w) {
      ax[w] ^= sx(i)[w];
      az[w] ^= sz(i)[w];
    }
  }
  for (int w = 0; w < wd_; ++w)
    if (ax[w] != px[w] || az[w] != pz[w])
      throw std::logic_error("tableau: measurement is not deterministic");
  uint8_t diff = uint8_t((ap - phase) & 3);
  if (diff & 1) throw std::logic_error("tableau: non-hermitian measurement value");
  return diff == 2;
}

int Tableau::find_z_anticommuting(int a) const {
  for (int r = 0; r < n_; ++r)
    if (get(sx(r), a)) return r;
  return -1;
}

int Tableau::find_x_anticommuting(int a) const {
  for (int r = 0; r < n_; ++r)
    if (get(sz(r), a)) return r;
  return -1;
}

bool Tableau::deterministic_z(int a) const {
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  pz[a >> 6] |= uint64_t{1} << (a & 63);
  return deterministic_masks(px.data(), pz.data(), 0);
}

bool Tableau::deterministic_x(int a) const {
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  px[a >> 6] |= uint64_t{1} << (a & 63);
  return deterministic_masks(px.data(), pz.data(), 0);
}

void Tableau::project_z(int a, bool outcome, int pivot) {
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  pz[a >> 6] |= uint64_t{1} << (a & 63);
  project_masks(px.data(), pz.data(), 0, outcome, pivot);
}

void Tableau::project_x(int a, bool outcome, int pivot) {
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  px[a >> 6] |= uint64_t{1} << (a & 63);
  project_masks(px.data(), pz.data(), 0, outcome, pivot);
}

int Tableau::find_anticommuting(const Pauli& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("tableau: pauli size mismatch");
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  for (int c = 0; c < n_; ++c) {
    if (p.x.get(c)) px[c >> 6] |= uint64_t{1} << (c & 63);
    if (p.z.get(c)) pz[c >> 6] |= uint64_t{1} << (c & 63);
  }
  return find_anticommuting_masks(px.data(), pz.data());
}

bool Tableau::deterministic_value(const Pauli& p) const {
  p.sign();  // validates hermiticity
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  for (int c = 0; c < n_; ++c) {
    if (p.x.get(c)) px[c >> 6] |= uint64_t{1} << (c & 63);
    if (p.z.get(c)) pz[c >> 6] |= uint64_t{1} << (c & 63);
  }
  return deterministic_masks(px.data(), pz.data(), p.phase);
}

void Tableau::project(const Pauli& p, bool outcome, int pivot) {
  p.sign();
  std::vector<uint64_t> px(wd_, 0), pz(wd_, 0);
  for (int c = 0; c < n_; ++c) {
    if (p.x.get(c)) px[c >> 6] |= uint64_t{1} << (c & 63);
    if (p.z.get(c)) pz[c >> 6] |= uint64_t{1} << (c & 63);
  }
  project_masks(px.data(), pz.data(), p.phase, outcome, pivot);
}

void Tableau::reset_generic(int a, bool x_basis) {
  int pivot = x_basis ? find_x_anticommuting(a) : find_z_anticommuting(a);
  if (pivot >= 0) {
    if (x_basis)
      project_x(a, false, pivot);
    else
      project_z(a, false, pivot);
    return;
  }
  bool v = x_basis ? deterministic_x(a) : deterministic_z(a);
  if (v) apply_pauli(x_basis ? 'Z' : 'X', a);
}

void Tableau::reset_z(int a) { reset_generic(a, false); }
void Tableau::reset_x(int a) { reset_generic(a, true); }

void Tableau::drop_qubit(int a) {
  if (a < 0 || a >= n_) throw std::invalid_argument("tableau: bad column");
  // Determine in which single-qubit basis this qubit is definite.
  bool any_x = false, any_z = false, all_y = true;
  for (int r = 0; r < n_; ++r) {
    bool x = get(sx(r), a), z = get(sz(r), a);
    any_x |= x;
    any_z |= z;
    if (x != z) all_y = false;
  }
  char basis;
  if (!any_x)
    basis = 'Z';
  else if (!any_z)
    basis = 'X';
  else if (all_y)
    basis = 'Y';
  else
    throw std::logic_error("tableau: dropping an entangled qubit");
  auto letter_at = [&](const uint64_t* px, const uint64_t* pz) -> char {
    bool x = get(px, a), z = get(pz, a);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  };
  int pivot = -1;
  for (int r = 0; r < n_; ++r)
    if (letter_at(sx(r), sz(r)) != 'I') {
      pivot = r;
      break;
    }
  if (pivot < 0) throw std::logic_error("tableau: no stabilizer support on dropped qubit");
  for (int r = 0; r < n_; ++r)
    if (r != pivot && letter_at(sx(r), sz(r)) != 'I') row_mult_stab(r, pivot);
  // Reduce the pivot to exactly +/- P_a. The residue pivot * P_a has no
  // support on column a, hence lies in the span of the other rows; solve for
  // the combination and multiply it in (phases are tracked by row_mult_stab).
  {
    BitVec target(2 * n_);
    for (int c = 0; c < n_; ++c) {
      target.set(c, get(sx(pivot), c));
      target.set(n_ + c, get(sz(pivot), c));
    }
    if (basis == 'Z' || basis == 'Y') target.flip(n_ + a);
    if (basis == 'X' || basis == 'Y') target.flip(a);
    BinMat rows(0, 2 * n_);
    std::vector<int> row_ids;
    for (int r = 0; r < n_; ++r) {
      if (r == pivot) continue;
      BitVec v(2 * n_);
      for (int c = 0; c < n_; ++c) {
        if (get(sx(r), c)) v.set(c, true);
        if (get(sz(r), c)) v.set(n_ + c, true);
      }
      rows.append_row(v);
      row_ids.push_back(r);
    }
    BitVec combo(int(row_ids.size()));
    if (!rows.solve_combination(target, &combo))
      throw std::logic_error("tableau: dropped qubit not in definite state");
    for (int i = 0; i < int(row_ids.size()); ++i)
      if (combo.get(i)) row_mult_stab(pivot, row_ids[i]);
  }
  // Move the pivot pair to the last slot, delete the column, pop the pair.
  // Destabilizers are rebuilt from scratch by the final canonicalize() call;
  // patching them in place is unsound because their parts outside column a
  // carry correlations that the single-column cleanup cannot preserve.
  if (pivot != n_ - 1) {
    for (int w = 0; w < wd_; ++w) {
      std::swap(sx(pivot)[w], sx(n_ - 1)[w]);
      std::swap(sz(pivot)[w], sz(n_ - 1)[w]);
      std::swap(dx(pivot)[w], dx(n_ - 1)[w]);
      std::swap(dz(pivot)[w], dz(n_ - 1)[w]);
    }
    std::swap(sp_[pivot], sp_[n_ - 1]);
    std::swap(dp_[pivot], dp_[n_ - 1]);
  }
  int new_n = n_ - 1;
  int new_wd = std::max(1, (new_n + 63) >> 6);
  std::vector<uint64_t> nsx(size_t(new_n) * new_wd, 0), nsz(nsx), ndx(nsx), ndz(nsx);
  auto shrink_row = [&](const uint64_t* src, uint64_t* dst) {
    int out = 0;
    for (int in = 0; in < n_; ++in) {
      if (in == a) continue;
      if ((src[in >> 6] >> (in & 63)) & 1) dst[out >> 6] |= uint64_t{1} << (out & 63);
      ++out;
    }
  };
  for (int r = 0; r < new_n; ++r) {
    shrink_row(sx(r), &nsx[size_t(r) * new_wd]);
    shrink_row(sz(r), &nsz[size_t(r) * new_wd]);
    shrink_row(dx(r), &ndx[size_t(r) * new_wd]);
    shrink_row(dz(r), &ndz[size_t(r) * new_wd]);
  }
  sx_ = std::move(nsx);
  sz_ = std::move(nsz);
  dx_ = std::move(ndx);
  dz_ = std::move(ndz);
  sp_.pop_back();
  dp_.pop_back();
  col_[ids_[a]] = -1;
  ids_.erase(ids_.begin() + a);
  n_ = new_n;
  wd_ = new_wd;
  for (int i = a; i < int(ids_.size()); ++i) col_[ids_[i]] = i;
  canonicalize();
}

void Tableau::canonicalize() {
  struct Piv {
    int row;
    int col;
    bool x_kind;
  };
  std::vector<Piv> pivots;
  int r = 0;
  for (int c = 0; c < n_ && r < n_; ++c) {
    int hit = -1;
    for (int i = r; i < n_; ++i)
      if (get(sx(i), c)) {
        hit = i;
        break;
      }
    if (hit < 0) continue;
    if (hit != r) {
      for (int w = 0; w < wd_; ++w) {
        std::swap(sx(hit)[w], sx(r)[w]);
        std::swap(sz(hit)[w], sz(r)[w]);
      }
      std::swap(sp_[hit], sp_[r]);
    }
    for (int i = 0; i < n_; ++i)
      if (i != r && get(sx(i), c)) row_mult_stab(i, r);
    pivots.push_back({r, c, true});
    ++r;
  }
  for (int c = 0; c < n_ && r < n_; ++c) {
    int hit = -1;
    for (int i = r; i < n_; ++i)
      if (get(sz(i), c)) {
        hit = i;
        break;
      }
    if (hit < 0) continue;
    if (hit != r) {
      for (int w = 0; w < wd_; ++w) {
        std::swap(sx(hit)[w], sx(r)[w]);
        std::swap(sz(hit)[w], sz(r)[w]);
      }
      std::swap(sp_[hit], sp_[r]);
    }
    for (int i = 0; i < n_; ++i)
      if (i != r && get(sz(i), c)) row_mult_stab(i, r);
    pivots.push_back({r, c, false});
    ++r;
  }
  if (r != n_) throw std::logic_error("tableau: rank deficiency in canonicalize");
  // Canonical destabilizers: Z at x-pivot columns, X at z-pivot columns.
  std::fill(dx_.begin(), dx_.end(), 0);
  std::fill(dz_.begin(), dz_.end(), 0);
  std::fill(dp_.begin(), dp_.end(), 0);
  std::vector<int> x_pair_at(n_, -1), z_pair_at(n_, -1);
  for (const Piv& p : pivots) {
    if (p.x_kind) {
      put(dz(p.row), p.col, true);
      x_pair_at[p.col] = p.row;
    } else {
      put(dx(p.row), p.col, true);
      z_pair_at[p.col] = p.row;
    }
  }
  // When a column hosts both pivot kinds the two single-qubit destabilizers
  // anticommute; restore mutual commutation by folding the z-pivot stabilizer
  // row into the x-pivot destabilizer.
  for (int c = 0; c < n_; ++c) {
    if (x_pair_at[c] >= 0 && z_pair_at[c] >= 0) {
      int di = x_pair_at[c], src = z_pair_at[c];
      for (int w = 0; w < wd_; ++w) {
        dx(di)[w] ^= sx(src)[w];
        dz(di)[w] ^= sz(src)[w];
      }
    }
  }
}

std::string Tableau::key_bytes() const {
  std::string out;
  out.reserve(size_t(n_) * (wd_ * 16 + 5) + 8);
  auto push32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
  };
  push32(uint32_t(n_));
  for (int c = 0; c < n_; ++c) push32(uint32_t(ids_[c]));
  for (int rr = 0; rr < n_; ++rr) {
    for (int w = 0; w < wd_; ++w) {
      uint64_t vx = sx(rr)[w], vz = sz(rr)[w];
      for (int i = 0; i < 8; ++i) out.push_back(char((vx >> (8 * i)) & 0xff));
      for (int i = 0; i < 8; ++i) out.push_back(char((vz >> (8 * i)) & 0xff));
    }
    out.push_back(char(sp_[rr]));
  }
  return out;
}

Pauli Tableau::stabilizer_row(int i) const {
  Pauli p(n_);
  for (int c = 0; c < n_; ++c) {
    if (get(sx(i), c)) p.x.set(c, true);
    if (get(sz(i), c)) p.z.set(c, true);
  }
  p.phase = sp_[i];
  return p;
}

Pauli Tableau::destabilizer_row(int i) const {
  Pauli p(n_);
  for (int c = 0; c < n_; ++c) {
    if (get(dx(i), c)) p.x.set(c, true);
    if (get(dz(i), c)) p.z.set(c, true);
  }
  p.phase = dp_[i];
  return p;
}

void Tableau::check_invariants() const {
  auto anti = [&](const Pauli& a, const Pauli& b) { return !a.commutes_with(b); };
  std::vector<Pauli> s, d;
  for (int i = 0; i < n_; ++i) {
    s.push_back(stabilizer_row(i));
    d.push_back(destabilizer_row(i));
    s.back().sign();  // throws if non-hermitian
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (anti(s[i], s[j])) throw std::logic_error("tableau: stabilizers anticommute");
      if (anti(d[i], d[j])) throw std::logic_error("tableau: destabilizers anticommute");
      bool want = (i == j);
      if (anti(d[i], s[j]) != want)
        throw std::logic_error("tableau: destabilizer pairing broken");
    }
}

std::string Tableau::to_string() const {
  std::ostringstream os;
  os << "tableau n=" << n_ << " ids=[";
  for (int c = 0; c < n_; ++c) os << (c ? "," : "") << ids_[c];
  os << "]\n";
  for (int i = 0; i < n_; ++i)
    os << "  stab " << stabilizer_row(i).to_string() << "\n";
  return os.str();
}

}  // namespace lossft
