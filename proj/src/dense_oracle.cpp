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

#include "lossft/dense_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lossft {

DenseMatrix DenseMatrix::zero(int dims) {
  DenseMatrix d;
  d.dims = dims;
  d.log2_den = 0;
  d.m.assign(size_t(dims) * dims, Complex64{});
  return d;
}

void DenseMatrix::reduce() {
  bool all_zero = true;
  for (const auto& e : m)
    if (e.re != 0 || e.im != 0) all_zero = false;
  if (all_zero) {
    log2_den = 0;
    return;
  }
  while (log2_den > 0) {
    bool all_even = true;
    for (const auto& e : m)
      if ((e.re & 1) || (e.im & 1)) {
        all_even = false;
        break;
      }
    if (!all_even) break;
    for (auto& e : m) {
      e.re >>= 1;
      e.im >>= 1;
    }
    --log2_den;
  }
}

bool DenseMatrix::operator==(const DenseMatrix& o) const {
  DenseMatrix a = *this, b = o;
  a.reduce();
  b.reduce();
  return a.dims == b.dims && a.log2_den == b.log2_den && a.m == b.m;
}

void DenseMatrix::accumulate(const DenseMatrix& rho, const Dyadic& w) {
  if (dims != rho.dims) throw std::invalid_argument("density matrix dim mismatch");
  Dyadic wn = w;
  wn.normalize();
  int target = std::max(log2_den, rho.log2_den + wn.log2_den);
  int s_self = target - log2_den;
  int s_rho = target - (rho.log2_den + wn.log2_den);
  if (s_self >= 63 || s_rho >= 63) throw std::overflow_error("density accumulate overflow");
  for (size_t i = 0; i < m.size(); ++i) {
    __int128 re = (__int128(m[i].re) << s_self) +
                  ((__int128(rho.m[i].re) * __int128(wn.num)) << s_rho);
    __int128 im = (__int128(m[i].im) << s_self) +
                  ((__int128(rho.m[i].im) * __int128(wn.num)) << s_rho);
    if (re > INT64_MAX || re < INT64_MIN || im > INT64_MAX || im < INT64_MIN)
      throw std::overflow_error("density accumulate overflow");
    m[i].re = int64_t(re);
    m[i].im = int64_t(im);
  }
  log2_den = target;
}

std::string DenseMatrix::to_string() const {
  std::ostringstream os;
  os << "rho dims=" << dims << " den=2^" << log2_den << "\n";
  for (int r = 0; r < dims; ++r) {
    os << "  ";
    for (int c = 0; c < dims; ++c) {
      const Complex64& e = m[size_t(r) * dims + c];
      os << e.re;
      if (e.im) os << (e.im > 0 ? "+" : "") << e.im << "i";
      os << (c + 1 < dims ? " " : "");
    }
    os << "\n";
  }
  return os.str();
}

namespace {

uint64_t isqnorm(const std::vector<Complex64>& amp) {
  uint64_t s = 0;
  for (const auto& a : amp) s += uint64_t(a.re * a.re) + uint64_t(a.im * a.im);
  return s;
}

void reduce_even(std::vector<Complex64>& amp, int& exp) {
  for (;;) {
    bool all_even = true, all_zero = true;
    for (const auto& a : amp) {
      if ((a.re & 1) || (a.im & 1)) {
        all_even = false;
        break;
      }
      if (a.re || a.im) all_zero = false;
    }
    if (!all_even || all_zero || exp < 2) return;
    for (auto& a : amp) {
      a.re >>= 1;
      a.im >>= 1;
    }
    exp -= 2;
  }
}

void amp_h(std::vector<Complex64>& amp, int& exp, int slot) {
  uint64_t m = uint64_t{1} << slot;
  for (uint64_t i = 0; i < amp.size(); ++i) {
    if (i & m) continue;
    Complex64 a = amp[i], b = amp[i | m];
    amp[i] = {a.re + b.re, a.im + b.im};
    amp[i | m] = {a.re - b.re, a.im - b.im};
  }
  ++exp;
  reduce_even(amp, exp);
}

void amp_pauli(std::vector<Complex64>& amp, int slot, char p) {
  uint64_t m = uint64_t{1} << slot;
  switch (p) {
    case 'I':
      return;
    case 'X':
      for (uint64_t i = 0; i < amp.size(); ++i)
        if (!(i & m)) std::swap(amp[i], amp[i | m]);
      return;
    case 'Z':
      for (uint64_t i = 0; i < amp.size(); ++i)
        if (i & m) amp[i] = {-amp[i].re, -amp[i].im};
      return;
    case 'Y':
      // Y|0> = i|1>, Y|1> = -i|0>
      for (uint64_t i = 0; i < amp.size(); ++i) {
        if (i & m) continue;
        Complex64 lo = amp[i], hi = amp[i | m];
        amp[i | m] = {-lo.im, lo.re};
        amp[i] = {hi.im, -hi.re};
      }
      return;
    default:
      throw std::invalid_argument("oracle: bad pauli letter");
  }
}

void amp_cnot(std::vector<Complex64>& amp, int control, int target) {
  uint64_t mc = uint64_t{1} << control, mt = uint64_t{1} << target;
  for (uint64_t i = 0; i < amp.size(); ++i)
    if ((i & mc) && !(i & mt)) std::swap(amp[i], amp[i | mt]);
}

void amp_cz(std::vector<Complex64>& amp, int a, int b) {
  uint64_t ma = uint64_t{1} << a, mb = uint64_t{1} << b;
  for (uint64_t i = 0; i < amp.size(); ++i)
    if ((i & ma) && (i & mb)) amp[i] = {-amp[i].re, -amp[i].im};
}

struct Compiled {
  const Circuit* circ = nullptr;
  ClassicalLayout layout;
  struct COp {
    int out_slot = -1;
    std::vector<int> arg_slots;
    std::vector<std::vector<int>> round_slots;
  };
  std::vector<COp> cops;
  std::vector<std::vector<FaultSpec>> op_faults;
  std::vector<int> block_end_at;
  std::vector<std::vector<int>> block_bits;
  std::vector<std::vector<int>> block_qubits;
  std::vector<std::vector<int>> completions_at;  // op idx -> qubits
};

Compiled compile(const Circuit& c, const std::vector<FaultSpec>& faults,
                 const OracleOptions& opt) {
  Compiled cc;
  cc.circ = &c;
  cc.layout = ClassicalLayout::of(c);
  const auto& ops = c.ops();
  cc.cops.resize(ops.size());
  std::unordered_map<int64_t, int> loc_idx;
  for (int i = 0; i < int(ops.size()); ++i) {
    loc_idx.emplace(ops[i].location, i);
    if (!ops[i].out.empty()) cc.cops[i].out_slot = cc.layout.slot(ops[i].out);
    for (const auto& a : ops[i].args) cc.cops[i].arg_slots.push_back(cc.layout.slot(a));
    for (const auto& r : ops[i].rounds) {
      std::vector<int> rs;
      for (const auto& a : r) rs.push_back(cc.layout.slot(a));
      cc.cops[i].round_slots.push_back(std::move(rs));
    }
  }
  cc.op_faults.resize(ops.size());
  for (const FaultSpec& f : faults) {
    auto it = loc_idx.find(f.location);
    if (it == loc_idx.end())
      throw std::invalid_argument("fault at unknown location " + std::to_string(f.location));
    cc.op_faults[it->second].push_back(f);
  }
  cc.block_end_at.assign(ops.size(), -1);
  for (int b = 0; b < int(c.blocks().size()); ++b) {
    cc.block_end_at[c.blocks()[b].end] = b;
    std::vector<int> slots;
    for (const auto& name : c.blocks()[b].bits) slots.push_back(cc.layout.slot(name));
    cc.block_bits.push_back(std::move(slots));
    cc.block_qubits.push_back(c.block_qubits(b));
  }
  cc.completions_at.assign(ops.size(), {});
  for (auto [idx, q] : opt.completions) {
    if (idx < 0 || idx >= int(ops.size()))
      throw std::invalid_argument("completion at bad op index");
    cc.completions_at[idx].push_back(q);
  }
  return cc;
}

struct Ctx {
  const Compiled* cc;
  const OracleOptions* opt;
  const CodeRegistry* codes;
};

using Frontier = std::vector<DenseBranch>;

std::vector<int> all_of(const char* candidates) {
  std::vector<int> v(std::strlen(candidates));
  for (int i = 0; i < int(v.size()); ++i) v[i] = i;
  return v;
}

void fresh_slot(const Ctx& ctx, DenseBranch& b, int q) {
  if (b.num_slots >= ctx.opt->max_slots)
    throw std::invalid_argument("oracle: slot budget exceeded");
  size_t old = b.amp.size();
  b.amp.resize(old * 2, Complex64{});
  b.slot_of[q] = b.num_slots;
  b.num_slots += 1;
  b.dirty[q] = 0;
}

void record_outcome(DenseBranch& b, int slot, bool bit, Certainty cert) {
  b.classical[slot] = bit ? 1 : 0;
  b.record.push_back({slot, uint8_t(bit ? 1 : 0), cert});
}

/// Z measurement machinery on one slot: returns -1/0/1 for random/det-0/det-1.
int z_determinism(const DenseBranch& b, int slot) {
  uint64_t m = uint64_t{1} << slot;
  uint64_t s0 = 0, s1 = 0;
  for (uint64_t i = 0; i < b.amp.size(); ++i) {
    uint64_t v = uint64_t(b.amp[i].re * b.amp[i].re) + uint64_t(b.amp[i].im * b.amp[i].im);
    if (i & m)
      s1 += v;
    else
      s0 += v;
  }
  if (s1 == 0) return 0;
  if (s0 == 0) return 1;
  if (s0 != s1) throw std::logic_error("oracle: non-fair measurement on a stabilizer state");
  return -1;
}

void project_z_slot(DenseBranch& b, int slot, bool bit) {
  uint64_t m = uint64_t{1} << slot;
  for (uint64_t i = 0; i < b.amp.size(); ++i)
    if (((i & m) != 0) != bit) b.amp[i] = {};
  b.sqrt2_exp -= 1;  // renormalize by sqrt(2) for the fair outcome
  reduce_even(b.amp, b.sqrt2_exp);
}

void lose_qubit(const Ctx& ctx, DenseBranch b, int q, Frontier& out) {
  (void)ctx;
  if (b.lost[q]) {
    out.push_back(std::move(b));
    return;
  }
  b.lost[q] = 1;
  b.dirty[q] = 1;
  int det = z_determinism(b, b.slot_of[q]);
  if (det >= 0) {
    out.push_back(std::move(b));
    return;
  }
  for (int i : all_of("st")) {
    DenseBranch nb = b;
    nb.path.push_back("st"[i]);
    project_z_slot(nb, nb.slot_of[q], i == 1);
    nb.weight.halve();
    out.push_back(std::move(nb));
  }
}

void apply_fault(const Ctx& ctx, DenseBranch b, const Op& op, const FaultSpec& f,
                 Frontier& out) {
  int q0, q1 = -1;
  if (is_block_op(op.type)) {
    q0 = f.qubit;
  } else {
    q0 = op.qubits.at(0);
    if (op.qubits.size() > 1) q1 = op.qubits[1];
  }
  auto pauli_on = [&](int q, char p) {
    if (p == 'I' || b.lost[q]) return;
    b.dirty[q] = 1;
    amp_pauli(b.amp, b.slot_of[q], p);
  };
  pauli_on(q0, f.p0);
  if (q1 >= 0) pauli_on(q1, f.p1);
  if (f.l0 && f.l1 && q1 >= 0) {
    Frontier mid;
    lose_qubit(ctx, std::move(b), q0, mid);
    for (auto& m : mid) lose_qubit(ctx, std::move(m), q1, out);
    return;
  }
  if (f.l0) {
    lose_qubit(ctx, std::move(b), q0, out);
    return;
  }
  if (f.l1 && q1 >= 0) {
    lose_qubit(ctx, std::move(b), q1, out);
    return;
  }
  out.push_back(std::move(b));
}

void do_measure(const Ctx& ctx, DenseBranch b, int q, int slot, bool x_basis,
                Frontier& out) {
  if (b.lost[q]) {
    for (int i : all_of("uv")) {
      DenseBranch nb = b;
      nb.path.push_back("uv"[i]);
      nb.adversarial = true;
      record_outcome(nb, slot, i == 1, Certainty::lost_unknown);
      out.push_back(std::move(nb));
    }
    return;
  }
  b.dirty[q] = 1;
  int s = b.slot_of[q];
  if (x_basis) amp_h(b.amp, b.sqrt2_exp, s);
  int det = z_determinism(b, s);
  if (det >= 0) {
    if (x_basis) amp_h(b.amp, b.sqrt2_exp, s);
    record_outcome(b, slot, det == 1, Certainty::deterministic);
    out.push_back(std::move(b));
    return;
  }
  for (int i : all_of("01")) {
    DenseBranch nb = b;
    nb.path.push_back("01"[i]);
    project_z_slot(nb, s, i == 1);
    if (x_basis) amp_h(nb.amp, nb.sqrt2_exp, s);
    if (q != ctx.opt->setwise_qubit) nb.weight.halve();
    record_outcome(nb, slot, i == 1, Certainty::fair_random);
    out.push_back(std::move(nb));
  }
}

void do_lru(const Ctx& ctx, DenseBranch b, int q, Frontier& out) {
  if (!b.lost[q]) {
    out.push_back(std::move(b));
    return;
  }
  b.lost[q] = 0;
  fresh_slot(ctx, b, q);
  b.dirty[q] = 1;
  for (int i : all_of("IXYZ")) {
    DenseBranch nb = b;
    nb.path.push_back("IXYZ"[i]);
    nb.adversarial = true;
    if (i > 0) amp_pauli(nb.amp, nb.slot_of[q], "IXYZ"[i]);
    out.push_back(std::move(nb));
  }
}

BitVec gather_bits(const DenseBranch& b, const std::vector<int>& slots) {
  BitVec v(int(slots.size()));
  for (int i = 0; i < int(slots.size()); ++i) {
    if (b.classical[slots[i]] < 0)
      throw std::logic_error("classical bit read before definition");
    v.set(i, b.classical[slots[i]] != 0);
  }
  return v;
}

void do_decode_correct(const Ctx& ctx, DenseBranch& b, const Op& op,
                       const Compiled::COp& co) {
  const CssCode& code = ctx.codes->get(op.code);
  auto apply_letter = [&](int j, char l) {
    int q = op.qubits[j];
    if (l == 'I' || b.lost[q]) return;
    b.dirty[q] = 1;
    amp_pauli(b.amp, b.slot_of[q], l);
  };
  if (!co.round_slots.empty()) {
    std::vector<BitVec> vs;
    for (const auto& r : co.round_slots) vs.push_back(gather_bits(b, r));
    const BitVec* pick = nullptr;
    if (vs.size() >= 2 && vs[0] == vs[1])
      pick = &vs[0];
    else if (vs.size() >= 3 && vs[0] == vs[2])
      pick = &vs[0];
    else if (vs.size() >= 3 && vs[1] == vs[2])
      pick = &vs[1];
    if (!pick) return;
    int rx = code.hx().rows(), rz = code.hz().rows();
    Syndrome s;
    s.x_checks = BitVec(rx);
    s.z_checks = BitVec(rz);
    for (int i = 0; i < rx; ++i) s.x_checks.set(i, pick->get(i));
    for (int i = 0; i < rz; ++i) s.z_checks.set(i, pick->get(rx + i));
    Pauli corr(code.n());
    try {
      corr = code.decode(s);
    } catch (const std::invalid_argument&) {
      return;
    }
    for (int j = 0; j < code.n(); ++j) apply_letter(j, corr.at(j));
    return;
  }
  BitVec bits = gather_bits(b, co.arg_slots);
  MeasDecode md = code.decode_measurement(bits, op.basis);
  char letter = op.basis == 'x' ? 'Z' : 'X';
  for (int j = 0; j < int(op.qubits.size()); ++j)
    if (md.correction.get(j)) apply_letter(j, letter);
}

void do_classical_pauli(const Ctx& ctx, DenseBranch& b, const Op& op,
                        const Compiled::COp& co) {
  int cond;
  if (op.cond_decode) {
    const CssCode& code = ctx.codes->get(op.code);
    cond = code.decode_measurement(gather_bits(b, co.arg_slots), op.basis).logical_bit;
  } else {
    cond = 0;
    for (int s : co.arg_slots) {
      if (b.classical[s] < 0) throw std::logic_error("classical bit read before definition");
      cond ^= b.classical[s];
    }
  }
  if (!cond) return;
  for (int j = 0; j < int(op.qubits.size()); ++j) {
    char l = op.pauli[j];
    int q = op.qubits[j];
    if (l == 'I' || b.lost[q]) continue;
    b.dirty[q] = 1;
    amp_pauli(b.amp, b.slot_of[q], l);
  }
}

void apply_op_to_branch(const Ctx& ctx, int i, DenseBranch br, Frontier& out, bool faulty) {
  const Op& op = ctx.cc->circ->ops()[i];
  const Compiled::COp& co = ctx.cc->cops[i];
  const std::vector<FaultSpec>* faults =
      faulty && !ctx.cc->op_faults[i].empty() ? &ctx.cc->op_faults[i] : nullptr;

  Frontier cur;
  bool fault_pre = faults && is_measurement(op.type);
  if (fault_pre) {
    Frontier tmp{std::move(br)};
    for (const FaultSpec& f : *faults) {
      Frontier nxt;
      for (auto& b : tmp) apply_fault(ctx, std::move(b), op, f, nxt);
      tmp = std::move(nxt);
    }
    cur = std::move(tmp);
  } else {
    cur.push_back(std::move(br));
  }

  Frontier done;
  for (auto& b : cur) {
    switch (op.type) {
      case OpType::prep_z:
      case OpType::prep_x: {
        int q = op.qubits[0];
        if (!b.lost[q]) {
          // Replacing a used qubit abandons its old mode to the environment.
          if (b.dirty[q]) fresh_slot(ctx, b, q);
          if (op.type == OpType::prep_x) {
            amp_h(b.amp, b.sqrt2_exp, b.slot_of[q]);
            b.dirty[q] = 1;
          }
        }
        done.push_back(std::move(b));
        break;
      }
      case OpType::hadamard: {
        int q = op.qubits[0];
        if (!b.lost[q]) {
          b.dirty[q] = 1;
          amp_h(b.amp, b.sqrt2_exp, b.slot_of[q]);
        }
        done.push_back(std::move(b));
        break;
      }
      case OpType::cnot:
      case OpType::cz: {
        int a = op.qubits[0], q2 = op.qubits[1];
        if (!b.lost[a] && !b.lost[q2]) {
          b.dirty[a] = 1;
          b.dirty[q2] = 1;
          if (op.type == OpType::cnot)
            amp_cnot(b.amp, b.slot_of[a], b.slot_of[q2]);
          else
            amp_cz(b.amp, b.slot_of[a], b.slot_of[q2]);
        }
        done.push_back(std::move(b));
        break;
      }
      case OpType::wait:
        done.push_back(std::move(b));
        break;
      case OpType::lru:
        do_lru(ctx, std::move(b), op.qubits[0], done);
        break;
      case OpType::meas_z:
      case OpType::meas_x:
        do_measure(ctx, std::move(b), op.qubits[0], co.out_slot,
                   op.type == OpType::meas_x, done);
        break;
      case OpType::parity: {
        int v = 0;
        for (int s : co.arg_slots) {
          if (b.classical[s] < 0)
            throw std::logic_error("classical bit read before definition");
          v ^= b.classical[s];
        }
        b.classical[co.out_slot] = int8_t(v);
        done.push_back(std::move(b));
        break;
      }
      case OpType::classical_pauli:
        do_classical_pauli(ctx, b, op, co);
        done.push_back(std::move(b));
        break;
      case OpType::decode_correct:
        do_decode_correct(ctx, b, op, co);
        done.push_back(std::move(b));
        break;
    }
  }

  if (faults && !fault_pre) {
    for (auto& b : done) {
      Frontier tmp{std::move(b)};
      for (const FaultSpec& f : *faults) {
        Frontier nxt;
        for (auto& x : tmp) apply_fault(ctx, std::move(x), op, f, nxt);
        tmp = std::move(nxt);
      }
      for (auto& x : tmp) out.push_back(std::move(x));
    }
  } else {
    for (auto& b : done) out.push_back(std::move(b));
  }
}

bool block_accepts(const Ctx& ctx, const DenseBranch& b, int bi) {
  const Block& blk = ctx.cc->circ->blocks()[bi];
  const std::vector<int>& slots = ctx.cc->block_bits[bi];
  if (blk.accept == AcceptKind::all_zero) {
    for (int s : slots) {
      if (b.classical[s] < 0) throw std::logic_error("verification bit unset");
      if (b.classical[s] != 0) return false;
    }
    return true;
  }
  BitVec bits = gather_bits(b, slots);
  const CssCode& code = ctx.codes->get(blk.code);
  MeasDecode md = code.decode_measurement(bits, blk.basis);
  return !md.syndrome.any() && md.logical_bit == 0;
}

void advance_index(Ctx& ctx, Frontier& frontier, int i, bool faulty, int depth) {
  Frontier next;
  for (auto& b : frontier) apply_op_to_branch(ctx, i, std::move(b), next, faulty);
  frontier = std::move(next);
  if (depth == 0) {
    for (int q : ctx.cc->completions_at[i]) {
      Frontier comp;
      for (auto& b : frontier) {
        for (int j : all_of("IXYZ")) {
          DenseBranch nb = b;
          nb.path.push_back("IXYZ"[j]);
          nb.adversarial = true;
          if (!nb.lost[q] && j > 0) amp_pauli(nb.amp, nb.slot_of[q], "IXYZ"[j]);
          comp.push_back(std::move(nb));
        }
      }
      frontier = std::move(comp);
    }
  }
  if (frontier.size() > ctx.opt->branch_cap)
    throw TruncationError("oracle branch cap exceeded at op " + std::to_string(i));

  int bi = ctx.cc->block_end_at[i];
  if (bi < 0) return;
  const Block& blk = ctx.cc->circ->blocks()[bi];
  Frontier keep;
  for (auto& b : frontier) {
    if (block_accepts(ctx, b, bi)) {
      keep.push_back(std::move(b));
      continue;
    }
    if (depth > 0)
      throw std::logic_error("oracle: fault-free verification retry rejected");
    DenseBranch rb = std::move(b);
    for (int q : ctx.cc->block_qubits[bi]) {
      rb.lost[q] = 0;
      rb.dirty[q] = 1;  // force fresh slots on re-preparation
    }
    Frontier sub;
    sub.push_back(std::move(rb));
    for (int j = blk.begin; j <= blk.end; ++j) advance_index(ctx, sub, j, false, depth + 1);
    for (auto& s : sub) keep.push_back(std::move(s));
  }
  frontier = std::move(keep);
}

}  // namespace

std::vector<DenseBranch> oracle_run(const Circuit& c, const std::vector<FaultSpec>& faults,
                                    const OracleOptions& opt) {
  if (c.num_qubits() > opt.max_slots)
    throw std::invalid_argument("oracle: circuit too wide for slot budget");
  Compiled cc = compile(c, faults, opt);
  Ctx ctx{&cc, &opt, opt.codes ? opt.codes : &CodeRegistry::standard()};
  DenseBranch init;
  init.num_slots = c.num_qubits();
  init.amp.assign(size_t(1) << init.num_slots, Complex64{});
  init.amp[0] = {1, 0};
  init.sqrt2_exp = 0;
  init.slot_of.resize(c.num_qubits());
  for (int q = 0; q < c.num_qubits(); ++q) init.slot_of[q] = q;
  init.lost.assign(c.num_qubits(), 0);
  init.dirty.assign(c.num_qubits(), 0);
  init.classical.assign(cc.layout.names.size(), -1);
  Frontier frontier;
  frontier.push_back(std::move(init));
  for (int i = 0; i < int(c.ops().size()); ++i) advance_index(ctx, frontier, i, true, 0);
  return frontier;
}

namespace {

DenseMatrix reduce_slots(const std::vector<Complex64>& amp, int exp, int num_slots,
                         const std::vector<int>& kept) {
  int k = int(kept.size());
  std::vector<int> env;
  for (int s = 0; s < num_slots; ++s)
    if (std::find(kept.begin(), kept.end(), s) == kept.end()) env.push_back(s);
  DenseMatrix rho = DenseMatrix::zero(1 << k);
  rho.log2_den = exp;
  auto build_index = [&](uint64_t kb, uint64_t eb) {
    uint64_t idx = 0;
    for (int j = 0; j < k; ++j)
      if ((kb >> j) & 1) idx |= uint64_t{1} << kept[j];
    for (int j = 0; j < int(env.size()); ++j)
      if ((eb >> j) & 1) idx |= uint64_t{1} << env[j];
    return idx;
  };
  uint64_t envN = uint64_t{1} << env.size();
  for (uint64_t r = 0; r < uint64_t(1) << k; ++r) {
    for (uint64_t c = 0; c < uint64_t(1) << k; ++c) {
      int64_t re = 0, im = 0;
      for (uint64_t e = 0; e < envN; ++e) {
        Complex64 a = amp[build_index(r, e)];
        Complex64 b = amp[build_index(c, e)];
        // a * conj(b)
        re += a.re * b.re + a.im * b.im;
        im += a.im * b.re - a.re * b.im;
      }
      rho.m[(r << k) | c] = {re, im};
    }
  }
  rho.reduce();
  return rho;
}

}  // namespace

DenseMatrix reduced_density(const DenseBranch& b, const std::vector<int>& qubits) {
  std::vector<int> kept;
  for (int q : qubits) kept.push_back(b.slot_of.at(q));
  return reduce_slots(b.amp, b.sqrt2_exp, b.num_slots, kept);
}

DenseMatrix tableau_reduced_density(const Tableau& t, const std::vector<int>& qubits) {
  Tableau tt = t;
  for (int q : qubits)
    if (tt.col(q) < 0) tt.add_qubit(q);
  int n = tt.num_qubits();
  if (n > 20) throw std::invalid_argument("tableau too wide for dense expansion");
  // Find one basis state with nonzero amplitude by forcing a Z collapse.
  uint64_t seed = 0;
  {
    Tableau probe = tt;
    for (int c = 0; c < n; ++c) {
      int piv = probe.find_z_anticommuting(c);
      bool bit;
      if (piv >= 0) {
        probe.project_z(c, false, piv);
        bit = false;
      } else {
        bit = probe.deterministic_z(c);
      }
      if (bit) seed |= uint64_t{1} << c;
    }
  }
  // Projector chain: v = prod_i (1 + S_i) |seed>.
  std::vector<Complex64> v(size_t(1) << n, Complex64{});
  v[seed] = {1, 0};
  for (int i = 0; i < n; ++i) {
    Pauli row = tt.stabilizer_row(i);
    std::vector<Complex64> sv(v.size(), Complex64{});
    uint64_t xmask = 0, zmask = 0;
    for (int c = 0; c < n; ++c) {
      if (row.x.get(c)) xmask |= uint64_t{1} << c;
      if (row.z.get(c)) zmask |= uint64_t{1} << c;
    }
    int ph = row.phase & 3;
    for (uint64_t y = 0; y < v.size(); ++y) {
      if (v[y].re == 0 && v[y].im == 0) continue;
      // X^x Z^z |y> = (-1)^{z.y} |y ^ x>, times i^ph
      int par = std::popcount(y & zmask) & 1;
      Complex64 a = v[y];
      if (par) a = {-a.re, -a.im};
      for (int p = 0; p < ph; ++p) a = {-a.im, a.re};
      sv[y ^ xmask].re += a.re;
      sv[y ^ xmask].im += a.im;
    }
    for (size_t j = 0; j < v.size(); ++j) {
      v[j].re += sv[j].re;
      v[j].im += sv[j].im;
    }
  }
  uint64_t norm2 = isqnorm(v);
  if (norm2 == 0) throw std::logic_error("tableau dense expansion vanished");
  int exp = 0;
  while ((uint64_t{1} << exp) < norm2) ++exp;
  if ((uint64_t{1} << exp) != norm2)
    throw std::logic_error("tableau dense expansion has non-dyadic norm");
  std::vector<int> kept;
  for (int q : qubits) kept.push_back(tt.col(q));
  return reduce_slots(v, exp, n, kept);
}

}  // namespace lossft
