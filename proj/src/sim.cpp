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

#include "lossft/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lossft {

void Dyadic::halve() {
  if (log2_den > 100000) throw std::overflow_error("dyadic: denominator overflow");
  ++log2_den;
}

void Dyadic::normalize() {
  if (num == 0) {
    log2_den = 0;
    return;
  }
  while ((num & 1) == 0 && log2_den > 0) {
    num >>= 1;
    --log2_den;
  }
}

Dyadic Dyadic::plus(const Dyadic& o) const {
  Dyadic a = *this, b = o;
  a.normalize();
  b.normalize();
  if (a.num == 0) return b;
  if (b.num == 0) return a;
  int k = std::max(a.log2_den, b.log2_den);
  int sa = k - a.log2_den, sb = k - b.log2_den;
  if (sa >= 64 || sb >= 64) throw std::overflow_error("dyadic: shift overflow in sum");
  unsigned __int128 s =
      ((unsigned __int128)(a.num) << sa) + ((unsigned __int128)(b.num) << sb);
  while ((s & 1) == 0 && k > 0) {
    s >>= 1;
    --k;
  }
  if (s > UINT64_MAX) throw std::overflow_error("dyadic: numerator overflow in sum");
  Dyadic r;
  r.num = uint64_t(s);
  r.log2_den = k;
  return r;
}

bool Dyadic::operator==(const Dyadic& o) const {
  Dyadic a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.num == b.num && a.log2_den == b.log2_den;
}

double Dyadic::approx() const { return double(num) * std::pow(2.0, -log2_den); }

std::string Dyadic::to_string() const {
  Dyadic a = *this;
  a.normalize();
  if (a.num == 0) return "0";
  if (a.log2_den == 0) return std::to_string(a.num);
  return std::to_string(a.num) + "/2^" + std::to_string(a.log2_den);
}

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::deterministic:
      return "deterministic";
    case Certainty::fair_random:
      return "fair_random";
    case Certainty::lost_unknown:
      return "lost_unknown";
  }
  return "?";
}

CodeRegistry::CodeRegistry() { codes_.emplace("steane", CssCode::steane()); }

void CodeRegistry::add(const std::string& name, CssCode code) {
  codes_.insert_or_assign(name, std::move(code));
}

const CssCode& CodeRegistry::get(const std::string& name) const {
  auto it = codes_.find(name);
  if (it == codes_.end()) throw std::invalid_argument("unknown code: " + name);
  return it->second;
}

bool CodeRegistry::has(const std::string& name) const { return codes_.count(name) > 0; }

const CodeRegistry& CodeRegistry::standard() {
  static const CodeRegistry* reg = new CodeRegistry();
  return *reg;
}

int ClassicalLayout::slot(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown classical bit: " + name);
  return it->second;
}

ClassicalLayout ClassicalLayout::of(const Circuit& c) {
  ClassicalLayout l;
  for (const Op& op : c.ops()) {
    if (op.out.empty()) continue;
    l.index_.emplace(op.out, int(l.names.size()));
    l.names.push_back(op.out);
  }
  return l;
}

namespace {

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
  std::vector<int> block_end_at;              // op idx -> block ending here, or -1
  std::vector<std::vector<int>> block_bits;   // block -> bit slots
  std::vector<std::vector<int>> block_qubits; // block -> member qubits
  std::vector<std::vector<int>> retire_qubits;
  std::vector<std::vector<int>> dead_slots;
  std::vector<char> merge_here;
};

Compiled compile(const Circuit& c, const std::vector<FaultSpec>& faults,
                 const RunOptions& opt) {
  Compiled cc;
  cc.circ = &c;
  cc.layout = ClassicalLayout::of(c);
  const auto& ops = c.ops();
  cc.cops.resize(ops.size());
  std::unordered_map<int64_t, int> loc_idx;
  for (int i = 0; i < int(ops.size()); ++i) {
    loc_idx.emplace(ops[i].location, i);
    auto& co = cc.cops[i];
    if (!ops[i].out.empty()) co.out_slot = cc.layout.slot(ops[i].out);
    for (const auto& a : ops[i].args) co.arg_slots.push_back(cc.layout.slot(a));
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
  cc.retire_qubits.assign(ops.size(), {});
  cc.dead_slots.assign(ops.size(), {});
  cc.merge_here.assign(ops.size(), 0);
  if (opt.retire) {
    std::vector<int> last_use(c.num_qubits(), -1);
    for (int i = 0; i < int(ops.size()); ++i) {
      int b = c.block_of(i);
      int eff = b >= 0 ? c.blocks()[b].end : i;
      for (int q : ops[i].qubits) last_use[q] = std::max(last_use[q], eff);
    }
    for (int q : opt.keep_alive)
      if (q >= 0 && q < c.num_qubits()) last_use[q] = -1;
    for (int q = 0; q < c.num_qubits(); ++q)
      if (last_use[q] >= 0) cc.retire_qubits[last_use[q]].push_back(q);

    std::vector<int> death(cc.layout.names.size(), -1);
    for (int i = 0; i < int(ops.size()); ++i) {
      if (cc.cops[i].out_slot >= 0)
        death[cc.cops[i].out_slot] = std::max(death[cc.cops[i].out_slot], i);
      for (int s : cc.cops[i].arg_slots) death[s] = std::max(death[s], i);
      for (const auto& r : cc.cops[i].round_slots)
        for (int s : r) death[s] = std::max(death[s], i);
    }
    for (int b = 0; b < int(c.blocks().size()); ++b)
      for (int s : cc.block_bits[b]) death[s] = std::max(death[s], c.blocks()[b].end);
    for (int s = 0; s < int(death.size()); ++s)
      if (death[s] >= 0) cc.dead_slots[death[s]].push_back(s);
    for (int i = 0; i < int(ops.size()); ++i)
      cc.merge_here[i] = !cc.retire_qubits[i].empty() || !cc.dead_slots[i].empty();
  }
  return cc;
}

struct Ctx {
  const Compiled* cc;
  const RunOptions* opt;
  const CodeRegistry* codes;
  RunResult* res;
  std::vector<char> active;  // qubit still within its live range (retire mode)
};

using Frontier = std::vector<SimBranch>;

/// Replay-aware choice: candidates is the full token list for this choice
/// point; returns the indices to take (all of them, or the scripted one).
std::vector<int> choose(const Ctx& ctx, const SimBranch& b, const char* candidates) {
  int n = int(std::strlen(candidates));
  if (!ctx.opt->replay) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  size_t pos = b.path.size();
  if (pos >= ctx.opt->replay->size())
    throw ReplayError("replay string exhausted at choice '" + std::string(candidates) + "'");
  char t = (*ctx.opt->replay)[pos];
  const char* hit = std::strchr(candidates, t);
  if (!hit)
    throw ReplayError(std::string("replay token '") + t + "' not in choice set '" +
                      candidates + "'");
  return {int(hit - candidates)};
}

int ensure_col(SimBranch& b, int q) {
  int c = b.tab.col(q);
  if (c >= 0) return c;
  b.tab.add_qubit(q);
  return b.tab.col(q);
}

void record_outcome(const Ctx& ctx, SimBranch& b, int slot, bool bit, Certainty cert) {
  b.classical[slot] = bit ? 1 : 0;
  if (ctx.opt->keep_record) b.record.push_back({slot, uint8_t(bit ? 1 : 0), cert});
}

/// Loss of one qubit: the mode leaves the computation. Realized as a
/// fictitious fair collapse in the computational basis (both branches kept),
/// after which the column holds inert classical junk.
void lose_qubit(const Ctx& ctx, SimBranch b, int q, Frontier& out) {
  if (b.lost[q]) {
    out.push_back(std::move(b));
    return;
  }
  b.lost[q] = 1;
  int c = b.tab.col(q);
  if (c < 0) {
    out.push_back(std::move(b));  // pristine |0>: already definite
    return;
  }
  int piv = b.tab.find_z_anticommuting(c);
  if (piv < 0) {
    out.push_back(std::move(b));
    return;
  }
  for (int i : choose(ctx, b, "st")) {
    SimBranch nb = b;
    nb.path.push_back("st"[i]);
    nb.tab.project_z(c, i == 1, piv);
    nb.weight.halve();
    out.push_back(std::move(nb));
  }
}

void apply_single_fault_pauli(SimBranch& b, int q, char p) {
  if (p == 'I' || b.lost[q]) return;
  int c = ensure_col(b, q);
  b.tab.apply_pauli(p, c);
}

/// Applies one FaultSpec to a branch (paulis first, then losses).
void apply_fault(const Ctx& ctx, SimBranch b, const Op& op, const FaultSpec& f,
                 Frontier& out) {
  int q0, q1 = -1;
  if (is_block_op(op.type)) {
    q0 = f.qubit;
  } else {
    q0 = op.qubits.at(0);
    if (op.qubits.size() > 1) q1 = op.qubits[1];
  }
  apply_single_fault_pauli(b, q0, f.p0);
  if (q1 >= 0) apply_single_fault_pauli(b, q1, f.p1);
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

void do_measure(const Ctx& ctx, SimBranch b, int q, int slot, bool x_basis, Frontier& out) {
  if (b.lost[q]) {
    // Adversarial readout: the detector fires or not regardless of any state.
    for (int i : choose(ctx, b, "uv")) {
      SimBranch nb = b;
      nb.path.push_back("uv"[i]);
      nb.adversarial = true;
      record_outcome(ctx, nb, slot, i == 1, Certainty::lost_unknown);
      out.push_back(std::move(nb));
    }
    return;
  }
  int c = ensure_col(b, q);
  int piv = x_basis ? b.tab.find_x_anticommuting(c) : b.tab.find_z_anticommuting(c);
  if (piv < 0) {
    bool bit = x_basis ? b.tab.deterministic_x(c) : b.tab.deterministic_z(c);
    record_outcome(ctx, b, slot, bit, Certainty::deterministic);
    out.push_back(std::move(b));
    return;
  }
  for (int i : choose(ctx, b, "01")) {
    SimBranch nb = b;
    nb.path.push_back("01"[i]);
    if (x_basis)
      nb.tab.project_x(c, i == 1, piv);
    else
      nb.tab.project_z(c, i == 1, piv);
    nb.weight.halve();
    record_outcome(ctx, nb, slot, i == 1, Certainty::fair_random);
    out.push_back(std::move(nb));
  }
}

void do_lru(const Ctx& ctx, SimBranch b, int q, Frontier& out) {
  if (!b.lost[q]) {
    out.push_back(std::move(b));  // nothing detected: pass-through
    return;
  }
  b.lost[q] = 0;
  int c = b.tab.col(q);
  if (c < 0) {
    b.tab.add_qubit(q);
    c = b.tab.col(q);
  } else {
    // The old mode's collapsed remnant belongs to the environment; reuse the
    // column as the fresh replacement qubit.
    b.tab.reset_z(c);
  }
  // The replacement state is arbitrary; checking the four Pauli completions
  // of |0> is sufficient for any replacement, including entangled ones.
  for (int i : choose(ctx, b, "IXYZ")) {
    SimBranch nb = b;
    nb.path.push_back("IXYZ"[i]);
    nb.adversarial = true;
    if (i > 0) nb.tab.apply_pauli("IXYZ"[i], nb.tab.col(q));
    out.push_back(std::move(nb));
  }
}

BitVec gather_bits(const SimBranch& b, const std::vector<int>& slots) {
  BitVec v(int(slots.size()));
  for (int i = 0; i < int(slots.size()); ++i) {
    int8_t val = b.classical[slots[i]];
    if (val < 0) throw std::logic_error("classical bit read before definition");
    v.set(i, val != 0);
  }
  return v;
}

void apply_correction_letters(SimBranch& b, const std::vector<int>& qubits,
                              const BitVec& support, char letter) {
  for (int j = 0; j < int(qubits.size()); ++j) {
    if (!support.get(j)) continue;
    int q = qubits[j];
    if (b.lost[q]) continue;
    b.tab.apply_pauli(letter, ensure_col(b, q));
  }
}

void do_decode_correct(const Ctx& ctx, SimBranch& b, const Op& op, const Compiled::COp& co) {
  const CssCode& code = ctx.codes->get(op.code);
  if (!co.round_slots.empty()) {
    // Repeated syndrome extraction with majority vote over full vectors.
    std::vector<BitVec> vs;
    for (const auto& r : co.round_slots) vs.push_back(gather_bits(b, r));
    const BitVec* pick = nullptr;
    if (vs.size() >= 2 && vs[0] == vs[1])
      pick = &vs[0];
    else if (vs.size() >= 3 && vs[0] == vs[2])
      pick = &vs[0];
    else if (vs.size() >= 3 && vs[1] == vs[2])
      pick = &vs[1];
    if (!pick) return;  // all rounds disagree: no correction
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
      return;  // syndrome outside the decode tables: decoder gives up
    }
    for (int j = 0; j < code.n(); ++j) {
      char l = corr.at(j);
      if (l == 'I' || b.lost[op.qubits[j]]) continue;
      b.tab.apply_pauli(l, ensure_col(b, op.qubits[j]));
    }
    return;
  }
  // Transversal single-basis measurement record.
  BitVec bits = gather_bits(b, co.arg_slots);
  MeasDecode md = code.decode_measurement(bits, op.basis);
  char letter = op.basis == 'x' ? 'Z' : 'X';
  apply_correction_letters(b, op.qubits, md.correction, letter);
}

void do_classical_pauli(const Ctx& ctx, SimBranch& b, const Op& op, const Compiled::COp& co) {
  int cond;
  if (op.cond_decode) {
    const CssCode& code = ctx.codes->get(op.code);
    BitVec bits = gather_bits(b, co.arg_slots);
    cond = code.decode_measurement(bits, op.basis).logical_bit;
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
    b.tab.apply_pauli(l, ensure_col(b, q));
  }
}

void apply_op_to_branch(const Ctx& ctx, int i, SimBranch br, Frontier& out, bool faulty) {
  const Op& op = ctx.cc->circ->ops()[i];
  const Compiled::COp& co = ctx.cc->cops[i];
  const std::vector<FaultSpec>* faults =
      faulty && !ctx.cc->op_faults[i].empty() ? &ctx.cc->op_faults[i] : nullptr;

  Frontier cur;
  // Measurement-location faults strike just before the readout.
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
          int c = ensure_col(b, q);
          if (op.type == OpType::prep_z)
            b.tab.reset_z(c);
          else
            b.tab.reset_x(c);
        }
        done.push_back(std::move(b));
        break;
      }
      case OpType::hadamard: {
        int q = op.qubits[0];
        if (!b.lost[q]) b.tab.h(ensure_col(b, q));
        done.push_back(std::move(b));
        break;
      }
      case OpType::cnot:
      case OpType::cz: {
        int a = op.qubits[0], bq = op.qubits[1];
        if (!b.lost[a] && !b.lost[bq]) {
          int ca = ensure_col(b, a), cb = ensure_col(b, bq);
          if (op.type == OpType::cnot)
            b.tab.cnot(ca, cb);
          else
            b.tab.cz(ca, cb);
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

bool block_accepts(const Ctx& ctx, const SimBranch& b, int bi) {
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
  if (frontier.size() > ctx.opt->branch_cap)
    throw TruncationError("branch cap " + std::to_string(ctx.opt->branch_cap) +
                          " exceeded at op index " + std::to_string(i));
  ctx.res->peak_branches = std::max<uint64_t>(ctx.res->peak_branches, frontier.size());

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
      throw std::logic_error("fault-free verification retry rejected (block '" + blk.tag +
                             "')");
    ctx.res->retries++;
    SimBranch rb = std::move(b);
    for (int q : ctx.cc->block_qubits[bi]) rb.lost[q] = 0;
    Frontier sub;
    sub.push_back(std::move(rb));
    for (int j = blk.begin; j <= blk.end; ++j)
      advance_index(ctx, sub, j, /*faulty=*/false, depth + 1);
    for (auto& s : sub) keep.push_back(std::move(s));
  }
  frontier = std::move(keep);
  if (frontier.size() > ctx.opt->branch_cap)
    throw TruncationError("branch cap exceeded after verification block");
}

std::string merge_key(const Ctx& ctx, const SimBranch& b) {
  std::string key = b.tab.key_bytes();
  key.push_back('|');
  for (int q = 0; q < int(b.lost.size()); ++q)
    if (ctx.active[q]) key.push_back(b.lost[q] ? '1' : '0');
  key.push_back('|');
  for (int8_t v : b.classical) key.push_back(char('a' + v + 1));
  key.push_back('|');
  key.push_back(b.adversarial ? 'A' : '-');
  return key;
}

void retire_and_merge(Ctx& ctx, Frontier& frontier, int i) {
  const auto& retq = ctx.cc->retire_qubits[i];
  const auto& dead = ctx.cc->dead_slots[i];
  for (int q : retq) {
    for (auto& b : frontier) {
      int c = b.tab.col(q);
      if (c >= 0) b.tab.drop_qubit(c);
    }
    ctx.active[q] = 0;
  }
  for (int s : dead)
    for (auto& b : frontier) b.classical[s] = -1;
  if (!ctx.cc->merge_here[i] || frontier.size() <= 1) return;
  for (auto& b : frontier) b.tab.canonicalize();
  std::unordered_map<std::string, size_t> seen;
  Frontier merged;
  for (auto& b : frontier) {
    std::string key = merge_key(ctx, b);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), merged.size());
      merged.push_back(std::move(b));
    } else {
      merged[it->second].weight = merged[it->second].weight.plus(b.weight);
      ctx.res->merges++;
    }
  }
  frontier = std::move(merged);
}

std::string describe_op(const Op& op) {
  std::ostringstream os;
  os << to_string(op.type);
  for (int q : op.qubits) os << " q" << q;
  if (!op.out.empty()) os << " ->" << op.out;
  if (!op.tag.empty()) os << " [" << op.tag << "]";
  return os.str();
}

void trace_line(const Ctx& ctx, int i, const Frontier& frontier) {
  std::ostream& os = *ctx.opt->trace;
  const Op& op = ctx.cc->circ->ops()[i];
  os << "[" << i << "] " << describe_op(op) << " | branches=" << frontier.size();
  if (!frontier.empty()) {
    const SimBranch& b = frontier.front();
    os << " | b0 w=" << b.weight.to_string() << " path=" << (b.path.empty() ? "-" : b.path);
    if (!b.record.empty() && is_measurement(op.type)) {
      const Outcome& o = b.record.back();
      os << " last=" << ctx.cc->layout.names[o.slot] << ":" << int(o.bit) << "("
         << to_string(o.certainty) << ")";
    }
  }
  os << "\n";
}

}  // namespace

RunResult run_circuit(const Circuit& c, const std::vector<FaultSpec>& faults,
                      const RunOptions& opt) {
  Compiled cc = compile(c, faults, opt);
  RunResult res;
  Ctx ctx;
  ctx.cc = &cc;
  ctx.opt = &opt;
  ctx.codes = opt.codes ? opt.codes : &CodeRegistry::standard();
  ctx.res = &res;
  ctx.active.assign(c.num_qubits(), 1);

  SimBranch init;
  init.lost.assign(c.num_qubits(), 0);
  init.classical.assign(cc.layout.names.size(), -1);
  if (!opt.lazy_qubits) init.tab = Tableau::zeros(c.num_qubits());
  Frontier frontier;
  frontier.push_back(std::move(init));

  for (int i = 0; i < int(c.ops().size()); ++i) {
    advance_index(ctx, frontier, i, /*faulty=*/true, /*depth=*/0);
    if (opt.retire) retire_and_merge(ctx, frontier, i);
    if (opt.trace) trace_line(ctx, i, frontier);
  }
  res.branches = std::move(frontier);
  return res;
}

Dyadic total_weight(const std::vector<SimBranch>& branches) {
  Dyadic t;
  t.num = 0;
  t.log2_den = 0;
  for (const auto& b : branches) t = t.plus(b.weight);
  t.normalize();
  return t;
}

}  // namespace lossft
