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

#include "lossft/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lossft {

const char* to_string(OpType t) {
  switch (t) {
    case OpType::prep_z: return "prep_z";
    case OpType::prep_x: return "prep_x";
    case OpType::hadamard: return "hadamard";
    case OpType::cnot: return "cnot";
    case OpType::cz: return "cz";
    case OpType::wait: return "wait";
    case OpType::lru: return "lru";
    case OpType::meas_z: return "meas_z";
    case OpType::meas_x: return "meas_x";
    case OpType::parity: return "parity";
    case OpType::classical_pauli: return "classical_pauli";
    case OpType::decode_correct: return "decode_and_correct";
  }
  return "?";
}

OpType op_type_from_string(const std::string& s) {
  static const std::unordered_map<std::string, OpType> m = {
      {"prep_z", OpType::prep_z},   {"prep_x", OpType::prep_x},
      {"hadamard", OpType::hadamard}, {"cnot", OpType::cnot},
      {"cz", OpType::cz},           {"wait", OpType::wait},
      {"lru", OpType::lru},         {"meas_z", OpType::meas_z},
      {"meas_x", OpType::meas_x},   {"parity", OpType::parity},
      {"classical_pauli", OpType::classical_pauli},
      {"decode_and_correct", OpType::decode_correct},
  };
  auto it = m.find(s);
  if (it == m.end()) throw std::invalid_argument("unknown op kind '" + s + "'");
  return it->second;
}

bool is_measurement(OpType t) { return t == OpType::meas_z || t == OpType::meas_x; }
bool is_gate_arity2(OpType t) { return t == OpType::cnot || t == OpType::cz; }
bool is_block_op(OpType t) {
  return t == OpType::classical_pauli || t == OpType::decode_correct;
}
bool is_classical_only(OpType t) { return t == OpType::parity; }

namespace {

bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

const Op* Circuit::find_location(int64_t loc) const {
  auto it = loc_index_.find(loc);
  return it == loc_index_.end() ? nullptr : &ops_[it->second];
}

int Circuit::def_index(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? -1 : it->second;
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw std::invalid_argument("qubit index out of range");
}

int Circuit::add(Op op) {
  // Operand arity and ranges.
  size_t arity = is_gate_arity2(op.type) ? 2 : 1;
  if (is_block_op(op.type)) {
    if (op.qubits.empty()) throw std::invalid_argument("block op needs target qubits");
  } else if (is_classical_only(op.type)) {
    if (!op.qubits.empty()) throw std::invalid_argument("parity takes no qubits");
  } else if (op.qubits.size() != arity) {
    throw std::invalid_argument(std::string("wrong operand count for ") + to_string(op.type));
  }
  for (int q : op.qubits) check_qubit(q);
  if (op.qubits.size() >= 2) {
    std::set<int> uniq(op.qubits.begin(), op.qubits.end());
    if (uniq.size() != op.qubits.size())
      throw std::invalid_argument(std::string("repeated qubit operand in ") + to_string(op.type));
  }
  if (!op.tag.empty() && !valid_token(op.tag))
    throw std::invalid_argument("tag contains reserved characters: '" + op.tag + "'");

  // Classical outputs and inputs.
  if (is_measurement(op.type) || op.type == OpType::parity) {
    if (!valid_token(op.out)) throw std::invalid_argument("measurement/parity needs a valid out name");
    if (defs_.count(op.out)) throw std::invalid_argument("duplicate classical name '" + op.out + "'");
  } else if (!op.out.empty()) {
    throw std::invalid_argument("out= only valid on measurements and parity");
  }
  for (const auto& a : op.args)
    if (!defs_.count(a))
      throw std::invalid_argument("reference to undefined classical bit '" + a + "'");
  for (const auto& round : op.rounds)
    for (const auto& a : round)
      if (!defs_.count(a))
        throw std::invalid_argument("reference to undefined classical bit '" + a + "'");

  switch (op.type) {
    case OpType::parity:
      if (op.args.empty()) throw std::invalid_argument("parity needs input bits");
      break;
    case OpType::classical_pauli:
      if (op.pauli.size() != op.qubits.size())
        throw std::invalid_argument("classical_pauli: pauli letters must align with targets");
      for (char c : op.pauli)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
          throw std::invalid_argument("classical_pauli: bad pauli letter");
      if (op.cond_decode && (op.code.empty() || (op.basis != 'x' && op.basis != 'z')))
        throw std::invalid_argument("classical_pauli: decoded condition needs code and basis");
      break;
    case OpType::decode_correct: {
      if (op.code.empty()) throw std::invalid_argument("decode_and_correct needs a code");
      bool transversal = !op.args.empty();
      bool repeated = !op.rounds.empty();
      if (transversal == repeated)
        throw std::invalid_argument("decode_and_correct needs exactly one syndrome source");
      if (transversal && op.basis != 'x' && op.basis != 'z')
        throw std::invalid_argument("decode_and_correct: transversal source needs basis");
      if (repeated)
        for (const auto& r : op.rounds)
          if (r.size() != op.rounds[0].size())
            throw std::invalid_argument("decode_and_correct: ragged syndrome rounds");
      break;
    }
    default:
      break;
  }

  if (op.location < 0) op.location = loc_base_ + int64_t(ops_.size());
  if (loc_index_.count(op.location))
    throw std::invalid_argument("duplicate location id " + std::to_string(op.location));

  int index = int(ops_.size());
  loc_index_[op.location] = index;
  if (!op.out.empty()) defs_[op.out] = index;
  op_block_.push_back(open_block_);
  ops_.push_back(std::move(op));
  return index;
}

int64_t Circuit::prep_z(int q, std::string tag) {
  Op o;
  o.type = OpType::prep_z;
  o.qubits = {q};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::prep_x(int q, std::string tag) {
  Op o;
  o.type = OpType::prep_x;
  o.qubits = {q};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::hadamard(int q, std::string tag) {
  Op o;
  o.type = OpType::hadamard;
  o.qubits = {q};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::cnot(int control, int target, std::string tag) {
  Op o;
  o.type = OpType::cnot;
  o.qubits = {control, target};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::cz(int a, int b, std::string tag) {
  Op o;
  o.type = OpType::cz;
  o.qubits = {a, b};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::wait(int q, std::string tag) {
  Op o;
  o.type = OpType::wait;
  o.qubits = {q};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::lru(int q, std::string tag) {
  Op o;
  o.type = OpType::lru;
  o.qubits = {q};
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::meas_z(int q, std::string out, std::string tag) {
  Op o;
  o.type = OpType::meas_z;
  o.qubits = {q};
  o.out = std::move(out);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::meas_x(int q, std::string out, std::string tag) {
  Op o;
  o.type = OpType::meas_x;
  o.qubits = {q};
  o.out = std::move(out);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
void Circuit::parity(std::string out, std::vector<std::string> inputs, std::string tag) {
  Op o;
  o.type = OpType::parity;
  o.out = std::move(out);
  o.args = std::move(inputs);
  o.tag = std::move(tag);
  add(std::move(o));
}
int64_t Circuit::classical_pauli(std::vector<int> targets, std::string pauli,
                                 std::vector<std::string> cond, std::string tag) {
  Op o;
  o.type = OpType::classical_pauli;
  o.qubits = std::move(targets);
  o.pauli = std::move(pauli);
  o.args = std::move(cond);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::classical_pauli_decoded(std::vector<int> targets, std::string pauli,
                                         std::string code, char basis,
                                         std::vector<std::string> bits, std::string tag) {
  Op o;
  o.type = OpType::classical_pauli;
  o.qubits = std::move(targets);
  o.pauli = std::move(pauli);
  o.code = std::move(code);
  o.basis = basis;
  o.cond_decode = true;
  o.args = std::move(bits);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::decode_correct_transversal(std::string code, char basis,
                                            std::vector<std::string> bits,
                                            std::vector<int> targets, std::string tag) {
  Op o;
  o.type = OpType::decode_correct;
  o.code = std::move(code);
  o.basis = basis;
  o.args = std::move(bits);
  o.qubits = std::move(targets);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}
int64_t Circuit::decode_correct_repeated(std::string code,
                                         std::vector<std::vector<std::string>> rounds,
                                         std::vector<int> targets, std::string tag) {
  Op o;
  o.type = OpType::decode_correct;
  o.code = std::move(code);
  o.rounds = std::move(rounds);
  o.qubits = std::move(targets);
  o.tag = std::move(tag);
  return ops_[add(std::move(o))].location;
}

void Circuit::begin_block(std::string tag) {
  if (open_block_ >= 0) throw std::invalid_argument("verification blocks cannot nest");
  Block b;
  b.tag = std::move(tag);
  b.begin = int(ops_.size());
  blocks_.push_back(std::move(b));
  open_block_ = int(blocks_.size()) - 1;
}

void Circuit::end_block_all_zero(std::vector<std::string> bits) {
  if (open_block_ < 0) throw std::invalid_argument("no open verification block");
  Block& b = blocks_[open_block_];
  b.end = int(ops_.size()) - 1;
  if (b.end < b.begin) throw std::invalid_argument("empty verification block");
  b.accept = AcceptKind::all_zero;
  b.bits = std::move(bits);
  for (const auto& name : b.bits)
    if (!defs_.count(name))
      throw std::invalid_argument("accept predicate reads undefined bit '" + name + "'");
  open_block_ = -1;
}

void Circuit::end_block_css(std::string code, char basis, std::vector<std::string> bits) {
  if (open_block_ < 0) throw std::invalid_argument("no open verification block");
  Block& b = blocks_[open_block_];
  b.end = int(ops_.size()) - 1;
  if (b.end < b.begin) throw std::invalid_argument("empty verification block");
  b.accept = AcceptKind::css_verify;
  b.code = std::move(code);
  b.basis = basis;
  b.bits = std::move(bits);
  if (b.basis != 'x' && b.basis != 'z')
    throw std::invalid_argument("css_verify accept needs basis 'x' or 'z'");
  for (const auto& name : b.bits)
    if (!defs_.count(name))
      throw std::invalid_argument("accept predicate reads undefined bit '" + name + "'");
  open_block_ = -1;
}

std::vector<int> Circuit::block_qubits(int b) const {
  std::set<int> s;
  for (int i = blocks_[b].begin; i <= blocks_[b].end; i++)
    for (int q : ops_[i].qubits) s.insert(q);
  return std::vector<int>(s.begin(), s.end());
}

void Circuit::validate() const {
  if (open_block_ >= 0) throw std::invalid_argument("unterminated verification block");
  for (size_t i = 0; i < blocks_.size(); i++) {
    const Block& b = blocks_[i];
    if (b.begin < 0 || b.end < b.begin || b.end >= int(ops_.size()))
      throw std::invalid_argument("verification block has a bad op range");
    if (i > 0 && blocks_[i - 1].end >= b.begin)
      throw std::invalid_argument("verification blocks overlap");
    for (const auto& name : b.bits) {
      int d = def_index(name);
      if (d < 0 || d > b.end)
        throw std::invalid_argument("accept predicate reads a bit not defined by block end");
    }
  }
  // Classical references must point backwards.
  for (size_t i = 0; i < ops_.size(); i++) {
    auto check_name = [&](const std::string& a) {
      int d = def_index(a);
      if (d < 0 || d >= int(i))
        throw std::invalid_argument("op reads classical bit '" + a + "' not defined earlier");
    };
    for (const auto& a : ops_[i].args) check_name(a);
    for (const auto& r : ops_[i].rounds)
      for (const auto& a : r) check_name(a);
  }
}

Circuit Circuit::concat(const Circuit& a, const Circuit& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("concat: qubit counts differ");
  if (a.open_block_ >= 0 || b.open_block_ >= 0)
    throw std::invalid_argument("concat: unterminated verification block");
  Circuit out(a.n_);
  out.ops_ = a.ops_;
  out.blocks_ = a.blocks_;
  out.op_block_ = a.op_block_;
  out.defs_ = a.defs_;
  out.loc_index_ = a.loc_index_;
  int shift = int(a.ops_.size());
  for (const Op& op : b.ops_) {
    if (out.loc_index_.count(op.location))
      throw std::invalid_argument("concat: location id collision");
    if (!op.out.empty() && out.defs_.count(op.out))
      throw std::invalid_argument("concat: classical name collision '" + op.out + "'");
    int idx = int(out.ops_.size());
    out.loc_index_[op.location] = idx;
    if (!op.out.empty()) out.defs_[op.out] = idx;
    out.ops_.push_back(op);
  }
  for (size_t i = 0; i < b.ops_.size(); i++) {
    int blk = b.op_block_[i];
    out.op_block_.push_back(blk < 0 ? -1 : blk + int(a.blocks_.size()));
  }
  for (Block blk : b.blocks_) {
    blk.begin += shift;
    blk.end += shift;
    out.blocks_.push_back(std::move(blk));
  }
  out.validate();
  return out;
}

// --- text format ------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); i++) {
    if (i) s.push_back(sep);
    s += v[i];
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

void emit_op(std::ostringstream& out, const Op& op) {
  out << op.location << "; " << to_string(op.type) << "; ";
  if (op.qubits.empty()) {
    out << "-";
  } else {
    for (size_t i = 0; i < op.qubits.size(); i++) out << (i ? " " : "") << op.qubits[i];
  }
  out << "; " << (op.tag.empty() ? "-" : op.tag);
  if (!op.out.empty()) out << "; out=" << op.out;
  if (!op.args.empty()) out << "; in=" << join(op.args, ',');
  if (!op.pauli.empty()) out << "; pauli=" << op.pauli;
  if (!op.code.empty()) out << "; code=" << op.code;
  if (op.basis) out << "; basis=" << op.basis;
  if (op.cond_decode) out << "; decoded=1";
  if (!op.rounds.empty()) {
    out << "; rounds=";
    for (size_t r = 0; r < op.rounds.size(); r++) out << (r ? "|" : "") << join(op.rounds[r], ',');
  }
  out << "\n";
}

}  // namespace

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "circuit v1\n" << "qubits " << c.num_qubits() << "\n";
  const auto& ops = c.ops();
  const auto& blocks = c.blocks();
  size_t next_block = 0;
  for (size_t i = 0; i < ops.size(); i++) {
    if (next_block < blocks.size() && int(i) == blocks[next_block].begin) {
      const Block& b = blocks[next_block];
      out << "[block " << (b.tag.empty() ? "-" : b.tag) << " accept=";
      if (b.accept == AcceptKind::all_zero)
        out << "all_zero";
      else
        out << "css:" << b.code << ":" << b.basis;
      out << " bits=" << join(b.bits, ',') << "\n";
    }
    emit_op(out, ops[i]);
    if (next_block < blocks.size() && int(i) == blocks[next_block].end) {
      out << "]\n";
      next_block++;
    }
  }
  return out.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  int n = -1;
  Circuit c(1);
  struct PendingBlock {
    std::string tag, accept, bits;
  };
  std::optional<PendingBlock> pending;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!saw_header) {
      if (t != "circuit v1") fail("expected 'circuit v1' header");
      saw_header = true;
      continue;
    }
    if (n < 0) {
      std::istringstream ls(t);
      std::string kw;
      ls >> kw >> n;
      if (kw != "qubits" || n <= 0) fail("expected 'qubits <n>'");
      c = Circuit(n);
      continue;
    }
    if (t[0] == '[') {
      std::istringstream ls(t.substr(1));
      std::string kw, tag;
      ls >> kw >> tag;
      if (kw != "block") fail("expected '[block ...'");
      PendingBlock pb;
      pb.tag = (tag == "-") ? "" : tag;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail("bad block attribute '" + kv + "'");
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "accept")
          pb.accept = val;
        else if (key == "bits")
          pb.bits = val;
        else
          fail("unknown block attribute '" + key + "'");
      }
      if (pb.accept.empty()) fail("block missing accept=");
      pending = pb;
      c.begin_block(pb.tag);
      continue;
    }
    if (t == "]") {
      if (!pending) fail("unmatched ']'");
      std::vector<std::string> bits;
      for (auto& s : split(pending->bits, ','))
        if (!trim(s).empty()) bits.push_back(trim(s));
      if (pending->accept == "all_zero") {
        c.end_block_all_zero(std::move(bits));
      } else {
        auto parts = split(pending->accept, ':');
        if (parts.size() != 3 || parts[0] != "css" || parts[2].size() != 1)
          fail("bad accept spec '" + pending->accept + "'");
        c.end_block_css(parts[1], parts[2][0], std::move(bits));
      }
      pending.reset();
      continue;
    }
    // Op line: loc; kind; qubits; tag; key=value...
    auto fields = split(t, ';');
    if (fields.size() < 4) fail("need at least 'loc; kind; qubits; tag'");
    Op op;
    try {
      op.location = std::stoll(trim(fields[0]));
    } catch (...) {
      fail("bad location '" + trim(fields[0]) + "'");
    }
    op.type = op_type_from_string(trim(fields[1]));
    std::string qf = trim(fields[2]);
    if (qf != "-" && !qf.empty()) {
      std::istringstream qs(qf);
      int q;
      while (qs >> q) op.qubits.push_back(q);
    }
    std::string tagf = trim(fields[3]);
    op.tag = (tagf == "-") ? "" : tagf;
    for (size_t f = 4; f < fields.size(); f++) {
      std::string kv = trim(fields[f]);
      if (kv.empty()) continue;
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail("bad attribute '" + kv + "'");
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "out") {
        op.out = val;
      } else if (key == "in") {
        for (auto& s : split(val, ','))
          if (!s.empty()) op.args.push_back(s);
      } else if (key == "pauli") {
        op.pauli = val;
      } else if (key == "code") {
        op.code = val;
      } else if (key == "basis") {
        if (val.size() != 1) fail("basis must be one letter");
        op.basis = val[0];
      } else if (key == "decoded") {
        op.cond_decode = (val == "1");
      } else if (key == "rounds") {
        for (auto& r : split(val, '|')) {
          std::vector<std::string> names;
          for (auto& s : split(r, ','))
            if (!s.empty()) names.push_back(s);
          op.rounds.push_back(std::move(names));
        }
      } else {
        fail("unknown attribute '" + key + "'");
      }
    }
    try {
      c.add(std::move(op));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!saw_header || n < 0) throw std::invalid_argument("circuit file: missing header");
  if (pending) throw std::invalid_argument("circuit file: unterminated block");
  c.validate();
  return c;
}

}  // namespace lossft
