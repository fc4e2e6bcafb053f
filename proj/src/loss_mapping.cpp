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

#include "lossft/loss_mapping.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lossft/dense_oracle.hpp"
#include "lossft/fault.hpp"
#include "lossft/sim.hpp"

namespace lossft {

const char* to_string(RoleEvent e) {
  switch (e) {
    case RoleEvent::cnot_control: return "cnot-control";
    case RoleEvent::cnot_target: return "cnot-target";
    case RoleEvent::cz_party: return "cz-party";
    case RoleEvent::meas_z: return "meas-z";
    case RoleEvent::meas_x: return "meas-x";
    case RoleEvent::lru: return "lru";
  }
  return "?";
}

RoleProfile role_profile(const Circuit& c, int loss_index, int q) {
  const auto& ops = c.ops();
  if (loss_index < 0 || loss_index >= int(ops.size()))
    throw std::invalid_argument("loss index out of range");
  const Op& lop = ops[loss_index];
  if (is_measurement(lop.type))
    throw std::invalid_argument("loss point must not be a measurement");
  if (std::find(lop.qubits.begin(), lop.qubits.end(), q) == lop.qubits.end())
    throw std::invalid_argument("loss point does not act on the qubit");
  RoleProfile p;
  p.qubit = q;
  p.loss_index = loss_index;
  for (int i = loss_index + 1; i < int(ops.size()); ++i) {
    const Op& op = ops[i];
    if (std::find(op.qubits.begin(), op.qubits.end(), q) == op.qubits.end()) continue;
    switch (op.type) {
      case OpType::wait:
        break;
      case OpType::cnot:
        p.events.emplace_back(i, op.qubits[0] == q ? RoleEvent::cnot_control
                                                   : RoleEvent::cnot_target);
        break;
      case OpType::cz:
        p.events.emplace_back(i, RoleEvent::cz_party);
        break;
      case OpType::meas_z:
        p.events.emplace_back(i, RoleEvent::meas_z);
        break;
      case OpType::meas_x:
        p.events.emplace_back(i, RoleEvent::meas_x);
        break;
      case OpType::lru:
        p.events.emplace_back(i, RoleEvent::lru);
        return p;  // the walk ends: the qubit is re-initialized either way
      default:
        throw std::invalid_argument(
            std::string("post-loss ") + to_string(op.type) +
            " on the lost qubit is outside the replacement rewriting");
    }
  }
  return p;
}

ReplacementPlan replacement_plan(const Circuit& c, int loss_index, int q) {
  RoleProfile prof = role_profile(c, loss_index, q);
  ReplacementPlan plan;
  enum class Last { none, control_ish, target, readout };
  Last last = Last::none;
  for (auto [idx, ev] : prof.events) {
    switch (ev) {
      case RoleEvent::cnot_control:
      case RoleEvent::cz_party:
        if (last != Last::control_ish) plan.insertions.push_back({idx, '0', false});
        last = Last::control_ish;
        break;
      case RoleEvent::cnot_target:
        if (last != Last::target) plan.insertions.push_back({idx, '+', false});
        last = Last::target;
        break;
      case RoleEvent::meas_x:
        if (last != Last::control_ish) plan.insertions.push_back({idx, '0', true});
        last = Last::readout;
        break;
      case RoleEvent::meas_z:
        if (last != Last::target) plan.insertions.push_back({idx, '+', true});
        last = Last::readout;
        break;
      case RoleEvent::lru:
        return plan;
    }
  }
  return plan;
}

namespace {

std::string record_key(const DenseBranch& b) {
  std::string k;
  k.reserve(b.record.size());
  for (const Outcome& o : b.record) k.push_back(char('0' + o.bit));
  return k;
}

void group_side(const std::vector<DenseBranch>& branches, const std::vector<int>& kept,
                std::map<std::string, DenseMatrix>& groups) {
  for (const DenseBranch& b : branches) {
    DenseMatrix rho = reduced_density(b, kept);
    auto [it, fresh] = groups.try_emplace(record_key(b), DenseMatrix::zero(rho.dims));
    it->second.accumulate(rho, b.weight);
  }
}

}  // namespace

EquivResult verify_plan(const Circuit& c, int loss_index, int q, const ReplacementPlan& plan,
                        int max_slots) {
  if (!c.blocks().empty())
    throw std::invalid_argument("equivalence checking requires a block-free circuit");
  const Op& lop = c.ops()[loss_index];
  FaultSpec fault;
  fault.location = lop.location;
  if (!lop.qubits.empty() && lop.qubits[0] == q)
    fault.l0 = true;
  else if (lop.qubits.size() > 1 && lop.qubits[1] == q)
    fault.l1 = true;
  else
    throw std::invalid_argument("loss point does not act on the qubit");

  int64_t next_loc = 0;
  for (const Op& op : c.ops()) next_loc = std::max(next_loc, op.location + 1);
  Circuit repl(c.num_qubits());
  {
    size_t pi = 0;
    for (int i = 0; i < int(c.ops().size()); ++i) {
      while (pi < plan.insertions.size() && plan.insertions[pi].op_index == i) {
        Op prep;
        prep.type = plan.insertions[pi].kind == '0' ? OpType::prep_z : OpType::prep_x;
        prep.location = next_loc++;
        prep.qubits = {q};
        prep.tag = "replacement";
        repl.add(prep);
        ++pi;
      }
      repl.add(c.ops()[i]);
    }
    if (pi != plan.insertions.size())
      throw std::invalid_argument("replacement plan indexes past the circuit");
  }

  OracleOptions opt;
  opt.max_slots = max_slots;
  opt.setwise_qubit = q;
  std::vector<DenseBranch> side_a = oracle_run(c, {fault}, opt);
  std::vector<DenseBranch> side_b = oracle_run(repl, {}, opt);

  std::vector<int> kept;
  for (int i = 0; i < c.num_qubits(); ++i)
    if (i != q) kept.push_back(i);

  std::map<std::string, DenseMatrix> ga, gb;
  group_side(side_a, kept, ga);
  group_side(side_b, kept, gb);

  for (const auto& [key, rho_a] : ga) {
    auto it = gb.find(key);
    if (it == gb.end())
      return {false, "record " + key + " reachable under loss but not under replacement"};
    DenseMatrix a = rho_a, b = it->second;
    a.reduce();
    b.reduce();
    if (!(a == b)) {
      std::ostringstream os;
      os << "record " << key << " leaves different states on the other qubits\n"
         << "loss side:\n" << a.to_string() << "replacement side:\n" << b.to_string();
      return {false, os.str()};
    }
  }
  for (const auto& [key, rho_b] : gb) {
    (void)rho_b;
    if (!ga.count(key))
      return {false, "record " + key + " reachable under replacement but not under loss"};
  }
  return {true, ""};
}

EquivResult verify_equivalence(const Circuit& c, int loss_index, int q, int max_slots) {
  return verify_plan(c, loss_index, q, replacement_plan(c, loss_index, q), max_slots);
}

Circuit random_role_circuit(std::mt19937_64& rng, int n_qubits, int q, bool control_role,
                            bool mixed_role, int* loss_index) {
  if (n_qubits < 3) throw std::invalid_argument("need at least 3 qubits");
  Circuit c(n_qubits);
  for (int i = 0; i < n_qubits; ++i) {
    if (rng() & 1)
      c.prep_x(i);
    else
      c.prep_z(i);
  }
  if (loss_index) *loss_index = q;

  auto other = [&](int avoid) {
    int r;
    do {
      r = int(rng() % n_qubits);
    } while (r == avoid);
    return r;
  };

  int meas_counter = 0;
  bool last_control_ish = control_role;
  int q_uses = 0;
  int total = 2 * n_qubits + int(rng() % n_qubits);
  for (int step = 0; step < total; ++step) {
    bool involve_q = q_uses < 2 && step < 2 ? true : (rng() % 3 == 0);
    if (involve_q) {
      bool as_control;
      if (mixed_role)
        as_control = q_uses == 0 ? true : (q_uses == 1 ? false : (rng() & 1));
      else
        as_control = control_role;
      int p = other(q);
      if (as_control) {
        if (rng() & 1)
          c.cnot(q, p);
        else
          c.cz(q, p);
      } else {
        c.cnot(p, q);
      }
      last_control_ish = as_control;
      ++q_uses;
      continue;
    }
    int kind = int(rng() % 4);
    int a = other(q);
    if (kind == 0) {
      c.hadamard(a);
    } else if (kind == 1 || kind == 2) {
      int b;
      do {
        b = other(q);
      } while (b == a);
      if (kind == 1)
        c.cnot(a, b);
      else
        c.cz(a, b);
    } else {
      c.meas_z(a, "m" + std::to_string(meas_counter++));
    }
  }
  if (last_control_ish)
    c.meas_x(q, "mq");
  else
    c.meas_z(q, "mq");
  for (int i = 0; i < n_qubits; ++i)
    if (i != q && (rng() & 1)) c.meas_z(i, "m" + std::to_string(meas_counter++));
  return c;
}

}  // namespace lossft
