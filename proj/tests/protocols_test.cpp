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

#include "lossft/protocols.hpp"

#include <gtest/gtest.h>

#include <map>
#include <string>

#include "lossft/checker.hpp"
#include "lossft/sim.hpp"

namespace lossft {
namespace {

// Pauli over tableau columns acting as `letter` on the support of a check row.
Pauli row_operator(const Tableau& t, const BitVec& support, const std::vector<int>& qubits,
                   char letter) {
  Pauli p(t.num_qubits());
  for (int i = 0; i < support.size(); i++) {
    if (!support.get(i)) continue;
    int col = t.col(qubits[i]);
    EXPECT_GE(col, 0) << "output qubit " << qubits[i] << " not tracked";
    p.set(col, letter);
  }
  return p;
}

// Expects the block `qubits` of the branch to be exactly the encoded test
// state: every generator and the basis logical deterministic +1.
void expect_exact_code_state(const Tableau& t, const CssCode& code,
                             const std::vector<int>& qubits, char logical_basis) {
  for (int r = 0; r < code.hx().rows(); r++) {
    Pauli g = row_operator(t, code.hx().row(r), qubits, 'X');
    ASSERT_LT(t.find_anticommuting(g), 0) << "X generator " << r << " not definite";
    EXPECT_FALSE(t.deterministic_value(g)) << "X generator " << r << " has sign -1";
  }
  for (int r = 0; r < code.hz().rows(); r++) {
    Pauli g = row_operator(t, code.hz().row(r), qubits, 'Z');
    ASSERT_LT(t.find_anticommuting(g), 0) << "Z generator " << r << " not definite";
    EXPECT_FALSE(t.deterministic_value(g)) << "Z generator " << r << " has sign -1";
  }
  Pauli logical = logical_basis == 'x' ? row_operator(t, code.logical_x(), qubits, 'X')
                                       : row_operator(t, code.logical_z(), qubits, 'Z');
  ASSERT_LT(t.find_anticommuting(logical), 0) << "logical not definite";
  EXPECT_FALSE(t.deterministic_value(logical)) << "logical flipped";
}

TEST(Encoder, PreparesExactCodeStates) {
  const CssCode& code = CssCode::steane();
  std::vector<int> qubits = {0, 1, 2, 3, 4, 5, 6};
  for (bool plus : {false, true}) {
    Circuit enc = encode_logical(code, plus);
    RunOptions ro;
    RunResult r = run_circuit(enc, {}, ro);
    ASSERT_EQ(r.branches.size(), 1u);  // no measurements, no branching
    expect_exact_code_state(r.branches[0].tab, code, qubits, plus ? 'x' : 'z');
  }
}

TEST(Encoder, UsesSevenPrepsAndNineCnots) {
  for (bool plus : {false, true}) {
    Circuit enc = encode_logical(CssCode::steane(), plus);
    int preps_x = 0, preps_z = 0, cnots = 0;
    for (const auto& op : enc.ops()) {
      if (op.type == OpType::prep_x) preps_x++;
      if (op.type == OpType::prep_z) preps_z++;
      if (op.type == OpType::cnot) cnots++;
    }
    EXPECT_EQ(preps_x + preps_z, 7);
    EXPECT_EQ(preps_x, plus ? 4 : 3);  // one X-type row per independent generator
    EXPECT_EQ(cnots, 9);
    EXPECT_EQ(enc.ops().size(), 16u);
  }
}

TEST(CatBlock, FivePrepsFiveCnotsAndExactCatState) {
  Circuit c(5);
  append_cat_block(c, {0, 1, 2, 3, 4}, "cv", "cat", false);
  int preps = 0, cnots = 0, meas = 0;
  for (const auto& op : c.ops()) {
    if (op.type == OpType::prep_x || op.type == OpType::prep_z) preps++;
    if (op.type == OpType::cnot) cnots++;
    if (op.type == OpType::meas_z || op.type == OpType::meas_x) meas++;
  }
  EXPECT_EQ(preps, 5);
  EXPECT_EQ(cnots, 5);
  EXPECT_EQ(meas, 1);
  ASSERT_EQ(c.blocks().size(), 1u);

  RunOptions ro;
  RunResult r = run_circuit(c, {}, ro);
  ASSERT_EQ(r.branches.size(), 1u);
  const Tableau& t = r.branches[0].tab;
  for (const char* stab : {"XXXX", "ZZII", "IZZI", "IIZZ"}) {
    Pauli p(t.num_qubits());
    for (int q = 0; q < 4; q++) p.set(t.col(q), stab[q]);
    ASSERT_LT(t.find_anticommuting(p), 0) << stab;
    EXPECT_FALSE(t.deterministic_value(p)) << stab;
  }
  // Verifier was measured and accepted at 0.
  EXPECT_EQ(r.branches[0].classical[0], 0);
}

TEST(Strategies, NamesRoundTrip) {
  EXPECT_EQ(lru_strategy_from_string("none"), LruStrategy::none);
  EXPECT_EQ(lru_strategy_from_string("data_pre"), LruStrategy::data_pre);
  EXPECT_EQ(lru_strategy_from_string("post_zero_ancilla"), LruStrategy::post_zero_ancilla);
  EXPECT_EQ(lru_strategy_from_string("post_zero"), LruStrategy::post_zero_ancilla);
  EXPECT_EQ(lru_strategy_from_string("at07_generic"), LruStrategy::at07_generic);
  EXPECT_EQ(lru_strategy_from_string("at07"), LruStrategy::at07_generic);
  EXPECT_THROW(lru_strategy_from_string("sometimes"), std::invalid_argument);
  for (LruStrategy s : {LruStrategy::none, LruStrategy::data_pre, LruStrategy::post_zero_ancilla,
                        LruStrategy::at07_generic}) {
    EXPECT_EQ(lru_strategy_from_string(to_string(s)), s);
  }
}

TEST(Builds, LruCountMatrix) {
  using S = LruStrategy;
  std::map<std::string, std::map<S, int>> expect = {
      {"steane", {{S::none, 0}, {S::data_pre, 7}, {S::post_zero_ancilla, 7}, {S::at07_generic, 35}}},
      {"shor", {{S::none, 0}, {S::data_pre, 7}, {S::post_zero_ancilla, 0}, {S::at07_generic, 90}}},
      {"knill", {{S::none, 0}, {S::data_pre, 7}, {S::post_zero_ancilla, 7}, {S::at07_generic, 28}}},
  };
  for (const auto& [name, row] : expect) {
    for (const auto& [strategy, count] : row) {
      ProtocolBuild b = build_protocol(name, strategy);
      EXPECT_EQ(count_lrus(b), count) << name << " / " << to_string(strategy);
      EXPECT_EQ(b.protocol, name);
      EXPECT_EQ(b.strategy, strategy);
      EXPECT_EQ(b.code_name, "steane");
    }
  }
  EXPECT_THROW(build_protocol("surface", LruStrategy::none), std::invalid_argument);
}

TEST(Builds, DataBlocksAndWidths) {
  std::vector<int> data = {0, 1, 2, 3, 4, 5, 6};
  ProtocolBuild steane = build_steane_ec(LruStrategy::none);
  EXPECT_EQ(steane.input_data, data);
  EXPECT_EQ(steane.output_data, data);
  EXPECT_EQ(steane.circuit.num_qubits(), 35);

  ProtocolBuild shor = build_shor_ec(LruStrategy::none);
  EXPECT_EQ(shor.input_data, data);
  EXPECT_EQ(shor.output_data, data);

  ProtocolBuild knill = build_knill_ec(LruStrategy::none);
  EXPECT_EQ(knill.input_data, data);
  EXPECT_EQ(knill.output_data, (std::vector<int>{21, 22, 23, 24, 25, 26, 27}));
  EXPECT_EQ(knill.circuit.num_qubits(), 35);
}

TEST(Builds, FaultFreeGadgetsPreserveBothTestStates) {
  const CssCode& code = CssCode::steane();
  struct Config {
    const char* name;
    LruStrategy strategy;
  };
  for (const Config& cfg : {Config{"steane", LruStrategy::data_pre},
                            Config{"shor", LruStrategy::data_pre},
                            Config{"knill", LruStrategy::none},
                            Config{"knill", LruStrategy::post_zero_ancilla}}) {
    ProtocolBuild b = build_protocol(cfg.name, cfg.strategy);
    for (bool plus : {false, true}) {
      Circuit c = test_circuit(b, plus);
      RunOptions ro;
      ro.lazy_qubits = true;
      ro.retire = true;
      ro.keep_record = false;
      ro.keep_alive = b.output_data;
      RunResult r = run_circuit(c, {}, ro);
      ASSERT_GE(r.branches.size(), 1u);
      for (const auto& br : r.branches) {
        EXPECT_FALSE(br.adversarial);
        for (int q : b.output_data) EXPECT_FALSE(br.lost[q]);
        expect_exact_code_state(br.tab, code, b.output_data, plus ? 'x' : 'z');
      }
      EXPECT_TRUE(total_weight(r.branches) == Dyadic{});
    }
  }
}

TEST(Builds, VerifiedAncillaEncodersSitInsideRetryBlocks) {
  for (LruStrategy s : {LruStrategy::none, LruStrategy::post_zero_ancilla}) {
    ProtocolBuild b = build_knill_ec(s);
    const Circuit& c = b.circuit;
    ASSERT_EQ(c.blocks().size(), 2u);
    for (const Block& blk : c.blocks()) {
      EXPECT_EQ(blk.accept, AcceptKind::css_verify);
      EXPECT_EQ(blk.code, "steane");
    }
    // post_zero adds its 7 LRUs inside the zero-half block, before the
    // verification coupling, so replacement errors are themselves verified.
    int lrus_in_blocks = 0, lrus_total = 0;
    for (size_t i = 0; i < c.ops().size(); i++) {
      if (c.ops()[i].type != OpType::lru) continue;
      lrus_total++;
      if (c.block_of(int(i)) >= 0) lrus_in_blocks++;
    }
    if (s == LruStrategy::post_zero_ancilla) {
      EXPECT_EQ(lrus_total, 7);
      EXPECT_EQ(lrus_in_blocks, 7);
    } else {
      EXPECT_EQ(lrus_total, 0);
    }
  }
}

}  // namespace
}  // namespace lossft
