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

#include <gtest/gtest.h>

#include <map>
#include <set>

namespace lossft {
namespace {

DenseMatrix matrix_of(std::initializer_list<int> entries, int dims, int log2_den) {
  DenseMatrix m = DenseMatrix::zero(dims);
  m.log2_den = log2_den;
  int i = 0;
  for (int e : entries) m.m[i++].re = e;
  m.reduce();
  return m;
}

std::vector<DenseBranch> oracle(const Circuit& c, const std::vector<FaultSpec>& faults) {
  OracleOptions oo;
  return oracle_run(c, faults, oo);
}

TEST(Oracle, PlusStateDensity) {
  Circuit c(1);
  c.prep_z(0);
  c.hadamard(0);
  auto branches = oracle(c, {});
  ASSERT_EQ(branches.size(), 1u);
  DenseMatrix rho = reduced_density(branches[0], {0});
  rho.reduce();
  EXPECT_TRUE(rho == matrix_of({1, 1, 1, 1}, 2, 1));
}

TEST(Oracle, HadamardSquaredIsExactlyIdentity) {
  Circuit c(1);
  c.prep_z(0);
  c.hadamard(0);
  c.hadamard(0);
  auto branches = oracle(c, {});
  ASSERT_EQ(branches.size(), 1u);
  DenseMatrix rho = reduced_density(branches[0], {0});
  rho.reduce();
  EXPECT_TRUE(rho == matrix_of({1, 0, 0, 0}, 2, 0));
}

TEST(Oracle, BellPairDensities) {
  Circuit c(2);
  c.prep_z(0);
  c.prep_z(1);
  c.hadamard(0);
  c.cnot(0, 1);
  auto branches = oracle(c, {});
  ASSERT_EQ(branches.size(), 1u);
  // Full state: |00>+|11> with qubit 0 the least significant index bit.
  DenseMatrix full = reduced_density(branches[0], {0, 1});
  full.reduce();
  DenseMatrix expect = DenseMatrix::zero(4);
  expect.log2_den = 1;
  for (int r : {0, 3})
    for (int col : {0, 3}) expect.m[r * 4 + col].re = 1;
  expect.reduce();
  EXPECT_TRUE(full == expect);
  // One leg alone is maximally mixed.
  DenseMatrix half = reduced_density(branches[0], {1});
  half.reduce();
  EXPECT_TRUE(half == matrix_of({1, 0, 0, 1}, 2, 1));
}

TEST(Oracle, FairMeasurementBranching) {
  Circuit c(1);
  c.prep_x(0);
  c.meas_z(0, "m");
  auto branches = oracle(c, {});
  ASSERT_EQ(branches.size(), 2u);
  std::set<std::string> paths;
  for (const auto& b : branches) {
    paths.insert(b.path);
    EXPECT_TRUE(b.weight == (Dyadic{1, 1}));
    EXPECT_EQ(b.classical[0], b.path == "1" ? 1 : 0);
    DenseMatrix rho = reduced_density(b, {0});
    rho.reduce();
    EXPECT_TRUE(rho == (b.classical[0] ? matrix_of({0, 0, 0, 1}, 2, 0)
                                       : matrix_of({1, 0, 0, 0}, 2, 0)));
  }
  EXPECT_EQ(paths, (std::set<std::string>{"0", "1"}));
}

TEST(Oracle, LossPurifiesIntoCollapseBranches) {
  Circuit c(2);
  c.prep_z(0);
  c.prep_z(1);
  c.hadamard(0);
  int64_t g = c.cnot(0, 1);
  auto branches = oracle(c, {FaultSpec::from_code(c, g, "IL")});
  ASSERT_EQ(branches.size(), 2u);
  std::set<std::string> paths;
  std::map<std::string, DenseMatrix> survivor;
  for (const auto& b : branches) {
    paths.insert(b.path);
    EXPECT_TRUE(b.weight == (Dyadic{1, 1}));
    EXPECT_FALSE(b.adversarial);
    EXPECT_TRUE(b.lost[1]);
    EXPECT_FALSE(b.lost[0]);
    DenseMatrix rho = reduced_density(b, {0});
    rho.reduce();
    survivor.emplace(b.path, rho);
  }
  EXPECT_EQ(paths, (std::set<std::string>{"s", "t"}));
  // The two branches carry the two computational states, one each.
  DenseMatrix zero = matrix_of({1, 0, 0, 0}, 2, 0);
  DenseMatrix one = matrix_of({0, 0, 0, 1}, 2, 0);
  EXPECT_TRUE((survivor.at("s") == zero && survivor.at("t") == one) ||
              (survivor.at("s") == one && survivor.at("t") == zero));
}

TEST(Oracle, LruReplacementIsAdversarialFourWay) {
  Circuit c(1);
  c.prep_z(0);
  c.hadamard(0);
  int64_t w = c.wait(0);
  c.lru(0);
  auto branches = oracle(c, {FaultSpec::from_code(c, w, "L")});
  ASSERT_EQ(branches.size(), 8u);
  std::map<char, DenseMatrix> by_completion;
  for (const auto& b : branches) {
    ASSERT_EQ(b.path.size(), 2u);
    EXPECT_TRUE(b.adversarial);
    EXPECT_FALSE(b.lost[0]);
    EXPECT_TRUE(b.weight == (Dyadic{1, 1}));
    DenseMatrix rho = reduced_density(b, {0});
    rho.reduce();
    by_completion.emplace(b.path[1], rho);
  }
  DenseMatrix zero = matrix_of({1, 0, 0, 0}, 2, 0);
  DenseMatrix one = matrix_of({0, 0, 0, 1}, 2, 0);
  EXPECT_TRUE(by_completion.at('I') == zero);
  EXPECT_TRUE(by_completion.at('X') == one);
  EXPECT_TRUE(by_completion.at('Y') == one);
  EXPECT_TRUE(by_completion.at('Z') == zero);
}

TEST(Oracle, SetwiseQubitKeepsFullWeight) {
  Circuit c(2);
  c.prep_x(0);
  c.prep_x(1);
  c.meas_z(0, "a");
  c.meas_z(1, "b");
  OracleOptions oo;
  oo.setwise_qubit = 0;
  auto branches = oracle_run(c, {}, oo);
  ASSERT_EQ(branches.size(), 4u);
  for (const auto& b : branches) {
    // Only qubit 1's fair coin halves the weight.
    EXPECT_TRUE(b.weight == (Dyadic{1, 1}));
  }
}

TEST(Oracle, CompletionInsertionsBranchFourWay) {
  Circuit c(1);
  c.prep_z(0);
  OracleOptions oo;
  oo.completions = {{0, 0}};
  auto branches = oracle_run(c, {}, oo);
  ASSERT_EQ(branches.size(), 4u);
  std::set<char> tokens;
  for (const auto& b : branches) {
    ASSERT_EQ(b.path.size(), 1u);
    tokens.insert(b.path[0]);
    EXPECT_TRUE(b.adversarial);
    EXPECT_TRUE(b.weight == Dyadic{});
    DenseMatrix rho = reduced_density(b, {0});
    rho.reduce();
    bool flipped = b.path[0] == 'X' || b.path[0] == 'Y';
    EXPECT_TRUE(rho == (flipped ? matrix_of({0, 0, 0, 1}, 2, 0)
                                : matrix_of({1, 0, 0, 0}, 2, 0)));
  }
  EXPECT_EQ(tokens, (std::set<char>{'I', 'X', 'Y', 'Z'}));
}

TEST(Oracle, AccumulateIsExact) {
  DenseMatrix acc = DenseMatrix::zero(2);
  DenseMatrix zero = matrix_of({1, 0, 0, 0}, 2, 0);
  DenseMatrix one = matrix_of({0, 0, 0, 1}, 2, 0);
  acc.accumulate(zero, Dyadic{1, 1});
  acc.accumulate(one, Dyadic{1, 1});
  acc.reduce();
  EXPECT_TRUE(acc == matrix_of({1, 0, 0, 1}, 2, 1));
}

TEST(Oracle, TableauExpansionMatchesOracleStates) {
  // Fixed non-trivial circuit executed by both routes.
  Circuit c(3);
  for (int q = 0; q < 3; q++) c.prep_z(q);
  c.hadamard(0);
  c.cnot(0, 1);
  c.cz(1, 2);
  c.hadamard(2);
  auto ob = oracle(c, {});
  ASSERT_EQ(ob.size(), 1u);
  RunOptions ro;
  RunResult er = run_circuit(c, {}, ro);
  ASSERT_EQ(er.branches.size(), 1u);
  for (const std::vector<int>& subset :
       std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}}) {
    DenseMatrix me = tableau_reduced_density(er.branches[0].tab, subset);
    DenseMatrix mo = reduced_density(ob[0], subset);
    me.reduce();
    mo.reduce();
    EXPECT_TRUE(me == mo);
  }
}

TEST(Oracle, TableauExpansionTreatsMissingQubitsAsZero) {
  Tableau t = Tableau::zeros(1);
  t.apply_pauli('X', 0);
  DenseMatrix rho = tableau_reduced_density(t, {0, 9});  // qubit 9 untracked
  rho.reduce();
  DenseMatrix expect = DenseMatrix::zero(4);
  expect.m[1 * 4 + 1].re = 1;  // |0>{9} (x) |1>{0}
  expect.reduce();
  EXPECT_TRUE(rho == expect);
}

TEST(Oracle, GuardsSlotAndBranchBudgets) {
  Circuit wide(3);
  for (int q = 0; q < 3; q++) wide.prep_x(q);
  for (int q = 0; q < 3; q++) wide.meas_z(q, "m" + std::to_string(q));
  OracleOptions tight;
  tight.branch_cap = 4;
  EXPECT_THROW(oracle_run(wide, {}, tight), TruncationError);
  OracleOptions narrow;
  narrow.max_slots = 2;
  EXPECT_THROW(oracle_run(wide, {}, narrow), std::invalid_argument);
}

}  // namespace
}  // namespace lossft
