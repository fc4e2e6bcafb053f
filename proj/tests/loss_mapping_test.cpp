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

#include <gtest/gtest.h>

#include <random>

namespace lossft {
namespace {

// Loss of qubit 0 right at its preparation, followed by a control role and
// then a target role: the paper-style case needing two replacements.
Circuit control_then_target_circuit() {
  Circuit c(3);
  c.prep_z(0);
  c.prep_z(1);
  c.prep_x(2);
  c.cnot(0, 1);
  c.cnot(2, 0);
  c.meas_z(0, "m0");
  c.meas_z(1, "m1");
  c.meas_x(2, "m2");
  return c;
}

TEST(RoleProfile, CollectsPostLossUsesInOrder) {
  Circuit c = control_then_target_circuit();
  RoleProfile p = role_profile(c, 0, 0);
  EXPECT_EQ(p.qubit, 0);
  EXPECT_EQ(p.loss_index, 0);
  ASSERT_EQ(p.events.size(), 3u);
  EXPECT_EQ(p.events[0].second, RoleEvent::cnot_control);
  EXPECT_EQ(p.events[1].second, RoleEvent::cnot_target);
  EXPECT_EQ(p.events[2].second, RoleEvent::meas_z);
  EXPECT_EQ(p.events[0].first, 3);
  EXPECT_EQ(p.events[1].first, 4);
  EXPECT_EQ(p.events[2].first, 5);
}

TEST(RoleProfile, CzCountsAsControlStyleAndLruEndsWalk) {
  Circuit c(2);
  c.prep_z(0);
  c.prep_z(1);
  c.cz(0, 1);
  c.lru(0);
  c.cnot(0, 1);  // after the LRU: outside the walk
  RoleProfile p = role_profile(c, 0, 0);
  ASSERT_EQ(p.events.size(), 2u);
  EXPECT_EQ(p.events[0].second, RoleEvent::cz_party);
  EXPECT_EQ(p.events[1].second, RoleEvent::lru);
}

TEST(RoleProfile, RejectsUnsupportedPostLossOps) {
  Circuit c(1);
  c.prep_z(0);
  c.hadamard(0);
  EXPECT_THROW(role_profile(c, 0, 0), std::invalid_argument);
  Circuit d(1);
  d.prep_z(0);
  d.wait(0);
  d.prep_z(0);
  EXPECT_THROW(role_profile(d, 1, 0), std::invalid_argument);
  // The loss op itself must act on the qubit and not be a measurement.
  Circuit e(2);
  e.prep_z(0);
  e.prep_z(1);
  e.meas_z(0, "m");
  EXPECT_THROW(role_profile(e, 2, 0), std::invalid_argument);
  EXPECT_THROW(role_profile(e, 1, 0), std::invalid_argument);
}

TEST(ReplacementPlan, SingleRoleRunsNeedOneInsertion) {
  // Control-style run ending in the matched X measurement.
  Circuit c(3);
  c.prep_z(0);
  c.prep_z(1);
  c.prep_z(2);
  c.cnot(0, 1);
  c.cz(0, 2);
  c.meas_x(0, "m");
  ReplacementPlan p = replacement_plan(c, 0, 0);
  ASSERT_TRUE(p.single_replacement());
  EXPECT_EQ(p.insertions[0].op_index, 3);
  EXPECT_EQ(p.insertions[0].kind, '0');
  EXPECT_FALSE(p.insertions[0].at_measurement);

  // Target-style run ending in the matched Z measurement.
  Circuit t(2);
  t.prep_z(0);
  t.prep_x(1);
  t.cnot(1, 0);
  t.cnot(1, 0);
  t.meas_z(0, "m");
  ReplacementPlan tp = replacement_plan(t, 0, 0);
  ASSERT_TRUE(tp.single_replacement());
  EXPECT_EQ(tp.insertions[0].op_index, 2);
  EXPECT_EQ(tp.insertions[0].kind, '+');
}

TEST(ReplacementPlan, RoleSwitchesAndMismatchedReadoutsInsert) {
  Circuit c = control_then_target_circuit();
  ReplacementPlan p = replacement_plan(c, 0, 0);
  // |0> before the control use, |+> before the target use; the final Z
  // readout matches the preceding target role, so no third insertion.
  ASSERT_EQ(p.insertions.size(), 2u);
  EXPECT_EQ(p.insertions[0].op_index, 3);
  EXPECT_EQ(p.insertions[0].kind, '0');
  EXPECT_EQ(p.insertions[1].op_index, 4);
  EXPECT_EQ(p.insertions[1].kind, '+');
  EXPECT_FALSE(p.insertions[1].at_measurement);

  // Basis-mismatched readout forces an insertion at the measurement.
  Circuit m(2);
  m.prep_z(0);
  m.prep_z(1);
  m.cnot(0, 1);
  m.meas_z(0, "m");  // Z readout after a control-style role: mismatched
  ReplacementPlan mp = replacement_plan(m, 0, 0);
  ASSERT_EQ(mp.insertions.size(), 2u);
  EXPECT_FALSE(mp.insertions[0].at_measurement);
  EXPECT_TRUE(mp.insertions[1].at_measurement);
  EXPECT_EQ(mp.insertions[1].op_index, 3);
}

TEST(ReplacementPlan, LruTerminatesThePlan) {
  Circuit c(2);
  c.prep_z(0);
  c.prep_z(1);
  c.cnot(0, 1);
  c.lru(0);
  c.cnot(0, 1);
  c.meas_x(0, "m");
  ReplacementPlan p = replacement_plan(c, 0, 0);
  // One insertion for the pre-LRU control use; the LRU re-initializes the
  // qubit, so nothing after it belongs to the rewriting.
  ASSERT_TRUE(p.single_replacement());
  EXPECT_EQ(p.insertions[0].op_index, 2);
}

TEST(VerifyPlan, ControlThenTargetNeedsBothReplacements) {
  Circuit c = control_then_target_circuit();
  ReplacementPlan full = replacement_plan(c, 0, 0);
  ASSERT_EQ(full.insertions.size(), 2u);
  ReplacementPlan single;
  single.insertions.push_back(full.insertions[0]);
  EquivResult bad = verify_plan(c, 0, 0, single);
  EXPECT_FALSE(bad.equivalent);
  EXPECT_FALSE(bad.witness.empty());
  EquivResult good = verify_plan(c, 0, 0, full);
  EXPECT_TRUE(good.equivalent) << good.witness;
}

TEST(VerifyPlan, SeededRoleConsistentCorpusIsEquivalent) {
  // Same corpus the command-line equivalence check runs by default:
  // 200 six-qubit circuits, seed 0, alternating control/target role runs.
  std::mt19937_64 rng(0);
  int equivalent = 0;
  for (int i = 0; i < 200; i++) {
    bool control_role = i % 2 == 0;
    int q = int(rng() % 6);
    int loss_index = -1;
    Circuit c = random_role_circuit(rng, 6, q, control_role, false, &loss_index);
    EquivResult res = verify_equivalence(c, loss_index, q);
    EXPECT_TRUE(res.equivalent) << "corpus index " << i << ": " << res.witness;
    if (res.equivalent) equivalent++;
  }
  EXPECT_EQ(equivalent, 200);
}

TEST(VerifyPlan, MixedRoleCircuitsVerifyWithMultiInsertionPlans) {
  std::mt19937_64 rng(99);
  int multi = 0;
  for (int i = 0; i < 40; i++) {
    int q = int(rng() % 5);
    int loss_index = -1;
    Circuit c = random_role_circuit(rng, 5, q, i % 2 == 0, true, &loss_index);
    ReplacementPlan p = replacement_plan(c, loss_index, q);
    if (!p.single_replacement()) multi++;
    EquivResult res = verify_equivalence(c, loss_index, q);
    EXPECT_TRUE(res.equivalent) << "index " << i << ": " << res.witness;
  }
  // The mixed-role generator must actually exercise multi-insertion plans.
  EXPECT_GT(multi, 0);
}

TEST(RoleEventNames, AreStable) {
  EXPECT_STREQ(to_string(RoleEvent::cnot_control), "cnot-control");
  EXPECT_STREQ(to_string(RoleEvent::cnot_target), "cnot-target");
  EXPECT_STREQ(to_string(RoleEvent::cz_party), "cz-party");
  EXPECT_STREQ(to_string(RoleEvent::meas_z), "meas-z");
  EXPECT_STREQ(to_string(RoleEvent::meas_x), "meas-x");
  EXPECT_STREQ(to_string(RoleEvent::lru), "lru");
}

}  // namespace
}  // namespace lossft
