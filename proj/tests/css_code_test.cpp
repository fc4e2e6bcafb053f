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

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

namespace lossft {
namespace {

BinMat hamming() { return BinMat::from_strings({"0001111", "0110011", "1010101"}); }

BitVec word7(int w) {
  BitVec v(7);
  for (int i = 0; i < 7; i++)
    if ((w >> i) & 1) v.set(i, true);
  return v;
}

TEST(CssCode, SteaneParameters) {
  const CssCode& c = CssCode::steane();
  EXPECT_EQ(c.n(), 7);
  EXPECT_EQ(c.k(), 1);
  EXPECT_EQ(c.distance(), 3);
  EXPECT_TRUE(c.hx() == hamming());
  EXPECT_TRUE(c.hz() == hamming());
}

TEST(CssCode, LogicalRepresentativesAreValid) {
  const CssCode& c = CssCode::steane();
  const BitVec& lx = c.logical_x();
  const BitVec& lz = c.logical_z();
  // Logical X commutes with every Z generator and is not itself a stabilizer.
  EXPECT_FALSE(c.hz().mul_vec(lx).any());
  EXPECT_FALSE(c.hx().in_row_space(lx));
  EXPECT_FALSE(c.hx().mul_vec(lz).any());
  EXPECT_FALSE(c.hz().in_row_space(lz));
  // Conjugate pair: an odd overlap.
  EXPECT_TRUE(BitVec::dot(lx, lz));
  EXPECT_EQ(lx.popcount(), 3);
  EXPECT_EQ(lz.popcount(), 3);
}

TEST(CssCode, DistanceByExhaustion) {
  // Independent re-derivation: lightest X-type logical operator over all 128
  // supports (commutes with all Z checks, outside the X stabilizer span).
  int best = 8;
  BinMat h = hamming();
  for (int w = 1; w < 128; w++) {
    BitVec v = word7(w);
    if (h.mul_vec(v).any()) continue;
    if (h.in_row_space(v)) continue;
    best = std::min(best, v.popcount());
  }
  EXPECT_EQ(best, 3);
  EXPECT_EQ(CssCode::steane().distance(), 3);
}

TEST(CssCode, SyndromeOfSingleErrors) {
  const CssCode& c = CssCode::steane();
  for (int q = 0; q < 7; q++) {
    BitVec e(7);
    e.set(q, true);
    Syndrome sx = c.syndrome(Pauli::single(7, q, 'X'));
    EXPECT_EQ(sx.z_checks, c.hz().mul_vec(e));
    EXPECT_FALSE(sx.x_checks.any());

    Syndrome sz = c.syndrome(Pauli::single(7, q, 'Z'));
    EXPECT_EQ(sz.x_checks, c.hx().mul_vec(e));
    EXPECT_FALSE(sz.z_checks.any());

    Syndrome sy = c.syndrome(Pauli::single(7, q, 'Y'));
    EXPECT_TRUE(sy.z_checks.any());
    EXPECT_TRUE(sy.x_checks.any());
    EXPECT_FALSE(sy.trivial());
  }
  EXPECT_TRUE(c.syndrome(Pauli(7)).trivial());
}

TEST(CssCode, DecodeTablesAreCompleteAndExact) {
  // The Hamming code is perfect: every nonzero syndrome names a unique qubit.
  const CssCode& c = CssCode::steane();
  for (int q = 0; q < 7; q++) {
    for (char t : {'X', 'Y', 'Z'}) {
      Pauli e = Pauli::single(7, q, t);
      Pauli corr = c.decode(c.syndrome(e));
      EXPECT_EQ(corr.x, e.x) << "qubit " << q << " type " << t;
      EXPECT_EQ(corr.z, e.z);
    }
  }
  Pauli none = c.decode(c.syndrome(Pauli(7)));
  EXPECT_FALSE(none.x.any());
  EXPECT_FALSE(none.z.any());
}

TEST(CssCode, LogicalEffectClassification) {
  const CssCode& c = CssCode::steane();
  // A stabilizer generator is logically trivial.
  Pauli stab(7);
  for (int q : {3, 4, 5, 6}) stab.set(q, 'X');
  EXPECT_EQ(c.logical_effect(stab), LogicalTag::identity);

  Pauli lx(7), lz(7), ly(7);
  for (int q = 0; q < 7; q++) {
    if (c.logical_x().get(q)) lx.set(q, 'X');
    if (c.logical_z().get(q)) lz.set(q, 'Z');
  }
  ly = lx * lz;
  EXPECT_EQ(c.logical_effect(lx), LogicalTag::logical_x);
  EXPECT_EQ(c.logical_effect(lz), LogicalTag::logical_z);
  EXPECT_EQ(c.logical_effect(ly), LogicalTag::logical_y);
  // The tag classifies the residual after the lookup correction: a weight-1
  // error decodes away cleanly, while a weight-2 error is "corrected" onto a
  // weight-3 logical representative (the distance-3 failure mode).
  EXPECT_EQ(c.logical_effect(Pauli::single(7, 2, 'X')), LogicalTag::identity);
  Pauli two_x(7);
  two_x.set(0, 'X');
  two_x.set(1, 'X');
  EXPECT_EQ(c.logical_effect(two_x), LogicalTag::logical_x);
  Pauli two_z(7);
  two_z.set(0, 'Z');
  two_z.set(1, 'Z');
  EXPECT_EQ(c.logical_effect(two_z), LogicalTag::logical_z);
  EXPECT_EQ(c.logical_effect(Pauli(7)), LogicalTag::identity);
}

// Independent bit-geometry decoder for transversal measurement words.
struct RefDecode {
  BitVec syndrome, correction;
  int logical_bit;
};
RefDecode reference_decode(const BitVec& m) {
  BinMat h = hamming();
  BitVec s = h.mul_vec(m);
  BitVec e(7);
  if (s.any()) {
    for (int q = 0; q < 7; q++) {
      BitVec cand(7);
      cand.set(q, true);
      if (h.mul_vec(cand) == s) {
        e = cand;
        break;
      }
    }
  }
  BitVec fixed = m;
  fixed ^= e;
  // Any weight-3 logical support works: reps differ by a dual codeword, which
  // has even overlap with every corrected word.
  BitVec logical = BitVec::from_string("1110000");
  return {s, e, BitVec::dot(fixed, logical) ? 1 : 0};
}

TEST(CssCode, DecodeMeasurementMatchesReferenceOnAllWords) {
  const CssCode& c = CssCode::steane();
  for (int w = 0; w < 128; w++) {
    BitVec m = word7(w);
    RefDecode ref = reference_decode(m);
    for (char basis : {'z', 'x'}) {
      MeasDecode d = c.decode_measurement(m, basis);
      EXPECT_TRUE(d.in_table);
      EXPECT_EQ(d.syndrome, ref.syndrome) << "word " << w << " basis " << basis;
      EXPECT_EQ(d.correction, ref.correction);
      EXPECT_EQ(d.logical_bit, ref.logical_bit);
    }
  }
}

TEST(CssCode, BuildRejectsMalformedInput) {
  // Non-orthogonal families.
  EXPECT_THROW(CssCode::build(BinMat::from_strings({"11"}), BinMat::from_strings({"10"})),
               std::invalid_argument);
  // No logical qubit left.
  EXPECT_THROW(CssCode::build(BinMat::from_strings({"10"}), BinMat::from_strings({"01"})),
               std::invalid_argument);
}

TEST(CssCode, FourTwoTwoCode) {
  CssCode c = CssCode::build(BinMat::from_strings({"1111"}), BinMat::from_strings({"1111"}));
  EXPECT_EQ(c.n(), 4);
  EXPECT_EQ(c.k(), 2);
  EXPECT_EQ(c.distance(), 2);
  // Distance 2 corrects nothing: single errors are detectable only, and the
  // lookup decode has no entry for their syndromes.
  EXPECT_EQ(c.logical_effect(Pauli::single(4, 0, 'X')), LogicalTag::detectable);
  EXPECT_THROW(c.decode(c.syndrome(Pauli::single(4, 0, 'X'))), std::invalid_argument);

  // The three X-type weight-2 cosets are the two single-logical Xs and their
  // k-mixing product, in some representative-dependent order.
  std::vector<LogicalTag> tags;
  for (int partner : {1, 2, 3}) {
    Pauli p(4);
    p.set(0, 'X');
    p.set(partner, 'X');
    tags.push_back(c.logical_effect(p));
  }
  EXPECT_EQ(std::count(tags.begin(), tags.end(), LogicalTag::logical_x), 2);
  EXPECT_EQ(std::count(tags.begin(), tags.end(), LogicalTag::uncorrectable_after_decode), 1);
}

TEST(CssCode, SerializeParseRoundTrip) {
  const CssCode& c = CssCode::steane();
  std::string text = c.serialize();
  CssCode back = CssCode::parse(text);
  EXPECT_EQ(back.n(), 7);
  EXPECT_EQ(back.k(), 1);
  EXPECT_EQ(back.distance(), 3);
  EXPECT_TRUE(back.hx() == c.hx());
  EXPECT_TRUE(back.hz() == c.hz());
  EXPECT_EQ(back.serialize(), text);
}

}  // namespace
}  // namespace lossft
