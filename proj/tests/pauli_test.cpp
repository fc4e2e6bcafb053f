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

#include "lossft/pauli.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>
#include <vector>

namespace lossft {
namespace {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;  // dense, row-major

Mat letter_matrix(char c) {
  switch (c) {
    case 'I':
      return {{1, 0}, {0, 1}};
    case 'X':
      return {{0, 1}, {1, 0}};
    case 'Y':
      return {{0, C(0, -1)}, {C(0, 1), 0}};
    default:  // 'Z'
      return {{1, 0}, {0, -1}};
  }
}

Mat kron(const Mat& a, const Mat& b) {
  size_t n = a.size(), m = b.size();
  Mat r(n * m, std::vector<C>(n * m));
  for (size_t i = 0; i < n; i++)
    for (size_t j = 0; j < n; j++)
      for (size_t k = 0; k < m; k++)
        for (size_t l = 0; l < m; l++) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return r;
}

Mat matmul(const Mat& a, const Mat& b) {
  size_t n = a.size();
  Mat r(n, std::vector<C>(n, 0));
  for (size_t i = 0; i < n; i++)
    for (size_t k = 0; k < n; k++)
      for (size_t j = 0; j < n; j++) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// i^phase * X^x Z^z qubit-wise; entries stay exact integers (or ±i multiples),
// so operator== on complex<double> is exact.
Mat to_matrix(const Pauli& p) {
  Mat m = {{1}};
  for (int q = 0; q < p.num_qubits(); q++) {
    Mat letter = matmul(letter_matrix(p.x.get(q) ? 'X' : 'I'), letter_matrix(p.z.get(q) ? 'Z' : 'I'));
    m = kron(m, letter);
  }
  C ph = 1;
  for (int k = 0; k < (p.phase & 3); k++) ph *= C(0, 1);
  for (auto& row : m)
    for (auto& e : row) e *= ph;
  return m;
}

TEST(Pauli, FromStringToString) {
  Pauli p = Pauli::from_string("+XZI");
  EXPECT_EQ(p.num_qubits(), 3);
  EXPECT_EQ(p.at(0), 'X');
  EXPECT_EQ(p.at(1), 'Z');
  EXPECT_EQ(p.at(2), 'I');
  EXPECT_EQ(p.sign(), 1);
  EXPECT_EQ(p.to_string(), "+XZI");

  Pauli q = Pauli::from_string("-IYZ");
  EXPECT_EQ(q.at(1), 'Y');
  EXPECT_EQ(q.sign(), -1);
  EXPECT_EQ(q.to_string(), "-IYZ");

  EXPECT_EQ(Pauli::from_string("XX").to_string(), "+XX");
  EXPECT_THROW(Pauli::from_string("XQ"), std::invalid_argument);
}

TEST(Pauli, SingleAndSet) {
  Pauli p = Pauli::single(4, 2, 'Y');
  EXPECT_EQ(p.to_string(), "+IIYI");
  EXPECT_EQ(p.weight(), 1);
  p.set(0, 'Z');
  p.set(2, 'I');
  EXPECT_EQ(p.to_string(), "+ZIII");
  EXPECT_EQ(Pauli(3).to_string(), "+III");
  EXPECT_TRUE(Pauli(3).is_identity());
}

TEST(Pauli, AllSignedSingleQubitProductsMatchDense) {
  const char* letters = "IXYZ";
  for (int a = 0; a < 8; a++) {
    for (int b = 0; b < 8; b++) {
      Pauli p = Pauli::single(1, 0, letters[a & 3]);
      if (a & 4) p.negate();
      Pauli q = Pauli::single(1, 0, letters[b & 3]);
      if (b & 4) q.negate();
      Pauli prod = p * q;
      EXPECT_EQ(to_matrix(prod), matmul(to_matrix(p), to_matrix(q)))
          << p.to_string() << " * " << q.to_string();
    }
  }
}

TEST(Pauli, XZCarriesStrayFactorOfI) {
  Pauli xz = Pauli::single(1, 0, 'X') * Pauli::single(1, 0, 'Z');
  // XZ = -iY: Hermitian sign() is undefined, but the matrix is still exact.
  EXPECT_THROW(xz.sign(), std::logic_error);
  Mat m = to_matrix(xz);
  EXPECT_EQ(m[0][1], C(0, -1) * C(0, -1));  // (-i)·(Y[0][1]) = (-i)(-i) = -1
  // Squaring it lands back on a Hermitian operator: (XZ)^2 = -I.
  Pauli sq = xz * xz;
  EXPECT_EQ(sq.sign(), -1);
  EXPECT_EQ(sq.weight(), 0);
}

TEST(Pauli, RandomThreeQubitProductsMatchDense) {
  std::mt19937_64 rng(777);
  const char* letters = "IXYZ";
  for (int trial = 0; trial < 200; trial++) {
    int n = 1 + int(rng() % 3);
    Pauli p(n), q(n);
    for (int i = 0; i < n; i++) {
      p.set(i, letters[rng() & 3]);
      q.set(i, letters[rng() & 3]);
    }
    if (rng() & 1) p.negate();
    if (rng() & 1) q.negate();
    Pauli prod = p * q;
    EXPECT_EQ(to_matrix(prod), matmul(to_matrix(p), to_matrix(q)));
    // Commutation: PQ = ±QP, sign decided by the symplectic form.
    Pauli rev = q * p;
    Mat mp = to_matrix(prod), mr = to_matrix(rev);
    if (p.commutes_with(q)) {
      EXPECT_EQ(prod, rev);
    } else {
      Pauli neg = rev;
      neg.negate();
      EXPECT_EQ(prod, neg);
      EXPECT_NE(mp, mr);
    }
  }
}

TEST(Pauli, CommutesWithDenseCrossCheck) {
  // Anticommuting iff overlapping in exactly an odd number of {X,Z} clashes.
  EXPECT_FALSE(Pauli::from_string("XXI").commutes_with(Pauli::from_string("ZII")));
  EXPECT_TRUE(Pauli::from_string("XXI").commutes_with(Pauli::from_string("ZZI")));
  EXPECT_TRUE(Pauli::from_string("XYZ").commutes_with(Pauli::from_string("XYZ")));
  EXPECT_FALSE(Pauli::from_string("IIY").commutes_with(Pauli::from_string("IIZ")));
}

TEST(Pauli, WeightAndIdentity) {
  EXPECT_EQ(Pauli::from_string("XIYZ").weight(), 3);
  Pauli p = Pauli::from_string("XX") * Pauli::from_string("XX");
  EXPECT_TRUE(p.is_identity());
  Pauli q = Pauli::from_string("-XX") * Pauli::from_string("-XX");
  EXPECT_TRUE(q.is_identity());
}

}  // namespace
}  // namespace lossft
