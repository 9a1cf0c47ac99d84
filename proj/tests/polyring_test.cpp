// Copyright 2026 The thetamul Authors.
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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "support.hpp"
#include "thetamul/errors.hpp"
#include "thetamul/polyring.hpp"
#include "thetamul/reference.hpp"

namespace {

using namespace thetamul;
using namespace testing_support;

const Int kQ("3141592653589793238462833");
const Int kTheta("2542533431566904450922735");
const Int kR(42602761);

CycloPoly poly(std::vector<std::string> c) { return CycloPoly::from_strings(c); }

CycloPoly random_poly(std::size_t m, std::int64_t bound) {
  CycloPoly f(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = Int(static_cast<long>(uniform_signed(-bound, bound)));
  return f;
}

// Plain (non-wrapped) product of two coefficient lists.
std::vector<Int> plain_product(const CycloPoly& f, const CycloPoly& g) {
  std::vector<Int> out(f.m() + g.m() - 1, 0);
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < g.m(); ++j) out[i + j] += f[i] * g[j];
  return out;
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(CycloPoly(4)), 0);
  EXPECT_EQ(norm(poly({"-3202352", "-5013490", "951670", "-3366162"})), 5013490);
  EXPECT_EQ(norm(poly({"-16", "1"})), 16);
}

TEST(NegacyclicMul, Examples) {
  EXPECT_EQ(negacyclic_mul(poly({"1", "1"}), poly({"1", "1"})), poly({"0", "2"}));
  CycloPoly U = poly({"4285386", "-3089740", "3692532", "3740635"});
  CycloPoly V = poly({"-3075767", "-2839272", "-4018180", "4629959"});
  EXPECT_EQ(negacyclic_mul(U, V),
            poly({"26582459129078", "-4729783170300", "-37123194804209", "10266868543625"}));
}

TEST(NegacyclicMul, MatchesQuadraticOracle) {
  for (std::size_t m : {1u, 2u, 4u, 8u})
    for (int i = 0; i < 200; ++i) {
      CycloPoly f = random_poly(m, 100), g = random_poly(m, 100);
      EXPECT_EQ(negacyclic_mul(f, g), reference::naive_negacyclic(f, g));
    }
  for (int i = 0; i < 20; ++i) {
    CycloPoly f(64), g(64);
    for (std::size_t k = 0; k < 64; ++k) {
      f[k] = random_bits(200) - random_bits(200);
      g[k] = random_bits(150) - random_bits(150);
    }
    EXPECT_EQ(negacyclic_mul(f, g), reference::naive_negacyclic(f, g));
  }
}

TEST(NegacyclicMul, CustomMultiplierIsUsed) {
  static int calls = 0;
  IntMultiplier counting = [](const Int& a, const Int& b) -> Int {
    ++calls;
    return a * b;
  };
  CycloPoly f = random_poly(8, 1000), g = random_poly(8, 1000);
  EXPECT_EQ(negacyclic_mul(f, g, counting), reference::naive_negacyclic(f, g));
  EXPECT_GT(calls, 0);
}

TEST(NegacyclicMulMod, Examples) {
  EXPECT_TRUE(negacyclic_mul_mod(poly({"5", "7"}), CycloPoly(2), 131).is_zero());
  EXPECT_EQ(negacyclic_mul_mod(poly({"-16", "1"}), poly({"108", "105"}), 131), poly({"1", "0"}));
  CycloPoly F = poly({"26582459129078", "-4729783170300", "-37123194804209", "10266868543625"});
  CycloPoly J = poly({"8514380", "30962874", "6504907", "17106162"});
  EXPECT_EQ(balanced_coeffs(negacyclic_mul_mod(F, J, kR), kR),
            poly({"-11934644", "20464841", "-14729381", "3932274"}));
}

TEST(NegacyclicMulMod, AgreesWithReducedProduct) {
  for (int i = 0; i < 200; ++i) {
    std::size_t m = std::size_t{1} << uniform(0, 4);
    Int r = int_from_u64(uniform(2, 1'000'000));
    CycloPoly f = random_poly(m, 5'000'000), g = random_poly(m, 5'000'000);
    CycloPoly got = negacyclic_mul_mod(f, g, r);
    CycloPoly want = reference::naive_negacyclic(f, g);
    for (std::size_t k = 0; k < m; ++k) {
      Int w = want[k] % r;
      if (w < 0) w += r;
      EXPECT_EQ(got[k], w);
    }
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_pack(CycloPoly(4), 8), 0);
  EXPECT_EQ(kronecker_pack(poly({"1", "1"}), 8), 0x0101);
}

TEST(Kronecker, ProductOfPacksIsConvolution) {
  for (int i = 0; i < 100; ++i) {
    std::size_t m = std::size_t{1} << uniform(0, 4);
    CycloPoly f = random_poly(m, 1000), g = random_poly(m, 1000);
    int slot = 2 + 20 + 5 + 2;
    Int z = kronecker_pack(f, slot) * kronecker_pack(g, slot);
    EXPECT_EQ(kronecker_unpack(z, 2 * m - 1, slot), plain_product(f, g));
  }
}

TEST(Kronecker, UnpackInvertsPack) {
  for (int i = 0; i < 100; ++i) {
    CycloPoly f = random_poly(8, (1 << 15) - 1);
    EXPECT_EQ(kronecker_unpack(kronecker_pack(f, 17), 8, 17), std::vector<Int>(f.coeffs().begin(), f.coeffs().end()));
  }
  EXPECT_THROW(kronecker_pack(poly({"128"}), 8), SlotOverflow);
}

TEST(EvalAt, Examples) {
  EXPECT_EQ(eval_at(CycloPoly(4), kTheta, kQ), 0);
  EXPECT_EQ(eval_at(poly({"1317423", "-5192184", "1849981", "-4133936"}), kTheta, kQ),
            Int("2718281828459045235360288"));
  EXPECT_EQ(eval_at(poly({"-3202352", "-5013490", "951670", "3366162"}), kTheta, kQ),
            Int("2718281828459045235360288"));
  EXPECT_EQ(eval_at(poly({"-292956", "1136523", "-927319", "-394297"}), kTheta, kQ), 0);
}

TEST(EvalAt, MatchesDirectSum) {
  for (int i = 0; i < 200; ++i) {
    CycloPoly f = random_poly(8, 1'000'000'000);
    Int q = random_bits(90) + 2, theta = random_below(q);
    EXPECT_EQ(eval_at(f, theta, q), eval_direct({f.coeffs().begin(), f.coeffs().end()}, theta, q));
  }
}

TEST(CycloPoly, ArithmeticAndPrinting) {
  CycloPoly f = poly({"3", "-2"}), g = poly({"1", "5"});
  EXPECT_EQ(f + g, poly({"4", "3"}));
  EXPECT_EQ(f - g, poly({"2", "-7"}));
  EXPECT_EQ(-f, poly({"-3", "2"}));
  EXPECT_EQ(scale(f, 3), poly({"9", "-6"}));
  EXPECT_EQ(poly({"-16", "1"}).to_string(), "y - 16");
  EXPECT_EQ(reduce_coeffs(poly({"-1", "132"}), 131), poly({"130", "1"}));
  EXPECT_EQ(balanced_coeffs(poly({"130", "66"}), 131), poly({"-1", "-65"}));
  EXPECT_THROW(CycloPoly(3), InvalidArgument);
  EXPECT_THROW(f + CycloPoly(4), InvalidArgument);
}

}  // namespace
