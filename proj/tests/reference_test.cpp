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

#include <vector>

#include "support.hpp"
#include "thetamul/errors.hpp"
#include "thetamul/reference.hpp"

namespace {

using namespace thetamul;
using namespace testing_support;

TEST(ReferenceMultiply, Examples) {
  Int x = random_bits(5000);
  EXPECT_EQ(reference::reference_multiply(0, x), 0);
  EXPECT_EQ(reference::reference_multiply(3, 4), 12);
  EXPECT_EQ(reference::reference_multiply(-3, 4), -12);
}

TEST(ReferenceMultiply, AgreesWithGmp) {
  for (std::size_t bits : {1u, 63u, 64u, 65u, 640u, 4000u, 50000u, 300000u}) {
    Int u = random_bits(bits), v = random_bits(bits / 3 + 1);
    EXPECT_EQ(reference::reference_multiply(u, v), u * v) << bits;
    EXPECT_EQ(reference::reference_multiply(u, u), u * u) << bits;
  }
}

TEST(ReferenceMultiply, CommutativeAndAssociative) {
  for (int i = 0; i < 50; ++i) {
    Int a = random_bits(uniform(1, 3000)), b = random_bits(uniform(1, 3000)), c = random_bits(uniform(1, 3000));
    using reference::reference_multiply;
    EXPECT_EQ(reference_multiply(a, b), reference_multiply(b, a));
    EXPECT_EQ(reference_multiply(reference_multiply(a, b), c), reference_multiply(a, reference_multiply(b, c)));
  }
}

TEST(ReferenceMultiply, OutParameter) {
  Int out = 99;
  for (std::uint64_t u = 0; u < 300; u += 7)
    for (std::uint64_t v = 0; v < 65536; v += 4099) {
      reference::reference_multiply(int_from_u64(u), int_from_u64(v), out);
      EXPECT_EQ(out, int_from_u64(u * v));
    }
}

TEST(BruteForceShortVector, Examples) {
  CycloPoly P = reference::brute_force_short_vector(257, 2, 16);
  EXPECT_EQ(P, CycloPoly(std::vector<Int>{-16, 1}));
  // theta = -1 (mod 97), m = 1: the first constant in [-97, 97] divisible by 97.
  EXPECT_EQ(reference::brute_force_short_vector(97, 1, 96), CycloPoly(std::vector<Int>{-97}));
}

TEST(NaiveOracles, SmallCases) {
  EXPECT_EQ(reference::naive_dft({1, 1, 1, 1}, 4, 17), (std::vector<Int>{4, 0, 0, 0}));
  EXPECT_EQ(reference::naive_cyclic_convolution({1, 2}, {3, 4}, 101), (std::vector<Int>{11, 10}));
  CycloPoly f(std::vector<Int>{1, 1});
  EXPECT_EQ(reference::naive_negacyclic(f, f), CycloPoly(std::vector<Int>{0, 2}));
}

}  // namespace
