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
#include "thetamul/dft.hpp"
#include "thetamul/errors.hpp"
#include "thetamul/reference.hpp"

namespace {

using namespace thetamul;
using namespace testing_support;

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

std::vector<Int> random_vector(std::size_t n, const Int& q) {
  std::vector<Int> f(n);
  for (Int& x : f) x = random_below(q);
  return f;
}

std::vector<std::uint64_t> to_words(const std::vector<Int>& f) {
  std::vector<std::uint64_t> out;
  for (const Int& x : f) out.push_back(int_to_u64(x));
  return out;
}

std::vector<Int> from_words(const std::vector<std::uint64_t>& f) {
  std::vector<Int> out;
  for (std::uint64_t x : f) out.push_back(int_from_u64(x));
  return out;
}

TEST(NaiveDft, Examples) {
  ResidueRing ring(17);
  EXPECT_EQ(naive_dft(ring, ints({1, 0, 0, 0}), Int(4)), ints({1, 1, 1, 1}));
  EXPECT_EQ(naive_dft(ring, ints({1, 1, 1, 1}), Int(4)), ints({4, 0, 0, 0}));
  EXPECT_EQ(naive_dft(ring, ints({0, 1, 0, 0}), Int(4)), ints({1, 4, 16, 13}));
  EXPECT_EQ(reference::naive_dft(ints({0, 1, 0, 0}), 4, 17), ints({1, 4, 16, 13}));
}

TEST(CooleyTukey, SingleLayerEqualsShortTransform) {
  ResidueRing ring(17);
  std::vector<Int> f = random_vector(4, 17);
  EXPECT_EQ(cooley_tukey_dft(ring, f, Int(4), 4), reference::naive_dft(f, 4, 17));
}

TEST(CooleyTukey, Length16Modulo17) {
  ResidueRing ring(17);
  for (std::size_t S : {2u, 4u, 8u, 16u})
    for (int i = 0; i < 20; ++i) {
      std::vector<Int> f = random_vector(16, 17);
      EXPECT_EQ(cooley_tukey_dft(ring, f, Int(3), S), reference::naive_dft(f, 3, 17));
    }
}

TEST(CooleyTukey, Length1024AllRadices) {
  for (std::uint64_t p : primes_one_mod(1024, 2, std::uint64_t{1} << 40)) {
    WordRing ring(p);
    Int zeta = primitive_root_of_unity(int_from_u64(p), 1024);
    std::vector<Int> f = random_vector(1024, int_from_u64(p));
    std::vector<Int> want = reference::naive_dft(f, zeta, int_from_u64(p));
    for (std::size_t S : {2u, 16u, 32u, 1024u})
      EXPECT_EQ(from_words(cooley_tukey_dft(ring, to_words(f), int_to_u64(zeta), S)), want);
  }
}

TEST(CooleyTukey, RejectsBadRoot) {
  ResidueRing ring(17);
  EXPECT_THROW(cooley_tukey_dft(ring, ints({1, 2, 3, 4}), Int(2), 2), InvalidArgument);
  EXPECT_THROW(cooley_tukey_dft(ring, ints({1, 2, 3}), Int(4), 2), InvalidArgument);
}

TEST(Bluestein, LengthTwoIsButterfly) {
  ResidueRing ring(17);
  for (int a = 0; a < 17; a += 3)
    for (int b = 0; b < 17; b += 5)
      EXPECT_EQ(bluestein_dft(ring, ints({a, b}), Int(16), Int(4)),
                ints({(a + b) % 17, ((a - b) % 17 + 17) % 17}));
}

TEST(Bluestein, Length4Modulo17) {
  ResidueRing ring(17);
  for (int i = 0; i < 50; ++i) {
    std::vector<Int> f = random_vector(4, 17);
    EXPECT_EQ(bluestein_dft(ring, f, Int(4), Int(2)), reference::naive_dft(f, 4, 17));
  }
}

TEST(Bluestein, Length256) {
  std::uint64_t p = primes_one_mod(512, 1, std::uint64_t{1} << 50)[0];
  WordRing ring(p);
  Int eta = primitive_root_of_unity(int_from_u64(p), 512);
  Int omega = eta * eta % int_from_u64(p);
  std::vector<Int> f = random_vector(256, int_from_u64(p));
  EXPECT_EQ(from_words(bluestein_dft(ring, to_words(f), int_to_u64(omega), int_to_u64(eta))),
            reference::naive_dft(f, omega, int_from_u64(p)));
}

TEST(Bluestein, RejectsWrongEta) {
  ResidueRing ring(17);
  EXPECT_THROW(bluestein_dft(ring, ints({1, 2, 3, 4}), Int(4), Int(3)), InvalidArgument);
}

TEST(InverseDft, RoundTrips) {
  ResidueRing small(17);
  EXPECT_EQ(inverse_dft(small, ints({4, 0, 0, 0}), Int(4)), ints({1, 1, 1, 1}));
  ResidueRing ring(193);
  Int zeta = primitive_root_of_unity(193, 64);
  std::vector<Int> impulse(64, 0);
  impulse[0] = 1;
  EXPECT_EQ(inverse_dft(ring, naive_dft(ring, impulse, zeta), zeta), impulse);
  for (int i = 0; i < 20; ++i) {
    std::vector<Int> f = random_vector(64, 193);
    EXPECT_EQ(inverse_dft(ring, cooley_tukey_dft(ring, f, zeta, 8), zeta), f);
  }
}

TEST(CyclicConvolution, Examples) {
  ResidueRing ring(101);
  std::vector<Int> g = random_vector(8, 101);
  std::vector<Int> impulse(8, 0);
  impulse[0] = 1;
  EXPECT_EQ(cyclic_convolution(ring, g, impulse), g);
  EXPECT_EQ(cyclic_convolution(ring, ints({2, 3}), ints({5, 7})), ints({(10 + 21) % 101, 14 + 15}));
  for (int i = 0; i < 20; ++i) {
    std::vector<Int> a = random_vector(16, 101), b = random_vector(16, 101);
    EXPECT_EQ(cyclic_convolution(ring, a, b), reference::naive_cyclic_convolution(a, b, 101));
  }
}

TEST(ThetaRingDft, MatchesResidueDft) {
  ContextPtr ctx = precompute(Int(257), 2, Int(16));
  ThetaRing ring(ctx);
  Int zeta = primitive_root_of_unity(257, 16);
  std::vector<Int> f = random_vector(16, 257);
  std::vector<ThetaRepr> ft;
  for (const Int& x : f) ft.push_back(to_theta(x, ctx));
  std::vector<ThetaRepr> out = cooley_tukey_dft(ring, ft, to_theta(zeta, ctx), 4);
  std::vector<Int> got;
  for (const ThetaRepr& x : out) got.push_back(from_theta(x));
  EXPECT_EQ(got, reference::naive_dft(f, zeta, 257));
}

}  // namespace
