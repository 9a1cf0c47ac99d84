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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "thetamul/numtheory.hpp"

// Oracles and generators shared by the test binaries. Everything here is
// deliberately naive and independent of the library's arithmetic.
namespace testing_support {

using thetamul::Int;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260416);
  return engine;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

// Uniform in [0, 2^bits).
inline Int random_bits(std::size_t bits) {
  Int x = 0;
  for (std::size_t done = 0; done < bits; done += 64) {
    std::size_t take = bits - done < 64 ? bits - done : 64;
    std::uint64_t w = rng()();
    if (take < 64) w &= (std::uint64_t{1} << take) - 1;
    Int part;
    mpz_import(part.get_mpz_t(), 1, -1, 8, 0, 0, &w);
    x += part << static_cast<mp_bitcnt_t>(done);
  }
  return x;
}

// Uniform in [0, n).
inline Int random_below(const Int& n) {
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2) + 64;
  Int x = random_bits(bits);
  return x % n;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  for (; e; e >>= 1, a = mulmod(a, a, q))
    if (e & 1) r = mulmod(r, a, q);
  return r;
}

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t order_mod(std::uint64_t a, std::uint64_t q) {
  std::uint64_t x = a % q, k = 1;
  while (x != 1) {
    x = mulmod(x, a, q);
    ++k;
  }
  return k;
}

// Some primes p = 1 (mod L) below 2^40, by trial division.
inline std::vector<std::uint64_t> primes_one_mod(std::uint64_t L, std::size_t count,
                                                 std::uint64_t start = 2) {
  std::vector<std::uint64_t> out;
  std::uint64_t p = ((start + L - 1) / L) * L + 1;
  for (; out.size() < count; p += L)
    if (trial_prime(p)) out.push_back(p);
  return out;
}

// An element of order exactly L modulo the prime p, by exhaustive search.
// Only meant for small p.
inline std::uint64_t element_of_order(std::uint64_t p, std::uint64_t L) {
  if (L == 1) return 1;
  for (std::uint64_t g = 2; g < p; ++g)
    if (std::uint64_t z = powmod(g, (p - 1) / L, p); order_mod(z, p) == L) return z;
  return 0;
}

// A probable prime p = 1 (mod M) drawn uniformly near 2^bits, tested with
// GMP's own primality routine.
inline Int random_prime_one_mod(std::size_t bits, const Int& M) {
  for (;;) {
    Int p = (random_bits(bits - 1) + (Int(1) << static_cast<mp_bitcnt_t>(bits - 1))) / M * M + 1;
    if (mpz_probab_prime_p(p.get_mpz_t(), 40)) return p;
  }
}

// f(theta) mod q by summing theta^i directly.
inline Int eval_direct(const std::vector<Int>& coeffs, const Int& theta, const Int& q) {
  Int acc = 0, power = 1;
  for (const Int& c : coeffs) {
    acc += c * power;
    power = power * theta % q;
  }
  Int r = acc % q;
  if (r < 0) r += q;
  return r;
}

}  // namespace testing_support
