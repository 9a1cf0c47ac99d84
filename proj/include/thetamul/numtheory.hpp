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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace thetamul {

// Arbitrary-precision signed integer. Natural numbers use the same type with
// a nonnegativity precondition.
using Int = mpz_class;

Int int_from_u64(std::uint64_t x);
std::uint64_t int_to_u64(const Int& x);  // requires 0 <= x < 2^64
bool fits_u64(const Int& x);
std::size_t bit_length(const Int& x);  // of |x|; 0 for x = 0
inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// lg n := ceil(log2 n), with lg 1 := 1. Requires n >= 1.
int lg(const Int& n);
int lg(std::uint64_t n);

// Floor of the k-th root of a nonnegative integer.
Int floor_root(const Int& x, unsigned long k);
Int pow(const Int& base, unsigned long exp);

// Canonical residue of a in [0, q).
Int mod(const Int& a, const Int& q);

// A prime power q = p^alpha with its factorisation.
class Modulus {
 public:
  Modulus(Int p, int alpha);

  // Factors q as p^alpha; throws InvalidArgument if q is not a prime power.
  static Modulus from_value(const Int& q);

  const Int& value() const { return q_; }
  const Int& prime() const { return p_; }
  int exponent() const { return alpha_; }

 private:
  Int p_;
  int alpha_;
  Int q_;
};

Int mod_pow(const Int& base, const Int& exp, const Int& q);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t q);
Int mod_inverse(const Int& a, const Int& q);

// Deterministic below 3.3e24 (Miller-Rabin with the first 13 prime bases);
// above that a Baillie-PSW test (strong base-2 plus strong Lucas), for which
// no counterexample is known.
bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);

struct Congruence {
  Int residue;
  Int modulus;
};

// Combines pairwise coprime congruences into a single class (a mod N).
Congruence crt_combine(std::span<const Congruence> congruences);

// Smallest prime >= start satisfying every congruence. The search is linear
// over the combined class and gives up after max_steps candidates.
Int find_prime_crt(std::span<const Congruence> congruences, const Int& start,
                   std::uint64_t max_steps = 100'000'000);

// Unique x in [0, prod moduli) with x = residues[i] mod moduli[i].
Int crt_reconstruct(std::span<const Int> residues, std::span<const Int> moduli);

// Distinct prime factors of a small integer, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// An element of multiplicative order exactly L modulo the prime p.
Int primitive_root_of_unity(const Int& p, std::uint64_t L);

// Lifts zeta_p (order L mod p) to zeta mod p^alpha with zeta^L = 1 and
// zeta = zeta_p (mod p), by Newton iteration on x^L - 1.
Int hensel_lift_root(const Int& zeta_p, const Int& p, int alpha, std::uint64_t L);

// Euler's phi of p^alpha.
Int totient(const Modulus& q);

}  // namespace thetamul
