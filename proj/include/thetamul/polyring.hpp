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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "thetamul/numtheory.hpp"

namespace thetamul {

// An element F_0 + F_1 y + ... + F_{m-1} y^{m-1} of Z[y]/(y^m + 1), m a power
// of two. Coefficient i is the coefficient of y^i.
class CycloPoly {
 public:
  // The zero polynomial.
  explicit CycloPoly(std::size_t m);
  explicit CycloPoly(std::vector<Int> coeffs);

  static CycloPoly constant(std::size_t m, const Int& c);
  // Parses signed decimal coefficients, constant term first.
  static CycloPoly from_strings(std::span<const std::string> coeffs);

  std::size_t m() const { return coeffs_.size(); }
  const Int& operator[](std::size_t i) const { return coeffs_[i]; }
  Int& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const Int> coeffs() const { return coeffs_; }
  bool is_zero() const;

  // Human-readable form, highest power first, e.g. "-16 + y" prints as "y - 16".
  std::string to_string() const;

  friend bool operator==(const CycloPoly&, const CycloPoly&) = default;

 private:
  std::vector<Int> coeffs_;
};

// max_i |F_i|.
Int norm(const CycloPoly& f);

CycloPoly operator+(const CycloPoly& f, const CycloPoly& g);
CycloPoly operator-(const CycloPoly& f, const CycloPoly& g);
CycloPoly operator-(const CycloPoly& f);
CycloPoly scale(const CycloPoly& f, const Int& c);

// Integer multiplier used for the packed Kronecker product. Null selects GMP.
using IntMultiplier = Int (*)(const Int&, const Int&);

// Exact product in Z[y]/(y^m + 1) via Kronecker substitution.
CycloPoly negacyclic_mul(const CycloPoly& f, const CycloPoly& g, IntMultiplier mul = nullptr);

// Product in (Z/rZ)[y]/(y^m + 1), coefficients in [0, r).
CycloPoly negacyclic_mul_mod(const CycloPoly& f, const CycloPoly& g, const Int& r,
                             IntMultiplier mul = nullptr);

// Coefficients reduced into [0, r).
CycloPoly reduce_coeffs(const CycloPoly& f, const Int& r);
// Coefficients reduced into the balanced range (-r/2, r/2].
CycloPoly balanced_coeffs(const CycloPoly& f, const Int& r);

// Signed Kronecker packing: sum_i coeffs[i] * 2^(i * slot_bits). Every
// coefficient must satisfy |c| < 2^(slot_bits - 1).
Int kronecker_pack(std::span<const Int> coeffs, int slot_bits);
inline Int kronecker_pack(const CycloPoly& f, int slot_bits) {
  return kronecker_pack(f.coeffs(), slot_bits);
}
// Inverse of kronecker_pack: splits z into `count` balanced slots.
std::vector<Int> kronecker_unpack(const Int& z, std::size_t count, int slot_bits);

// F(theta) mod q by Horner's rule, in [0, q).
Int eval_at(const CycloPoly& f, const Int& theta, const Int& q);

}  // namespace thetamul
