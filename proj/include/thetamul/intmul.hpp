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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "thetamul/numtheory.hpp"
#include "thetamul/theta.hpp"

namespace thetamul {

inline constexpr std::size_t kPrimeCount = 19;
inline constexpr std::size_t kAxes = 6;
inline constexpr std::uint64_t kDefaultMinBits = std::uint64_t{1} << 14;

struct MulPlan {
  std::uint64_t n = 0;  // operand bit size
  unsigned b = 0;       // chunk bits, lg n
  std::size_t t = 0;    // least t with t^6 b >= n
  std::size_t L = 0;    // power of two in [2t, 4t)
  std::array<std::uint64_t, kPrimeCount> q{};
  std::array<std::uint64_t, kPrimeCount> zeta{};  // order L modulo q[i]
  // Theta context of each prime for theta = zeta^(L/2m).
  std::array<std::size_t, kPrimeCount> m{};
  std::array<ContextPtr, kPrimeCount> contexts;
  // True when q[0] could not satisfy q = 0 (mod 19) and was replaced by the
  // least prime = 1 (mod L) distinct from q[1..18].
  bool q0_substituted = false;
};

// Throws InvalidArgument for n < 1 and InvariantViolation if the primes'
// product does not exceed 4 n^3.
MulPlan build_plan(std::uint64_t n);

// Dense tensor with `dims` axes of extent L, axis 0 varying fastest.
struct CoeffTensor {
  std::size_t L = 0;
  std::size_t dims = kAxes;
  std::vector<std::uint64_t> data;

  CoeffTensor() = default;
  CoeffTensor(std::size_t L_, std::size_t dims_);
  std::size_t offset(const std::vector<std::size_t>& index) const;
  std::uint64_t& at(const std::vector<std::size_t>& index) { return data[offset(index)]; }
  std::uint64_t at(const std::vector<std::size_t>& index) const { return data[offset(index)]; }
  bool operator==(const CoeffTensor&) const = default;
};

// b-bit chunks of u: chunk i_0 + t i_1 + ... + t^5 i_5 sits at index
// (i_0, ..., i_5). Throws InvalidArgument unless 0 <= u < 2^n.
CoeffTensor split_to_multivariate(const Int& u, const MulPlan& plan);

// Product in (Z/qZ)[x_0, ...]/(x_0^L - 1, ...) of two tensors with the same
// shape, by row transforms along each axis, a pointwise product and inverse
// transforms. zeta must have order L modulo the prime q.
CoeffTensor multivariate_cyclic_product_mod(const CoeffTensor& U, const CoeffTensor& V,
                                            std::uint64_t q, std::uint64_t zeta);

// uv from its residue tensors modulo q[0..18]: CRT per coefficient, then
// evaluation at (2^b, 2^(tb), ..., 2^(t^5 b)).
Int reconstruct_product(const std::vector<CoeffTensor>& residues, const MulPlan& plan);

struct MultiplyOptions {
  std::uint64_t min_bits = kDefaultMinBits;  // below this, the reference multiplier
};

// u v for arbitrary signs.
Int multiply(const Int& u, const Int& v, const MultiplyOptions& options = {});
void multiply(const Int& u, const Int& v, Int& out, const MultiplyOptions& options = {});

// The plan multiply uses for n-bit operands (cached).
const MulPlan& cached_plan(std::uint64_t n);

}  // namespace thetamul
