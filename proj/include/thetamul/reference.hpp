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

#include <cstdint>
#include <vector>

#include "thetamul/numtheory.hpp"
#include "thetamul/polyring.hpp"

// Deliberately simple oracles. None of these share code with the main paths
// they are used to check.
namespace thetamul::reference {

// Schoolbook multiplication on 64-bit limbs, Karatsuba above a size cutoff.
// Only GMP's storage is used, never its arithmetic.
Int reference_multiply(const Int& u, const Int& v);
// Same, writing into an existing integer so small products do not allocate.
void reference_multiply(const Int& u, const Int& v, Int& out);

// First nonzero (a_0, ..., a_{m-1}) in lexicographic order over
// [-B, B]^m, B = floor(q^(1/m)), with sum a_i theta^i = 0 (mod q).
// Throws InvalidArgument if (2B + 1)^m exceeds the budget.
CycloPoly brute_force_short_vector(const Int& q, std::size_t m, const Int& theta,
                                   std::uint64_t budget = 50'000'000);

// out[j] = sum_i f[i] zeta^(i j) mod q.
std::vector<Int> naive_dft(const std::vector<Int>& f, const Int& zeta, const Int& q);

// out[k] = sum_{i + j = k mod n} g[i] h[j] mod q.
std::vector<Int> naive_cyclic_convolution(const std::vector<Int>& g, const std::vector<Int>& h,
                                          const Int& q);

// O(m^2) product in Z[y]/(y^m + 1).
CycloPoly naive_negacyclic(const CycloPoly& f, const CycloPoly& g);

}  // namespace thetamul::reference
