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
#include <optional>
#include <vector>

#include "thetamul/numtheory.hpp"

namespace thetamul::lattice {

using Vector = std::vector<Int>;
using Basis = std::vector<Vector>;  // one basis vector per row

// Exact integral LLL reduction (Lovasz constant 99/100). Rows must be
// linearly independent.
Basis lll_reduce(Basis basis);

// Searches the lattice spanned by an (ideally reduced) basis for a nonzero
// vector with every coordinate in [-bound, bound]. Enumerates the Euclidean
// ball of radius sqrt(dim) * bound, which contains the whole box. Returns
// nullopt if no such vector exists or the node budget runs out first.
std::optional<Vector> find_vector_in_box(const Basis& basis, const Int& bound,
                                         std::uint64_t node_budget = 50'000'000);

}  // namespace thetamul::lattice
