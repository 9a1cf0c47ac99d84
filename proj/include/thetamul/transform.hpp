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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thetamul/numtheory.hpp"
#include "thetamul/theta.hpp"

namespace thetamul {

// One transform problem: length L, modulus q = p^alpha with p = 1 (mod L), a
// principal L-th root zeta, and the theta context for theta = zeta^(L/2m).
struct TransformParams {
  std::size_t L = 0;
  Modulus q{Int(2), 1};
  Int zeta;
  std::size_t m = 1;
  Int theta;
  ContextPtr ctx;
};

// lg L <= lg q <= 3 lg L lg lg L.
bool satisfies_length_modulus_bound(std::size_t lg_L, std::size_t lg_q);

// The power of two m with x <= m < 2x, x = lg q / ((lg lg L)^2 lg lg lg L),
// clamped to [1, L/2].
std::size_t choose_theta_degree(std::size_t L, const Int& q);
std::size_t choose_theta_degree_lg(std::size_t lg_L, std::size_t lg_q);

// Validates L, q and zeta, picks m (choose_theta_degree unless given) and
// precomputes the theta context. Strict mode also enforces the
// length/modulus bound and the context regime check.
TransformParams make_transform_params(std::size_t L, const Modulus& q, const Int& zeta,
                                      std::optional<std::size_t> m = std::nullopt,
                                      bool strict = false);

// Parameters of one recursion step: short length S, q' = p'^alpha', the
// principal S-th root zeta' and the theta context for the recursive calls.
struct RecursionPlan {
  std::size_t S = 0;
  Int pprime;
  int alphaprime = 0;
  Int qprime;
  Int zetaprime;
  std::size_t mprime = 1;
  Int thetaprime;
  ContextPtr ctxprime;
  bool strict = false;
  // Plan for the length-S transforms when they recurse themselves.
  std::shared_ptr<const RecursionPlan> child;

  TransformParams sub_params() const;
};

struct SyntheticChoice {
  std::size_t S = 0;
  Int pprime;  // 0 selects the least prime = 1 (mod S)
  int alphaprime = 1;
  std::size_t mprime = 1;
};

// Short length 2^((lg lg L)^2).
Int strict_short_length(std::size_t lg_L);

// alpha' = ceil((2 + 4 / lg lg lg L) (lg q / m) / lg floor(p'/2)), exactly.
int strict_alphaprime(std::size_t lg_L, std::size_t lg_q, std::size_t m, const Int& pprime);

// Number of recursion levels the strict formulas produce for length 2^lg_L
// before the short length stops shrinking.
int strict_recursion_depth(std::size_t lg_L);

// One level of the strict plan chain, by formula evaluation only (usable for
// lengths far beyond what can be executed).
struct StrictLevel {
  std::size_t lg_L = 0;
  std::size_t lg_q = 0;
  std::size_t m = 1;
  std::size_t lg_S = 0;
  Int pprime;
  int alphaprime = 0;
  std::size_t lg_qprime = 0;
  std::size_t mprime = 1;
  bool qprime_in_range = false;  // lg S <= lg q' <= 3 lg S lg lg S
};
// Levels for length 2^lg_L over modulus q, following q' downwards until the
// short length stops shrinking.
std::vector<StrictLevel> strict_plan_chain(std::size_t lg_L, const Int& q);

// Plans one level from the formulas. Throws PlanBoundViolation when L is too
// small for S < L.
RecursionPlan plan_recursion_strict(const TransformParams& params);

// Plans one level from caller-chosen S, p', alpha', m'. Throws
// PlanBoundViolation if q' < 4 S m B^2 (B the representation bound).
RecursionPlan plan_recursion_synthetic(const TransformParams& params, const SyntheticChoice& choice);

struct TransformConfig {
  // Below this length the base case runs.
  std::size_t base_threshold = 1024;
};

struct TransformStats {
  std::uint64_t forward_calls = 0;   // recursive forward transforms
  std::uint64_t inverse_calls = 0;   // recursive inverse transforms
  std::uint64_t pointwise_products = 0;
  Int max_norm_A;                     // largest bivariate product coefficient seen
};

// DFT of f with respect to zeta, coefficients in standard representation.
// A plan is required when L >= config.base_threshold.
std::vector<Int> transform(const TransformParams& params, std::vector<Int> f,
                           const RecursionPlan* plan = nullptr, const TransformConfig& config = {},
                           TransformStats* stats = nullptr);

// Inverse of transform: out[n] = L^-1 transform(f)[-n mod L].
std::vector<Int> inverse_transform(const TransformParams& params, std::vector<Int> f,
                                   const RecursionPlan* plan = nullptr,
                                   const TransformConfig& config = {},
                                   TransformStats* stats = nullptr);

// Rows of theta-representations, each of length S.
using ThetaRows = std::vector<std::vector<ThetaRepr>>;

// Exact reference for the bivariate step: each output coefficient is
// reduce_arbitrary of the integer coefficient A_ij of G_i H in
// Z[x, y]/(x^S - 1, y^m + 1).
ThetaRows bivariate_lift_and_reduce(const ThetaRows& g, const std::vector<ThetaRepr>& h,
                                    const ContextPtr& ctx);

// Same products computed through Z/q'Z and recursive transforms of
// length S, as the recursive step does.
ThetaRows bivariate_via_qprime(const ThetaRows& g, const std::vector<ThetaRepr>& h,
                               const ContextPtr& ctx, const RecursionPlan& plan,
                               const TransformConfig& config = {}, TransformStats* stats = nullptr);

// One line describing a plan level, for tracing.
std::string describe_plan(const TransformParams& params, const RecursionPlan* plan);

}  // namespace thetamul
