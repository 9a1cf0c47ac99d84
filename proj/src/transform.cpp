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

#include "thetamul/transform.hpp"

#include <bit>
#include <sstream>

#include "thetamul/dft.hpp"
#include "thetamul/errors.hpp"

namespace thetamul {

namespace {

Int uint_int(std::size_t x) { return Int(static_cast<unsigned long>(x)); }

std::size_t lg_size(std::size_t n) { return static_cast<std::size_t>(lg(static_cast<std::uint64_t>(n))); }

std::size_t log2_exact(std::size_t L) { return static_cast<std::size_t>(std::countr_zero(L)); }

// Smallest power of two >= num / den, at least 1.
std::size_t power_of_two_ceiling(const Int& num, const Int& den) {
  std::size_t m = 1;
  while (uint_int(m) * den < num) m *= 2;
  return m;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Int balanced(const Int& x, const Int& q) {
  Int r = mod(x, q);
  if (r > q / 2) r -= q;
  return r;
}

std::vector<Int> base_case(const TransformParams& params, std::vector<Int> f) {
  const Int& q = params.q.value();
  if (fits_u64(q) && int_to_u64(q) < (std::uint64_t{1} << 63)) {
    const WordRing ring(int_to_u64(q));
    std::vector<std::uint64_t> w;
    w.reserve(f.size());
    for (const Int& x : f) w.push_back(ring.from_integer(x));
    w = cooley_tukey_dft(ring, std::move(w), ring.from_integer(params.zeta), 2);
    std::vector<Int> out;
    out.reserve(w.size());
    for (std::uint64_t x : w) out.push_back(int_from_u64(x));
    return out;
  }
  const ResidueRing ring(q);
  for (Int& x : f) x = ring.from_integer(x);
  return cooley_tukey_dft(ring, std::move(f), params.zeta, 2);
}

void check_plan(const TransformParams& params, const RecursionPlan& plan) {
  if (plan.S < 2 || 2 * plan.S > params.L) {
    throw PlanBoundViolation("recursion needs 2 <= S <= L/2, got S = " + std::to_string(plan.S));
  }
  const Int& B = params.ctx->bound_B();
  const Int need = 4 * uint_int(plan.S) * uint_int(params.m) * B * B;
  if (plan.qprime < need) {
    throw PlanBoundViolation("q' = " + plan.qprime.get_str() + " is below 4 S m B^2 = " +
                             need.get_str());
  }
}

std::vector<Int> transform_impl(const TransformParams& params, std::vector<Int> f,
                                const RecursionPlan* plan, const TransformConfig& config,
                                TransformStats* stats);

// Forward (or, with reversal, inverse) transforms of one vector.
std::vector<Int> sub_transform(const TransformParams& sub, std::vector<Int> v,
                               const RecursionPlan* child, const TransformConfig& config,
                               TransformStats* stats, bool inverse) {
  std::vector<Int> y = transform_impl(sub, std::move(v), child, config, stats);
  if (!inverse) return y;
  const Int& q = sub.q.value();
  const Int scale = mod_inverse(uint_int(sub.L), q);
  std::vector<Int> out(sub.L);
  for (std::size_t n = 0; n < sub.L; ++n) out[n] = mod(y[(sub.L - n) % sub.L] * scale, q);
  return out;
}

std::vector<Int> transform_recursive(const TransformParams& params, std::vector<Int> f,
                                     const RecursionPlan& plan, const TransformConfig& config,
                                     TransformStats* stats) {
  check_plan(params, plan);
  const ContextPtr& ctx = params.ctx;
  const ThetaRing ring(ctx);
  const Int& q = params.q.value();
  const std::size_t L = params.L;
  const std::size_t S = plan.S;

  // (i) standard to theta-representation.
  std::vector<ThetaRepr> data;
  data.reserve(L);
  for (const Int& x : f) data.push_back(to_theta(x, ctx));

  const Int omega = mod_pow(params.zeta, uint_int(L / S), q);
  const ThetaRepr omega_t = to_theta(omega, ctx);
  const ThetaRepr eta_t = to_theta(mod_pow(params.zeta, uint_int(L / (2 * S)), q), ctx);

  // (iv)-(vi) convolutions through Z/q'Z.
  const Convolver<ThetaRing> convolve = [&](std::vector<ThetaRepr>& rows, std::size_t count,
                                            const std::vector<ThetaRepr>& h) {
    ThetaRows g(count);
    for (std::size_t i = 0; i < count; ++i) {
      g[i].assign(rows.begin() + static_cast<std::ptrdiff_t>(i * S),
                  rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * S));
    }
    ThetaRows out = bivariate_via_qprime(g, h, ctx, plan, config, stats);
    for (std::size_t i = 0; i < count; ++i) {
      std::move(out[i].begin(), out[i].end(), rows.begin() + static_cast<std::ptrdiff_t>(i * S));
    }
  };
  // (iii) length-S layers by Bluestein; leftover radix-2 layers directly.
  const ShortDft<ThetaRing> short_dft = [&](std::vector<ThetaRepr>& rows, std::size_t count,
                                            std::size_t len, const ThetaRepr& root) {
    if (len == S) {
      if (from_theta(root) != omega) throw InvariantViolation("unexpected short-transform root");
      bluestein_batch(ring, rows, count, S, omega_t, eta_t, convolve);
    } else {
      detail::naive_rows(ring, rows, count, len, root);
    }
  };
  // (ii) long to short.
  cooley_tukey_batch(ring, data, 1, L, to_theta(params.zeta, ctx), S, short_dft);

  std::vector<Int> out;
  out.reserve(L);
  for (const ThetaRepr& x : data) out.push_back(from_theta(x));
  return out;
}

std::vector<Int> transform_impl(const TransformParams& params, std::vector<Int> f,
                                const RecursionPlan* plan, const TransformConfig& config,
                                TransformStats* stats) {
  if (f.size() != params.L) {
    throw InvalidArgument("transform input has length " + std::to_string(f.size()) +
                          ", expected " + std::to_string(params.L));
  }
  for (Int& x : f) x = mod(x, params.q.value());
  if (params.L < config.base_threshold) return base_case(params, std::move(f));
  if (!plan) {
    throw PlanBoundViolation("length " + std::to_string(params.L) +
                             " is at or above the base-case threshold but no recursion plan was given");
  }
  return transform_recursive(params, std::move(f), *plan, config, stats);
}

}  // namespace

bool satisfies_length_modulus_bound(std::size_t lg_L, std::size_t lg_q) {
  return lg_L <= lg_q && lg_q <= 3 * lg_L * lg_size(lg_L);
}

std::size_t choose_theta_degree_lg(std::size_t lg_L, std::size_t lg_q) {
  const std::size_t a = lg_size(lg_L);
  const std::size_t c = lg_size(a);
  std::size_t m = power_of_two_ceiling(uint_int(lg_q), uint_int(a * a * c));
  const std::size_t cap = lg_L >= 1 ? std::size_t{1} << std::min<std::size_t>(lg_L - 1, 62) : 1;
  return std::min(m, cap);
}

std::size_t choose_theta_degree(std::size_t L, const Int& q) {
  return choose_theta_degree_lg(log2_exact(L), static_cast<std::size_t>(lg(q)));
}

TransformParams make_transform_params(std::size_t L, const Modulus& q, const Int& zeta,
                                      std::optional<std::size_t> m, bool strict) {
  if (L < 2 || !std::has_single_bit(L)) {
    throw InvalidArgument("transform length must be a power of two >= 2");
  }
  const Int& p = q.prime();
  if (mod(p, uint_int(L)) != 1) throw InvalidArgument("p must be 1 mod L");
  TransformParams params;
  params.L = L;
  params.q = q;
  params.zeta = mod(zeta, q.value());
  if (mod_pow(params.zeta, uint_int(L), q.value()) != 1 ||
      mod_pow(params.zeta, uint_int(L / 2), p) != p - 1) {
    throw InvalidArgument("zeta is not a principal " + std::to_string(L) + "-th root of unity");
  }
  const std::size_t lg_L = log2_exact(L);
  const auto lg_q = static_cast<std::size_t>(lg(q.value()));
  if (strict && !satisfies_length_modulus_bound(lg_L, lg_q)) {
    throw StrictViolation("lg L <= lg q <= 3 lg L lg lg L fails");
  }
  params.m = m.value_or(choose_theta_degree(L, q.value()));
  if (params.m == 0 || !std::has_single_bit(params.m) || L % (2 * params.m) != 0) {
    throw InvalidArgument("m must be a power of two with 2m dividing L");
  }
  params.theta = mod_pow(params.zeta, uint_int(L / (2 * params.m)), q.value());
  params.ctx = precompute(q, params.m, params.theta, strict);
  return params;
}

TransformParams RecursionPlan::sub_params() const {
  TransformParams sub;
  sub.L = S;
  sub.q = Modulus(pprime, alphaprime);
  sub.zeta = zetaprime;
  sub.m = mprime;
  sub.theta = thetaprime;
  sub.ctx = ctxprime;
  return sub;
}

Int strict_short_length(std::size_t lg_L) {
  const std::size_t a = lg_size(lg_L);
  Int s;
  mpz_setbit(s.get_mpz_t(), a * a);
  return s;
}

int strict_alphaprime(std::size_t lg_L, std::size_t lg_q, std::size_t m, const Int& pprime) {
  const std::size_t c = lg_size(lg_size(lg_L));
  const auto d = static_cast<std::size_t>(lg(Int(pprime / 2)));
  const Int num = uint_int((2 * c + 4) * lg_q);
  const Int den = uint_int(c * m * d);
  Int alpha;
  mpz_cdiv_q(alpha.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return static_cast<int>(alpha.get_si());
}

int strict_recursion_depth(std::size_t lg_L) {
  int depth = 0;
  for (;;) {
    const std::size_t a = lg_size(lg_L);
    if (a * a >= lg_L) return depth;
    lg_L = a * a;
    ++depth;
  }
}

std::vector<StrictLevel> strict_plan_chain(std::size_t lg_L, const Int& q) {
  std::vector<StrictLevel> chain;
  std::size_t lg_q = static_cast<std::size_t>(lg(q));
  std::size_t m = choose_theta_degree_lg(lg_L, lg_q);
  for (;;) {
    StrictLevel level;
    level.lg_L = lg_L;
    level.lg_q = lg_q;
    level.m = m;
    const std::size_t a = lg_size(lg_L);
    level.lg_S = a * a;
    if (level.lg_S >= lg_L) {
      chain.push_back(level);  // base case from here on
      return chain;
    }
    Int S;
    mpz_setbit(S.get_mpz_t(), level.lg_S);
    const Congruence c{1, S};
    level.pprime = find_prime_crt({&c, 1}, 2);
    level.alphaprime = strict_alphaprime(lg_L, lg_q, m, level.pprime);
    const Int qprime = pow(level.pprime, static_cast<unsigned long>(level.alphaprime));
    level.lg_qprime = static_cast<std::size_t>(lg(qprime));
    level.mprime = choose_theta_degree_lg(level.lg_S, level.lg_qprime);
    level.qprime_in_range = satisfies_length_modulus_bound(level.lg_S, level.lg_qprime);
    chain.push_back(level);
    lg_L = level.lg_S;
    lg_q = level.lg_qprime;
    m = level.mprime;
  }
}

namespace {

RecursionPlan finish_plan(const TransformParams& params, RecursionPlan plan, bool strict) {
  const Int& pp = plan.pprime;
  if (!is_prime(pp) || mod(pp, uint_int(plan.S)) != 1) {
    throw PlanBoundViolation("p' must be a prime = 1 mod S");
  }
  if (plan.alphaprime < 1) throw PlanBoundViolation("alpha' must be positive");
  plan.qprime = pow(pp, static_cast<unsigned long>(plan.alphaprime));
  plan.strict = strict;
  check_plan(params, plan);
  const Int root = primitive_root_of_unity(pp, plan.S);
  plan.zetaprime = hensel_lift_root(root, pp, plan.alphaprime, plan.S);
  if (plan.mprime == 0 || !std::has_single_bit(plan.mprime) || plan.S % (2 * plan.mprime) != 0) {
    throw PlanBoundViolation("m' must be a power of two with 2m' dividing S");
  }
  plan.thetaprime = mod_pow(plan.zetaprime, uint_int(plan.S / (2 * plan.mprime)), plan.qprime);
  plan.ctxprime = precompute(Modulus(pp, plan.alphaprime), plan.mprime, plan.thetaprime, false);
  return plan;
}

}  // namespace

RecursionPlan plan_recursion_strict(const TransformParams& params) {
  const std::size_t lg_L = log2_exact(params.L);
  const auto lg_q = static_cast<std::size_t>(lg(params.q.value()));
  const Int S = strict_short_length(lg_L);
  if (2 * S > uint_int(params.L)) {
    throw PlanBoundViolation("strict short length " + S.get_str() + " does not fit in L = " +
                             std::to_string(params.L));
  }
  RecursionPlan plan;
  plan.S = S.get_ui();
  const Congruence c{1, S};
  plan.pprime = find_prime_crt({&c, 1}, 2);
  plan.alphaprime = strict_alphaprime(lg_L, lg_q, params.m, plan.pprime);
  const Int qprime = pow(plan.pprime, static_cast<unsigned long>(plan.alphaprime));
  const std::size_t lg_S = log2_exact(plan.S);
  if (!satisfies_length_modulus_bound(lg_S, static_cast<std::size_t>(lg(qprime)))) {
    throw PlanBoundViolation("recursive call violates lg S <= lg q' <= 3 lg S lg lg S");
  }
  plan.mprime = std::min(choose_theta_degree(plan.S, qprime), plan.S / 2);
  plan = finish_plan(params, std::move(plan), true);
  if (2 * strict_short_length(lg_S) <= S) {
    plan.child = std::make_shared<RecursionPlan>(plan_recursion_strict(plan.sub_params()));
  }
  return plan;
}

RecursionPlan plan_recursion_synthetic(const TransformParams& params, const SyntheticChoice& choice) {
  if (choice.S == 0 || !std::has_single_bit(choice.S)) {
    throw PlanBoundViolation("S must be a power of two");
  }
  RecursionPlan plan;
  plan.S = choice.S;
  if (sgn(choice.pprime) == 0) {
    const Congruence c{1, uint_int(choice.S)};
    plan.pprime = find_prime_crt({&c, 1}, 2);
  } else {
    plan.pprime = choice.pprime;
  }
  plan.alphaprime = choice.alphaprime;
  plan.mprime = choice.mprime;
  return finish_plan(params, std::move(plan), false);
}

std::vector<Int> transform(const TransformParams& params, std::vector<Int> f,
                           const RecursionPlan* plan, const TransformConfig& config,
                           TransformStats* stats) {
  return transform_impl(params, std::move(f), plan, config, stats);
}

std::vector<Int> inverse_transform(const TransformParams& params, std::vector<Int> f,
                                   const RecursionPlan* plan, const TransformConfig& config,
                                   TransformStats* stats) {
  return sub_transform(params, std::move(f), plan, config, stats, true);
}

ThetaRows bivariate_lift_and_reduce(const ThetaRows& g, const std::vector<ThetaRepr>& h,
                                    const ContextPtr& ctx) {
  const std::size_t S = h.size();
  const std::size_t m = ctx->m();
  ThetaRows out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != S) throw InvalidArgument("bivariate rows must have length S");
    for (std::size_t j = 0; j < S; ++j) {
      CycloPoly a(m);
      for (std::size_t k = 0; k < S; ++k) {
        a = a + negacyclic_mul(g[i][k].poly(), h[(j + S - k) % S].poly());
      }
      out[i].push_back(reduce_arbitrary(a, ctx));
    }
  }
  return out;
}

ThetaRows bivariate_via_qprime(const ThetaRows& g, const std::vector<ThetaRepr>& h,
                               const ContextPtr& ctx, const RecursionPlan& plan,
                               const TransformConfig& config, TransformStats* stats) {
  const std::size_t S = plan.S;
  const std::size_t m = ctx->m();
  const Int& qp = plan.qprime;
  if (h.size() != S) throw InvalidArgument("bivariate operand must have length S");
  const TransformParams sub = plan.sub_params();
  const RecursionPlan* child = plan.child.get();

  // Transform every y^k slice of an S-row along x.
  auto forward_slices = [&](const std::vector<ThetaRepr>& row) {
    std::vector<std::vector<Int>> slices(m, std::vector<Int>(S));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < S; ++j) slices[k][j] = mod(row[j].poly()[k], qp);
      slices[k] = sub_transform(sub, std::move(slices[k]), child, config, stats, false);
      if (stats) ++stats->forward_calls;
    }
    return slices;
  };
  const auto hhat = forward_slices(h);

  const Int B = ctx->bound_B();
  const Int proof_bound = uint_int(S) * uint_int(m) * B * B;
  ThetaRows out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != S) throw InvalidArgument("bivariate rows must have length S");
    auto prod = forward_slices(g[i]);
    for (std::size_t j = 0; j < S; ++j) {
      CycloPoly a(m), b(m);
      for (std::size_t k = 0; k < m; ++k) {
        a[k] = prod[k][j];
        b[k] = hhat[k][j];
      }
      const CycloPoly c = negacyclic_mul_mod(a, b, qp);
      for (std::size_t k = 0; k < m; ++k) prod[k][j] = c[k];
      if (stats) ++stats->pointwise_products;
    }
    for (std::size_t k = 0; k < m; ++k) {
      prod[k] = sub_transform(sub, std::move(prod[k]), child, config, stats, true);
      if (stats) ++stats->inverse_calls;
    }
    for (std::size_t j = 0; j < S; ++j) {
      CycloPoly A(m);
      for (std::size_t k = 0; k < m; ++k) A[k] = balanced(prod[k][j], qp);
      const Int n = norm(A);
      if (4 * n > qp) {
        throw PlanBoundViolation("bivariate coefficient norm " + n.get_str() +
                                 " is not resolved by q' = " + qp.get_str());
      }
      if (n > proof_bound) throw InvariantViolation("bivariate coefficient exceeds S m B^2");
      if (stats && n > stats->max_norm_A) stats->max_norm_A = n;
      out[i].push_back(reduce_arbitrary(A, ctx));
    }
  }
  return out;
}

std::string describe_plan(const TransformParams& params, const RecursionPlan* plan) {
  std::ostringstream os;
  os << "L=" << params.L << " q=" << params.q.value().get_str() << " m=" << params.m
     << " ctx=" << std::hex << fnv1a(params.ctx->serialize()) << std::dec;
  if (plan) {
    os << " S=" << plan->S << " p'=" << plan->pprime.get_str() << " alpha'=" << plan->alphaprime
       << " q'=" << plan->qprime.get_str() << " m'=" << plan->mprime;
  } else {
    os << " base-case";
  }
  return os.str();
}

}  // namespace thetamul
