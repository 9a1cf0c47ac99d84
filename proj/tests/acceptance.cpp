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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails for a reason other than a known
// erratum in the example data (reported on the criterion's line).

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "thetamul/dft.hpp"
#include "thetamul/errors.hpp"
#include "thetamul/intmul.hpp"
#include "thetamul/reference.hpp"
#include "thetamul/theta.hpp"
#include "thetamul/transform.hpp"

namespace {

using namespace thetamul;
using namespace testing_support;

struct Outcome {
  bool pass = true;
  bool erratum_only = false;  // every failure is a documented erratum
  std::string detail;
};

// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ < 5) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
    ++failures_;
  }
  void erratum(bool ok, const std::string& what) {
    if (ok) return;
    ++errata_;
    notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  void note(const std::string& what) { notes_ << (notes_.tellp() > 0 ? "; " : "") << what; }
  Outcome outcome() const {
    Outcome o;
    o.pass = failures_ == 0 && errata_ == 0;
    o.erratum_only = failures_ == 0 && errata_ > 0;
    o.detail = notes_.str();
    if (failures_ > 5) o.detail += "; " + std::to_string(failures_ - 5) + " more";
    return o;
  }

 private:
  std::size_t failures_ = 0;
  std::size_t errata_ = 0;
  std::ostringstream notes_;
};

Int oracle_mod(const Int& x, const Int& q) {
  Int r = x % q;
  return r < 0 ? r + q : r;
}

Int eval_poly(const CycloPoly& f, const Int& theta, const Int& q) {
  return eval_direct({f.coeffs().begin(), f.coeffs().end()}, theta, q);
}

// J P = 1 in (Z/rZ)[y]/(y^m + 1), by the quadratic product.
bool is_inverse(const CycloPoly& P, const CycloPoly& J, const Int& r) {
  CycloPoly prod = reference::naive_negacyclic(P, J);
  for (std::size_t i = 0; i < prod.m(); ++i)
    if (oracle_mod(prod[i], r) != (i == 0 ? 1 : 0)) return false;
  return true;
}

CycloPoly poly(std::vector<std::string> c) { return CycloPoly::from_strings(c); }

const Int kQ("3141592653589793238462833");
const Int kTheta("2542533431566904450922735");
const Int kR(42602761);
const Int kPlainU("2718281828459045235360288");
const Int kU("1414213562373095048801689");
const Int kV("1732050807568877293527447");
const CycloPoly kU1 = poly({"-3202352", "-5013490", "951670", "-3366162"});
const CycloPoly kU2 = poly({"1317423", "-5192184", "1849981", "-4133936"});
const CycloPoly kP = poly({"-292956", "1136523", "-927319", "-394297"});
const CycloPoly kJ = poly({"8514380", "30962874", "6504907", "17106162"});
const CycloPoly kD = poly({"-270537", "2036309", "-3680082", "-1918607"});
const CycloPoly kUU = poly({"4285386", "-3089740", "3692532", "3740635"});
const CycloPoly kVV = poly({"-3075767", "-2839272", "-4018180", "4629959"});
const CycloPoly kF = poly({"26582459129078", "-4729783170300", "-37123194804209", "10266868543625"});
const CycloPoly kQuot = poly({"-11934644", "20464841", "-14729381", "3932274"});
const CycloPoly kG = poly({"777998", "398819", "-1814782", "995963"});

// Largest m q^(1/m) bound as an exact integer: floor((m^m q)^(1/m)).
Int representation_bound(const Int& q, std::size_t m) {
  return floor_root(pow(Int(static_cast<unsigned long>(m)), m) * q, m);
}

Outcome worked_example() {
  Checks c;
  const Int bound = representation_bound(kQ, 4);
  c.expect(bound == 5325341, "bound m q^(1/m) is " + bound.get_str());
  // a
  c.expect(eval_poly(kU2, kTheta, kQ) == kPlainU, "1a: second U does not evaluate to u");
  c.expect(norm(kU1) <= bound && norm(kU2) <= bound, "1a: printed U exceeds the bound");
  const Int first = eval_poly(kU1, kTheta, kQ);
  if (first != kPlainU) {
    CycloPoly flipped = kU1;
    flipped[3] = -flipped[3];
    const bool sign_typo = eval_poly(flipped, kTheta, kQ) == kPlainU;
    c.erratum(false, "1a: first printed U evaluates to " + first.get_str() +
                         (sign_typo ? ", not u; with its y^3 coefficient negated it evaluates to u"
                                    : ", not u"));
    c.expect(sign_typo, "1a: first printed U is not a single sign typo");
  }
  // b
  c.expect(!kP.is_zero() && eval_poly(kP, kTheta, kQ) == 0 && pow(norm(kP), 4) <= kQ,
           "1b: printed P fails its postcondition");
  // c
  try {
    AuxPrime aux = find_aux_prime(kP, kQ);
    c.expect(aux.r == kR, "1c: r = " + aux.r.get_str());
    c.expect(aux.J == kJ, "1c: J = " + aux.J.to_string());
    c.expect(is_inverse(kP, kJ, kR), "1c: printed J is not the inverse of P");
  } catch (const Error& e) {
    c.expect(false, std::string("1c: ") + e.what());
  }
  // d
  try {
    ContextPtr ctx = ThetaContext::assemble({kQ, 4, kTheta, kP, kR, kJ, kD, false});
    c.expect(eval_poly(kUU, kTheta, kQ) == kU && eval_poly(kVV, kTheta, kQ) == kV,
             "1d: printed U, V do not represent u, v");
    CycloPoly F = negacyclic_mul(kUU, kVV);
    c.expect(F == reference::naive_negacyclic(kUU, kVV) && F == kF, "1d: F = " + F.to_string());
    Reduction red = reduce_traced(F, *ctx);
    c.expect(red.Q == kQuot, "1d: Q = " + red.Q.to_string());
    c.expect(red.G == kG, "1d: G = " + red.G.to_string());
    ThetaRepr G = mul_scaled(ThetaRepr(kUU, ctx), ThetaRepr(kVV, ctx));
    c.expect(G.poly() == kG, "1d: mul_scaled differs from G");
    c.expect(oracle_mod(eval_poly(kG, kTheta, kQ) * kR - kU * kV, kQ) == 0, "1d: G r != uv");
  } catch (const Error& e) {
    c.expect(false, std::string("1d: ") + e.what());
  }
  // e
  c.expect(eval_poly(kD, kTheta, kQ) == kR * kR % kQ, "1e: D(theta) != r^2");
  c.expect(norm(kD) <= bound, "1e: D exceeds the bound");
  return c.outcome();
}

// A context for a prime q = 1 (mod 2m), theta drawn at random among the
// elements of order 2m.
ContextPtr random_context(std::uint64_t q, std::size_t m) {
  for (;;) {
    std::uint64_t g = uniform(2, q - 1);
    std::uint64_t theta = powmod(g, (q - 1) / (2 * m), q);
    if (powmod(theta, m, q) == q - 1) return precompute(int_from_u64(q), m, int_from_u64(theta));
  }
}

std::uint64_t random_small_prime(std::uint64_t lo, std::uint64_t hi, std::uint64_t step) {
  for (;;) {
    std::uint64_t p = uniform(lo, hi) / step * step + 1;
    if (p <= hi && trial_prime(p)) return p;
  }
}

Outcome theta_arithmetic() {
  Checks c;
  std::size_t contexts = 0, pairs = 0;
  for (std::size_t m : {2u, 4u, 8u, 2u, 4u, 8u}) {
    ContextPtr ctx = random_context(random_small_prime(1000, 1'000'000, 2 * m), m);
    ++contexts;
    const Int& q = ctx->q();
    const Int rinv = mod_inverse(ctx->r(), q);
    c.expect(oracle_mod(rinv * ctx->r(), q) == 1, "r^-1 wrong");
    for (int i = 0; i < 1000; ++i, ++pairs) {
      Int u = random_below(q), v = random_below(q);
      ThetaRepr U = to_theta(u, ctx), V = to_theta(v, ctx);
      std::vector<std::pair<ThetaRepr, Int>> results{
          {add(U, V), oracle_mod(u + v, q)},
          {sub(U, V), oracle_mod(u - v, q)},
          {mul(U, V), oracle_mod(u * v, q)},
          {mul_scaled(U, V), oracle_mod(u * v * rinv, q)},
      };
      for (auto& [repr, want] : results) {
        c.expect(from_theta(repr) == want, "q=" + q.get_str() + " u=" + u.get_str() + " v=" + v.get_str());
        c.expect(norm(repr.poly()) <= ctx->bound_B(), "norm bound exceeded at q=" + q.get_str());
      }
    }
  }
  c.note(std::to_string(contexts) + " contexts, " + std::to_string(pairs) + " pairs");
  return c.outcome();
}

Outcome round_trip() {
  Checks c;
  std::uint64_t exhaustive = 0;
  for (auto [q, m] : std::vector<std::pair<std::uint64_t, std::size_t>>{{257, 2}, {7681, 8}, {9473, 4}, {9857, 2}}) {
    ContextPtr ctx = random_context(q, m);
    for (std::uint64_t u = 0; u < q; ++u, ++exhaustive) {
      ThetaRepr U = to_theta(int_from_u64(u), ctx);
      c.expect(from_theta(U) == int_from_u64(u) && norm(U.poly()) <= ctx->bound_B(),
               "q=" + std::to_string(q) + " u=" + std::to_string(u));
    }
  }
  std::uint64_t sampled = 0;
  for (auto [bits, m] : std::vector<std::pair<std::size_t, std::size_t>>{{40, 2}, {64, 4}, {80, 4}, {80, 8}}) {
    Int q = random_prime_one_mod(bits, Int(static_cast<unsigned long>(2 * m)));
    Int theta;
    do {
      theta = mod_pow(random_below(q), (q - 1) / static_cast<unsigned long>(2 * m), q);
    } while (mod_pow(theta, Int(static_cast<unsigned long>(m)), q) != q - 1);
    ContextPtr ctx = precompute(q, m, theta);
    for (int i = 0; i < 2500; ++i, ++sampled) {
      Int u = random_below(q);
      ThetaRepr U = to_theta(u, ctx);
      c.expect(from_theta(U) == u && eval_poly(U.poly(), theta, q) == u && norm(U.poly()) <= ctx->bound_B(),
               "q=" + q.get_str() + " u=" + u.get_str());
    }
  }
  c.note(std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) + " sampled");
  return c.outcome();
}

std::vector<std::uint64_t> words(const std::vector<Int>& f) {
  std::vector<std::uint64_t> out;
  for (const Int& x : f) out.push_back(int_to_u64(x));
  return out;
}

std::vector<Int> ints(const std::vector<std::uint64_t>& f) {
  std::vector<Int> out;
  for (std::uint64_t x : f) out.push_back(int_from_u64(x));
  return out;
}

Outcome dft_equivalence() {
  Checks c;
  std::size_t cases = 0;
  for (std::size_t L = 2; L <= 1024; L *= 2) {
    for (int k = 0; k < 3; ++k, ++cases) {
      // p = 1 (mod 2L) so that Bluestein's eta exists as well.
      Int p = random_prime_one_mod(static_cast<std::size_t>(uniform(20, 62)), Int(static_cast<unsigned long>(2 * L)));
      WordRing ring(int_to_u64(p));
      Int eta;
      do {
        eta = mod_pow(random_below(p), (p - 1) / static_cast<unsigned long>(2 * L), p);
      } while (mod_pow(eta, Int(static_cast<unsigned long>(L)), p) != p - 1);
      const Int zeta = eta * eta % p;
      std::vector<Int> f(L);
      for (Int& x : f) x = random_below(p);
      const std::vector<Int> want = reference::naive_dft(f, zeta, p);
      const std::size_t S = std::size_t{2} << uniform(0, std::countr_zero(L) - 1);
      auto ct = ints(cooley_tukey_dft(ring, words(f), int_to_u64(zeta), S));
      auto bs = ints(bluestein_dft(ring, words(f), int_to_u64(zeta), int_to_u64(eta)));
      c.expect(ct == want, "Cooley-Tukey L=" + std::to_string(L) + " S=" + std::to_string(S) + " p=" + p.get_str());
      c.expect(bs == want, "Bluestein L=" + std::to_string(L) + " p=" + p.get_str());
    }
  }
  c.note(std::to_string(cases) + " cases");
  return c.outcome();
}

Outcome recursive_transform() {
  Checks c;
  struct Case {
    std::size_t L;
    Int p;
    int alpha;
    std::size_t m, S, mprime;
    int alphaprime;
    std::size_t threshold;
  };
  const std::vector<Case> cases{
      {64, 193, 1, 2, 8, 1, 4, 32},
      {32, 97, 1, 2, 4, 1, 9, 16},
      {128, 257, 2, 4, 16, 2, 8, 64},
      {256, 257, 1, 2, 16, 1, 5, 128},
  };
  for (const Case& k : cases) {
    Int q = pow(k.p, static_cast<unsigned long>(k.alpha));
    Int zeta = hensel_lift_root(primitive_root_of_unity(k.p, k.L), k.p, k.alpha, k.L);
    TransformParams params = make_transform_params(k.L, Modulus(k.p, k.alpha), zeta, k.m);
    SyntheticChoice choice;
    choice.S = k.S;
    choice.alphaprime = k.alphaprime;
    choice.mprime = k.mprime;
    RecursionPlan plan = plan_recursion_synthetic(params, choice);
    TransformConfig config;
    config.base_threshold = k.threshold;
    const std::string tag = "L=" + std::to_string(k.L) + " S=" + std::to_string(k.S) + " p'=" + plan.pprime.get_str();
    for (int i = 0; i < 3; ++i) {
      std::vector<Int> f(k.L);
      for (Int& x : f) x = random_below(q);
      TransformStats stats;
      std::vector<Int> out = transform(params, f, &plan, config, &stats);
      c.expect(out == reference::naive_dft(f, zeta, q), tag + ": forward differs from naive");
      c.expect(inverse_transform(params, out, &plan, config, &stats) == f, tag + ": inverse(forward) != id");
      c.expect(stats.forward_calls > 0 && 4 * stats.max_norm_A <= plan.qprime, tag + ": q' < 4 max|A|");
    }
  }
  c.note(std::to_string(cases.size()) + " plans incl. L=64 S=8 p'=17");
  return c.outcome();
}

Outcome multiplication() {
  Checks c;
  for (std::size_t bits : {std::size_t{1} << 14, std::size_t{1} << 16, std::size_t{1} << 18, std::size_t{1} << 20}) {
    for (int i = 0; i < 100; ++i) {
      Int u = random_bits(bits), v = random_bits(bits);
      if (i == 0) u = (Int(1) << static_cast<mp_bitcnt_t>(bits)) - 1, v = u;
      c.expect(multiply(u, v) == reference::reference_multiply(u, v), std::to_string(bits) + "-bit pair " + std::to_string(i));
    }
  }
  // Every pair below 2^16 goes through the reference path.
  Int out, a, b;
  std::uint64_t bad = 0;
  for (std::uint64_t u = 0; u < 65536; ++u) {
    a = static_cast<unsigned long>(u);
    for (std::uint64_t v = 0; v < 65536; ++v) {
      b = static_cast<unsigned long>(v);
      multiply(a, b, out);
      bad += out.get_ui() != u * v;
    }
  }
  c.expect(bad == 0, std::to_string(bad) + " small pairs differ");
  c.note("400 large pairs, 2^32 small pairs");
  return c.outcome();
}

Outcome plan_arithmetic() {
  Checks c;
  const std::uint64_t n = std::uint64_t{1} << 20;
  MulPlan plan = build_plan(n);
  c.expect(plan.b == 20 && plan.t == 7 && plan.L == 16,
           "b=" + std::to_string(plan.b) + " t=" + std::to_string(plan.t) + " L=" + std::to_string(plan.L));
  Int M = 1;
  for (std::uint64_t q : plan.q) M *= int_from_u64(q);
  c.expect(M > 4 * int_from_u64(n) * int_from_u64(n) * int_from_u64(n), "product of primes <= 4 n^3");
  for (std::size_t i = 1; i < kPrimeCount; ++i) {
    const std::uint64_t q = plan.q[i];
    c.expect(trial_prime(q) && q % plan.L == 1 && q % 19 == i, "q_" + std::to_string(i) + " congruences");
    for (std::uint64_t x = 2; x < q; ++x)
      if (x % plan.L == 1 && x % 19 == i && trial_prime(x)) c.expect(false, "q_" + std::to_string(i) + " not minimal");
  }
  // Slot 0 cannot hold a prime = 0 (mod 19); it takes the least unused prime = 1 (mod L).
  bool minimal0 = trial_prime(plan.q[0]) && plan.q[0] % plan.L == 1;
  for (std::uint64_t x = plan.L + 1; x < plan.q[0]; x += plan.L) {
    bool used = false;
    for (std::size_t i = 1; i < kPrimeCount; ++i) used = used || plan.q[i] == x;
    if (!used && trial_prime(x)) minimal0 = false;
  }
  c.expect(plan.q0_substituted && minimal0, "q_0 substitute");
  c.note("q_0=" + std::to_string(plan.q[0]) + " substituted for the class 0 mod 19");
  return c.outcome();
}

Outcome strict_regime() {
  Checks c;
  bool rejected = false;
  try {
    precompute(kQ, 4, kTheta, true);
  } catch (const StrictViolation&) {
    rejected = true;
  }
  c.expect(rejected, "strict precompute accepted the worked example");
  c.expect(!satisfies_strict_bound(kQ, 4), "regime check holds unexpectedly");
  try {
    ContextPtr ctx = precompute(kQ, 4, kTheta, false);
    c.expect(!ctx->P().is_zero() && eval_at(ctx->P(), kTheta, kQ) == 0 && pow(norm(ctx->P()), 4) <= kQ,
             "generated P invalid");
    c.expect(is_inverse(ctx->P(), ctx->J(), ctx->r()), "generated J invalid");
    c.expect(eval_poly(ctx->D(), kTheta, kQ) == ctx->r() * ctx->r() % kQ && norm(ctx->D()) <= ctx->bound_B(),
             "generated D invalid");
    ThetaRepr U = to_theta(kU, ctx), V = to_theta(kV, ctx);
    c.expect(from_theta(mul(U, V)) == kU * kV % kQ, "product in generated context");
  } catch (const Error& e) {
    c.expect(false, std::string("non-strict precompute: ") + e.what());
  }
  Outcome golden = worked_example();
  c.expect(golden.pass || golden.erratum_only, "criterion 1 fails beyond the known erratum");
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example golden values", worked_example},
      {2, "theta arithmetic vs modular oracle", theta_arithmetic},
      {3, "conversion round trip", round_trip},
      {4, "DFT strategies vs naive DFT", dft_equivalence},
      {5, "recursive transform with synthetic plans", recursive_transform},
      {6, "multiply vs reference multiplier", multiplication},
      {7, "plan arithmetic for n = 2^20", plan_arithmetic},
      {8, "strict regime rejects the worked example", strict_regime},
  };
  int unexpected = 0;
  for (const Criterion& k : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s (%.1f s)%s%s%s\n", k.id, o.pass ? "PASS" : "FAIL", k.name, secs,
                o.detail.empty() ? "" : " [", o.detail.c_str(), o.detail.empty() ? "" : "]");
    if (!o.pass && o.erratum_only) std::printf("criterion %d: failure is a known erratum in the example data\n", k.id);
    std::fflush(stdout);
    if (!o.pass && !o.erratum_only) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
