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
#include <memory>
#include <string>
#include <string_view>

#include "thetamul/numtheory.hpp"
#include "thetamul/polyring.hpp"

namespace thetamul {

class ThetaContext;
using ContextPtr = std::shared_ptr<const ThetaContext>;

// Precomputed data for arithmetic on Z/qZ through polynomials U with
// U(theta) = u (mod q) and small coefficients. Immutable once built.
class ThetaContext {
 public:
  struct Parts {
    Int q;
    std::size_t m = 1;
    Int theta;
    CycloPoly P{1};
    Int r;
    CycloPoly J{1};
    CycloPoly D{1};
    bool strict = false;
  };

  // Validates every invariant and returns the shared context. Throws
  // InvalidTheta, StrictViolation or InvariantViolation.
  static ContextPtr assemble(Parts parts);

  const Int& q() const { return parts_.q; }
  std::size_t m() const { return parts_.m; }
  const Int& theta() const { return parts_.theta; }
  const CycloPoly& P() const { return parts_.P; }
  const Int& r() const { return parts_.r; }
  const CycloPoly& J() const { return parts_.J; }
  const CycloPoly& D() const { return parts_.D; }
  bool strict() const { return parts_.strict; }
  const Parts& parts() const { return parts_; }

  // floor(m q^(1/m)), the representation bound.
  const Int& bound_B() const { return bound_B_; }
  // floor(q^(1/m)), the bound on P.
  const Int& short_bound() const { return short_bound_; }
  // floor(m^3 q^(2/m)), the largest input norm accepted by reduce.
  const Int& reduce_bound() const { return reduce_bound_; }
  // Digit width used when reducing polynomials of arbitrary size.
  unsigned chunk_bits() const { return chunk_bits_; }
  // Representation of 2^chunk_bits.
  const CycloPoly& chunk_radix() const { return chunk_radix_; }

  // "key = value" lines; see parse().
  std::string serialize() const;
  static ContextPtr parse(std::string_view text);

 private:
  explicit ThetaContext(Parts parts);
  Parts parts_;
  Int bound_B_;
  Int short_bound_;
  Int reduce_bound_;
  unsigned chunk_bits_ = 1;
  CycloPoly chunk_radix_{1};
};

// A residue modulo q held as a polynomial U with U(theta) = u and
// norm(U) <= bound_B.
class ThetaRepr {
 public:
  // Throws NormBoundViolation if norm(U) exceeds the context bound.
  ThetaRepr(CycloPoly U, ContextPtr ctx);

  const CycloPoly& poly() const { return U_; }
  const ContextPtr& context() const { return ctx_; }

 private:
  CycloPoly U_;
  ContextPtr ctx_;
};

// Whether q >= 2^(m (lg lg q)^2), the regime the asymptotic bounds assume.
bool satisfies_strict_bound(const Int& q, std::size_t m);

// Nonzero P with P(theta) = 0 (mod q) and norm(P) <= floor(q^(1/m)).
// Small search spaces are enumerated completely (the result then has
// minimal norm); larger ones go through LLL and lattice enumeration.
CycloPoly find_short_vector(const Int& q, std::size_t m, const Int& theta,
                            std::uint64_t exhaustive_budget = 2'000'000);

struct AuxPrime {
  Int r;
  CycloPoly J;
};
// Least prime r with r^m > (2m^2)^m q, r not dividing q and P invertible
// modulo (r, y^m + 1); J is that inverse with coefficients in [0, r).
AuxPrime find_aux_prime(const CycloPoly& P, const Int& q);

// Inverse of f in (Z/rZ)[y]/(y^m + 1), r prime, or NotInvertible.
CycloPoly negacyclic_inverse_mod(const CycloPoly& f, const Int& r);

struct Reduction {
  CycloPoly Q;  // F J mod r, balanced
  CycloPoly G;  // (F - Q P) / r
};
// The reduction step with its quotient exposed. Requires
// norm(F) <= reduce_bound, else NormBoundViolation.
Reduction reduce_traced(const CycloPoly& F, const ThetaContext& ctx);

// Representation of F(theta) / r.
ThetaRepr reduce(const CycloPoly& F, const ContextPtr& ctx);

// Representations of uv/r, (u + v)/r and (u - v)/r.
ThetaRepr mul_scaled(const ThetaRepr& U, const ThetaRepr& V);
ThetaRepr add_scaled(const ThetaRepr& U, const ThetaRepr& V);
ThetaRepr sub_scaled(const ThetaRepr& U, const ThetaRepr& V);

// Representations of uv, u + v and u - v.
ThetaRepr mul(const ThetaRepr& U, const ThetaRepr& V);
ThetaRepr add(const ThetaRepr& U, const ThetaRepr& V);
ThetaRepr sub(const ThetaRepr& U, const ThetaRepr& V);

// D with D(theta) = r^2 (mod q) and norm(D) <= floor(m q^(1/m)), from
// phi = phi(q). Uses square-and-multiply on the exponent of 1/r.
CycloPoly compute_scaler_D(const Int& q, std::size_t m, const Int& theta, const CycloPoly& P,
                           const Int& r, const CycloPoly& J, const Int& phi);

// Representation of F(theta) for F of any size.
ThetaRepr reduce_arbitrary(const CycloPoly& F, const ContextPtr& ctx);

ThetaRepr to_theta(const Int& u, const ContextPtr& ctx);
Int from_theta(const ThetaRepr& U);

ContextPtr precompute(const Modulus& q, std::size_t m, const Int& theta, bool strict = false);
ContextPtr precompute(const Int& q, std::size_t m, const Int& theta, bool strict = false);

}  // namespace thetamul
