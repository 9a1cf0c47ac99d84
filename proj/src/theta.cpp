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

#include "thetamul/theta.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "thetamul/errors.hpp"
#include "thetamul/lattice.hpp"

namespace thetamul {

namespace {

Int ulong_int(std::size_t x) { return Int(static_cast<unsigned long>(x)); }

// The data the reduction step needs, before a full context exists.
struct Reducer {
  const CycloPoly& P;
  const Int& r;
  const CycloPoly& J;
  Int reduce_bound;
  Int bound_B;
};

Int representation_bound(const Int& q, std::size_t m) {
  return floor_root(pow(ulong_int(m), static_cast<unsigned long>(m)) * q, m);
}

Int reduction_input_bound(const Int& q, std::size_t m) {
  return floor_root(pow(ulong_int(m), static_cast<unsigned long>(3 * m)) * q * q, m);
}

Reduction reduce_with(const CycloPoly& F, const Reducer& red) {
  if (norm(F) > red.reduce_bound) {
    throw NormBoundViolation("reduce: input norm " + norm(F).get_str() + " exceeds " +
                             red.reduce_bound.get_str());
  }
  Reduction out{balanced_coeffs(negacyclic_mul_mod(F, red.J, red.r), red.r), CycloPoly(F.m())};
  CycloPoly diff = F - negacyclic_mul(out.Q, red.P);
  for (std::size_t i = 0; i < diff.m(); ++i) {
    if (!mpz_divisible_p(diff[i].get_mpz_t(), red.r.get_mpz_t())) {
      throw InvariantViolation("reduce: F - QP is not divisible by r");
    }
    mpz_divexact(diff[i].get_mpz_t(), diff[i].get_mpz_t(), red.r.get_mpz_t());
  }
  if (norm(diff) > red.bound_B) {
    throw InvariantViolation("reduce: remainder norm " + norm(diff).get_str() + " exceeds " +
                             red.bound_B.get_str());
  }
  out.G = std::move(diff);
  return out;
}

void require_same_context(const ThetaRepr& U, const ThetaRepr& V) {
  const ContextPtr& a = U.context();
  const ContextPtr& b = V.context();
  if (a != b && !(a->parts().q == b->parts().q && a->parts().theta == b->parts().theta &&
                  a->parts().P == b->parts().P && a->parts().r == b->parts().r &&
                  a->parts().J == b->parts().J && a->parts().D == b->parts().D)) {
    throw ContextMismatch("operands belong to different theta contexts");
  }
}

// ceil(q^(1/m)).
Int ceil_root(const Int& q, std::size_t m) {
  Int c = floor_root(q, m);
  if (pow(c, m) < q) ++c;
  return c;
}

// Splits |c| into base-2^b digits in (-2^(b-1), 2^(b-1)], least significant
// first, and applies the sign of c to each digit.
std::vector<Int> signed_digits(const Int& c, unsigned b) {
  std::vector<Int> out;
  Int rest = abs(c);
  Int half, full;
  mpz_setbit(half.get_mpz_t(), b - 1);
  mpz_setbit(full.get_mpz_t(), b);
  while (sgn(rest) != 0) {
    Int d;
    mpz_fdiv_r_2exp(d.get_mpz_t(), rest.get_mpz_t(), b);
    if (d > half) d -= full;
    rest -= d;
    mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), b);
    out.push_back(sgn(c) < 0 ? Int(-d) : d);
  }
  return out;
}

std::string join_coeffs(const CycloPoly& f) {
  std::string s;
  for (std::size_t i = 0; i < f.m(); ++i) {
    if (i) s += ' ';
    s += f[i].get_str();
  }
  return s;
}

}  // namespace

bool satisfies_strict_bound(const Int& q, std::size_t m) {
  const auto lglg = static_cast<std::size_t>(lg(static_cast<std::uint64_t>(lg(q))));
  return bit_length(q) >= m * lglg * lglg + 1;
}

ThetaContext::ThetaContext(Parts parts) : parts_(std::move(parts)) {}

ContextPtr ThetaContext::assemble(Parts parts) {
  const std::size_t m = parts.m;
  if (parts.q < 2) throw InvalidArgument("theta context requires q >= 2");
  if (parts.P.m() != m || parts.J.m() != m || parts.D.m() != m) {
    throw InvariantViolation("P, J and D must all have degree bound m = " + std::to_string(m));
  }
  const Int q = parts.q;
  if (sgn(parts.theta) < 0 || parts.theta >= q) {
    throw InvalidArgument("theta must lie in [0, q)");
  }
  if (mod_pow(parts.theta, ulong_int(m), q) != q - 1) {
    throw InvalidTheta("theta^" + std::to_string(m) + " is not -1 mod " + q.get_str());
  }
  if (parts.strict && !satisfies_strict_bound(q, m)) {
    throw StrictViolation("q^(1/m) >= 2^((lg lg q)^2) fails for m = " + std::to_string(m));
  }

  std::shared_ptr<ThetaContext> ctx(new ThetaContext(std::move(parts)));
  const Parts& p = ctx->parts_;
  ctx->bound_B_ = representation_bound(q, m);
  ctx->short_bound_ = floor_root(q, m);
  ctx->reduce_bound_ = reduction_input_bound(q, m);

  if (p.P.is_zero() || eval_at(p.P, p.theta, q) != 0 || norm(p.P) > ctx->short_bound_) {
    throw InvariantViolation("P must be nonzero, vanish at theta and have norm <= q^(1/m)");
  }
  const Int lower = pow(ulong_int(2 * m * m), static_cast<unsigned long>(m)) * q;
  if (!is_prime(p.r) || pow(p.r, m) <= lower || mpz_divisible_p(q.get_mpz_t(), p.r.get_mpz_t())) {
    throw InvariantViolation("r must be a prime above 2 m^2 q^(1/m) not dividing q");
  }
  for (const Int& c : p.J.coeffs()) {
    if (sgn(c) < 0 || c >= p.r) throw InvariantViolation("J coefficients must lie in [0, r)");
  }
  if (negacyclic_mul_mod(p.J, p.P, p.r) != CycloPoly::constant(m, 1)) {
    throw InvariantViolation("J P is not 1 modulo (r, y^m + 1)");
  }
  if (eval_at(p.D, p.theta, q) != mod(p.r * p.r, q) || norm(p.D) > ctx->bound_B_) {
    throw InvariantViolation("D must satisfy D(theta) = r^2 mod q and norm(D) <= m q^(1/m)");
  }

  ctx->chunk_bits_ = static_cast<unsigned>(lg(ceil_root(q, m)));
  Int radix;
  mpz_setbit(radix.get_mpz_t(), ctx->chunk_bits_);
  if (radix <= ctx->bound_B_) {
    ctx->chunk_radix_ = CycloPoly::constant(m, radix);
  } else {
    const Reducer red{p.P, p.r, p.J, ctx->reduce_bound_, ctx->bound_B_};
    const CycloPoly scaled = reduce_with(CycloPoly::constant(m, radix), red).G;
    ctx->chunk_radix_ = reduce_with(negacyclic_mul(scaled, p.D), red).G;
  }
  return ctx;
}

std::string ThetaContext::serialize() const {
  std::ostringstream os;
  os << "q = " << parts_.q.get_str() << '\n'
     << "m = " << parts_.m << '\n'
     << "theta = " << parts_.theta.get_str() << '\n'
     << "P = " << join_coeffs(parts_.P) << '\n'
     << "r = " << parts_.r.get_str() << '\n'
     << "J = " << join_coeffs(parts_.J) << '\n'
     << "D = " << join_coeffs(parts_.D) << '\n'
     << "strict = " << (parts_.strict ? "true" : "false") << '\n';
  return os.str();
}

ContextPtr ThetaContext::parse(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("context line without '=': " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (fields.count(key)) throw InvalidArgument("duplicate context key '" + key + "'");
    fields[key] = trim(line.substr(eq + 1));
  }
  static const char* const kKeys[] = {"q", "m", "theta", "P", "r", "J", "D", "strict"};
  for (const char* k : kKeys) {
    if (!fields.count(k)) throw InvalidArgument(std::string("context is missing '") + k + "'");
  }
  if (fields.size() != std::size(kKeys)) throw InvalidArgument("context has unknown keys");

  auto parse_int = [](const std::string& key, const std::string& s) {
    Int v;
    const std::string digits = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    if (digits.empty() || v.set_str(digits, 10) != 0) {
      throw InvalidArgument("context field '" + key + "' is not an integer: " + s);
    }
    return v;
  };
  auto parse_poly = [](const std::string& s) {
    std::istringstream ps(s);
    std::vector<std::string> tokens;
    for (std::string tok; ps >> tok;) tokens.push_back(tok);
    return CycloPoly::from_strings(tokens);
  };

  Parts parts;
  parts.q = parse_int("q", fields["q"]);
  const Int m = parse_int("m", fields["m"]);
  if (m < 1 || m > 1 << 20) throw InvalidArgument("context field 'm' out of range");
  parts.m = m.get_ui();
  parts.theta = parse_int("theta", fields["theta"]);
  parts.P = parse_poly(fields["P"]);
  parts.r = parse_int("r", fields["r"]);
  parts.J = parse_poly(fields["J"]);
  parts.D = parse_poly(fields["D"]);
  const std::string& strict = fields["strict"];
  if (strict != "true" && strict != "false") {
    throw InvalidArgument("context field 'strict' must be true or false");
  }
  parts.strict = strict == "true";
  return assemble(std::move(parts));
}

ThetaRepr::ThetaRepr(CycloPoly U, ContextPtr ctx) : U_(std::move(U)), ctx_(std::move(ctx)) {
  if (!ctx_) throw InvalidArgument("theta representation without a context");
  if (U_.m() != ctx_->m()) throw InvalidArgument("representation degree does not match context");
  if (norm(U_) > ctx_->bound_B()) {
    throw NormBoundViolation("norm " + norm(U_).get_str() + " exceeds representation bound " +
                             ctx_->bound_B().get_str());
  }
}

CycloPoly find_short_vector(const Int& q, std::size_t m, const Int& theta,
                            std::uint64_t exhaustive_budget) {
  if (q < 2) throw InvalidArgument("find_short_vector requires q >= 2");
  if (mod_pow(mod(theta, q), ulong_int(m), q) != q - 1) {
    throw InvalidTheta("theta^m is not -1 mod q");
  }
  const Int bound = floor_root(q, m);
  std::vector<Int> powers(m);  // theta^i mod q
  powers[0] = 1;
  for (std::size_t i = 1; i < m; ++i) powers[i] = mod(powers[i - 1] * theta, q);

  const Int width = 2 * bound + 1;
  if (pow(width, static_cast<unsigned long>(m - 1)) <= int_from_u64(exhaustive_budget)) {
    // Odometer over a_1..a_{m-1}, each visiting 0, 1, -1, 2, -2, ...; a_0 is
    // then the balanced solution of a_0 = -sum a_i theta^i (mod q).
    const long b = bound.get_si();
    auto value_at = [](long k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); };
    std::vector<long> idx(m, 0);
    std::optional<CycloPoly> best;
    Int best_norm;
    const Int half = q / 2;
    for (;;) {
      Int s = 0;
      Int free_norm = 0;
      for (std::size_t i = 1; i < m; ++i) {
        const long a = value_at(idx[i]);
        s += a * powers[i];
        if (std::abs(a) > free_norm) free_norm = std::abs(a);
      }
      Int a0 = mod(-s, q);
      if (a0 > half) a0 -= q;
      if (sgn(free_norm) == 0 && sgn(a0) == 0) a0 = q;
      if (cmpabs(a0, bound) <= 0) {
        const Int n = std::max<Int>(abs(a0), free_norm);
        if (!best || n < best_norm) {
          CycloPoly cand(m);
          cand[0] = a0;
          for (std::size_t i = 1; i < m; ++i) cand[i] = value_at(idx[i]);
          best = std::move(cand);
          best_norm = n;
        }
      }
      std::size_t pos = 1;
      while (pos < m && ++idx[pos] > 2 * b) idx[pos++] = 0;
      if (pos >= m) break;
    }
    if (!best) throw NotFound("no short vector found by exhaustive search");
    return *best;
  }

  lattice::Basis basis(m, lattice::Vector(m));
  basis[0][0] = q;
  for (std::size_t i = 1; i < m; ++i) {
    basis[i][0] = mod(-powers[i], q);
    basis[i][i] = 1;
  }
  const lattice::Basis reduced = lattice::lll_reduce(std::move(basis));
  for (const auto& row : reduced) {
    if (std::all_of(row.begin(), row.end(), [&](const Int& c) { return cmpabs(c, bound) <= 0; })) {
      return CycloPoly(row);
    }
  }
  auto found = lattice::find_vector_in_box(reduced, bound);
  if (!found) throw NotFound("lattice enumeration found no vector within the bound");
  return CycloPoly(std::move(*found));
}

CycloPoly negacyclic_inverse_mod(const CycloPoly& f, const Int& r) {
  const std::size_t m = f.m();
  // Column k holds the coefficients of f y^k; solve M j = e_0.
  std::vector<std::vector<Int>> a(m, std::vector<Int>(m + 1));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row = i + k;
      if (row < m) {
        a[row][k] = mod(f[i], r);
      } else {
        a[row - m][k] = mod(-f[i], r);
      }
    }
  }
  a[0][m] = 1;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) throw NotInvertible("polynomial is not invertible modulo " + r.get_str());
    std::swap(a[piv], a[col]);
    const Int inv = mod_inverse(a[col][col], r);
    for (std::size_t j = col; j <= m; ++j) a[col][j] = mod(a[col][j] * inv, r);
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Int factor = a[row][col];
      for (std::size_t j = col; j <= m; ++j) a[row][j] = mod(a[row][j] - factor * a[col][j], r);
    }
  }
  CycloPoly inv(m);
  for (std::size_t i = 0; i < m; ++i) inv[i] = a[i][m];
  return inv;
}

AuxPrime find_aux_prime(const CycloPoly& P, const Int& q) {
  const std::size_t m = P.m();
  const Int lower = pow(ulong_int(2 * m * m), static_cast<unsigned long>(m)) * q;
  Int r = floor_root(lower, m) + 1;
  // Each failure means r divides q or the resultant of P and y^m + 1,
  // both of which are bounded, so the loop terminates.
  for (;; ++r) {
    if (!is_prime(r) || mpz_divisible_p(q.get_mpz_t(), r.get_mpz_t())) continue;
    try {
      return AuxPrime{r, negacyclic_inverse_mod(P, r)};
    } catch (const NotInvertible&) {
    }
  }
}

Reduction reduce_traced(const CycloPoly& F, const ThetaContext& ctx) {
  if (F.m() != ctx.m()) throw InvalidArgument("reduce: degree does not match context");
  return reduce_with(F, Reducer{ctx.P(), ctx.r(), ctx.J(), ctx.reduce_bound(), ctx.bound_B()});
}

ThetaRepr reduce(const CycloPoly& F, const ContextPtr& ctx) {
  return ThetaRepr(reduce_traced(F, *ctx).G, ctx);
}

ThetaRepr mul_scaled(const ThetaRepr& U, const ThetaRepr& V) {
  require_same_context(U, V);
  return reduce(negacyclic_mul(U.poly(), V.poly()), U.context());
}

ThetaRepr add_scaled(const ThetaRepr& U, const ThetaRepr& V) {
  require_same_context(U, V);
  return reduce(U.poly() + V.poly(), U.context());
}

ThetaRepr sub_scaled(const ThetaRepr& U, const ThetaRepr& V) {
  require_same_context(U, V);
  return reduce(U.poly() - V.poly(), U.context());
}

ThetaRepr mul(const ThetaRepr& U, const ThetaRepr& V) {
  const ThetaRepr D(U.context()->D(), U.context());
  return mul_scaled(mul_scaled(U, V), D);
}

ThetaRepr add(const ThetaRepr& U, const ThetaRepr& V) {
  const ThetaRepr D(U.context()->D(), U.context());
  return mul_scaled(add_scaled(U, V), D);
}

ThetaRepr sub(const ThetaRepr& U, const ThetaRepr& V) {
  const ThetaRepr D(U.context()->D(), U.context());
  return mul_scaled(sub_scaled(U, V), D);
}

CycloPoly compute_scaler_D(const Int& q, std::size_t m, const Int& theta, const CycloPoly& P,
                           const Int& r, const CycloPoly& J, const Int& phi) {
  (void)theta;
  const CycloPoly one = CycloPoly::constant(m, 1);
  if (phi <= 2) return one;
  const Reducer red{P, r, J, reduction_input_bound(q, m), representation_bound(q, m)};
  // X represents r^-(s-1); mul_scaled adds shifted exponents s.
  const Int target = phi - 1;
  CycloPoly x = one;
  for (std::size_t bit = bit_length(target) - 1; bit-- > 0;) {
    x = reduce_with(negacyclic_mul(x, x), red).G;
    if (mpz_tstbit(target.get_mpz_t(), bit)) x = reduce_with(x, red).G;
  }
  return x;
}

ThetaRepr reduce_arbitrary(const CycloPoly& F, const ContextPtr& ctx) {
  const std::size_t m = ctx->m();
  if (F.m() != m) throw InvalidArgument("reduce_arbitrary: degree does not match context");
  const unsigned b = ctx->chunk_bits();
  std::vector<std::vector<Int>> digits(m);
  std::size_t n = 0;
  for (std::size_t i = 0; i < m; ++i) {
    digits[i] = signed_digits(F[i], b);
    n = std::max(n, digits[i].size());
  }
  auto chunk = [&](std::size_t k) {
    CycloPoly c(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (k < digits[i].size()) c[i] = digits[i][k];
    }
    return ThetaRepr(std::move(c), ctx);
  };
  if (n == 0) return ThetaRepr(CycloPoly(m), ctx);
  ThetaRepr h = chunk(n - 1);
  if (n == 1) return h;
  const ThetaRepr radix(ctx->chunk_radix(), ctx);
  for (std::size_t k = n - 1; k-- > 0;) h = add(mul(h, radix), chunk(k));
  return h;
}

ThetaRepr to_theta(const Int& u, const ContextPtr& ctx) {
  return reduce_arbitrary(CycloPoly::constant(ctx->m(), u), ctx);
}

Int from_theta(const ThetaRepr& U) {
  return eval_at(U.poly(), U.context()->theta(), U.context()->q());
}

ContextPtr precompute(const Modulus& q, std::size_t m, const Int& theta, bool strict) {
  ThetaContext::Parts parts;
  parts.q = q.value();
  parts.m = m;
  parts.theta = mod(theta, q.value());
  if (m == 0 || (m & (m - 1)) != 0) throw InvalidArgument("m must be a power of two");
  if (mod_pow(parts.theta, ulong_int(m), parts.q) != parts.q - 1) {
    throw InvalidTheta("theta^" + std::to_string(m) + " is not -1 mod " + parts.q.get_str());
  }
  if (strict && !satisfies_strict_bound(parts.q, m)) {
    throw StrictViolation("q^(1/m) >= 2^((lg lg q)^2) fails for m = " + std::to_string(m));
  }
  parts.P = find_short_vector(parts.q, m, parts.theta);
  AuxPrime aux = find_aux_prime(parts.P, parts.q);
  parts.r = std::move(aux.r);
  parts.J = std::move(aux.J);
  parts.D = compute_scaler_D(parts.q, m, parts.theta, parts.P, parts.r, parts.J, totient(q));
  parts.strict = strict;
  return ThetaContext::assemble(std::move(parts));
}

ContextPtr precompute(const Int& q, std::size_t m, const Int& theta, bool strict) {
  return precompute(Modulus::from_value(q), m, theta, strict);
}

}  // namespace thetamul
