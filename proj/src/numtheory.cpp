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

#include "thetamul/numtheory.hpp"

#include <array>
#include <string>

#include "thetamul/errors.hpp"

namespace thetamul {

namespace {

constexpr std::array<std::uint64_t, 13> kWitnesses = {2,  3,  5,  7,  11, 13, 17,
                                                      19, 23, 29, 31, 37, 41};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const Int& n, const Int& a) {
  Int d = n - 1;
  const auto s = static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  const Int n_minus_1 = n - 1;
  Int x = mod_pow(a, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// Halves x modulo the odd modulus n.
Int half_mod(Int x, const Int& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  return mod(x, n);
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
bool strong_lucas_probable_prime(const Int& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_param = 5;
  for (;;) {
    const Int d_int(d_param);
    const int j = mpz_jacobi(d_int.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(d_int) != n) return false;
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const Int big_d(d_param);
  const Int q_param = Int(1 - d_param) / 4;

  Int d = n + 1;
  const auto s = static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(s));

  Int u = 1;
  Int v = 1;  // P = 1
  Int qk = mod(q_param, n);
  const auto bits = bit_length(d);
  for (auto i = static_cast<long>(bits) - 2; i >= 0; --i) {
    u = u * v % n;
    v = mod(v * v - 2 * qk, n);
    qk = qk * qk % n;
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      Int u2 = half_mod(u + v, n);
      Int v2 = half_mod(big_d * u + v, n);
      u = std::move(u2);
      v = std::move(v2);
      qk = mod(qk * q_param, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (long r = 1; r < s; ++r) {
    v = mod(v * v - 2 * qk, n);
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

}  // namespace

Int int_from_u64(std::uint64_t x) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return r;
}

bool fits_u64(const Int& x) { return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

std::uint64_t int_to_u64(const Int& x) {
  if (!fits_u64(x)) throw InvalidArgument("integer does not fit in 64 bits");
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, x.get_mpz_t());
  return r;
}

std::size_t bit_length(const Int& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

int lg(const Int& n) {
  if (n < 1) throw InvalidArgument("lg requires n >= 1");
  if (n == 1) return 1;
  return static_cast<int>(bit_length(Int(n - 1)));
}

int lg(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("lg requires n >= 1");
  if (n == 1) return 1;
  return 64 - __builtin_clzll(n - 1);
}

Int floor_root(const Int& x, unsigned long k) {
  if (sgn(x) < 0 || k == 0) throw InvalidArgument("floor_root requires x >= 0, k >= 1");
  Int r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

Int pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int mod(const Int& a, const Int& q) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  if (sgn(r) < 0) r += abs(q);
  return r;
}

Modulus::Modulus(Int p, int alpha) : p_(std::move(p)), alpha_(alpha) {
  if (alpha_ < 1) throw InvalidArgument("modulus exponent must be >= 1");
  if (!is_prime(p_)) throw InvalidArgument("modulus base " + p_.get_str() + " is not prime");
  q_ = pow(p_, static_cast<unsigned long>(alpha_));
}

Modulus Modulus::from_value(const Int& q) {
  if (q < 2) throw InvalidArgument("modulus must be >= 2");
  if (is_prime(q)) return Modulus(q, 1);
  const auto bits = bit_length(q);
  for (unsigned long k = 2; k <= bits; ++k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), k) != 0 && is_prime(root)) {
      return Modulus(root, static_cast<int>(k));
    }
  }
  throw InvalidArgument(q.get_str() + " is not a prime power");
}

Int mod_pow(const Int& base, const Int& exp, const Int& q) {
  if (q < 2) throw InvalidArgument("mod_pow requires q >= 2");
  if (sgn(exp) < 0) throw InvalidArgument("mod_pow requires exp >= 0");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), q.get_mpz_t());
  return r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

Int mod_inverse(const Int& a, const Int& q) {
  if (q < 2) throw InvalidArgument("mod_inverse requires q >= 2");
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) == 0) {
    throw NotInvertible(a.get_str() + " is not invertible modulo " + q.get_str());
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 43 * 43) return true;
  // The first 12 prime bases are deterministic below 2^64.
  for (std::size_t i = 0; i < 12; ++i) {
    if (!strong_probable_prime(n, kWitnesses[i])) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime(int_to_u64(n));
  for (std::uint64_t p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const Int kDeterministicLimit("3317044064679887385961981");
  if (n < kDeterministicLimit) {
    for (std::uint64_t a : kWitnesses) {
      if (!strong_probable_prime(n, Int(static_cast<unsigned long>(a)))) return false;
    }
    return true;
  }
  return strong_probable_prime(n, Int(2)) && strong_lucas_probable_prime(n);
}

Congruence crt_combine(std::span<const Congruence> congruences) {
  Congruence acc{Int(0), Int(1)};
  for (const auto& c : congruences) {
    if (c.modulus < 1) throw InvalidArgument("congruence modulus must be positive");
    Int g;
    mpz_gcd(g.get_mpz_t(), acc.modulus.get_mpz_t(), c.modulus.get_mpz_t());
    if (g != 1) {
      throw InvalidArgument("moduli " + acc.modulus.get_str() + " and " +
                            c.modulus.get_str() + " are not coprime");
    }
    const Int a = mod(c.residue, c.modulus);
    if (c.modulus == 1) continue;
    const Int t = mod((a - acc.residue) * mod_inverse(acc.modulus, c.modulus), c.modulus);
    acc.residue += acc.modulus * t;
    acc.modulus *= c.modulus;
  }
  return acc;
}

Int find_prime_crt(std::span<const Congruence> congruences, const Int& start,
                   std::uint64_t max_steps) {
  const Congruence cls = crt_combine(congruences);
  Int g;
  mpz_gcd(g.get_mpz_t(), cls.residue.get_mpz_t(), cls.modulus.get_mpz_t());
  if (cls.modulus > 1 && g != 1) {
    throw IncompatibleCongruences("class " + cls.residue.get_str() + " mod " +
                                  cls.modulus.get_str() + " shares the factor " + g.get_str() +
                                  " with its modulus");
  }
  Int x = start + mod(cls.residue - start, cls.modulus);
  std::uint64_t steps = 0;
  if (fits_u64(x) && fits_u64(cls.modulus)) {
    // Word-sized fast path while the candidate stays below 2^64.
    const std::uint64_t step = int_to_u64(cls.modulus);
    std::uint64_t y = int_to_u64(x);
    for (; steps < max_steps && y <= UINT64_MAX - step; ++steps, y += step) {
      if (is_prime(y)) return int_from_u64(y);
    }
    x = int_from_u64(y);
  }
  for (; steps < max_steps; ++steps) {
    if (is_prime(x)) return x;
    x += cls.modulus;
  }
  throw NotFound("no prime found in class " + cls.residue.get_str() + " mod " +
                 cls.modulus.get_str() + " within the search cap");
}

Int crt_reconstruct(std::span<const Int> residues, std::span<const Int> moduli) {
  if (residues.size() != moduli.size()) {
    throw InvalidArgument("crt_reconstruct: residue and modulus counts differ");
  }
  std::vector<Congruence> cs;
  cs.reserve(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) cs.push_back({residues[i], moduli[i]});
  return crt_combine(cs).residue;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Int primitive_root_of_unity(const Int& p, std::uint64_t L) {
  if (L == 0) throw InvalidArgument("root order must be positive");
  const Int big_l = int_from_u64(L);
  if (p < 2 || !mpz_divisible_p(Int(p - 1).get_mpz_t(), big_l.get_mpz_t())) {
    throw InvalidArgument(std::to_string(L) + " does not divide p - 1 for p = " + p.get_str());
  }
  if (L == 1) return Int(1);
  const Int cofactor = (p - 1) / big_l;
  const auto factors = prime_factors(L);
  for (unsigned long x = 2; x < 1'000'000; ++x) {
    const Int w = mod_pow(Int(x), cofactor, p);
    bool full_order = true;
    for (std::uint64_t f : factors) {
      if (mod_pow(w, int_from_u64(L / f), p) == 1) {
        full_order = false;
        break;
      }
    }
    if (full_order) return w;
  }
  throw NotFound("no element of order " + std::to_string(L) + " modulo " + p.get_str());
}

Int hensel_lift_root(const Int& zeta_p, const Int& p, int alpha, std::uint64_t L) {
  if (alpha < 1) throw InvalidArgument("hensel_lift_root requires alpha >= 1");
  const Int big_l = int_from_u64(L);
  if (mpz_divisible_p(big_l.get_mpz_t(), p.get_mpz_t())) {
    throw InvalidArgument("hensel_lift_root requires p not dividing L");
  }
  if (mod_pow(zeta_p, big_l, p) != 1) {
    throw InvalidArgument("zeta_p is not an L-th root of unity modulo p");
  }
  Int x = mod(zeta_p, p);
  int precision = 1;
  while (precision < alpha) {
    precision = std::min(2 * precision, alpha);
    const Int pk = pow(p, static_cast<unsigned long>(precision));
    const Int f = mod(mod_pow(x, big_l, pk) - 1, pk);
    const Int df = mod(big_l * mod_pow(x, big_l - 1, pk), pk);
    x = mod(x - f * mod_inverse(df, pk), pk);
  }
  const Int q = pow(p, static_cast<unsigned long>(alpha));
  if (mod_pow(x, big_l, q) != 1 || mod(x - zeta_p, p) != 0) {
    throw NotFound("Hensel lift did not converge");
  }
  return x;
}

Int totient(const Modulus& q) {
  return pow(q.prime(), static_cast<unsigned long>(q.exponent() - 1)) * (q.prime() - 1);
}

}  // namespace thetamul
