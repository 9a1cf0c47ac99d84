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

#include "thetamul/polyring.hpp"

#include <algorithm>
#include <bit>

#include "thetamul/errors.hpp"

namespace thetamul {

static_assert(GMP_LIMB_BITS == 64 && GMP_NAIL_BITS == 0, "expects 64-bit GMP limbs");

namespace {

void check_power_of_two(std::size_t m) {
  if (m == 0 || !std::has_single_bit(m)) {
    throw InvalidArgument("cyclotomic degree m must be a power of two, got " + std::to_string(m));
  }
}

void check_same_m(const CycloPoly& f, const CycloPoly& g) {
  if (f.m() != g.m()) {
    throw InvalidArgument("mismatched ring degrees " + std::to_string(f.m()) + " and " +
                          std::to_string(g.m()));
  }
}

// Packs nonnegative values, each below 2^slot_bits, into one integer.
Int pack_nonneg(std::span<const Int> values, std::size_t slot_bits) {
  const std::size_t total_bits = values.size() * slot_bits;
  std::vector<mp_limb_t> buf(total_bits / 64 + 2, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const mpz_srcptr v = values[i].get_mpz_t();
    const std::size_t offset = i * slot_bits;
    const std::size_t word = offset / 64;
    const unsigned shift = offset % 64;
    const std::size_t n = mpz_size(v);
    for (std::size_t j = 0; j < n; ++j) {
      const mp_limb_t limb = mpz_getlimbn(v, static_cast<mp_size_t>(j));
      buf[word + j] |= limb << shift;
      if (shift != 0) buf[word + j + 1] |= limb >> (64 - shift);
    }
  }
  while (!buf.empty() && buf.back() == 0) buf.pop_back();
  Int z;
  if (!buf.empty()) mpz_import(z.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
  return z;
}

// Splits a nonnegative integer into `count` slots of slot_bits bits.
std::vector<Int> unpack_nonneg(const Int& z, std::size_t count, std::size_t slot_bits) {
  const mp_limb_t* src = mpz_limbs_read(z.get_mpz_t());
  const std::size_t n = mpz_size(z.get_mpz_t());
  auto limb_at = [&](std::size_t idx) -> mp_limb_t { return idx < n ? src[idx] : 0; };
  const std::size_t slot_limbs = (slot_bits + 63) / 64;
  const unsigned top_bits = slot_bits % 64;
  std::vector<mp_limb_t> tmp(slot_limbs);
  std::vector<Int> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t offset = i * slot_bits;
    const std::size_t word = offset / 64;
    const unsigned shift = offset % 64;
    for (std::size_t k = 0; k < slot_limbs; ++k) {
      mp_limb_t lo = limb_at(word + k) >> shift;
      if (shift != 0) lo |= limb_at(word + k + 1) << (64 - shift);
      tmp[k] = lo;
    }
    if (top_bits != 0) tmp[slot_limbs - 1] &= (mp_limb_t{1} << top_bits) - 1;
    mpz_import(out[i].get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0, tmp.data());
  }
  return out;
}

// Plain (non-wrapping) product of two nonnegative coefficient vectors whose
// product coefficients are all below 2^slot_bits.
std::vector<Int> plain_product_nonneg(std::span<const Int> f, std::span<const Int> g,
                                      std::size_t slot_bits, IntMultiplier mul) {
  const Int a = pack_nonneg(f, slot_bits);
  const Int b = pack_nonneg(g, slot_bits);
  const Int z = mul ? mul(a, b) : Int(a * b);
  return unpack_nonneg(z, f.size() + g.size() - 1, slot_bits);
}

std::size_t slot_bits_for(const Int& max_coeff) {
  return std::max<std::size_t>(1, bit_length(max_coeff));
}

}  // namespace

CycloPoly::CycloPoly(std::size_t m) : coeffs_(m) { check_power_of_two(m); }

CycloPoly::CycloPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  check_power_of_two(coeffs_.size());
}

CycloPoly CycloPoly::constant(std::size_t m, const Int& c) {
  CycloPoly f(m);
  f[0] = c;
  return f;
}

CycloPoly CycloPoly::from_strings(std::span<const std::string> coeffs) {
  std::vector<Int> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) {
    Int c;
    const std::string digits = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    if (digits.empty() || c.set_str(digits, 10) != 0) {
      throw InvalidArgument("malformed coefficient '" + s + "'");
    }
    v.push_back(std::move(c));
  }
  return CycloPoly(std::move(v));
}

bool CycloPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return sgn(c) == 0; });
}

std::string CycloPoly::to_string() const {
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Int& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    const Int mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1 || k == 0) out += mag.get_str();
    if (k >= 1) out += "y";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

Int norm(const CycloPoly& f) {
  Int best = 0;
  for (const Int& c : f.coeffs()) {
    if (cmpabs(c, best) > 0) best = abs(c);
  }
  return best;
}

CycloPoly operator+(const CycloPoly& f, const CycloPoly& g) {
  check_same_m(f, g);
  CycloPoly h(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) h[i] = f[i] + g[i];
  return h;
}

CycloPoly operator-(const CycloPoly& f, const CycloPoly& g) {
  check_same_m(f, g);
  CycloPoly h(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) h[i] = f[i] - g[i];
  return h;
}

CycloPoly operator-(const CycloPoly& f) {
  CycloPoly h(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) h[i] = -f[i];
  return h;
}

CycloPoly scale(const CycloPoly& f, const Int& c) {
  CycloPoly h(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) h[i] = f[i] * c;
  return h;
}

CycloPoly negacyclic_mul(const CycloPoly& f, const CycloPoly& g, IntMultiplier mul) {
  check_same_m(f, g);
  const std::size_t m = f.m();
  const Int cf = norm(f);
  const Int cg = norm(g);
  if (sgn(cf) == 0 || sgn(cg) == 0) return CycloPoly(m);

  // Offset both operands to nonnegative slot values; the cross terms the
  // offsets introduce are removed after unpacking.
  std::vector<Int> fo(m), go(m);
  for (std::size_t i = 0; i < m; ++i) {
    fo[i] = f[i] + cf;
    go[i] = g[i] + cg;
  }
  const Int max_coeff = 4 * Int(static_cast<unsigned long>(m)) * cf * cg;
  std::vector<Int> prod = plain_product_nonneg(fo, go, slot_bits_for(max_coeff), mul);

  std::vector<Int> prefix_f(m + 1), prefix_g(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    prefix_f[i + 1] = prefix_f[i] + f[i];
    prefix_g[i + 1] = prefix_g[i] + g[i];
  }
  const Int cfcg = cf * cg;
  for (std::size_t k = 0; k < prod.size(); ++k) {
    const std::size_t lo = k >= m - 1 ? k - (m - 1) : 0;
    const std::size_t hi = std::min(k, m - 1);
    prod[k] -= cg * (prefix_f[hi + 1] - prefix_f[lo]);
    prod[k] -= cf * (prefix_g[hi + 1] - prefix_g[lo]);
    prod[k] -= cfcg * static_cast<unsigned long>(hi - lo + 1);
  }

  CycloPoly h(m);
  for (std::size_t i = 0; i < m; ++i) {
    h[i] = prod[i];
    if (i + m < prod.size()) h[i] -= prod[i + m];
  }
  return h;
}

CycloPoly reduce_coeffs(const CycloPoly& f, const Int& r) {
  CycloPoly h(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) h[i] = mod(f[i], r);
  return h;
}

CycloPoly balanced_coeffs(const CycloPoly& f, const Int& r) {
  CycloPoly h = reduce_coeffs(f, r);
  const Int half = r / 2;
  for (std::size_t i = 0; i < h.m(); ++i) {
    if (h[i] > half) h[i] -= r;
  }
  return h;
}

CycloPoly negacyclic_mul_mod(const CycloPoly& f, const CycloPoly& g, const Int& r,
                             IntMultiplier mul) {
  check_same_m(f, g);
  if (r < 2) throw InvalidArgument("negacyclic_mul_mod requires r >= 2");
  const std::size_t m = f.m();
  const CycloPoly fr = reduce_coeffs(f, r);
  const CycloPoly gr = reduce_coeffs(g, r);
  const Int rm1 = r - 1;
  const Int max_coeff = Int(static_cast<unsigned long>(m)) * rm1 * rm1;
  const std::vector<Int> prod = plain_product_nonneg(fr.coeffs(), gr.coeffs(), slot_bits_for(max_coeff), mul);
  CycloPoly h(m);
  for (std::size_t i = 0; i < m; ++i) {
    Int c = prod[i];
    if (i + m < prod.size()) c -= prod[i + m];
    h[i] = mod(c, r);
  }
  return h;
}

Int kronecker_pack(std::span<const Int> coeffs, int slot_bits) {
  if (slot_bits < 2) throw InvalidArgument("slot_bits must be at least 2");
  const auto limit_bits = static_cast<std::size_t>(slot_bits - 1);
  std::vector<Int> pos(coeffs.size()), neg(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (bit_length(coeffs[i]) > limit_bits) {
      throw SlotOverflow("coefficient " + coeffs[i].get_str() + " exceeds a " +
                         std::to_string(slot_bits) + "-bit slot");
    }
    (sgn(coeffs[i]) >= 0 ? pos[i] : neg[i]) = abs(coeffs[i]);
  }
  const auto bits = static_cast<std::size_t>(slot_bits);
  return pack_nonneg(pos, bits) - pack_nonneg(neg, bits);
}

std::vector<Int> kronecker_unpack(const Int& z, std::size_t count, int slot_bits) {
  if (slot_bits < 2) throw InvalidArgument("slot_bits must be at least 2");
  const auto bits = static_cast<mp_bitcnt_t>(slot_bits);
  Int half, full;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  mpz_setbit(full.get_mpz_t(), bits);
  std::vector<Int> out(count);
  Int rest = z;
  for (std::size_t i = 0; i < count; ++i) {
    mpz_fdiv_r_2exp(out[i].get_mpz_t(), rest.get_mpz_t(), bits);
    if (out[i] >= half) out[i] -= full;
    rest -= out[i];
    mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), bits);
  }
  if (sgn(rest) != 0) {
    throw SlotOverflow("packed value does not fit in " + std::to_string(count) + " slots");
  }
  return out;
}

Int eval_at(const CycloPoly& f, const Int& theta, const Int& q) {
  Int acc = 0;
  for (std::size_t k = f.m(); k-- > 0;) {
    acc = mod(acc * theta + f[k], q);
  }
  return acc;
}

}  // namespace thetamul
