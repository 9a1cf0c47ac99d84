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

#include "thetamul/reference.hpp"

#include <algorithm>

#include "thetamul/errors.hpp"

namespace thetamul::reference {

namespace {

using Limb = std::uint64_t;
using Wide = unsigned __int128;

constexpr std::size_t kKaratsubaCutoff = 32;

static_assert(sizeof(mp_limb_t) == sizeof(Limb), "expects 64-bit GMP limbs");

// r[0, na + nb) = a * b.
void schoolbook(const Limb* a, std::size_t na, const Limb* b, std::size_t nb, Limb* r) {
  std::fill(r, r + na + nb, 0);
  for (std::size_t i = 0; i < na; ++i) {
    Limb carry = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      const Wide t = static_cast<Wide>(a[i]) * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<Limb>(t);
      carry = static_cast<Limb>(t >> 64);
    }
    r[i + nb] = carry;
  }
}

// r[0, n) += a[0, na), na <= n; returns the carry out of r[n - 1].
Limb add_into(Limb* r, std::size_t n, const Limb* a, std::size_t na) {
  Limb carry = 0;
  std::size_t i = 0;
  for (; i < na; ++i) {
    const Wide t = static_cast<Wide>(r[i]) + a[i] + carry;
    r[i] = static_cast<Limb>(t);
    carry = static_cast<Limb>(t >> 64);
  }
  for (; carry && i < n; ++i) carry = ++r[i] == 0;
  return carry;
}

// r[0, n) -= a[0, na); the caller guarantees no final borrow.
void sub_into(Limb* r, std::size_t n, const Limb* a, std::size_t na) {
  Limb borrow = 0;
  std::size_t i = 0;
  for (; i < na; ++i) {
    const Limb x = r[i];
    const Limb d = x - a[i] - borrow;
    borrow = (x < a[i]) || (x - a[i] < borrow);
    r[i] = d;
  }
  for (; borrow && i < n; ++i) borrow = r[i]-- == 0;
}

void multiply_limbs(const Limb* a, std::size_t na, const Limb* b, std::size_t nb, Limb* r);

// Both operands n limbs long.
void karatsuba(const Limb* a, const Limb* b, std::size_t n, Limb* r) {
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  std::vector<Limb> sa(hi + 1, 0), sb(hi + 1, 0);
  std::copy(a + lo, a + n, sa.begin());
  std::copy(b + lo, b + n, sb.begin());
  sa[hi] = add_into(sa.data(), hi, a, lo);
  sb[hi] = add_into(sb.data(), hi, b, lo);

  std::fill(r, r + 2 * n, 0);
  multiply_limbs(a, lo, b, lo, r);
  multiply_limbs(a + lo, hi, b + lo, hi, r + 2 * lo);
  std::vector<Limb> mid(2 * (hi + 1));
  multiply_limbs(sa.data(), hi + 1, sb.data(), hi + 1, mid.data());
  sub_into(mid.data(), mid.size(), r, 2 * lo);
  sub_into(mid.data(), mid.size(), r + 2 * lo, 2 * hi);
  std::size_t used = mid.size();
  while (used > 0 && mid[used - 1] == 0) --used;
  add_into(r + lo, 2 * n - lo, mid.data(), used);
}

void multiply_limbs(const Limb* a, std::size_t na, const Limb* b, std::size_t nb, Limb* r) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb < kKaratsubaCutoff) {
    schoolbook(a, na, b, nb, r);
    return;
  }
  if (na == nb) {
    karatsuba(a, b, na, r);
    return;
  }
  // Unbalanced: cut the longer operand into pieces of the shorter length.
  std::fill(r, r + na + nb, 0);
  std::vector<Limb> part(2 * nb);
  for (std::size_t off = 0; off < na; off += nb) {
    const std::size_t len = std::min(nb, na - off);
    multiply_limbs(a + off, len, b, nb, part.data());
    add_into(r + off, na + nb - off, part.data(), len + nb);
  }
}

}  // namespace

void reference_multiply(const Int& u, const Int& v, Int& out) {
  const int sign = sgn(u) * sgn(v);
  const std::size_t na = mpz_size(u.get_mpz_t());
  const std::size_t nb = mpz_size(v.get_mpz_t());
  if (sign == 0) {
    out = 0;
    return;
  }
  if (na == 1 && nb == 1) {
    const Wide t = static_cast<Wide>(mpz_getlimbn(u.get_mpz_t(), 0)) * mpz_getlimbn(v.get_mpz_t(), 0);
    const auto hi = static_cast<Limb>(t >> 64);
    const mp_size_t n = hi ? 2 : 1;
    mp_limb_t* w = mpz_limbs_write(out.get_mpz_t(), 2);
    w[0] = static_cast<Limb>(t);
    w[1] = hi;
    mpz_limbs_finish(out.get_mpz_t(), sign * n);
    return;
  }
  const Limb* a = mpz_limbs_read(u.get_mpz_t());
  const Limb* b = mpz_limbs_read(v.get_mpz_t());
  std::vector<Limb> r(na + nb);
  multiply_limbs(a, na, b, nb, r.data());
  std::size_t n = r.size();
  while (n > 0 && r[n - 1] == 0) --n;
  mp_limb_t* w = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(n));
  std::copy(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n), w);
  mpz_limbs_finish(out.get_mpz_t(), sign * static_cast<mp_size_t>(n));
}

Int reference_multiply(const Int& u, const Int& v) {
  Int out;
  reference_multiply(u, v, out);
  return out;
}

CycloPoly brute_force_short_vector(const Int& q, std::size_t m, const Int& theta,
                                   std::uint64_t budget) {
  const Int bound = floor_root(q, m);
  if (pow(2 * bound + 1, m) > int_from_u64(budget)) {
    throw InvalidArgument("brute_force_short_vector: search space exceeds budget");
  }
  std::vector<Int> powers(m);
  powers[0] = 1;
  for (std::size_t i = 1; i < m; ++i) powers[i] = mod(powers[i - 1] * theta, q);

  std::vector<Int> a(m, -bound);
  for (;;) {
    Int s = 0;
    bool zero = true;
    for (std::size_t i = 0; i < m; ++i) {
      s += a[i] * powers[i];
      zero = zero && sgn(a[i]) == 0;
    }
    if (!zero && mod(s, q) == 0) return CycloPoly(a);
    // Advance the last coordinate fastest, so a_0 is the most significant.
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (a[i] < bound) {
        ++a[i];
        break;
      }
      a[i] = -bound;
      if (i == 0) throw NotFound("no short vector exists in the box");
    }
  }
}

std::vector<Int> naive_dft(const std::vector<Int>& f, const Int& zeta, const Int& q) {
  const std::size_t n = f.size();
  std::vector<Int> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += f[i] * mod_pow(zeta, Int(static_cast<unsigned long>(i * j)), q);
    }
    out[j] = mod(acc, q);
  }
  return out;
}

std::vector<Int> naive_cyclic_convolution(const std::vector<Int>& g, const std::vector<Int>& h,
                                          const Int& q) {
  if (g.size() != h.size()) throw InvalidArgument("convolution operands differ in length");
  const std::size_t n = g.size();
  std::vector<Int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[(i + j) % n] += g[i] * h[j];
  }
  for (Int& x : out) x = mod(x, q);
  return out;
}

CycloPoly naive_negacyclic(const CycloPoly& f, const CycloPoly& g) {
  const std::size_t m = f.m();
  if (g.m() != m) throw InvalidArgument("mismatched ring degrees");
  CycloPoly h(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i + j < m) {
        h[i + j] += f[i] * g[j];
      } else {
        h[i + j - m] -= f[i] * g[j];
      }
    }
  }
  return h;
}

}  // namespace thetamul::reference
