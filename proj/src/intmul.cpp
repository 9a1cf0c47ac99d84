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

#include "thetamul/intmul.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "thetamul/errors.hpp"
#include "thetamul/reference.hpp"
#include "thetamul/transform.hpp"
#include "thetamul/word_ntt.hpp"

namespace thetamul {

namespace {

using u128 = unsigned __int128;

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

// Primes, roots and contexts depend only on L.
struct PrimeSet {
  std::array<std::uint64_t, kPrimeCount> q{};
  std::array<std::uint64_t, kPrimeCount> zeta{};
  std::array<std::size_t, kPrimeCount> m{};
  std::array<ContextPtr, kPrimeCount> contexts;
  bool q0_substituted = false;
};

PrimeSet make_prime_set(std::size_t L) {
  PrimeSet set;
  const Int big_l = int_from_u64(L);
  for (std::size_t i = 1; i < kPrimeCount; ++i) {
    const Congruence cs[2] = {{1, big_l}, {int_from_u64(i), Int(19)}};
    set.q[i] = int_to_u64(find_prime_crt(cs, 2));
  }
  if (19 % L == 1) {
    set.q[0] = 19;
  } else {
    // No prime other than 19 is 0 mod 19.
    set.q0_substituted = true;
    for (std::uint64_t c = L + 1;; c += L) {
      if (is_prime(c) && std::find(set.q.begin() + 1, set.q.end(), c) == set.q.end()) {
        set.q[0] = c;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < kPrimeCount; ++i) {
    const Int qi = int_from_u64(set.q[i]);
    set.zeta[i] = int_to_u64(primitive_root_of_unity(qi, L));
    const TransformParams params =
        make_transform_params(L, Modulus(qi, 1), int_from_u64(set.zeta[i]));
    set.m[i] = params.m;
    set.contexts[i] = params.ctx;
  }
  return set;
}

const PrimeSet& prime_set(std::size_t L) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<PrimeSet>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[L];
  if (!slot) slot = std::make_unique<PrimeSet>(make_prime_set(L));
  return *slot;
}

// Bits [pos, pos + b) of a little-endian limb array, b <= 64.
std::uint64_t extract_bits(const mp_limb_t* limbs, std::size_t n, std::uint64_t pos, unsigned b) {
  const std::size_t w = pos / 64;
  const unsigned s = pos % 64;
  if (w >= n) return 0;
  u128 v = limbs[w];
  if (w + 1 < n) v |= static_cast<u128>(limbs[w + 1]) << 64;
  v >>= s;
  return static_cast<std::uint64_t>(b == 64 ? v : v & ((u128{1} << b) - 1));
}

std::vector<std::uint64_t> chunks_of(const Int& u, const MulPlan& plan) {
  const std::size_t count = ipow(plan.t, kAxes);
  std::vector<std::uint64_t> out(count, 0);
  const std::size_t n = mpz_size(u.get_mpz_t());
  const mp_limb_t* limbs = mpz_limbs_read(u.get_mpz_t());
  const std::size_t used = std::min<std::size_t>(count, (bit_length(u) + plan.b - 1) / plan.b);
  for (std::size_t c = 0; c < used; ++c) out[c] = extract_bits(limbs, n, std::uint64_t{c} * plan.b, plan.b);
  return out;
}

// Visits every index of the box [0, e)^6 inside a tensor of extent L, in
// chunk order: fn(tensor offset, linear chunk index) at the start of each
// run of e entries along axis 0.
template <class Fn>
void for_each_run(std::size_t L, std::size_t e, std::size_t t, Fn&& fn) {
  std::array<std::size_t, kAxes> idx{};
  for (;;) {
    std::size_t off = 0, lin = 0, so = 1, sl = 1;
    for (std::size_t k = 0; k < kAxes; ++k, so *= L, sl *= t) {
      off += idx[k] * so;
      lin += idx[k] * sl;
    }
    fn(off, lin);
    std::size_t k = 1;
    while (k < kAxes && ++idx[k] == e) idx[k++] = 0;
    if (k == kAxes) return;
  }
}

// Explicit CRT over the 19 primes followed by overlap-add. Residues are kept
// per prime in box order as R; Acc is the word in which the CRT sum is
// formed and must exceed every true coefficient.
template <class Acc, class R>
class Assembler {
 public:
  explicit Assembler(const MulPlan& plan) : plan_(plan), e_(2 * plan.t - 1) {
    box_ = ipow(e_, kAxes);
    Int M = 1;
    for (std::uint64_t q : plan.q) M *= int_from_u64(q);
    Int two_w;
    mpz_setbit(two_w.get_mpz_t(), 8 * sizeof(Acc));
    m_mod_ = to_acc(mod(M, two_w));
    for (std::size_t i = 0; i < kPrimeCount; ++i) {
      const Int qi = int_from_u64(plan.q[i]);
      const Int Mi = M / qi;
      inv_[i] = int_to_u64(mod_inverse(mod(Mi, qi), qi));
      inv_pre_[i] = (inv_[i] << 32) / plan.q[i];
      mi_[i] = to_acc(mod(Mi, two_w));
      recip_[i] = 1.0 / static_cast<double>(plan.q[i]);
    }
  }

  // get(offset) returns the residue in [0, q) stored at a tensor offset.
  template <class Get>
  void add_prime(std::size_t i, Get&& get) {
    auto& dst = residues_[i];
    dst.resize(box_);
    std::size_t pos = 0;
    for_each_run(plan_.L, e_, e_, [&](std::size_t off, std::size_t) {
      for (std::size_t j = 0; j < e_; ++j) dst[pos++] = static_cast<R>(get(off + j));
    });
  }

  Int finish() {
    // Linear index of coefficient (i_0, ..., i_5) is sum i_k t^k.
    const std::size_t t = plan_.t;
    std::size_t geometric = 0;
    for (std::size_t k = 0; k < kAxes; ++k) geometric += ipow(t, k);
    const std::size_t lin_span = (e_ - 1) * geometric + 1;
    // Coefficients in box order, a block at a time.
    std::vector<Acc> coeff(box_);
    constexpr std::size_t kChunk = 512;
    Acc sum[kChunk];
    double frac[kChunk];
    for (std::size_t lo = 0; lo < box_; lo += kChunk) {
      const std::size_t n = std::min(kChunk, box_ - lo);
      std::fill_n(sum, n, Acc{0});
      std::fill_n(frac, n, 0.0);
      for (std::size_t i = 0; i < kPrimeCount; ++i) {
        if (residues_[i].size() != box_) throw InvalidArgument("missing residues for a prime");
        const R* x = residues_[i].data() + lo;
        const std::uint64_t q = plan_.q[i], w = inv_[i], wp = inv_pre_[i];
        const Acc mi = mi_[i];
        const double rq = recip_[i];
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint64_t xj = x[j];
          std::uint64_t c = xj * w - ((xj * wp) >> 32) * q;
          c = c >= q ? c - q : c;
          sum[j] += static_cast<Acc>(c) * mi;
          frac[j] += static_cast<double>(c) * rq;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        coeff[lo + j] = sum[j] - static_cast<Acc>(std::llround(frac[j])) * m_mod_;
      }
    }
    std::vector<u128> acc(lin_span, 0);
    std::size_t pos = 0;
    for_each_run(plan_.L, e_, t, [&](std::size_t, std::size_t lin) {
      for (std::size_t j = 0; j < e_; ++j, ++pos) acc[lin + j] += static_cast<u128>(coeff[pos]);
    });
    // Carry in base 2^b into the limbs of the result.
    const unsigned b = plan_.b;
    const std::size_t bits = b * lin_span + 256;
    std::vector<mp_limb_t> limbs(bits / 64 + 2, 0);
    u128 carry = 0;
    std::uint64_t bitpos = 0;
    auto put = [&](std::uint64_t digit, unsigned width) {
      const std::size_t w = bitpos / 64;
      const unsigned s = bitpos % 64;
      limbs[w] |= digit << s;
      if (s != 0 && s + width > 64) limbs[w + 1] |= digit >> (64 - s);
      bitpos += width;
    };
    const u128 mask = (u128{1} << b) - 1;
    for (std::size_t s = 0; s < lin_span; ++s) {
      const u128 v = acc[s] + carry;
      put(static_cast<std::uint64_t>(v & mask), b);
      carry = v >> b;
    }
    while (carry != 0) {
      put(static_cast<std::uint64_t>(carry & mask), b);
      carry >>= b;
    }
    std::size_t n = limbs.size();
    while (n > 0 && limbs[n - 1] == 0) --n;
    Int out;
    mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(std::max<std::size_t>(n, 1)));
    std::copy(limbs.begin(), limbs.begin() + static_cast<std::ptrdiff_t>(n), dst);
    mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(n));
    return out;
  }

 private:
  static Acc to_acc(const Int& x) {
    if constexpr (sizeof(Acc) == 8) {
      return int_to_u64(x);
    } else {
      Int hi = x >> 64;
      Int lo = x - (hi << 64);
      return (static_cast<Acc>(int_to_u64(hi)) << 64) | int_to_u64(lo);
    }
  }

  const MulPlan& plan_;
  std::size_t e_;
  std::size_t box_ = 0;
  std::array<std::vector<R>, kPrimeCount> residues_;
  Acc m_mod_ = 0;
  std::array<std::uint64_t, kPrimeCount> inv_{}, inv_pre_{};
  std::array<Acc, kPrimeCount> mi_{};
  std::array<double, kPrimeCount> recip_{};
};

// Upper bound on every coefficient of UV: at most t^6 products of chunks.
Int coefficient_bound(const MulPlan& plan) {
  Int chunk_max;
  mpz_setbit(chunk_max.get_mpz_t(), plan.b);
  chunk_max -= 1;
  return pow(int_from_u64(plan.t), kAxes) * chunk_max * chunk_max;
}

template <class Acc, class R, class Run>
Int assemble(const MulPlan& plan, Run&& run) {
  Assembler<Acc, R> asmb(plan);
  run(asmb);
  return asmb.finish();
}

template <class R, class Run>
Int assemble_any(const MulPlan& plan, Run&& run) {
  const std::size_t bits = bit_length(coefficient_bound(plan));
  if (bits < 64) return assemble<std::uint64_t, R>(plan, run);
  if (bits < 120) return assemble<u128, R>(plan, run);
  throw InvariantViolation("product coefficients exceed the CRT accumulator");
}

template <class T>
Int multiply_with(const MulPlan& plan, const std::vector<std::uint64_t>& cu,
                  const std::vector<std::uint64_t>* cv) {
  const std::size_t size = ipow(plan.L, kAxes);
  auto a = std::make_unique_for_overwrite<T[]>(size);
  std::unique_ptr<T[]> b;
  if (cv) b = std::make_unique_for_overwrite<T[]>(size);

  auto fill = [&](T* dst, const std::vector<std::uint64_t>& chunks, std::uint64_t q) {
    std::size_t c = 0;
    for_each_run(plan.L, plan.t, plan.t, [&](std::size_t off, std::size_t) {
      for (std::size_t j = 0; j < plan.t; ++j) dst[off + j] = static_cast<T>(chunks[c++] % q);
    });
  };
  return assemble_any<T>(plan, [&](auto& asmb) {
    for (std::size_t i = 0; i < kPrimeCount; ++i) {
      const TensorNtt<T> ntt(plan.q[i], plan.zeta[i], plan.L, kAxes);
      fill(a.get(), cu, plan.q[i]);
      ntt.forward(a.get(), plan.t);
      if (cv) {
        fill(b.get(), *cv, plan.q[i]);
        ntt.forward(b.get(), plan.t);
        ntt.pointwise(a.get(), b.get());
      } else {
        ntt.pointwise(a.get(), a.get());
      }
      ntt.inverse(a.get(), 2 * plan.t - 1);
      const T* data = a.get();
      asmb.add_prime(i, [&](std::size_t off) -> std::uint64_t { return ntt.reduce(data[off]); });
    }
  });
}

}  // namespace

MulPlan build_plan(std::uint64_t n) {
  if (n < 1) throw InvalidArgument("build_plan needs n >= 1");
  MulPlan plan;
  plan.n = n;
  plan.b = static_cast<unsigned>(lg(n));
  const Int need = int_from_u64(n);
  std::size_t t = std::max<std::size_t>(1, floor_root(need / plan.b, kAxes).get_ui());
  while (t > 1 && pow(int_from_u64(t - 1), kAxes) * plan.b >= need) --t;
  while (pow(int_from_u64(t), kAxes) * plan.b < need) ++t;
  plan.t = t;
  plan.L = std::bit_ceil(2 * t);

  const PrimeSet& set = prime_set(plan.L);
  plan.q = set.q;
  plan.zeta = set.zeta;
  plan.m = set.m;
  plan.contexts = set.contexts;
  plan.q0_substituted = set.q0_substituted;

  Int M = 1;
  for (std::uint64_t q : plan.q) M *= int_from_u64(q);
  if (M <= 4 * need * need * need) {
    throw InvariantViolation("product of the 19 primes does not exceed 4 n^3");
  }
  // The CRT representative is exact only if every coefficient is below M;
  // the explicit CRT additionally needs a margin for the rounding step.
  if (4 * coefficient_bound(plan) >= M) {
    throw InvariantViolation("product coefficients are not resolved by the 19 primes");
  }
  return plan;
}

const MulPlan& cached_plan(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<MulPlan>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto plan = std::make_unique<MulPlan>(build_plan(n));
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::move(plan);
  return *slot;
}

CoeffTensor::CoeffTensor(std::size_t L_, std::size_t dims_)
    : L(L_), dims(dims_), data(ipow(L_, dims_), 0) {}

std::size_t CoeffTensor::offset(const std::vector<std::size_t>& index) const {
  if (index.size() != dims) throw InvalidArgument("tensor index has the wrong rank");
  std::size_t off = 0, s = 1;
  for (std::size_t k = 0; k < dims; ++k, s *= L) {
    if (index[k] >= L) throw InvalidArgument("tensor index out of range");
    off += index[k] * s;
  }
  return off;
}

CoeffTensor split_to_multivariate(const Int& u, const MulPlan& plan) {
  if (sgn(u) < 0 || bit_length(u) > plan.n) {
    throw InvalidArgument("split_to_multivariate needs 0 <= u < 2^n");
  }
  CoeffTensor out(plan.L, kAxes);
  const auto chunks = chunks_of(u, plan);
  std::size_t c = 0;
  for_each_run(plan.L, plan.t, plan.t, [&](std::size_t off, std::size_t) {
    for (std::size_t j = 0; j < plan.t; ++j) out.data[off + j] = chunks[c++];
  });
  return out;
}

CoeffTensor multivariate_cyclic_product_mod(const CoeffTensor& U, const CoeffTensor& V,
                                            std::uint64_t q, std::uint64_t zeta) {
  if (U.L != V.L || U.dims != V.dims || U.data.size() != V.data.size()) {
    throw InvalidArgument("tensors differ in shape");
  }
  const std::size_t L = U.L;
  const Int big_q = int_from_u64(q);
  const TransformParams params =
      make_transform_params(L, Modulus(big_q, 1), int_from_u64(zeta), std::size_t{1});

  // Applies op to every row along every axis.
  auto along_axes = [&](std::vector<Int>& data, auto&& op) {
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < U.dims; ++axis, stride *= L) {
      std::vector<Int> row(L);
      for (std::size_t base = 0; base < data.size(); ++base) {
        if ((base / stride) % L != 0) continue;
        for (std::size_t j = 0; j < L; ++j) row[j] = data[base + j * stride];
        row = op(std::move(row));
        for (std::size_t j = 0; j < L; ++j) data[base + j * stride] = row[j];
      }
    }
  };
  auto lift = [&](const CoeffTensor& x) {
    std::vector<Int> d;
    d.reserve(x.data.size());
    for (std::uint64_t v : x.data) d.push_back(int_from_u64(v % q));
    return d;
  };
  auto fwd = [&](std::vector<Int> r) { return transform(params, std::move(r)); };
  auto inv = [&](std::vector<Int> r) { return inverse_transform(params, std::move(r)); };

  std::vector<Int> a = lift(U), b = lift(V);
  along_axes(a, fwd);
  along_axes(b, fwd);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * b[i] % big_q;
  along_axes(a, inv);
  CoeffTensor out(L, U.dims);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = int_to_u64(a[i]);
  return out;
}

Int reconstruct_product(const std::vector<CoeffTensor>& residues, const MulPlan& plan) {
  if (residues.size() != kPrimeCount) throw InvalidArgument("expected one tensor per prime");
  for (const CoeffTensor& r : residues) {
    if (r.L != plan.L || r.dims != kAxes) throw InvalidArgument("residue tensor has the wrong shape");
  }
  return assemble_any<std::uint32_t>(plan, [&](auto& asmb) {
    for (std::size_t i = 0; i < kPrimeCount; ++i) {
      const auto& data = residues[i].data;
      const std::uint64_t q = plan.q[i];
      asmb.add_prime(i, [&](std::size_t off) { return data[off] % q; });
    }
  });
}

void multiply(const Int& u, const Int& v, Int& out, const MultiplyOptions& options) {
  const int sign = sgn(u) * sgn(v);
  if (sign == 0) {
    out = 0;
    return;
  }
  const std::uint64_t n = std::max(bit_length(u), bit_length(v));
  if (n < options.min_bits) {
    reference::reference_multiply(u, v, out);
    return;
  }
  const MulPlan& plan = cached_plan(n);
  const Int au = abs(u);
  const auto cu = chunks_of(au, plan);
  std::vector<std::uint64_t> cv;
  const bool square = cmpabs(u, v) == 0;
  if (!square) cv = chunks_of(abs(v), plan);
  const std::uint64_t qmax = *std::max_element(plan.q.begin(), plan.q.end());
  if (qmax < WordTraits<std::uint16_t>::kMaxModulus) {
    out = multiply_with<std::uint16_t>(plan, cu, square ? nullptr : &cv);
  } else if (qmax < WordTraits<std::uint32_t>::kMaxModulus) {
    out = multiply_with<std::uint32_t>(plan, cu, square ? nullptr : &cv);
  } else {
    throw InvariantViolation("primes too large for the word transform");
  }
  if (sign < 0) out = -out;
}

Int multiply(const Int& u, const Int& v, const MultiplyOptions& options) {
  Int out;
  multiply(u, v, out, options);
  return out;
}

}  // namespace thetamul
