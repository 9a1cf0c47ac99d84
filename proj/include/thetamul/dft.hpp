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

#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "thetamul/errors.hpp"
#include "thetamul/numtheory.hpp"
#include "thetamul/theta.hpp"

namespace thetamul {

// The operations the transforms need from a coefficient ring Z/qZ.
template <class R>
concept DftRing = requires(const R& ring, const typename R::Element& a, const Int& n) {
  { ring.add(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.sub(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.zero() } -> std::convertible_to<typename R::Element>;
  { ring.one() } -> std::convertible_to<typename R::Element>;
  { ring.from_integer(n) } -> std::convertible_to<typename R::Element>;
  { ring.to_integer(a) } -> std::convertible_to<Int>;
  { ring.modulus() } -> std::convertible_to<Int>;
};

// Standard residues in [0, q) held as big integers.
class ResidueRing {
 public:
  using Element = Int;
  explicit ResidueRing(Int q) : q_(std::move(q)) {
    if (q_ < 2) throw InvalidArgument("ring modulus must be at least 2");
  }
  Int add(const Int& a, const Int& b) const {
    Int s = a + b;
    if (s >= q_) s -= q_;
    return s;
  }
  Int sub(const Int& a, const Int& b) const {
    Int s = a - b;
    if (sgn(s) < 0) s += q_;
    return s;
  }
  Int mul(const Int& a, const Int& b) const { return mod(a * b, q_); }
  Int zero() const { return 0; }
  Int one() const { return 1; }
  Int from_integer(const Int& n) const { return mod(n, q_); }
  Int to_integer(const Int& a) const { return a; }
  const Int& modulus() const { return q_; }

 private:
  Int q_;
};

// Standard residues modulo q < 2^63 held in machine words.
class WordRing {
 public:
  using Element = std::uint64_t;
  explicit WordRing(std::uint64_t q) : q_(q) {
    if (q < 2 || q >= (std::uint64_t{1} << 63)) throw InvalidArgument("word modulus out of range");
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
  }
  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return 1; }
  std::uint64_t from_integer(const Int& n) const { return int_to_u64(mod(n, int_from_u64(q_))); }
  Int to_integer(std::uint64_t a) const { return int_from_u64(a); }
  Int modulus() const { return int_from_u64(q_); }

 private:
  std::uint64_t q_;
};

// Residues held in theta-representation; every operation goes through the
// reduction machinery.
class ThetaRing {
 public:
  using Element = ThetaRepr;
  explicit ThetaRing(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  ThetaRepr add(const ThetaRepr& a, const ThetaRepr& b) const { return thetamul::add(a, b); }
  ThetaRepr sub(const ThetaRepr& a, const ThetaRepr& b) const { return thetamul::sub(a, b); }
  ThetaRepr mul(const ThetaRepr& a, const ThetaRepr& b) const { return thetamul::mul(a, b); }
  ThetaRepr zero() const { return ThetaRepr(CycloPoly(ctx_->m()), ctx_); }
  ThetaRepr one() const { return ThetaRepr(CycloPoly::constant(ctx_->m(), 1), ctx_); }
  ThetaRepr from_integer(const Int& n) const { return to_theta(mod(n, ctx_->q()), ctx_); }
  Int to_integer(const ThetaRepr& a) const { return from_theta(a); }
  const Int& modulus() const { return ctx_->q(); }
  const ContextPtr& context() const { return ctx_; }

 private:
  ContextPtr ctx_;
};

template <DftRing R>
typename R::Element ring_pow(const R& ring, const typename R::Element& x, std::uint64_t e) {
  typename R::Element result = ring.one();
  typename R::Element base = x;
  while (e) {
    if (e & 1) result = ring.mul(result, base);
    e >>= 1;
    if (e) base = ring.mul(base, base);
  }
  return result;
}

// Transforms `count` rows of length `len`, stored one after another in
// `data`, in place with respect to `root`.
template <DftRing R>
using ShortDft = std::function<void(std::vector<typename R::Element>& data, std::size_t count,
                                     std::size_t len, const typename R::Element& root)>;

// Replaces each of the `count` rows in `data` by its length-n cyclic
// convolution with h.
template <DftRing R>
using Convolver = std::function<void(std::vector<typename R::Element>& data, std::size_t count,
                                     const std::vector<typename R::Element>& h)>;

namespace detail {

inline void require_power_of_two(std::size_t n, const char* what) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw InvalidArgument(std::string(what) + " must be a power of two, got " + std::to_string(n));
  }
}

// zeta^L = 1 and, for L >= 2, zeta^(L/2) = -1.
template <DftRing R>
void require_principal_root(const R& ring, const typename R::Element& zeta, std::size_t L) {
  const Int q = ring.modulus();
  const Int z = ring.to_integer(zeta);
  if (mod_pow(z, Int(static_cast<unsigned long>(L)), q) != 1 ||
      (L >= 2 && mod_pow(z, Int(static_cast<unsigned long>(L / 2)), q) != q - 1)) {
    throw InvalidArgument("not a principal " + std::to_string(L) + "-th root of unity mod " +
                          q.get_str());
  }
}

// Row-wise transpose of `count` matrices of shape rows x cols.
template <class T>
void transpose_batch(std::vector<T>& data, std::size_t count, std::size_t rows, std::size_t cols) {
  std::vector<T> tmp;
  tmp.reserve(data.size());
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t base = b * rows * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < rows; ++r) tmp.push_back(std::move(data[base + r * cols + c]));
    }
  }
  data = std::move(tmp);
}

template <DftRing R>
void naive_rows(const R& ring, std::vector<typename R::Element>& data, std::size_t count,
                std::size_t len, const typename R::Element& root) {
  std::vector<typename R::Element> powers;
  powers.reserve(len);
  powers.push_back(ring.one());
  for (std::size_t k = 1; k < len; ++k) powers.push_back(ring.mul(powers.back(), root));
  std::vector<typename R::Element> out(len, ring.zero());
  for (std::size_t b = 0; b < count; ++b) {
    auto row = data.begin() + static_cast<std::ptrdiff_t>(b * len);
    for (std::size_t j = 0; j < len; ++j) {
      typename R::Element acc = ring.zero();
      for (std::size_t i = 0; i < len; ++i) acc = ring.add(acc, ring.mul(row[i], powers[(i * j) % len]));
      out[j] = std::move(acc);
    }
    std::move(out.begin(), out.end(), row);
  }
}

// Cooley-Tukey on `count` rows of length `n` with root w; radices[0] is
// split off first and the product of radices is n.
template <DftRing R>
void cooley_tukey_rows(const R& ring, std::vector<typename R::Element>& data, std::size_t count,
                       std::size_t n, const typename R::Element& w,
                       const std::vector<std::size_t>& radices, std::size_t level,
                       const ShortDft<R>& short_dft) {
  const std::size_t r = radices[level];
  if (r == n) {
    short_dft(data, count, n, w);
    return;
  }
  const std::size_t n2 = n / r;
  // Each row as an r x n2 matrix; transform its columns.
  transpose_batch(data, count, r, n2);
  short_dft(data, count * n2, r, ring_pow(ring, w, n2));
  // Twiddle: entry (i2, j1) times w^(i2 j1).
  typename R::Element wi2 = ring.one();
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    typename R::Element tw = ring.one();
    for (std::size_t j1 = 0; j1 < r; ++j1) {
      if (j1 > 0) {
        tw = ring.mul(tw, wi2);
        for (std::size_t b = 0; b < count; ++b) {
          auto& x = data[(b * n2 + i2) * r + j1];
          x = ring.mul(x, tw);
        }
      }
    }
    wi2 = ring.mul(wi2, w);
  }
  transpose_batch(data, count, n2, r);
  cooley_tukey_rows(ring, data, count * r, n2, ring_pow(ring, w, r), radices, level + 1, short_dft);
  transpose_batch(data, count, r, n2);
}

}  // namespace detail

// out[j] = sum_i f[i] zeta^(i j).
template <DftRing R>
std::vector<typename R::Element> naive_dft(const R& ring, std::vector<typename R::Element> f,
                                           const typename R::Element& zeta) {
  if (f.empty()) throw InvalidArgument("naive_dft of an empty vector");
  detail::naive_rows(ring, f, 1, f.size(), zeta);
  return f;
}

// Radix list for L = S^d 2^d': d layers of S, then d' layers of 2.
inline std::vector<std::size_t> cooley_tukey_radices(std::size_t L, std::size_t S) {
  detail::require_power_of_two(L, "transform length");
  detail::require_power_of_two(S, "short length");
  if (S < 2 || S > L) throw InvalidArgument("short length must satisfy 2 <= S <= L");
  const int lg_l = std::countr_zero(L);
  const int lg_s = std::countr_zero(S);
  std::vector<std::size_t> radices(static_cast<std::size_t>(lg_l / lg_s), S);
  radices.insert(radices.end(), static_cast<std::size_t>(lg_l % lg_s), 2);
  return radices;
}

// Batched Cooley-Tukey over `count` rows of length L stored consecutively.
// short_dft handles every layer of length-S (and length-2) transforms.
template <DftRing R>
void cooley_tukey_batch(const R& ring, std::vector<typename R::Element>& data, std::size_t count,
                        std::size_t L, const typename R::Element& zeta, std::size_t S,
                        const ShortDft<R>& short_dft) {
  if (data.size() != count * L) throw InvalidArgument("batch size does not match length");
  if (L == 1) return;
  detail::require_principal_root(ring, zeta, L);
  const std::vector<std::size_t> radices = cooley_tukey_radices(L, S);
  detail::cooley_tukey_rows(ring, data, count, L, zeta, radices, 0, short_dft);
}

template <DftRing R>
std::vector<typename R::Element> cooley_tukey_dft(const R& ring, std::vector<typename R::Element> f,
                                                  const typename R::Element& zeta, std::size_t S,
                                                  ShortDft<R> short_dft = nullptr) {
  if (!short_dft) {
    short_dft = [&ring](auto& data, std::size_t count, std::size_t len, const auto& root) {
      detail::naive_rows(ring, data, count, len, root);
    };
  }
  const std::size_t L = f.size();
  detail::require_power_of_two(L, "transform length");
  if (L == 1) return f;
  cooley_tukey_batch(ring, f, 1, L, zeta, std::min(S, L), short_dft);
  return f;
}

// out[k] = sum_{i + j = k mod n} g[i] h[j].
template <DftRing R>
std::vector<typename R::Element> cyclic_convolution(const R& ring,
                                                    const std::vector<typename R::Element>& g,
                                                    const std::vector<typename R::Element>& h) {
  if (g.size() != h.size()) throw InvalidArgument("convolution operands differ in length");
  const std::size_t n = g.size();
  std::vector<typename R::Element> out(n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& o = out[(i + j) % n];
      o = ring.add(o, ring.mul(g[i], h[j]));
    }
  }
  return out;
}

template <DftRing R>
Convolver<R> naive_convolver(const R& ring) {
  return [&ring](std::vector<typename R::Element>& data, std::size_t count,
                 const std::vector<typename R::Element>& h) {
    const std::size_t n = h.size();
    for (std::size_t b = 0; b < count; ++b) {
      const auto first = data.begin() + static_cast<std::ptrdiff_t>(b * n);
      std::vector<typename R::Element> g(first, first + static_cast<std::ptrdiff_t>(n));
      auto c = cyclic_convolution(ring, g, h);
      std::move(c.begin(), c.end(), first);
    }
  };
}

// The chirp h_i = eta^(-i^2) shared by every row of a batch.
template <DftRing R>
std::vector<typename R::Element> bluestein_chirp(const R& ring, const typename R::Element& eta_inv,
                                                 std::size_t S) {
  std::vector<typename R::Element> h;
  h.reserve(S);
  // eta^-(i+1)^2 = eta^-(i^2) * eta^-(2i+1)
  typename R::Element step = eta_inv;
  const typename R::Element eta_inv_sq = ring.mul(eta_inv, eta_inv);
  h.push_back(ring.one());
  for (std::size_t i = 1; i < S; ++i) {
    h.push_back(ring.mul(h.back(), step));
    step = ring.mul(step, eta_inv_sq);
  }
  return h;
}

// Bluestein on `count` rows of length S: g_i = f_i eta^(i^2), then
// out_j = eta^(j^2) (g * h)_j with h_i = eta^(-i^2). eta^2 = omega.
template <DftRing R>
void bluestein_batch(const R& ring, std::vector<typename R::Element>& data, std::size_t count,
                     std::size_t S, const typename R::Element& omega, const typename R::Element& eta,
                     const Convolver<R>& convolve) {
  detail::require_power_of_two(S, "Bluestein length");
  if (data.size() != count * S) throw InvalidArgument("batch size does not match length");
  const Int q = ring.modulus();
  const Int eta_int = ring.to_integer(eta);
  if (mod(eta_int * eta_int - ring.to_integer(omega), q) != 0 ||
      mod_pow(eta_int, Int(static_cast<unsigned long>(2 * S)), q) != 1) {
    throw InvalidArgument("Bluestein needs eta with eta^2 = omega and eta^(2S) = 1");
  }
  const typename R::Element eta_inv = ring_pow(ring, eta, 2 * S - 1);
  const std::vector<typename R::Element> h = bluestein_chirp(ring, eta_inv, S);
  std::vector<typename R::Element> chirp = bluestein_chirp(ring, eta, S);
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t i = 1; i < S; ++i) {
      auto& x = data[b * S + i];
      x = ring.mul(x, chirp[i]);
    }
  }
  convolve(data, count, h);
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t j = 1; j < S; ++j) {
      auto& x = data[b * S + j];
      x = ring.mul(x, chirp[j]);
    }
  }
}

template <DftRing R>
std::vector<typename R::Element> bluestein_dft(const R& ring, std::vector<typename R::Element> f,
                                               const typename R::Element& omega,
                                               const typename R::Element& eta,
                                               Convolver<R> convolve = nullptr) {
  if (!convolve) convolve = naive_convolver(ring);
  const std::size_t S = f.size();
  bluestein_batch(ring, f, 1, S, omega, eta, convolve);
  return f;
}

// Inverse transform: the forward transform at zeta^-1, scaled by L^-1.
template <DftRing R>
std::vector<typename R::Element> inverse_dft(const R& ring, std::vector<typename R::Element> fhat,
                                             const typename R::Element& zeta) {
  const std::size_t L = fhat.size();
  detail::require_power_of_two(L, "transform length");
  const Int q = ring.modulus();
  const Int l_int(static_cast<unsigned long>(L));
  if (gcd(l_int, q) != 1) throw NotInvertible("length is not invertible modulo q");
  if (L == 1) return fhat;
  const typename R::Element zeta_inv = ring_pow(ring, zeta, L - 1);
  std::vector<typename R::Element> out = cooley_tukey_dft(ring, std::move(fhat), zeta_inv, 2);
  const typename R::Element scale = ring.from_integer(mod_inverse(l_int, q));
  for (auto& x : out) x = ring.mul(x, scale);
  return out;
}

}  // namespace thetamul
