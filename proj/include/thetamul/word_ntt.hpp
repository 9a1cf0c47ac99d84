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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <type_traits>
#include <vector>

#include "thetamul/errors.hpp"
#include "thetamul/numtheory.hpp"

// Multidimensional cyclic NTTs over a word-size prime, used for the per-prime
// convolutions of the multiplication pipeline. Residues are kept lazily in
// [0, 2q). Twiddle products use Shoup's precomputed quotients; the pointwise
// product uses Montgomery reduction.
namespace thetamul {

template <class T>
struct WordTraits;
template <>
struct WordTraits<std::uint16_t> {
  using Wide = std::uint32_t;
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 14;
};
template <>
struct WordTraits<std::uint32_t> {
  using Wide = std::uint64_t;
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 30;
};

// Tensor layout: axis 0 has stride 1, axis k stride L^k.
template <class T>
class TensorNtt {
 public:
  using Wide = typename WordTraits<T>::Wide;
  static constexpr int kBits = 8 * sizeof(T);

  TensorNtt(std::uint64_t q, std::uint64_t zeta, std::size_t L, std::size_t dims)
      : q_(static_cast<T>(q)), L_(L), dims_(dims) {
    if (q < 3 || q >= WordTraits<T>::kMaxModulus || !is_prime(q)) {
      throw InvalidArgument("word NTT modulus out of range");
    }
    if (L < 2 || !std::has_single_bit(L) || dims == 0) {
      throw InvalidArgument("word NTT needs a power-of-two length and at least one axis");
    }
    if (mod_pow(zeta, L, q) != 1 || mod_pow(zeta, L / 2, q) != q - 1) {
      throw InvalidArgument("word NTT root does not have order L");
    }
    size_ = 1;
    for (std::size_t k = 0; k < dims; ++k) size_ *= L;

    const std::uint64_t zinv = mod_pow(zeta, L - 1, q);
    fwd_.assign(L, 0);
    fwd_pre_.assign(L, 0);
    inv_.assign(L, 0);
    inv_pre_.assign(L, 0);
    // Stage with half-length len uses entries [len, 2 len): root^(j L / 2 len).
    for (std::size_t len = 1; len < L; len *= 2) {
      const std::uint64_t step_f = mod_pow(zeta, L / (2 * len), q);
      const std::uint64_t step_i = mod_pow(zinv, L / (2 * len), q);
      std::uint64_t wf = 1, wi = 1;
      for (std::size_t j = 0; j < len; ++j) {
        fwd_[len + j] = static_cast<T>(wf);
        fwd_pre_[len + j] = shoup(wf);
        inv_[len + j] = static_cast<T>(wi);
        inv_pre_[len + j] = shoup(wi);
        wf = wf * step_f % q;
        wi = wi * step_i % q;
      }
    }
    stages_ = static_cast<std::size_t>(std::countr_zero(L));
    const std::size_t n = kVecLanes;
    for (auto* v : {&row_fwd_, &row_fwd_pre_, &row_inv_, &row_inv_pre_, &row_idx_, &row_lower_}) {
      v->assign(stages_ * n, 0);
    }
    row_col_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) row_col_[i] = static_cast<T>(i % L);
    for (std::size_t s = 0; s < stages_; ++s) {
      const std::size_t len = std::size_t{1} << s;
      for (std::size_t i = 0; i < n; ++i) {
        row_fwd_[s * n + i] = fwd_[len + i % len];
        row_fwd_pre_[s * n + i] = fwd_pre_[len + i % len];
        row_inv_[s * n + i] = inv_[len + i % len];
        row_inv_pre_[s * n + i] = inv_pre_[len + i % len];
        row_idx_[s * n + i] = static_cast<T>(i ^ len);
        row_lower_[s * n + i] = (i & len) == 0;
      }
    }
    // -q^-1 mod 2^kBits by Newton iteration.
    Wide inv = 1;
    for (int i = 0; i < 6; ++i) inv = static_cast<T>(inv * (2 - static_cast<Wide>(q_) * inv));
    qneg_inv_ = static_cast<T>(-inv);
    // Montgomery leaves a factor 2^-kBits; fold 2^kBits L^-dims into one constant.
    std::uint64_t c = (std::uint64_t{1} << kBits) % q;
    const std::uint64_t linv = mod_pow(L, q - 2, q);
    for (std::size_t k = 0; k < dims; ++k) c = c * linv % q;
    scale_ = static_cast<T>(c);
    scale_pre_ = shoup(c);
  }

  std::size_t length() const { return L_; }
  std::size_t dims() const { return dims_; }
  std::size_t size() const { return size_; }
  std::uint64_t modulus() const { return q_; }

  // In-place forward transform of a tensor whose entries are only meaningful
  // for indices < extent on every axis (extent <= L/2); everything else is
  // treated as zero and need not be initialized. Output is in bit-reversed
  // order along every axis.
  void forward(T* data, std::size_t extent) const {
    if (extent == 0 || 2 * extent > L_) throw InvalidArgument("pruned input extent must be in [1, L/2]");
    for (std::size_t axis = 0; axis < dims_; ++axis) {
      for_each_group(axis, extent, [&](std::size_t base) {
        run_axis(data + base, axis, extent, axis == 0 ? extent : L_, true);
      });
    }
  }

  // data <- data * other * L^-dims, pointwise.
  void pointwise(T* data, const T* other) const {
    const T q = q_, qn = qneg_inv_, c = scale_, cp = scale_pre_;
    for (std::size_t i = 0; i < size_; ++i) {
      const Wide ab = static_cast<Wide>(data[i]) * other[i];
      const T mq = static_cast<T>(static_cast<Wide>(static_cast<T>(ab)) * qn);
      const T t = static_cast<T>((ab + static_cast<Wide>(mq) * q) >> kBits);
      data[i] = mul_shoup(t, c, cp, q);
    }
  }

  // In-place inverse (without the 1/L^dims factor, which pointwise applies) of
  // a bit-reversed tensor. Only outputs with every index < extent are
  // computed; the rest are left unspecified. Results stay in [0, 2q).
  void inverse(T* data, std::size_t extent) const {
    extent = std::min(extent, L_);
    for (std::size_t a = dims_; a-- > 0;) {
      for_each_group(a, extent, [&](std::size_t base) { run_axis(data + base, a, 0, L_, false); });
    }
  }

  T reduce(T x) const { return reduce_once(x, q_); }

 private:
  T shoup(std::uint64_t w) const {
    return static_cast<T>((static_cast<Wide>(w) << kBits) / q_);
  }
  static T mul_shoup(T x, T w, T wp, T q) {
    const T hi = static_cast<T>((static_cast<Wide>(x) * wp) >> kBits);
    return static_cast<T>(static_cast<Wide>(x) * w - static_cast<Wide>(hi) * q);
  }
  static T reduce_once(T x, T q) { return std::min<T>(x, static_cast<T>(x - q)); }

  // Calls fn(base) for every combination of indices on axes > axis, each
  // below extent; axes < axis run over their full length inside the group.
  template <class Fn>
  void for_each_group(std::size_t axis, std::size_t extent, Fn&& fn) const {
    // Axis 0 is handled in L x L blocks spanning axes 0 and 1.
    const std::size_t first = axis == 0 && dims_ > 1 ? 2 : axis + 1;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < first; ++k) stride *= L_;
    std::vector<std::size_t> idx(dims_, 0);
    for (;;) {
      std::size_t base = 0, s = stride;
      for (std::size_t k = first; k < dims_; ++k, s *= L_) base += idx[k] * s;
      fn(base);
      std::size_t k = first;
      while (k < dims_ && ++idx[k] == extent) idx[k++] = 0;
      if (k == dims_) return;
    }
  }

  // Transforms along `axis` within one group. Axis 0 uses the in-register row
  // kernel when rows fit a vector, otherwise an L x L transpose so the lane
  // kernel applies; `rows` limits how many axis-1 rows carry data.
  void run_axis(T* base, std::size_t axis, std::size_t pruned, std::size_t rows, bool fwd) const {
    if (axis == 0 && row_kernel_fits()) {
      const std::size_t live = std::min(rows, L_);
      const std::size_t vecs = (live * L_ + kVecLanes - 1) / kVecLanes;
      std::size_t v = 0;
      for (; v + 4 <= vecs; v += 4) {
        fwd ? rows_dif<4>(base + v * kVecLanes, pruned) : rows_dit<4>(base + v * kVecLanes);
      }
      for (; v < vecs; ++v) {
        fwd ? rows_dif<1>(base + v * kVecLanes, pruned) : rows_dit<1>(base + v * kVecLanes);
      }
      return;
    }
    if (axis > 0 || dims_ == 1) {
      std::size_t width = 1;
      for (std::size_t k = 0; k < axis; ++k) width *= L_;
      fwd ? dif(base, width, pruned) : dit(base, width);
      return;
    }
    thread_local std::vector<T> scratch;
    scratch.assign(L_ * L_, 0);
    const std::size_t live = std::min(rows, L_);
    const std::size_t cols = pruned > 0 ? pruned : L_;
    for (std::size_t i1 = 0; i1 < live; ++i1) {
      for (std::size_t i0 = 0; i0 < cols; ++i0) scratch[i0 * L_ + i1] = base[i1 * L_ + i0];
    }
    fwd ? dif(scratch.data(), L_, pruned) : dit(scratch.data(), L_);
    for (std::size_t i1 = 0; i1 < live; ++i1) {
      for (std::size_t i0 = 0; i0 < L_; ++i0) base[i1 * L_ + i0] = scratch[i0 * L_ + i1];
    }
  }

  // Row kernel: several length-L rows side by side in one 64-byte vector.
  // Whole vectors are processed, so an L x L block must span whole vectors.
  static constexpr std::size_t kVecLanes = 64 / sizeof(T);
  typedef T V __attribute__((vector_size(64)));
  typedef Wide WV __attribute__((vector_size(kVecLanes * sizeof(Wide))));

  bool row_kernel_fits() const {
    return dims_ > 1 && L_ <= kVecLanes && L_ * L_ >= kVecLanes;
  }
  static V load(const T* p) {
    V v;
    std::memcpy(&v, p, sizeof v);
    return v;
  }
  static V vmul_shoup(V x, V w, V wp, T q) {
    const WV prod = __builtin_convertvector(x, WV) * __builtin_convertvector(wp, WV);
    const V hi = __builtin_convertvector(prod >> kBits, V);
    return x * w - hi * q;
  }
  static V vreduce(V x, T m) { return x >= m ? x - m : x; }

  // Stage s works on half-length 2^s; tables hold per-lane twiddles and
  // partner indices for each stage.
  template <std::size_t R>
  void rows_dif(T* p, std::size_t pruned) const {
    V x[R];
    for (std::size_t r = 0; r < R; ++r) x[r] = load(p + r * kVecLanes);
    if (pruned > 0) {
      const V col = load(row_col_.data());
      for (std::size_t r = 0; r < R; ++r) x[r] = col < static_cast<T>(pruned) ? x[r] : V{};
    }
    const T q = q_, q2 = static_cast<T>(2 * q_);
    for (std::size_t s = stages_; s-- > 0;) {
      const V w = load(&row_fwd_[s * kVecLanes]);
      const V wp = load(&row_fwd_pre_[s * kVecLanes]);
      const V idx = load(&row_idx_[s * kVecLanes]);
      const auto lower = load(&row_lower_[s * kVecLanes]) != 0;
      for (std::size_t r = 0; r < R; ++r) {
        const V y = __builtin_shuffle(x[r], idx);
        const V sum = vreduce(x[r] + y, q2);
        const V diff = (lower ? x[r] - y : y - x[r]) + q2;
        x[r] = lower ? sum : vmul_shoup(diff, w, wp, q);
      }
    }
    for (std::size_t r = 0; r < R; ++r) std::memcpy(p + r * kVecLanes, &x[r], sizeof(V));
  }

  template <std::size_t R>
  void rows_dit(T* p) const {
    V x[R];
    for (std::size_t r = 0; r < R; ++r) x[r] = load(p + r * kVecLanes);
    const T q = q_, q2 = static_cast<T>(2 * q_);
    for (std::size_t s = 0; s < stages_; ++s) {
      const V w = load(&row_inv_[s * kVecLanes]);
      const V wp = load(&row_inv_pre_[s * kVecLanes]);
      const V idx = load(&row_idx_[s * kVecLanes]);
      const auto lower = load(&row_lower_[s * kVecLanes]) != 0;
      for (std::size_t r = 0; r < R; ++r) {
        const V t = vmul_shoup(x[r], w, wp, q);
        const V y = __builtin_shuffle(x[r], idx);
        const V ty = __builtin_shuffle(t, idx);
        x[r] = vreduce(lower ? x[r] + ty : y - t + q2, q2);
      }
    }
    for (std::size_t r = 0; r < R; ++r) std::memcpy(p + r * kVecLanes, &x[r], sizeof(V));
  }

  static constexpr std::size_t kBlock = 256 / sizeof(T);

  void dif(T* x, std::size_t width, std::size_t pruned) const {
    switch (std::min(width, kBlock)) {
      case 1: return dif_lanes<1>(x, width, pruned);
      case 2: return dif_lanes<2>(x, width, pruned);
      case 4: return dif_lanes<4>(x, width, pruned);
      case 8: return dif_lanes<8>(x, width, pruned);
      case 16: return dif_lanes<16>(x, width, pruned);
      case 32: return dif_lanes<32>(x, width, pruned);
      case 64: return dif_lanes<64>(x, width, pruned);
      default: return dif_lanes<kBlock>(x, width, pruned);
    }
  }
  void dit(T* x, std::size_t width) const {
    switch (std::min(width, kBlock)) {
      case 1: return dit_lanes<1>(x, width);
      case 2: return dit_lanes<2>(x, width);
      case 4: return dit_lanes<4>(x, width);
      case 8: return dit_lanes<8>(x, width);
      case 16: return dit_lanes<16>(x, width);
      case 32: return dit_lanes<32>(x, width);
      case 64: return dit_lanes<64>(x, width);
      default: return dit_lanes<kBlock>(x, width);
    }
  }

  // Decimation in frequency along rows of `width` lanes, N lanes at a time
  // (N divides width). If pruned > 0, rows >= pruned are taken as zero and
  // never read.
  template <std::size_t N>
  void dif_lanes(T* x, std::size_t width, std::size_t pruned) const {
    const T q = q_;
    const T q2 = static_cast<T>(2 * q_);
    const std::size_t half = L_ / 2;
    for (std::size_t lo = 0; lo < width; lo += N) {
      std::size_t len = half;
      if (pruned > 0) {
        for (std::size_t j = 0; j < half; ++j) {
          T* __restrict a = x + j * width + lo;
          T* __restrict b = x + (j + half) * width + lo;
          if (j < pruned) {
            const T w = fwd_[half + j], wp = fwd_pre_[half + j];
            for (std::size_t k = 0; k < N; ++k) b[k] = mul_shoup(a[k], w, wp, q);
          } else {
            std::fill_n(a, N, T{0});
            std::fill_n(b, N, T{0});
          }
        }
        len /= 2;
      }
      for (; len >= 1; len /= 2) {
        for (std::size_t start = 0; start < L_; start += 2 * len) {
          for (std::size_t j = 0; j < len; ++j) {
            T* __restrict a = x + (start + j) * width + lo;
            T* __restrict b = x + (start + j + len) * width + lo;
            const T w = fwd_[len + j], wp = fwd_pre_[len + j];
            for (std::size_t k = 0; k < N; ++k) {
              const T u = a[k], v = b[k];
              const T s = static_cast<T>(u + v);
              a[k] = std::min<T>(s, static_cast<T>(s - q2));
              b[k] = mul_shoup(static_cast<T>(u - v + q2), w, wp, q);
            }
          }
        }
      }
    }
  }

  // Decimation in time with inverse roots: bit-reversed in, natural out.
  template <std::size_t N>
  void dit_lanes(T* x, std::size_t width) const {
    const T q = q_;
    const T q2 = static_cast<T>(2 * q_);
    for (std::size_t lo = 0; lo < width; lo += N) {
      for (std::size_t len = 1; len < L_; len *= 2) {
        for (std::size_t start = 0; start < L_; start += 2 * len) {
          for (std::size_t j = 0; j < len; ++j) {
            T* __restrict a = x + (start + j) * width + lo;
            T* __restrict b = x + (start + j + len) * width + lo;
            const T w = inv_[len + j], wp = inv_pre_[len + j];
            for (std::size_t k = 0; k < N; ++k) {
              const T u = a[k];
              const T v = mul_shoup(b[k], w, wp, q);
              const T s = static_cast<T>(u + v);
              const T d = static_cast<T>(u - v + q2);
              a[k] = std::min<T>(s, static_cast<T>(s - q2));
              b[k] = std::min<T>(d, static_cast<T>(d - q2));
            }
          }
        }
      }
    }
  }

  T q_;
  std::size_t L_;
  std::size_t dims_;
  std::size_t size_ = 1;
  std::vector<T> fwd_, fwd_pre_, inv_, inv_pre_;
  std::size_t stages_ = 0;
  std::vector<T> row_fwd_, row_fwd_pre_, row_inv_, row_inv_pre_, row_idx_, row_lower_, row_col_;
  T qneg_inv_ = 0;
  T scale_ = 0, scale_pre_ = 0;
};

}  // namespace thetamul
