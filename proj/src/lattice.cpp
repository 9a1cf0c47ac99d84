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

#include "thetamul/lattice.hpp"

#include <cmath>

#include "thetamul/errors.hpp"

namespace thetamul::lattice {

namespace {

Int dot(const Vector& a, const Vector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// round(a / b) for b > 0, halves rounded up.
Int round_div(const Int& a, const Int& b) {
  Int num = 2 * a + b;
  Int den = 2 * b;
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int exact_div(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

long double to_ld(const Int& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

}  // namespace

// Integral LLL in the formulation of Cohen, "A Course in Computational
// Algebraic Number Theory", algorithm 2.6.7 (0-indexed here; d[0] plays the
// role of d_0 = 1 shifted by one).
Basis lll_reduce(Basis b) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  // d[i + 1] = Gram determinant of the first i + 1 vectors; d[0] = 1.
  std::vector<Int> d(n + 1);
  std::vector<std::vector<Int>> lambda(n, std::vector<Int>(n));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  std::size_t k = 1;
  std::size_t kmax = 0;

  auto red = [&](std::size_t kk, std::size_t l) {
    // d[l + 1] is the denominator for lambda[kk][l].
    if (2 * abs(lambda[kk][l]) > d[l + 1]) {
      const Int qq = round_div(lambda[kk][l], d[l + 1]);
      for (std::size_t c = 0; c < b[kk].size(); ++c) b[kk][c] -= qq * b[l][c];
      lambda[kk][l] -= qq * d[l + 1];
      for (std::size_t i = 0; i < l; ++i) lambda[kk][i] -= qq * lambda[l][i];
    }
  };

  auto swap_rows = [&](std::size_t kk) {
    std::swap(b[kk], b[kk - 1]);
    for (std::size_t j = 0; j + 1 < kk; ++j) std::swap(lambda[kk][j], lambda[kk - 1][j]);
    const Int lam = lambda[kk][kk - 1];
    const Int big_b = exact_div(d[kk - 1] * d[kk + 1] + lam * lam, d[kk]);
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      const Int t = lambda[i][kk];
      lambda[i][kk] = exact_div(d[kk + 1] * lambda[i][kk - 1] - lam * t, d[kk]);
      lambda[i][kk - 1] = exact_div(big_b * t + lam * lambda[i][kk], d[kk + 1]);
    }
    d[kk] = big_b;
  };

  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        Int u = dot(b[k], b[j]);
        for (std::size_t i = 0; i < j; ++i) {
          u = exact_div(d[i + 1] * u - lambda[k][i] * lambda[j][i], d[i]);
        }
        if (j < k) {
          lambda[k][j] = u;
        } else {
          if (sgn(u) == 0) throw InvalidArgument("lll_reduce: basis vectors are dependent");
          d[k + 1] = u;
        }
      }
    }
    red(k, k - 1);
    const Int& lam = lambda[k][k - 1];
    if (100 * d[k + 1] * d[k - 1] < 99 * d[k] * d[k] - 100 * lam * lam) {
      swap_rows(k);
      k = std::max<std::size_t>(1, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return b;
}

std::optional<Vector> find_vector_in_box(const Basis& basis, const Int& bound,
                                         std::uint64_t node_budget) {
  const std::size_t n = basis.size();
  if (n == 0) return std::nullopt;
  const std::size_t dim = basis[0].size();

  // Floating-point Gram-Schmidt; exactness is restored by the final check.
  std::vector<std::vector<long double>> bstar(n, std::vector<long double>(dim));
  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
  std::vector<long double> rsq(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dim; ++c) bstar[i][c] = to_ld(basis[i][c]);
    for (std::size_t j = 0; j < i; ++j) {
      long double num = 0;
      for (std::size_t c = 0; c < dim; ++c) num += to_ld(basis[i][c]) * bstar[j][c];
      mu[i][j] = num / rsq[j];
      for (std::size_t c = 0; c < dim; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
    }
    long double s = 0;
    for (std::size_t c = 0; c < dim; ++c) s += bstar[i][c] * bstar[i][c];
    rsq[i] = s;
  }

  const long double bd = to_ld(bound);
  const long double radius_sq = static_cast<long double>(dim) * bd * bd * (1 + 1e-9L) + 1;

  std::vector<long> x(n, 0);
  std::optional<Vector> found;
  std::uint64_t nodes = 0;

  auto check_leaf = [&]() -> bool {
    bool all_zero = true;
    for (long xi : x) all_zero = all_zero && xi == 0;
    if (all_zero) return false;
    Vector v(dim);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t c = 0; c < dim; ++c) v[c] += x[i] * basis[i][c];
    }
    for (const Int& c : v) {
      if (cmpabs(c, bound) > 0) return false;
    }
    found = std::move(v);
    return true;
  };

  // Depth-first enumeration, zig-zagging around each projected centre.
  auto enumerate = [&](auto&& self, std::size_t level, long double partial) -> bool {
    if (++nodes > node_budget) return true;
    long double centre = 0;
    for (std::size_t j = level + 1; j < n; ++j) centre -= static_cast<long double>(x[j]) * mu[j][level];
    const long double slack = radius_sq - partial;
    if (slack < 0) return false;
    const long double width = std::sqrt(slack / rsq[level]);
    const long lo = static_cast<long>(std::ceil(centre - width));
    const long hi = static_cast<long>(std::floor(centre + width));
    const long start = std::lround(centre);
    // Visit start, start+1, start-1, start+2, ... restricted to [lo, hi].
    for (long k = 0; start + k <= hi || start - k >= lo; ++k) {
      for (int side = 0; side < (k == 0 ? 1 : 2); ++side) {
        const long a = side == 0 ? start + k : start - k;
        if (a < lo || a > hi) continue;
        x[level] = a;
        const long double diff = static_cast<long double>(a) - centre;
        const long double next = partial + diff * diff * rsq[level];
        if (next > radius_sq) continue;
        if (level == 0 ? check_leaf() : self(self, level - 1, next)) return true;
      }
    }
    x[level] = 0;
    return false;
  };
  enumerate(enumerate, n - 1, 0.0L);
  return found;
}

}  // namespace thetamul::lattice
