// Copyright 2026 The MRT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Bessel functions of the first kind and the Gauss hypergeometric series.
//
// Both evaluators are templated on the scalar type. Power series are summed in
// a wider accumulator so that the cancellation of the alternating Bessel series
// near the asymptotic crossover stays below double round-off.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <type_traits>

#include "mrt/core/error.hpp"

namespace mrt::impact {

template <typename Scalar>
struct WideAccumulator {
  using type = long double;
};

#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
template <>
struct WideAccumulator<double> {
  using type = __float128;
};
#endif

template <typename Scalar>
using wide_t = typename WideAccumulator<Scalar>::type;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
auto magnitude(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::abs(v);
  } else {
    return v < T(0) ? -v : v;
  }
}

// Stop once this many consecutive terms are below the relative tolerance.
inline constexpr int kQuietTerms = 3;
inline constexpr double kSeriesTolerance = 1e-15;
inline constexpr int kMaxSeriesTerms = 1'000'000;

inline bool is_integer(double v) { return std::nearbyint(v) == v; }

}  // namespace detail

// Argument where bessel_j switches from the power series to the Hankel expansion.
template <typename Scalar>
Scalar bessel_crossover(Scalar alpha) {
  using std::max;
  return max(Scalar(25), Scalar(2) * alpha * alpha);
}

// Power series  sum_m (-1)^m (x/2)^(2m+alpha) / (m! Gamma(m+alpha+1)).
// alpha must not be a negative integer (use bessel_j, which reflects).
template <typename Scalar>
Scalar bessel_j_series(Scalar alpha, Scalar x) {
  if (x < Scalar(0)) throw DomainError("bessel_j: x must be non-negative");
  if (alpha < Scalar(0) && detail::is_integer(static_cast<double>(alpha))) {
    throw DomainError("bessel_j_series: negative integer order");
  }
  if (x == Scalar(0)) {
    if (alpha == Scalar(0)) return Scalar(1);
    if (alpha > Scalar(0)) return Scalar(0);
    throw DomainError("bessel_j: J_alpha(0) is unbounded for negative alpha");
  }
  using W = wide_t<Scalar>;
  const W q = -W(x) * W(x) / W(4);
  const W a = W(alpha);
  W term = 1;
  W sum = 1;
  int quiet = 0;
  for (int m = 0; m < detail::kMaxSeriesTerms; ++m) {
    term *= q / (W(m + 1) * (W(m + 1) + a));
    sum += term;
    const W rel = detail::magnitude(term) / (sum == W(0) ? W(1) : detail::magnitude(sum));
    quiet = rel < W(detail::kSeriesTolerance) ? quiet + 1 : 0;
    if (quiet >= detail::kQuietTerms) break;
  }
  using std::pow;
  using std::tgamma;
  return static_cast<Scalar>(sum) * pow(x / Scalar(2), alpha) / tgamma(alpha + Scalar(1));
}

// Hankel asymptotic expansion J ~ sqrt(2/(pi x)) (P cos chi - Q sin chi),
// chi = x - pi alpha/2 - pi/4, truncated at the smallest term.
template <typename Scalar>
Scalar bessel_j_asymptotic(Scalar alpha, Scalar x) {
  if (x <= Scalar(0)) throw DomainError("bessel_j_asymptotic: x must be positive");
  const Scalar mu = Scalar(4) * alpha * alpha;
  Scalar p = 1;
  Scalar q = 0;
  Scalar term = 1;
  for (int k = 1; k < 400; ++k) {
    const Scalar odd = Scalar(2 * k - 1);
    const Scalar next = term * (mu - odd * odd) / (Scalar(k) * Scalar(8) * x);
    using std::abs;
    if (k > 1 && abs(next) > abs(term)) break;
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (abs(term) < Scalar(1e-18)) break;
  }
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar chi = x - pi * (alpha / Scalar(2) + Scalar(0.25));
  return sqrt(Scalar(2) / (pi * x)) * (p * cos(chi) - q * sin(chi));
}

// Leading asymptotic term sqrt(2/(pi x)) cos(x - pi alpha/2 - pi/4).
template <typename Scalar>
Scalar bessel_j_leading(Scalar alpha, Scalar x) {
  if (x <= Scalar(0)) throw DomainError("bessel_j_leading: x must be positive");
  using std::cos;
  using std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return sqrt(Scalar(2) / (pi * x)) * cos(x - pi * alpha / Scalar(2) - pi / Scalar(4));
}

// J_alpha(x) for real alpha and x >= 0. Negative integer orders use
// J_{-n} = (-1)^n J_n.
template <typename Scalar>
Scalar bessel_j(Scalar alpha, Scalar x) {
  if (x < Scalar(0) || std::isnan(static_cast<double>(x))) {
    throw DomainError("bessel_j: x must be non-negative");
  }
  if (alpha < Scalar(0) && detail::is_integer(static_cast<double>(alpha))) {
    const long n = std::lround(static_cast<double>(-alpha));
    const Scalar v = bessel_j(Scalar(n), x);
    return (n % 2 == 0) ? v : -v;
  }
  if (x >= bessel_crossover(alpha)) return bessel_j_asymptotic(alpha, x);
  return bessel_j_series(alpha, x);
}

// Gauss series 2F1(a, b; c; z) for |z| < 1. Works for real or complex scalars.
template <typename T>
T hyp2f1(T a, T b, T c, T z) {
  using detail::magnitude;
  if (!(magnitude(z) < 1)) throw DomainError("hyp2f1: |z| must be < 1");
  if constexpr (detail::is_complex<T>::value) {
    if (c.imag() == 0 && c.real() <= 0 && detail::is_integer(c.real())) {
      throw DomainError("hyp2f1: c is a non-positive integer");
    }
  } else {
    if (c <= T(0) && detail::is_integer(static_cast<double>(c))) {
      throw DomainError("hyp2f1: c is a non-positive integer");
    }
  }
  T term = T(1);
  T sum = T(1);
  int quiet = 0;
  for (int m = 0; m < detail::kMaxSeriesTerms; ++m) {
    const T mm = T(m);
    term *= (a + mm) * (b + mm) / ((c + mm) * (mm + T(1))) * z;
    sum += term;
    const auto scale = magnitude(sum) == 0 ? decltype(magnitude(sum))(1) : magnitude(sum);
    quiet = magnitude(term) < detail::kSeriesTolerance * scale ? quiet + 1 : 0;
    if (quiet >= detail::kQuietTerms) return sum;
  }
  throw DomainError("hyp2f1: series did not converge");
}

}  // namespace mrt::impact
