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
// Closed-form solutions of the news-impact equations: the Euler-type
// price/upgrade system, its logistic variant, the profit-taking Bessel paths
// and the two-event hypergeometric solutions.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "mrt/core/error.hpp"
#include "mrt/impact/special_functions.hpp"

namespace mrt::impact {

template <typename Scalar = double>
struct ImpactParams {
  Scalar a = 0;       // global-investing coefficient
  Scalar b = 0;       // momentum coefficient
  Scalar c = 1;       // news reduction coefficient
  Scalar sigma = 1;   // relative price target
  Scalar e = 1;       // profit-taking coupling
  Scalar nu = 1;      // exponent modifier, 0 < nu <= 1
  Scalar tau = 1;     // lag between two events
  Scalar lambda = 0;  // emigration rate of the tree recurrence

  void validate() const {
    if (!(sigma > 0)) throw DomainError("ImpactParams: sigma must be > 0");
    if (!(e > 0)) throw DomainError("ImpactParams: e must be > 0");
    if (!(nu > 0 && nu <= 1)) throw DomainError("ImpactParams: nu must lie in (0, 1]");
    if (!(tau > 0)) throw DomainError("ImpactParams: tau must be > 0");
  }
};

enum class RootKind { kRealDistinct, kDouble, kOscillatory };

template <typename Scalar = double>
struct CharacteristicRoots {
  Scalar d = 0;     // (c - b) / 2
  Scalar disc = 0;  // d^2 - a
  RootKind kind = RootKind::kDouble;
  Scalar r1 = 0;    // d + sqrt(disc), real-distinct only
  Scalar r2 = 0;    // d - sqrt(disc), real-distinct only
  Scalar freq = 0;  // sqrt(-disc), oscillatory only
};

// Roots of r^2 + (b - c) r + a = 0 obtained by substituting u = t^r.
template <typename Scalar>
CharacteristicRoots<Scalar> char_roots(Scalar a, Scalar b, Scalar c) {
  CharacteristicRoots<Scalar> out;
  out.d = (c - b) / Scalar(2);
  out.disc = out.d * out.d - a;
  using std::sqrt;
  if (out.disc > Scalar(0)) {
    out.kind = RootKind::kRealDistinct;
    const Scalar s = sqrt(out.disc);
    out.r1 = out.d + s;
    out.r2 = out.d - s;
  } else if (out.disc < Scalar(0)) {
    out.kind = RootKind::kOscillatory;
    out.freq = sqrt(-out.disc);
  } else {
    out.kind = RootKind::kDouble;
    out.r1 = out.r2 = out.d;
  }
  return out;
}

// General solution p(t) with constants C1, C2. The double-root case uses the
// Euler basis {t^d, t^d log t}.
template <typename Scalar>
Scalar price_path(const CharacteristicRoots<Scalar>& roots, Scalar c1, Scalar c2, Scalar t) {
  if (!(t > Scalar(0))) throw DomainError("price_path: t must be > 0");
  using std::cos;
  using std::log;
  using std::pow;
  using std::sin;
  switch (roots.kind) {
    case RootKind::kRealDistinct:
      return c1 * pow(t, roots.r1) + c2 * pow(t, roots.r2);
    case RootKind::kOscillatory: {
      const Scalar phase = roots.freq * log(t);
      return pow(t, roots.d) * (c1 * sin(phase) + c2 * cos(phase));
    }
    case RootKind::kDouble:
      break;
  }
  return pow(t, roots.d) * (c1 + c2 * log(t));
}

template <typename Scalar = double>
struct LogisticState {
  Scalar u = 0;
  Scalar p = 0;
};

// Closed form of the saturated system with a = 0:
//   u = (beta + B t^(r-beta)) / (r + B t^(r-beta)),  p = sigma (b u + beta),  r = c - b.
template <typename Scalar>
LogisticState<Scalar> logistic_solution(Scalar c, Scalar b, Scalar beta, Scalar big_b, Scalar sigma,
                                        Scalar t) {
  const Scalar r = c - b;
  if (!(r > Scalar(0))) throw DomainError("logistic_solution: requires c - b > 0");
  if (!(beta >= Scalar(0) && beta < r)) throw DomainError("logistic_solution: requires 0 <= beta < c - b");
  if (big_b < Scalar(0)) throw DomainError("logistic_solution: B must be >= 0");
  if (t < Scalar(0)) throw DomainError("logistic_solution: t must be >= 0");
  using std::pow;
  const Scalar x = t == Scalar(0) ? Scalar(0) : big_b * pow(t, r - beta);
  LogisticState<Scalar> out;
  out.u = (beta + x) / (r + x);
  out.p = sigma * (b * out.u + beta);
  return out;
}

// Profit-taking fundamental pair t^((1+c)/2) J_{+-(1+c)/2}(sqrt(e) t).
template <typename Scalar = double>
struct BesselPair {
  Scalar first = 0;
  Scalar second = 0;
};

template <typename Scalar>
BesselPair<Scalar> profit_basis(Scalar c, Scalar e, Scalar t) {
  if (!(t > Scalar(0))) throw DomainError("profit_path: t must be > 0");
  if (!(e > Scalar(0))) throw DomainError("profit_path: e must be > 0");
  using std::pow;
  using std::sqrt;
  const Scalar order = (Scalar(1) + c) / Scalar(2);
  const Scalar x = sqrt(e) * t;
  const Scalar scale = pow(t, order);
  return {scale * bessel_j(order, x), scale * bessel_j(-order, x)};
}

template <typename Scalar>
Scalar profit_path(Scalar c, Scalar e, Scalar a1, Scalar a2, Scalar t) {
  const auto basis = profit_basis(c, e, t);
  return a1 * basis.first + a2 * basis.second;
}

// Phases of the large-t form t^(c/2) cos(sqrt(e) t - phi): phi = +-(1+c) pi/4 + pi/4.
template <typename Scalar>
BesselPair<Scalar> profit_phases(Scalar c) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar shift = (Scalar(1) + c) * pi / Scalar(4);
  return {shift + pi / Scalar(4), -shift + pi / Scalar(4)};
}

// Leading large-t behaviour of profit_path:
//   sqrt(2/(pi sqrt(e))) t^(c/2) (A1 cos(sqrt(e) t - phi1) + A2 cos(sqrt(e) t - phi2)).
template <typename Scalar>
Scalar profit_path_asymptotic(Scalar c, Scalar e, Scalar a1, Scalar a2, Scalar t) {
  if (!(t > Scalar(0))) throw DomainError("profit_path: t must be > 0");
  if (!(e > Scalar(0))) throw DomainError("profit_path: e must be > 0");
  using std::cos;
  using std::pow;
  using std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const auto phi = profit_phases(c);
  const Scalar w = sqrt(e);
  const Scalar amp = sqrt(Scalar(2) / (pi * w)) * pow(t, c / Scalar(2));
  return amp * (a1 * cos(w * t - phi.first) + a2 * cos(w * t - phi.second));
}

template <typename Scalar = double>
struct ModifiedPair {
  Scalar first = 0;
  // Absent when c/nu is an integer: J_{-n} is then proportional to J_n.
  std::optional<Scalar> second;
};

// Fundamental solutions t^(c/2) J_{+-c/nu}(2 sqrt(e) t^(nu/2) / nu) of
//   t^2 p'' + (1 - c) t p' + e t^nu p = 0.
template <typename Scalar>
ModifiedPair<Scalar> modified_profit_path(Scalar c, Scalar e, Scalar nu, Scalar t) {
  if (!(t > Scalar(0))) throw DomainError("modified_profit_path: t must be > 0");
  if (!(e > Scalar(0))) throw DomainError("modified_profit_path: e must be > 0");
  if (!(nu > Scalar(0) && nu <= Scalar(1))) throw DomainError("modified_profit_path: nu must lie in (0, 1]");
  using std::pow;
  using std::sqrt;
  const Scalar order = c / nu;
  const Scalar x = Scalar(2) * sqrt(e) * pow(t, nu / Scalar(2)) / nu;
  const Scalar scale = pow(t, c / Scalar(2));
  ModifiedPair<Scalar> out;
  out.first = scale * bessel_j(order, x);
  if (!detail::is_integer(static_cast<double>(order))) out.second = scale * bessel_j(-order, x);
  return out;
}

template <typename Scalar = double>
struct TwoEventPrice {
  Scalar p = 0;                  // F(alpha, beta; 1 - c0; -t/tau), needs t < tau
  std::optional<Scalar> p1;      // solutions around infinity, need t > tau
  std::optional<Scalar> p2;
  Scalar alpha = 0;              // real parts of the parameter pair
  Scalar beta = 0;
  bool oscillatory = false;      // alpha, beta complex conjugate
};

// Two events at -tau and 0, b = 0: solutions of
//   t (t + tau) p'' + ((1 - c) t + (1 - c0) tau) p' + a p = 0,  c = c0 + c_tau.
// Each series is evaluated only where its argument lies inside the unit disk.
// For complex alpha, beta the pair (p1, p2) is (Re, Im) of the complex solution.
template <typename Scalar>
TwoEventPrice<Scalar> two_event_price(Scalar a, Scalar c0, Scalar c_tau, Scalar tau, Scalar t) {
  if (!(tau > Scalar(0))) throw DomainError("two_event_price: tau must be > 0");
  if (t < Scalar(0)) throw DomainError("two_event_price: t must be >= 0");
  using Complex = std::complex<Scalar>;
  const Scalar c = c0 + c_tau;
  const Complex root = std::sqrt(Complex(c * c / Scalar(4) - a));
  const Complex alpha = Complex(-c / Scalar(2)) + root;
  const Complex beta = Complex(-c / Scalar(2)) - root;
  const Scalar gamma = Scalar(1) - c0;

  TwoEventPrice<Scalar> out;
  out.alpha = alpha.real();
  out.beta = beta.real();
  out.oscillatory = root.imag() != Scalar(0);

  const bool near = t < tau;
  const bool far = t > tau;
  if (!near && !far) throw DomainError("two_event_price: no convergent series at t = tau");
  if (near) {
    out.p = hyp2f1(alpha, beta, Complex(gamma), Complex(-t / tau)).real();
  } else {
    out.p = std::numeric_limits<Scalar>::quiet_NaN();
    const Complex z(-tau / t);
    const auto solution = [&](Complex x, Complex y) {
      return std::pow(Complex(t), -x) * hyp2f1(x, -y - Complex(c_tau), Complex(1) + x - y, z);
    };
    const Complex s1 = solution(beta, alpha);
    if (out.oscillatory) {
      out.p1 = s1.real();
      out.p2 = s1.imag();
    } else {
      out.p1 = s1.real();
      out.p2 = solution(alpha, beta).real();
    }
  }
  return out;
}

// Iterates f_k = f_{k-1} + c/(k-2) f_{k-2} - lambda f_{k-1} for k > 2.
// Returns f_1..f_n (index k-1 holds f_k).
template <typename Scalar>
std::vector<Scalar> tree_growth(Scalar c, Scalar lambda, Scalar f1, Scalar f2, int n) {
  if (n <= 2) throw DomainError("tree_growth: n must be > 2");
  std::vector<Scalar> f(static_cast<std::size_t>(n));
  f[0] = f1;
  f[1] = f2;
  for (int k = 3; k <= n; ++k) {
    const Scalar prev = f[static_cast<std::size_t>(k - 2)];
    const Scalar prev2 = f[static_cast<std::size_t>(k - 3)];
    f[static_cast<std::size_t>(k - 1)] = prev + c / Scalar(k - 2) * prev2 - lambda * prev;
  }
  return f;
}

}  // namespace mrt::impact
