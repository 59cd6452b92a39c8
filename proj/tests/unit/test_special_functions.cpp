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
#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "mrt/core/error.hpp"
#include "mrt/impact/special_functions.hpp"

using namespace mrt::impact;
using mrt::DomainError;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double big_bessel(double alpha, double x) {
  return static_cast<double>(boost::math::cyl_bessel_j(Big(alpha), Big(x)));
}

double envelope(double x) { return std::sqrt(2.0 / (std::numbers::pi * x)); }

}  // namespace

TEST_CASE("bessel_j at the origin") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(0.5, 0.0) == 0.0);
  CHECK(bessel_j(2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(bessel_j(1.0, -0.1), DomainError);
}

TEST_CASE("bessel_j half-integer closed form") {
  const double x = std::numbers::pi / 2;
  CHECK(std::abs(bessel_j(0.5, x) - 2 / std::numbers::pi) < 1e-10);
  for (double z : {0.3, 1.7, 4.0, 11.0, 19.5}) {
    CHECK(bessel_j(0.5, z) == doctest::Approx(std::sqrt(2 / (std::numbers::pi * z)) * std::sin(z)).epsilon(1e-12));
    CHECK(bessel_j(-0.5, z) == doctest::Approx(std::sqrt(2 / (std::numbers::pi * z)) * std::cos(z)).epsilon(1e-12));
  }
}

TEST_CASE("bessel_j against a 50-digit reference") {
  for (double alpha : {0.0, 0.25, 1.0, 1.5, 2.0, 3.0, 4.5, -0.7, -1.25}) {
    for (double x : {0.1, 1.0, 5.0, 12.0, 24.9, 30.0, 50.0, 120.0}) {
      CAPTURE(alpha);
      CAPTURE(x);
      const double scale = std::max(std::abs(big_bessel(alpha, x)), 0.05 * envelope(x));
      CHECK(std::abs(bessel_j(alpha, x) - big_bessel(alpha, x)) < 1e-12 * scale + 1e-15);
    }
  }
}

TEST_CASE("bessel_j negative integer order uses reflection") {
  for (double x : {0.5, 3.0, 40.0}) {
    CHECK(bessel_j(-2.0, x) == doctest::Approx(bessel_j(2.0, x)).epsilon(1e-12));
    CHECK(bessel_j(-3.0, x) == doctest::Approx(-bessel_j(3.0, x)).epsilon(1e-12));
  }
}

TEST_CASE("series and asymptotic branches agree at the crossover") {
  for (double alpha = 0.0; alpha <= 3.0 + 1e-12; alpha += 0.125) {
    const double x = bessel_crossover(alpha);
    const double s = bessel_j_series(alpha, x);
    const double a = bessel_j_asymptotic(alpha, x);
    CAPTURE(alpha);
    CHECK(std::abs(s - a) < 0.01 * envelope(x));
  }
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double x = 50.0;
    CAPTURE(alpha);
    CHECK(std::abs(bessel_j_series(alpha, x) - bessel_j_asymptotic(alpha, x)) < 0.01 * envelope(x));
  }
  // The leading cosine alone is off by about (4 alpha^2 - 1) / (8x) relative,
  // so it only meets 1% at x = 50 for small orders.
  for (double alpha : {0.0, 0.5, 1.0}) {
    const double x = 50.0;
    CAPTURE(alpha);
    CHECK(std::abs(bessel_j_series(alpha, x) - bessel_j_leading(alpha, x)) < 0.01 * envelope(x));
  }
}

TEST_CASE("crossover sits at max(25, 2 alpha^2)") {
  CHECK(bessel_crossover(0.0) == 25.0);
  CHECK(bessel_crossover(3.0) == 25.0);
  CHECK(bessel_crossover(4.0) == 32.0);
}

TEST_CASE("hyp2f1 series") {
  CHECK(hyp2f1(0.3, 1.7, 2.2, 0.0) == 1.0);
  CHECK(hyp2f1(1.0, 1.0, 2.0, -0.5) == doctest::Approx(std::log(1.5) / 0.5).epsilon(1e-13));
  // (1 - z)^(-a) = F(a, b; b; z)
  CHECK(hyp2f1(0.7, 1.3, 1.3, 0.4) == doctest::Approx(std::pow(0.6, -0.7)).epsilon(1e-13));
  // arcsin(z)/z = F(1/2, 1/2; 3/2; z^2)
  CHECK(hyp2f1(0.5, 0.5, 1.5, 0.81) == doctest::Approx(std::asin(0.9) / 0.9).epsilon(1e-12));
  // stable near the edge of the disk
  const double z = -0.9;
  CHECK(std::abs(hyp2f1(1.0, 1.0, 2.0, z) - (-std::log(1 - z) / z)) < 1e-12);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, -1.2), DomainError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), DomainError);
}

TEST_CASE("hyp2f1 with complex parameters") {
  using C = std::complex<double>;
  // F(a, b; b; z) = (1 - z)^(-a) holds for complex a as well
  const C a(0.4, 1.1);
  const C value = hyp2f1(a, C(2.5), C(2.5), C(-0.6));
  const C expect = std::pow(C(1.6), -a);
  CHECK(std::abs(value - expect) < 1e-12);
}
