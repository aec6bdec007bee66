#include <cmath>
#include <limits>

#include <doctest.h>

#include "glebd/errors.hpp"
#include "glebd/special_functions.hpp"
#include "reference_values.hpp"

using glebd::bessel_j1;

TEST_CASE("bessel_j1 matches the frozen table") {
  for (const auto& [x, y] : refvals::kBesselJ1)
    CHECK(std::fabs(bessel_j1(x) - y) <= 1e-10);
}

TEST_CASE("bessel_j1 is odd and vanishes at zero") {
  CHECK(bessel_j1(0.0) == 0.0);
  for (double x : {0.3, 1.7, 9.0, 42.5})
    CHECK(bessel_j1(-x) == -bessel_j1(x));
}

TEST_CASE("bessel_j1 small-argument expansion") {
  // J1(x) = x/2 (1 - x^2/8 + x^4/192 - ...)
  for (double x : {1e-8, 1e-5, 1e-3}) {
    const double series = 0.5 * x * (1.0 - x * x / 8.0);
    CHECK(std::fabs(bessel_j1(x) - series) <= 1e-15);
  }
}

TEST_CASE("bessel_j1 is continuous across the series/asymptotic switch") {
  // The representation changes at |x| = 18; both sides must agree.
  const double below = bessel_j1(std::nextafter(18.0, 0.0));
  const double above = bessel_j1(std::nextafter(18.0, 19.0));
  CHECK(std::fabs(below - above) <= 1e-10);
}

TEST_CASE("bessel_j1 rejects non-finite input") {
  CHECK_THROWS_AS(bessel_j1(std::numeric_limits<double>::quiet_NaN()),
                  glebd::ValidationError);
  CHECK_THROWS_AS(bessel_j1(std::numeric_limits<double>::infinity()),
                  glebd::ValidationError);
}
