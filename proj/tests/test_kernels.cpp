#include <cmath>
#include <vector>

#include <doctest.h>

#include "glebd/errors.hpp"
#include "glebd/kernels.hpp"
#include "reference_values.hpp"

using namespace glebd;

TEST_CASE("memory kernel time form") {
  CHECK(std::fabs(theta_time(0.25, 2.0) - refvals::kTheta_w2_t025) <= 1e-12);
  // theta(0) = omega0^2.
  CHECK(theta_time(0.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(theta_time(0.0, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("transform forms agree: conjugate vs chain parameters") {
  // With m = 1 the chain transform is the omega0 = sqrt(K) form.
  for (double s : {0.0, 0.3, 1.0, 10.0, 250.0})
    CHECK(theta_laplace_ad(s, 2.0) ==
          doctest::Approx(theta_laplace_chain(s, 1.0, 4.0)).epsilon(1e-14));
  // Theta(0) = sqrt(m K).
  CHECK(theta_laplace_chain(0.0, 2.0, 8.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("transform stays accurate for large s (no cancellation)") {
  // 2 w0^2 / (sqrt(s^2+4w0^2)+s) ~ w0^2/s - w0^4/s^3 + ...
  const double s = 1e8, w0 = 2.0;
  const double expect = w0 * w0 / s;
  CHECK(std::fabs(theta_laplace_ad(s, w0) - expect) <= 1e-12 * expect);
}

TEST_CASE("kernel factory carries all representations") {
  const auto kernel = adelman_doll_kernel(2.0, 4.0);
  CHECK(kernel.d == 1);
  CHECK(kernel.gamma(0, 0) == 2.0);
  CHECK(kernel.m_infinity(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(static_cast<bool>(kernel.theta_laplace));
  CHECK(static_cast<bool>(kernel.theta_time));
  // Only the undamped kernel has a closed-form chi.
  CHECK(!static_cast<bool>(kernel.chi_closed_form));
  const auto undamped = adelman_doll_kernel(0.0, 4.0);
  CHECK(static_cast<bool>(undamped.chi_closed_form));
}

TEST_CASE("kernel_from_name parses and rejects") {
  const auto ad = kernel_from_name("ad(2,4)");
  CHECK(ad.gamma(0, 0) == 2.0);
  CHECK(ad.K == 4.0);
  const auto adm = kernel_from_name("ad(1,9,2)");
  CHECK(adm.mass == 2.0);
  const auto lan = kernel_from_name("langevin(3)");
  CHECK(lan.gamma(0, 0) == 3.0);
  CHECK(lan.m_infinity(0, 0) == 0.0);
  CHECK_THROWS_AS(kernel_from_name("ad(2)"), ValidationError);
  CHECK_THROWS_AS(kernel_from_name("bogus(1,2)"), ValidationError);
  CHECK_THROWS_AS(kernel_from_name("ad(2,4"), ValidationError);
}

TEST_CASE("moments match the frozen scenario table") {
  for (const auto& ref : refvals::kFits) {
    const auto kernel = adelman_doll_kernel(ref.gamma, ref.K);
    const auto M = kernel_moments(kernel, 3);
    REQUIRE(M.size() == 5);
    for (int p = 0; p < 5; ++p)
      CHECK(std::fabs(M[p](0, 0) - ref.M[p]) <=
            1e-10 * std::max(1.0, std::fabs(ref.M[p])));
  }
}

TEST_CASE("finite-difference moments agree with the closed path up to M2") {
  for (const auto& ref : refvals::kFits) {
    const auto kernel = adelman_doll_kernel(ref.gamma, ref.K);
    const auto fd = kernel_moments_fd(kernel, 2);
    for (int p = 0; p < 3; ++p)
      CHECK(std::fabs(fd[p](0, 0) - ref.M[p]) <=
            1e-8 * std::max(1.0, std::fabs(ref.M[p])));
  }
}

TEST_CASE("tabulated kernels: moments via finite differences only") {
  // Tabulate the (gamma=2, K=4) transform densely enough for the FD
  // probes (they evaluate at |s| up to ~1/h with h = 1e-2).
  std::vector<std::pair<double, double>> table;
  for (int i = -6000; i <= 6000; ++i) {
    const double s = i * 0.1;
    table.emplace_back(s, theta_laplace_ad(s, 2.0));
  }
  const auto kernel = tabulated_kernel(std::move(table), 2.0, 2.0);
  const auto fd = kernel_moments(kernel, 2);
  CHECK(std::fabs(fd[0](0, 0) - 1.0) <= 1e-4);
  CHECK(std::fabs(fd[1](0, 0) + 2.0) <= 1e-3);
  CHECK_THROWS_AS(kernel_moments(kernel, 3), NumericalError);
}

TEST_CASE("tabulated kernels refuse out-of-range evaluation") {
  std::vector<std::pair<double, double>> table = {{0.0, 1.0}, {1.0, 0.5}};
  const auto kernel = tabulated_kernel(std::move(table), 0.0, 1.0);
  CHECK(kernel.theta_laplace(0.5)(0, 0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(kernel.theta_laplace(2.0), ValidationError);
}

TEST_CASE("block_diag combines kernels componentwise") {
  const auto a = adelman_doll_kernel(2.0, 4.0);
  const auto b = adelman_doll_kernel(0.0, 0.2);
  const auto both = block_diag(a, b);
  CHECK(both.d == 2);
  CHECK(both.gamma(0, 0) == 2.0);
  CHECK(both.gamma(1, 1) == 0.0);
  CHECK(both.gamma(0, 1) == 0.0);
  const auto M = kernel_moments(both, 3);
  CHECK(M[2](0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(M[2](1, 1) + 0.2) <= 1e-12);
}

TEST_CASE("morse force") {
  const double a = 1.3;
  CHECK(morse_force(0.0, a) == 0.0);
  // f'(0) = -2 a^2 by central difference.
  const double h = 1e-6;
  const double fp = (morse_force(h, a) - morse_force(-h, a)) / (2 * h);
  CHECK(std::fabs(fp + 2 * a * a) <= 1e-6);
  // Repulsive inward, attractive outward.
  CHECK(morse_force(-0.5, a) > 0.0);
  CHECK(morse_force(0.5, a) < 0.0);
  CHECK_THROWS_AS(morse_force(-400.0, 1.0), NumericalError);
}

TEST_CASE("force field wrappers") {
  const auto morse = morse_force_field(1.0);
  CHECK(morse.force(0.7) == morse_force(0.7, 1.0));
  const auto zero = zero_force_field();
  CHECK(zero.force(3.0) == 0.0);
  const auto lin = linear_force_field(2.0);
  CHECK(lin.force(0.5) == -1.0);
}
