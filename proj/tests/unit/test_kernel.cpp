#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tracelimits/kernel.hpp"

using namespace tracelimits;

TEST_CASE("indicator kernel values and norm") {
  const Kernel k = make_indicator_kernel(0.01);
  CHECK(k(-0.5) == 1.0);
  CHECK(k(0.5) == 0.0);
  CHECK(k(1.5) == 0.0);
  CHECK(k.l2_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(make_indicator_kernel(0.25).l2_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel grid must divide the support") {
  CHECK_THROWS_AS(make_indicator_kernel(0.3), std::invalid_argument);
  CHECK_THROWS_AS(make_difference_kernel(-0.1), std::invalid_argument);
}

TEST_CASE("indicator autocorrelation is the triangle") {
  const Autocorrelation rho = autocorrelation(make_indicator_kernel(0.01));
  for (double t : {-1.5, -0.73, -0.2, 0.0, 0.31, 0.5, 0.999, 1.0, 2.5})
    CHECK(rho(t) == doctest::Approx(std::max(0.0, 1.0 - std::abs(t))).epsilon(1e-9));
  CHECK(rho(0.5) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("autocorrelation invariants") {
  for (const Kernel& k : {make_indicator_kernel(0.05), make_difference_kernel(0.05),
                          make_kernel(1.0, 0.5, {0.3 / std::sqrt(0.55), 0.9 / std::sqrt(0.55), -0.4 / std::sqrt(0.55), 0.2 / std::sqrt(0.55)})}) {
    const Autocorrelation rho = autocorrelation(k);
    CHECK(rho.at_node(0) == doctest::Approx(1.0).epsilon(1e-9));
    for (int m = 0; m <= rho.half_count(); ++m) {
      CHECK(rho.at_node(m) == rho.at_node(-m));
      CHECK(std::abs(rho.at_node(m)) <= 1.0 + 1e-9);
    }
    CHECK(rho(2.0 * k.support_halfwidth() + 0.1) == 0.0);
  }
}

TEST_CASE("difference kernel autocorrelation matches a fine-grid convolution") {
  const Kernel k = make_difference_kernel(0.01);
  const Autocorrelation rho = autocorrelation(k);
  // trapezoid rule on a grid ten times finer
  auto conv = [&](double t) {
    const int M = 20000;
    const double h = 2.0 / M;
    double s = 0.0;
    for (int i = 0; i <= M; ++i) {
      const double x = -1.0 + i * h;
      const double w = (i == 0 || i == M) ? 0.5 : 1.0;
      const double a = x < 0 ? std::sqrt(0.5) : (x < 1 ? -std::sqrt(0.5) : 0.0);
      const double y = x + t;
      const double b = (y >= -1 && y < 0) ? std::sqrt(0.5) : ((y >= 0 && y < 1) ? -std::sqrt(0.5) : 0.0);
      s += w * a * b;
    }
    return s * h;
  };
  CHECK(rho(1.0) == doctest::Approx(-0.5).epsilon(1e-9));
  for (double t : {0.0, 0.25, 1.0, 1.5}) CHECK(rho(t) == doctest::Approx(conv(t)).epsilon(1e-3));
}

TEST_CASE("sigma_q squared closed forms") {
  const Autocorrelation ind = autocorrelation(make_indicator_kernel(0.01));
  CHECK(sigma_q_squared(ind, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sigma_q_squared(ind, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(sigma_q_squared(ind, 3) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sigma_q_squared(ind, 5) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  const Autocorrelation diff = autocorrelation(make_difference_kernel(0.01));
  CHECK(std::abs(sigma_q_squared(diff, 1)) < 1e-8);
  CHECK(sigma_q_squared(diff, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS(sigma_q_squared(ind, 0));
}

TEST_CASE("make_kernel renormalises small errors and rejects large ones") {
  const Kernel k = make_kernel(1.0, 1.0, {1.004, 0.0});
  CHECK(k.l2_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(make_kernel(1.0, 1.0, {1.2, 0.0}), std::invalid_argument);
}

TEST_CASE("kernel from JSON") {
  const Kernel k = kernel_from_json(R"({"support_halfwidth": 1, "step": 0.5, "values": [1, 1, 0, 0]})");
  CHECK(k.cells() == 4);
  CHECK(k(-0.75) == doctest::Approx(1.0));
  CHECK(autocorrelation(k)(0.5) == doctest::Approx(0.5));
}
