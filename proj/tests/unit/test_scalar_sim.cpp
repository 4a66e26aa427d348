#include <cmath>

#include "doctest.h"
#include "tracelimits/scalar_sim.hpp"

using namespace tracelimits;

TEST_CASE("bilateral Brownian motion is deterministic per seed") {
  const ScalarPath a = simulate_bilateral_bm(-2, 2, 1e-3, 7);
  const ScalarPath b = simulate_bilateral_bm(-2, 2, 1e-3, 7);
  const ScalarPath c = simulate_bilateral_bm(-2, 2, 1e-3, 8);
  CHECK(a.increments == b.increments);
  CHECK(a.increments != c.increments);
  CHECK(a.increments.size() == 4000);
  const auto w = a.grid_values();
  CHECK(w[static_cast<std::size_t>(-a.i_min)] == 0.0);
  CHECK_THROWS(simulate_bilateral_bm(1, 0, 1e-3, 1));
}

TEST_CASE("Brownian increments have variance dt") {
  const double dt = 1e-3;
  const ScalarPath p = simulate_bilateral_bm(-10, 10, dt, 3);
  const auto v = estimate_variance(p.increments);
  CHECK(std::abs(v.variance - dt) < 5 * v.stderr_);
}

TEST_CASE("indicator mollification is a scaled forward increment") {
  const double dt = 1e-3, eps = 0.05;
  const Kernel k = make_indicator_kernel(0.5);
  const ScalarPath p = simulate_bilateral_bm(-1, 2, dt, 5);
  const SmoothedPath x = mollify(p, k, eps);
  const auto w = p.grid_values();
  auto W = [&](long i) { return w[static_cast<std::size_t>(i - p.i_min)]; };
  const long lag = std::lround(eps / dt);
  for (long j = 0; j <= 1000; j += 37)
    CHECK(x.at(j) == doctest::Approx((W(j + lag) - W(j)) / std::sqrt(eps)).epsilon(1e-9));
}

TEST_CASE("mollified values have unit variance and autocorrelation rho") {
  const Kernel k = make_indicator_kernel(0.5);
  const Autocorrelation rho = autocorrelation(k);
  const double eps = 0.05, dt = 0.005;
  std::vector<double> x0, xh;
  for (std::uint64_t r = 0; r < 4000; ++r) {
    const ScalarPath p = simulate_bilateral_bm(-0.2, 0.2, dt, 100 + r);
    const SmoothedPath x = mollify(p, k, eps);
    x0.push_back(x.at(0));
    xh.push_back(x.at(5));
  }
  const auto v = estimate_variance(x0);
  CHECK(std::abs(v.variance - 1.0) < 5 * v.stderr_);
  const auto c = estimate_covariance(x0, xh);
  CHECK(std::abs(c.variance - rho(0.5)) < 5 * c.stderr_);
}

TEST_CASE("step filter is exact when the kernel grid aligns") {
  CHECK(make_step_filter(make_indicator_kernel(0.01), 1e-3, 1e-5).exact);
  CHECK(make_step_filter(make_difference_kernel(0.5), 1e-2, 1e-3).exact);
}

TEST_CASE("Hermite recurrence") {
  for (double x : {-2.0, -0.3, 0.0, 1.7}) {
    CHECK(hermite_he(0, x) == 1.0);
    CHECK(hermite_he(1, x) == x);
    CHECK(hermite_he(2, x) == doctest::Approx(x * x - 1));
    CHECK(hermite_he(3, x) == doctest::Approx(x * x * x - 3 * x));
    CHECK(hermite_he(4, x) == doctest::Approx(x * x * x * x - 6 * x * x + 3));
  }
  HermiteCoeffs F{{0, 1, 1}};
  CHECK(F.rank() == 1);
  CHECK(eval_hermite_series(F, 2.0) == doctest::Approx(2.0 + 3.0));
  CHECK(HermiteCoeffs{{0, 0, 0}}.rank() == -1);
}

TEST_CASE("sigma_W closed forms") {
  const Autocorrelation ind = autocorrelation(make_indicator_kernel(0.01));
  const Autocorrelation diff = autocorrelation(make_difference_kernel(0.01));
  CHECK(sigma_W_squared(single_hermite(3), ind) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(sigma_W_squared(single_hermite(1), diff)) < 1e-7);
  CHECK(sigma_W_squared(HermiteCoeffs{{0, 1, 1}}, ind) == doctest::Approx(7.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("boundary variance of the difference kernel") {
  CHECK(boundary_variance(make_difference_kernel(0.01)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(boundary_variance(make_difference_kernel(0.25)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS(boundary_variance(make_indicator_kernel(0.01)));
}

TEST_CASE("occupation moments") {
  const Kernel k = make_indicator_kernel(0.01);
  const ScalarPath p = simulate_for_unit_interval(k, 1e-4, 1e-6, 20240917);
  const SmoothedPath x = mollify(p, k, 1e-4);
  CHECK(occupation_moment(x, 2) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(occupation_moment(x, 3)) < 0.05);
  CHECK(std::abs(occupation_moment(x, 4) - 3.0) < 0.15);
  CHECK_THROWS(occupation_moment(x, 13));
  CHECK_THROWS(occupation_moment(x, 0));
}

TEST_CASE("fluctuation statistic") {
  const Kernel k = make_indicator_kernel(0.5);
  const ScalarPath p = simulate_for_unit_interval(k, 1e-2, 1e-3, 1);
  CHECK_THROWS(fluctuation_statistic(p, k, 1e-2, HermiteCoeffs{{1, 1}}));
  std::vector<double> h2;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    const ScalarPath q = simulate_for_unit_interval(k, 1e-2, 1e-3, 500 + r);
    h2.push_back(fluctuation_statistic(q, k, 1e-2, single_hermite(2)));
  }
  const auto v = estimate_variance(h2);
  CHECK(v.variance == doctest::Approx(4.0 / 3.0).epsilon(0.10));
}
