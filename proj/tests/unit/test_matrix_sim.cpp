#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tracelimits/limit_constants.hpp"
#include "tracelimits/matrix_sim.hpp"

using namespace tracelimits;

namespace {
double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("Hermitian Brownian increments") {
  const HermitianPath p = simulate_hermitian_bm(3, -1, 1, 1e-2, 9);
  const HermitianPath q = simulate_hermitian_bm(3, -1, 1, 1e-2, 9);
  CHECK(p.increments == q.increments);
  for (long s = 0; s < p.steps(); s += 17) CHECK(max_diff(p.increment(s), p.increment(s).adjoint()) == 0.0);
  CHECK(max_diff(p.value_at(0), Matrix::Zero(3, 3)) == 0.0);
  // E|W_ij(1)|^2 = 1/N for every entry
  std::vector<double> diag, off;
  for (std::uint64_t r = 0; r < 3000; ++r) {
    const HermitianPath w = simulate_hermitian_bm(3, -0.05, 1, 0.05, 1000 + r);
    const Matrix W = w.value_at(w.i_max);
    diag.push_back(W(1, 1).real());
    off.push_back(std::norm(W(0, 2)));
  }
  const auto vd = estimate_variance(diag);
  CHECK(std::abs(vd.variance - 1.0 / 3) < 5 * vd.stderr_);
  const auto mo = estimate_mean(off);
  CHECK(std::abs(mo.mean - 1.0 / 3) < 5 * mo.stderr_);
}

TEST_CASE("N = 1 reduces to the scalar model") {
  const Kernel k = make_indicator_kernel(0.01);
  const HermitianPath h = simulate_hermitian_bm(1, -1, 2, 1e-3, 21);
  const ScalarPath s = simulate_bilateral_bm(-1, 2, 1e-3, 21);
  REQUIRE(h.increments.size() == s.increments.size());
  for (std::size_t i = 0; i < s.increments.size(); ++i) CHECK(h.increments[i] == doctest::Approx(s.increments[i]));
  const HermitianSmoothedPath xm = mollify_matrix(h, k, 0.1);
  const SmoothedPath xs = mollify(s, k, 0.1);
  for (long j = 0; j <= 1000; j += 50) CHECK(xm.at(j)(0, 0).real() == doctest::Approx(xs.at(j)).epsilon(1e-12));
}

TEST_CASE("mollified marginals are GUE") {
  const Kernel k = make_indicator_kernel(0.5);
  for (int N : {2, 3}) {
    std::vector<double> m2, m4;
    for (std::uint64_t r = 0; r < 4000; ++r) {
      const HermitianPath p = simulate_hermitian_bm(N, -0.2, 0.2, 0.02, 7000 + r);
      const Matrix X = mollify_matrix(p, k, 0.1).at(0);
      const auto m = spectral_moments(X, 4);
      m2.push_back(m.m[2]);
      m4.push_back(m.m[4]);
    }
    const auto e2 = estimate_mean(m2), e4 = estimate_mean(m4);
    CHECK(std::abs(e2.mean - 1.0) < 5 * e2.stderr_);
    CHECK(std::abs(e4.mean - (2.0 + 1.0 / (N * N))) < 5 * e4.stderr_);
  }
}

TEST_CASE("streamed mollification reproduces the stored one") {
  const Kernel k = make_difference_kernel(0.25);
  const double eps = 0.1, dt = 0.01;
  HermitianMollifiedStream stream(2, k, eps, dt, 33, -5);
  const long first = stream.first_increment();
  const HermitianPath p = simulate_hermitian_bm(2, first * dt, 1.5, dt, 33);
  REQUIRE(p.i_min == first);
  const HermitianSmoothedPath x = mollify_matrix(p, k, eps);
  for (long j = -5; j <= 100; ++j) {
    const Matrix m = stream.next();
    CHECK(max_diff(m, x.at(j)) < 1e-12);
  }
}

TEST_CASE("exact GUE moments") {
  CHECK(gue_moment_exact(2).to_string() == "1");
  CHECK(gue_moment_exact(4).to_string() == "2+N^-2");
  CHECK(gue_moment_exact(3).is_zero());
  for (int p = 1; p <= 4; ++p) {
    const LaurentN m = gue_moment_exact(2 * p);
    CHECK(m.max_exponent() == 0);
    CHECK(m.coefficient(0) == static_cast<std::int64_t>(catalan(p)));
  }
  CHECK(gue_moment_exact(6, 1) == 15.0);
}

TEST_CASE("cubic martingale") {
  for (int N : {1, 2}) {
    const MartingaleReport r = martingale_diagnostics(N, {0.5, 1.0, 2.0}, 4000, 77);
    CHECK(r.pass);
    for (std::size_t i = 0; i < r.times.size(); ++i) CHECK(std::abs(r.trace_mean[i].mean) < 5 * r.trace_mean[i].stderr_);
  }
}

TEST_CASE("Chebyshev polynomials of the second kind") {
  for (double x : {-1.5, 0.3, 1.9}) {
    CHECK(chebyshev_U(0, x) == 1.0);
    CHECK(chebyshev_U(1, x) == x);
    CHECK(chebyshev_U(2, x) == doctest::Approx(x * x - 1));
  }
  const double th = std::numbers::pi / 3;
  CHECK(std::abs(chebyshev_U(2, 2 * std::cos(th)) * std::sin(th) - std::sin(3 * th)) < 1e-12);
  // Gauss-Chebyshev rule of the second kind, exact up to degree 2M - 1
  const int M = 16;
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m) {
      double s = 0.0;
      for (int i = 1; i <= M; ++i) {
        const double t = i * std::numbers::pi / (M + 1);
        const double w = std::numbers::pi / (M + 1) * std::sin(t) * std::sin(t);
        s += w * chebyshev_U(n, 2 * std::cos(t)) * chebyshev_U(m, 2 * std::cos(t));
      }
      CHECK(std::abs(2 / std::numbers::pi * s - (n == m ? 1.0 : 0.0)) < 1e-8);
    }
  Matrix X = Matrix::Zero(2, 2);
  X(0, 0) = 0.5;
  X(1, 1) = -1.0;
  const Matrix U3 = chebyshev_U(3, X);
  CHECK(U3(0, 0).real() == doctest::Approx(chebyshev_U(3, 0.5)));
  CHECK(U3(1, 1).real() == doctest::Approx(chebyshev_U(3, -1.0)));
}

TEST_CASE("fluctuation matrix is centred") {
  const Kernel k = make_indicator_kernel(0.25);
  std::vector<double> re01, d00;
  for (std::uint64_t r = 0; r < 400; ++r) {
    const Matrix m = fluctuation_matrix(k, 2, 2, 20.0, 0.05, 300 + r);
    CHECK(max_diff(m, m.adjoint()) < 1e-10);
    re01.push_back(m(0, 1).real());
    d00.push_back(m(0, 0).real());
  }
  const auto a = estimate_mean(re01), b = estimate_mean(d00);
  CHECK(std::abs(a.mean) < 5 * a.stderr_);
  CHECK(std::abs(b.mean) < 5 * b.stderr_);
}

TEST_CASE("Gaussian matrix decomposition check") {
  // sigma (a G + b xi I / N) with G ~ GUE(1/N)
  auto samples_for = [](double a, double b, double sigma, int N, std::uint64_t seed) {
    NormalStream rng(seed);
    std::vector<Matrix> out;
    std::vector<double> ch(static_cast<std::size_t>(N * N));
    for (int s = 0; s < 20000; ++s) {
      for (int c = 0; c < N * N; ++c) ch[c] = channel_sd(N, c, 1.0) * rng();
      Matrix G = assemble_hermitian(N, ch.data());
      out.push_back(std::sqrt(sigma) * (a * G + b * rng() / N * Matrix::Identity(N, N)));
    }
    return out;
  };
  const double s3 = 0.5;
  const auto good = samples_for(std::sqrt(1.75), std::sqrt(2.0), s3, 2, 1);
  const auto r = gaussian_matrix_decomposition_check(good, 3, 2, s3);
  for (const auto& l : r.lines) INFO(l.name << " " << l.empirical << " vs " << l.target);
  CHECK(r.pass);
  const auto wrong = samples_for(1.0, 1.0, s3, 2, 2);
  CHECK_FALSE(gaussian_matrix_decomposition_check(wrong, 3, 2, s3).pass);
  CHECK_THROWS(gaussian_matrix_decomposition_check(std::vector<Matrix>(10, Matrix::Zero(2, 2)), 3, 2, s3));
}

TEST_CASE("free limit at moderate N") {
  const FreeLimitReport r = free_limit_checks(100, make_indicator_kernel(0.5), 1, 1e-2, 2e-3, 5);
  REQUIRE(r.moments.size() == 4);
  CHECK(std::abs(r.moments[1] - 1.0) < 0.1);
  CHECK(std::abs(r.moments[2]) < 0.05);
  CHECK(std::abs(r.moments[3] - 2.0) < 0.15);
}
