#include <cmath>

#include "doctest.h"
#include "tracelimits/matrix_variate.hpp"
#include "tracelimits/scalar_sim.hpp"

using namespace tracelimits;

namespace {
LaurentQ q(std::int64_t c, int e = 0) { return LaurentQ::monomial(e, Rational(c)); }
PowerSumExpr mono(std::vector<int> nu, std::int64_t c, int e = 0) { return power_sum_monomial(nu, q(c, e)); }
}  // namespace

TEST_CASE("partitions and cycle types") {
  CHECK(partitions_of(3).size() == 3);
  CHECK(partitions_of(4).size() == 5);
  CHECK(parse_partition("(2,1)") == IntPartition{2, 1});
  CHECK(parse_partition("3") == IntPartition{3});
  CHECK(to_string(IntPartition{1, 1}) == "(1,1)");
  CHECK(cycle_type(Permutation0::parse("(0)(12)(3)", 3)) == IntPartition{2, 1});
  CHECK(parse_partition("1,2") == IntPartition{2, 1});
  CHECK_THROWS(parse_partition("2,0"));
}

TEST_CASE("character tables are orthogonal") {
  for (int n = 1; n <= 3; ++n) {
    const CharacterTable t(n);
    int factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (const auto& k : t.irreps())
      for (const auto& l : t.irreps()) CHECK(t.inner_product(k, l) == (k == l ? factorial : 0));
  }
  const CharacterTable t3(3);
  CHECK(t3.value({2, 1}, {1, 1, 1}) == 2);
  CHECK(t3.value({1, 1, 1}, {2, 1}) == -1);
}

TEST_CASE("sigma-hat Hermite polynomials") {
  PowerSumExpr e12 = mono({0, 1, 0}, 1);
  e12 += mono({0, 0, 0}, -1, 2);
  CHECK(hermite_tilde_sigma_hat(Permutation0::parse("(0)(12)", 2)) == e12);

  PowerSumExpr e123 = mono({0, 0, 1}, -1);
  e123 += mono({1, 0, 0}, 3, 1);
  CHECK(hermite_tilde_sigma_hat(Permutation0::parse("(0)(123)", 3)) == e123);

  PowerSumExpr eid = mono({3, 0, 0}, -1);
  eid += mono({1, 0, 0}, 3, 1);
  CHECK(hermite_tilde_sigma_hat(Permutation0::identity(3)) == eid);
}

TEST_CASE("Hermite polynomials indexed by partitions") {
  PowerSumExpr h11 = mono({2, 0, 0}, 1);
  h11 += mono({0, 0, 0}, -1, 1);
  h11 += mono({0, 1, 0}, -1);
  h11 += mono({0, 0, 0}, 1, 2);
  CHECK(hermite_kappa({1, 1}) == h11);

  PowerSumExpr h2 = mono({2, 0, 0}, 1);
  h2 += mono({0, 0, 0}, -1, 1);
  h2 += mono({0, 1, 0}, 1);
  h2 += mono({0, 0, 0}, -1, 2);
  CHECK(hermite_kappa({2}) == h2);

  PowerSumExpr h21 = mono({0, 0, 1}, 2);
  h21 += mono({3, 0, 0}, -2);
  CHECK(hermite_kappa({2, 1}) == h21);
  CHECK(hermite_kappa({2, 1}).to_string() == hermite_kappa({2, 1}).to_string());
}

TEST_CASE("exact Gaussian expectations") {
  CHECK(gaussian_expectation(mono({2, 0, 0}, 1)) == q(1, 1));
  CHECK(gaussian_expectation(mono({0, 1, 0}, 1)) == q(1, 2));
  CHECK(gaussian_expectation(mono({1, 0, 0}, 1)).is_zero());
  // E Tr X^4 = 2N^3 + N
  LaurentQ tr4 = q(2, 3);
  tr4 += q(1, 1);
  CHECK(gaussian_expectation(mono({0, 2, 0}, 1)) == q(1, 4) + q(2, 2));
  for (const auto& k : partitions_of(2)) CHECK(gaussian_expectation(hermite_kappa(k)).is_zero());
  for (const auto& k : partitions_of(3)) CHECK(gaussian_expectation(hermite_kappa(k)).is_zero());
  (void)tr4;
}

TEST_CASE("exact orthogonality across partitions") {
  for (int n = 2; n <= 3; ++n)
    for (const auto& k : partitions_of(n))
      for (const auto& l : partitions_of(n)) {
        const LaurentQ e = gaussian_expectation(hermite_kappa(k) * hermite_kappa(l));
        INFO(to_string(k) << " x " << to_string(l) << " = " << e.to_string());
        CHECK(e.is_zero() == (k != l));
      }
}

TEST_CASE("Monte Carlo orthogonality") {
  const MCEstimate off = mc_orthogonality({2}, {1, 1}, 2, 100000, 20240917);
  CHECK(std::abs(off.mean) < 5 * off.stderr_);
  const MCEstimate same = mc_orthogonality({2}, {2}, 2, 20000, 1);
  CHECK(same.mean > 5 * same.stderr_);
  CHECK_THROWS(mc_orthogonality({2}, {1, 1}, 2, 10, 1));
}

TEST_CASE("Gaussian sampler second moments") {
  NormalStream rng(4);
  RunningStats s1, s2;
  for (int i = 0; i < 40000; ++i) {
    const auto X = sample_gaussian_hermitian(3, rng);
    s1.add(std::pow(X.trace().real(), 2));
    s2.add((X * X).trace().real());
  }
  CHECK(std::abs(s1.mean() - 3.0) < 5 * s1.stderr_mean());
  CHECK(std::abs(s2.mean() - 9.0) < 5 * s2.stderr_mean());
}

TEST_CASE("reference polynomials") {
  PowerSumExpr r11 = power_sum_monomial({2, 0, 0}, LaurentQ(Rational(1, 2)));
  r11 += power_sum_monomial({0, 1, 0}, LaurentQ(Rational(-1, 2)));
  r11 += power_sum_monomial({0, 0, 0}, LaurentQ::monomial(2, Rational(1, 2)));
  r11 += power_sum_monomial({0, 0, 0}, LaurentQ::monomial(1, Rational(-1, 2)));
  CHECK(reference_hermite_kappa({1, 1}) == r11);

  PowerSumExpr r21 = power_sum_monomial({3, 0, 0}, LaurentQ(Rational(1, 3)));
  r21 += power_sum_monomial({0, 0, 1}, LaurentQ(Rational(-1, 3)));
  CHECK(reference_hermite_kappa({2, 1}) == r21);
}

TEST_CASE("proportionality to the reference polynomials") {
  const auto p21 = proportionality_check({2, 1});
  CHECK(p21.proportional);
  CHECK(p21.constant == Rational(-6));
  CHECK(proportionality_check({1, 1}).proportional);
  CHECK(proportionality_check({1, 1}).constant == Rational(2));
  CHECK(proportionality_check({2}).proportional);
  CHECK(proportionality_check({1, 1, 1}).proportional);
  // the printed (3) polynomial has the wrong sign on its s1 term
  const auto p3 = proportionality_check({3});
  CHECK_FALSE(p3.proportional);
  CHECK_FALSE(p3.detail.empty());
  PowerSumExpr fixed = reference_hermite_kappa({3});
  fixed += power_sum_monomial({1, 0, 0}, LaurentQ::monomial(2, Rational(-1)) + LaurentQ::monomial(1, Rational(-3)) +
                                              LaurentQ(Rational(-2)));
  const auto p3fixed = proportionality_check(hermite_kappa({3}), fixed);
  CHECK(p3fixed.proportional);
  CHECK(p3fixed.constant == Rational(-6));
  // as printed it is not orthogonal to H_(1) and reduces to x^3 + 3x at N = 1
  LaurentQ pairing = q(-1, 3);
  pairing += q(-3, 2);
  pairing += q(-2, 1);
  CHECK(gaussian_expectation(reference_hermite_kappa({3}) * hermite_kappa({1})) == pairing);
  for (double x : {-0.7, 1.1})
    CHECK(reference_hermite_kappa({3}).evaluate({x, x * x, x * x * x}, 1.0) ==
          doctest::Approx(x * x * x + 3 * x).epsilon(1e-12));
}

TEST_CASE("N = 1 reduces to the scalar Hermite polynomial") {
  // H_(3) at N = 1 is a multiple of He_3
  for (double x : {-1.2, 0.4, 2.5}) {
    const double v = hermite_kappa({3}).evaluate({x, x * x, x * x * x}, 1.0);
    CHECK(v == doctest::Approx(-6.0 * hermite_he(3, x)).epsilon(1e-12));
  }
}

TEST_CASE("matrix kernels") {
  const Kernel k = make_indicator_kernel(0.25);
  const MatrixKernel s = scalar_matrix_kernel(k, 2);
  const RectCovariance rc = rect_covariance(s);
  const Autocorrelation rho = autocorrelation(k);
  for (int m = -rc.half; m <= rc.half; ++m) {
    CHECK((rc.at(m) - rho.at_node(m) * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  const MatrixKernel r = random_matrix_kernel(3, 1.0, 0.25, 5);
  const RectCovariance rr = rect_covariance(r);
  CHECK((rr.at(0) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(rr.max_abs_eigenvalue() <= 1.0 + 1e-12);
  CHECK(rr.min_abs_eigenvalue() >= 0.0);
  for (int m = 1; m <= rr.half; ++m) CHECK((rr.at(m) - rr.at(-m).transpose()).cwiseAbs().maxCoeff() < 1e-12);
  std::vector<Eigen::MatrixXd> cells(8, Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS(make_matrix_kernel(1.0, 0.25, cells));
}

TEST_CASE("rectangular process covariance") {
  const MatrixKernel r = random_matrix_kernel(3, 1.0, 0.25, 6);
  const auto rep = rect_process_covariance_check(r, 2, 20000, 0.5, 0.0, 8);
  CHECK(rep.pass);
  CHECK(rep.max_z < 5.0);
  CHECK(rep.max_z_transposed > 5.0);
}
