#include <cmath>
#include <random>

#include "doctest.h"
#include "tracelimits/limit_constants.hpp"
#include "tracelimits/matrix_sim.hpp"
#include "tracelimits/pairings.hpp"
#include "tracelimits/trace_poly.hpp"

using namespace tracelimits;

namespace {

Matrix random_hermitian(int N, std::mt19937_64& g) {
  std::normal_distribution<double> z;
  Matrix A(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = {z(g), z(g)};
  return (A + A.adjoint()) / 2.0;
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// E Tr_alpha(W_1 D_1, ..., W_n D_n) by summing over every index assignment
// of the W entries: E W_i[a,b] W_j[c,d] = g_ij delta_ad delta_bc / N.
Matrix wick_oracle(const Permutation0& alpha, const GramMatrix& g, const std::vector<Matrix>& D) {
  const int n = alpha.n();
  const int N = static_cast<int>(D[0].rows());
  Matrix total = Matrix::Zero(N, N);
  std::vector<int> a(n), b(n);
  const long count = static_cast<long>(std::pow(N, 2 * n));
  for (long code = 0; code < count; ++code) {
    long c = code;
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<int>(c % N);
      c /= N;
      b[i] = static_cast<int>(c % N);
      c /= N;
    }
    double weight = 0.0;
    for_each_perfect_pairing(n, [&](const std::vector<int>& p) {
      double w = 1.0;
      for (int i = 1; i <= n && w != 0.0; ++i) {
        const int j = p[i];
        if (j < i) continue;
        if (a[i - 1] != b[j - 1] || b[i - 1] != a[j - 1]) w = 0.0;
        else w *= g(i - 1, j - 1) / N;
      }
      weight += w;
    });
    if (weight == 0.0) continue;
    std::vector<Matrix> args(n);
    for (int i = 0; i < n; ++i) {
      Matrix E = Matrix::Zero(N, N);
      E(a[i], b[i]) = 1.0;
      args[i] = E * D[i];
    }
    total += weight * eval_trace_monomial(alpha, args);
  }
  return total;
}

}  // namespace

TEST_CASE("trace monomial evaluation") {
  std::mt19937_64 g(1);
  const Matrix A = random_hermitian(3, g), B = random_hermitian(3, g);
  const Matrix I = Matrix::Identity(3, 3);
  CHECK(max_diff(eval_trace_monomial(Permutation0::full_cycle(2), {A, B}), A * B) < 1e-12);
  CHECK(max_diff(eval_trace_monomial(Permutation0::parse("(0)(12)", 2), {A, B}), (A * B).trace() * I) < 1e-12);
  CHECK(max_diff(eval_trace_monomial(Permutation0::identity(2), {I, I}), 9.0 * I) < 1e-12);
  CHECK(max_diff(eval_trace_monomial(Permutation0::parse("(021)", 2), {A, B}), B * A) < 1e-12);
}

TEST_CASE("low-order Hermite trace polynomials") {
  for (const auto& c : check_low_order_hermite()) {
    INFO("n = " << c.n << ", expected " << c.expected << ", computed " << c.computed);
    CHECK(c.match);
  }
  const auto h2 = hermite_trace_polynomial(2, Permutation0::full_cycle(2));
  std::mt19937_64 g(2);
  const Matrix M = random_hermitian(3, g);
  CHECK(max_diff(h2.evaluate(M, 0.7), M * M - 0.7 * Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("eval_hermite special values") {
  for (double x : {-1.3, 0.2, 2.0}) {
    const double t = 0.8;
    Matrix M(1, 1);
    M(0, 0) = x;
    CHECK(eval_hermite(Permutation0::full_cycle(3), M, t)(0, 0).real() ==
          doctest::Approx(-(x * x * x - 3 * t * x)).epsilon(1e-12));
  }
  const Matrix Z = Matrix::Zero(3, 3);
  CHECK(max_diff(eval_hermite(Permutation0::full_cycle(2), Z, 1.0), -Matrix::Identity(3, 3)) < 1e-12);
  // M^4 - 3uM^2 - 2uM tr M - u tr M^2 + (2+N^-2)u^2 at M = Id, N = 2, u = 1
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(max_diff(eval_hermite(Permutation0::full_cycle(4), I, 1.0), -2.75 * I) < 1e-12);
}

TEST_CASE("compiled polynomial agrees with direct evaluation") {
  std::mt19937_64 g(3);
  for (int n = 1; n <= 5; ++n) {
    const auto poly = hermite_trace_polynomial(n, Permutation0::full_cycle(n));
    const Matrix M = random_hermitian(3, g);
    CompiledTracePolynomial compiled(poly, 1.3, 3);
    CHECK(max_diff(compiled(M), poly.evaluate(M, 1.3)) < 1e-9);
  }
}

TEST_CASE("mixed moment examples") {
  const GramMatrix g1 = GramMatrix::Identity(3, 3);
  const std::vector<Matrix> D3(3, Matrix::Identity(2, 2));
  CHECK(mixed_moment(Permutation0::full_cycle(3), GramMatrix::Ones(3, 3), D3).cwiseAbs().maxCoeff() == 0.0);
  for (int N : {1, 2, 3, 5}) {
    const std::vector<Matrix> D(4, Matrix::Identity(N, N));
    const Matrix m = mixed_moment(Permutation0::parse("(0)(1234)", 4), GramMatrix::Ones(4, 4), D);
    CHECK(m(0, 0).real() == doctest::Approx(N * (2.0 + 1.0 / (N * N))).epsilon(1e-12));
    CHECK(max_diff(m, m(0, 0) * Matrix::Identity(N, N)) < 1e-12);
  }
  (void)g1;
}

TEST_CASE("mixed moment matches an index-level Wick sum") {
  std::mt19937_64 g(4);
  std::normal_distribution<double> z;
  for (const char* text : {"(01234)", "(0)(1234)", "(0 2)(1 3 4)", "(0)(12)(34)", "(0 1 2 3 4)"}) {
    const auto alpha = Permutation0::parse(text, 4);
    Eigen::MatrixXd h(4, 3);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) h(i, j) = z(g);
    const GramMatrix gram = h * h.transpose();
    std::vector<Matrix> D;
    for (int i = 0; i < 4; ++i) D.push_back(random_hermitian(2, g));
    INFO("alpha = " << text);
    CHECK(max_diff(mixed_moment(alpha, gram, D), wick_oracle(alpha, gram, D)) < 1e-10);
  }
}

TEST_CASE("product moment") {
  for (int n = 1; n <= 4; ++n) CHECK(product_moment(n, 1).terms().empty());
  const auto p22 = product_moment(2, 2).single_parameter();
  REQUIRE(p22.size() == 1);
  CHECK(p22.at(2).to_string() == "1+N^-2");
  const auto p32 = product_moment(3, 2).single_parameter();
  REQUIRE(p32.size() == 1);
  CHECK(p32.at(3).to_string() == "1+5*N^-2");
  // k = 2 coefficient equals the block-complete moment constant
  for (int n = 1; n <= 4; ++n) CHECK(product_moment(n, 2).single_parameter().at(n) == moment_constant(2, n));
  CHECK(product_moment(3, 3).terms().empty());
}

TEST_CASE("product moment agrees with Monte Carlo") {
  // E tr(H(W1) H(W2)) with <h1,h2> = r at N = 2
  const int N = 2;
  const double r = 0.6;
  GramMatrix gram(2, 2);
  gram << 1, r, r, 1;
  const double exact = product_moment(2, 2, gram, N);
  NormalStream rng(11);
  RunningStats s;
  const Permutation0 a2 = Permutation0::full_cycle(2);
  for (int i = 0; i < 100000; ++i) {
    std::vector<double> c1(4), c2(4);
    for (int c = 0; c < 4; ++c) {
      const double sd = channel_sd(N, c, 1.0);
      c1[c] = sd * rng();
      c2[c] = r * c1[c] + std::sqrt(1 - r * r) * sd * rng();
    }
    const Matrix W1 = assemble_hermitian(N, c1.data()), W2 = assemble_hermitian(N, c2.data());
    s.add((eval_hermite(a2, W1, 1.0) * eval_hermite(a2, W2, 1.0)).trace().real() / N);
  }
  CHECK(std::abs(s.mean() - exact) < 5 * s.stderr_mean());
  CHECK(exact == doctest::Approx(r * r * 1.25));
}

TEST_CASE("gram validation") {
  CHECK_THROWS(validate_gram(GramMatrix::Ones(2, 3)));
  GramMatrix asym(2, 2);
  asym << 1, 0.2, 0.1, 1;
  CHECK_THROWS(validate_gram(asym));
}
