#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tracelimits/kernel.hpp"
#include "tracelimits/laurent.hpp"
#include "tracelimits/permutation.hpp"
#include "tracelimits/rng.hpp"
#include "tracelimits/stats.hpp"

namespace tracelimits {

using IntPartition = std::vector<int>;  // weakly decreasing parts
std::string to_string(const IntPartition& p);
IntPartition parse_partition(const std::string& text);  // "2,1" or "(2,1)"
std::vector<IntPartition> partitions_of(int n);
IntPartition cycle_type(const Permutation0& sigma_hat);  // ignores the 0-cycle

// Irreducible characters of S(n), n <= 3, by cycle type.
class CharacterTable {
 public:
  explicit CharacterTable(int n);
  int n() const { return n_; }
  const std::vector<IntPartition>& irreps() const { return irreps_; }
  const std::vector<IntPartition>& classes() const { return classes_; }
  int value(const IntPartition& kappa, const IntPartition& cls) const;
  // sum over all sigma in S(n) of chi^kappa(sigma) chi^lambda(sigma)
  int inner_product(const IntPartition& kappa, const IntPartition& lambda) const;

 private:
  int n_;
  std::vector<IntPartition> irreps_;
  std::vector<IntPartition> classes_;
  std::vector<std::vector<int>> chi_;
};

// Linear combination of s1^v1 s2^v2 s3^v3 (s_i = Tr X^i) with coefficients
// Laurent polynomials in N over the rationals.
class PowerSumExpr {
 public:
  using Key = std::vector<int>;  // exponents of s1, s2, s3

  void add(const Key& nu, const LaurentQ& c);
  const std::map<Key, LaurentQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max of sum_i i * nu_i

  PowerSumExpr& operator+=(const PowerSumExpr& o);
  friend PowerSumExpr operator*(const PowerSumExpr& a, const PowerSumExpr& b);
  friend PowerSumExpr operator*(const Rational& c, const PowerSumExpr& a);
  bool operator==(const PowerSumExpr&) const = default;

  double evaluate(const std::vector<double>& s, double N) const;  // s[0] = s1
  double evaluate(const Eigen::MatrixXcd& X) const;
  std::string to_string() const;

 private:
  std::map<Key, LaurentQ> terms_;
};

PowerSumExpr power_sum_monomial(const PowerSumExpr::Key& nu, const LaurentQ& c = LaurentQ(Rational(1)));

PowerSumExpr hermite_tilde_sigma_hat(const Permutation0& sigma_hat);
PowerSumExpr hermite_kappa(const IntPartition& kappa);
// The explicit polynomials of the complex (alpha = 1) zonal family as printed
// in the literature, transcribed without correction.
PowerSumExpr reference_hermite_kappa(const IntPartition& kappa);

struct Proportionality {
  bool proportional = false;
  Rational constant{0};
  std::string detail;
};
Proportionality proportionality_check(const PowerSumExpr& p, const PowerSumExpr& q);
Proportionality proportionality_check(const IntPartition& kappa);

// Exact E[p(X)] for Hermitian X with density proportional to exp(-Tr X^2 / 2),
// by Wick's formula over the letters of each monomial.
LaurentQ gaussian_expectation(const PowerSumExpr& p);

Eigen::MatrixXcd sample_gaussian_hermitian(int N, NormalStream& rng);
MCEstimate mc_orthogonality(const IntPartition& kappa, const IntPartition& lambda, int N, std::size_t samples,
                            std::uint64_t seed);

// Phi on cells [-a + j h, -a + (j+1) h), each an N x N matrix, with
// integral Phi^T Phi = Id.
class MatrixKernel {
 public:
  MatrixKernel(double support_halfwidth, double step, std::vector<Eigen::MatrixXd> cells);
  double support_halfwidth() const { return a_; }
  double step() const { return h_; }
  int N() const { return N_; }
  const std::vector<Eigen::MatrixXd>& cells() const { return cells_; }

 private:
  double a_;
  double h_;
  int N_;
  std::vector<Eigen::MatrixXd> cells_;
};

// Renormalizes by (int Phi^T Phi)^{-1/2} when within 1% of Id, otherwise throws.
MatrixKernel make_matrix_kernel(double support_halfwidth, double step, std::vector<Eigen::MatrixXd> cells);
MatrixKernel random_matrix_kernel(int N, double support_halfwidth, double step, std::uint64_t seed);
MatrixKernel scalar_matrix_kernel(const Kernel& k, int N);

// R(t) = int Phi(s)^T Phi(t + s) ds on the lag grid, and (R R^T)^{1/2}.
struct RectCovariance {
  double step = 0.0;
  int half = 0;
  std::vector<Eigen::MatrixXd> R;
  std::vector<Eigen::MatrixXd> R_abs;
  const Eigen::MatrixXd& at(int m) const { return R[static_cast<std::size_t>(m + half)]; }
  const Eigen::MatrixXd& abs_at(int m) const { return R_abs[static_cast<std::size_t>(m + half)]; }
  double max_abs_eigenvalue() const;
  double min_abs_eigenvalue() const;
};
RectCovariance rect_covariance(const MatrixKernel& phi);

struct RectCovarianceReport {
  double t1 = 0.0;
  double t2 = 0.0;
  std::size_t samples = 0;
  double max_z = 0.0;             // against delta_ir R(t1 - t2)_{js}
  double max_z_transposed = 0.0;  // against delta_ir R(t2 - t1)_{js}
  bool pass = false;
};
// X(t) = int dW(s) Phi(t - s) for an ell x N Brownian sheet W; t1, t2 on the
// kernel grid. Compares E X(t2)_ij X(t1)_rs entrywise.
RectCovarianceReport rect_process_covariance_check(const MatrixKernel& phi, int ell, std::size_t samples, double t1,
                                                   double t2, std::uint64_t seed, double z_tol = 5.0);

}  // namespace tracelimits
