#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tracelimits/laurent.hpp"
#include "tracelimits/permutation.hpp"

namespace tracelimits {

using Matrix = Eigen::MatrixXcd;

// Polynomial in u whose coefficients are Laurent polynomials in N.
class UNCoefficient {
 public:
  UNCoefficient() = default;
  static UNCoefficient term(int u_power, const LaurentN& c);

  void add(int u_power, const LaurentN& c);
  UNCoefficient& operator+=(const UNCoefficient& o);
  bool is_zero() const { return terms_.empty(); }
  const std::map<int, LaurentN>& terms() const { return terms_; }
  double evaluate(double u, double N) const;
  // Substitutes u = N^shift, e.g. shift 1 for u = N.
  LaurentN at_u_power_of_N(int shift) const;
  std::string to_string() const;
  bool operator==(const UNCoefficient&) const = default;

 private:
  std::map<int, LaurentN> terms_;
};

// Arguments follow the cycle traversal starting at 0: the 0-cycle
// (0 i1 ... ip) gives A_{i1} ... A_{ip}, other cycles give scalar traces.
Matrix eval_trace_monomial(const Permutation0& beta, const std::vector<Matrix>& args);

// Representative of beta's class when every argument is the same matrix:
// (0 1 ... p)(p+1 ... ) with the remaining cycle lengths in decreasing order.
Permutation0 canonical_equal_argument_form(const Permutation0& beta);

// "M^2", "M Tr M", "(Tr M)^2", "1", ...
std::string trace_monomial_string(const Permutation0& beta, const std::string& symbol = "M");

class TracePolynomial {
 public:
  void add(const Permutation0& beta, const UNCoefficient& c);
  const std::map<Permutation0, UNCoefficient>& terms() const { return terms_; }
  bool operator==(const TracePolynomial&) const = default;

  // All arguments equal to M; u and N = M.rows() fixed numerically.
  Matrix evaluate(const Matrix& M, double u) const;
  std::string to_string(const std::string& symbol = "M") const;

 private:
  std::map<Permutation0, UNCoefficient> terms_;
};

// Sum over partitions into singletons and pairs of (-1)^(n-l) N^(-a) u^l Tr_beta,
// merged by equal-argument class.
TracePolynomial hermite_trace_polynomial(int n, const Permutation0& alpha);
Matrix eval_hermite(const Permutation0& alpha, const Matrix& M, double u);

// Precomputed numeric form for repeated evaluation at fixed (u, N). Keeps
// scratch matrices, so use one instance per thread.
class CompiledTracePolynomial {
 public:
  CompiledTracePolynomial(const TracePolynomial& poly, double u, int N);
  Matrix operator()(const Matrix& M) const;
  int degree() const { return degree_; }

 private:
  mutable std::vector<Matrix> powers_;
  mutable std::vector<std::complex<double>> traces_;

  struct Term {
    int matrix_power;
    std::vector<int> trace_powers;
    double coefficient;
  };
  std::vector<Term> terms_;
  int degree_ = 0;
  int N_;
};

using GramMatrix = Eigen::MatrixXd;
void validate_gram(const GramMatrix& g);

// E Tr_alpha(W(h_1) D_1, ..., W(h_n) D_n) for W(h) ~ GUE with E|W_ij|^2 = |h|^2 / N.
Matrix mixed_moment(const Permutation0& alpha, const GramMatrix& gram, const std::vector<Matrix>& D);

// Coefficient of the identity in E(H_{alpha_n}(W(h_1)) ... H_{alpha_n}(W(h_k))),
// kept symbolic in the Gram entries: key = exponents of <h_i,h_j> for i < j.
class GramPolynomial {
 public:
  GramPolynomial(int k) : k_(k) {}
  int k() const { return k_; }
  void add(const std::vector<int>& exponents, const LaurentN& c);
  const std::map<std::vector<int>, LaurentN>& terms() const { return terms_; }
  double evaluate(const GramMatrix& gram, double N) const;
  // All off-diagonal inner products equal to r: r-power -> coefficient.
  std::map<int, LaurentN> single_parameter() const;
  std::string to_string() const;

 private:
  int k_;
  std::map<std::vector<int>, LaurentN> terms_;
};

GramPolynomial product_moment(int n, int k);
double product_moment(int n, int k, const GramMatrix& gram, double N);

struct HermiteCheck {
  int n = 0;
  std::string expected;
  std::string computed;
  bool match = false;
};
// Compares the expansions for alpha_n, n = 1..4, with the closed forms.
std::vector<HermiteCheck> check_low_order_hermite();
TracePolynomial expected_low_order_hermite(int n);

}  // namespace tracelimits
