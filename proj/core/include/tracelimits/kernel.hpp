#pragma once

#include <string_view>
#include <vector>

namespace tracelimits {

// Piecewise-constant kernel: values[j] holds phi on [-a + j h, -a + (j+1) h).
class Kernel {
 public:
  Kernel(double support_halfwidth, double step, std::vector<double> values);

  double support_halfwidth() const { return a_; }
  double step() const { return h_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t cells() const { return values_.size(); }

  double operator()(double s) const;
  double l2_norm_squared() const;

 private:
  double a_;
  double h_;
  std::vector<double> values_;
};

// rho(m h) for m in [-2a/h, 2a/h]. rho is linear between grid nodes because
// phi is piecewise constant on the same grid.
class Autocorrelation {
 public:
  Autocorrelation(double step, std::vector<double> values);

  double step() const { return h_; }
  int half_count() const { return half_; }
  double support() const { return half_ * h_; }
  const std::vector<double>& values() const { return values_; }
  double at_node(int m) const;
  double operator()(double u) const;

 private:
  double h_;
  int half_;
  std::vector<double> values_;
};

Kernel make_indicator_kernel(double step);
Kernel make_difference_kernel(double step);
// Renormalizes to unit L2 norm when within 1% of it, otherwise throws.
Kernel make_kernel(double support_halfwidth, double step, std::vector<double> values);
Kernel kernel_from_json(std::string_view json_text);

Autocorrelation autocorrelation(const Kernel& k);

// 2 * integral_0^{2a} rho(t)^q dt.
double sigma_q_squared(const Autocorrelation& rho, int q);

}  // namespace tracelimits
