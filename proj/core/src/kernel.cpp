#include "tracelimits/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace tracelimits {
namespace {

constexpr double kGridTol = 1e-9;

int grid_count(double length, double step, const char* what) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument(std::string(what) + ": step must be positive");
  const double ratio = length / step;
  const double r = std::round(ratio);
  if (r < 1.0 || std::abs(ratio - r) > kGridTol * std::max(1.0, r)) {
    throw std::invalid_argument(std::string(what) + ": invalid grid, step " + std::to_string(step) +
                                " does not divide " + std::to_string(length));
  }
  return static_cast<int>(r);
}

}  // namespace

Kernel::Kernel(double support_halfwidth, double step, std::vector<double> values)
    : a_(support_halfwidth), h_(step), values_(std::move(values)) {
  if (!(a_ > 0.0)) throw std::invalid_argument("Kernel: support_halfwidth must be positive");
  const int cells = grid_count(2.0 * a_, h_, "Kernel");
  if (static_cast<int>(values_.size()) != cells) {
    throw std::invalid_argument("Kernel: expected " + std::to_string(cells) + " values, got " +
                                std::to_string(values_.size()));
  }
  if (std::abs(l2_norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("Kernel: L2 norm is not 1");
}

double Kernel::operator()(double s) const {
  if (s < -a_ || s >= a_) return 0.0;
  auto j = static_cast<std::size_t>(std::floor((s + a_) / h_));
  if (j >= values_.size()) j = values_.size() - 1;
  return values_[j];
}

double Kernel::l2_norm_squared() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s * h_;
}

Autocorrelation::Autocorrelation(double step, std::vector<double> values)
    : h_(step), half_(static_cast<int>(values.size() / 2)), values_(std::move(values)) {
  if (values_.size() % 2 != 1) throw std::invalid_argument("Autocorrelation: need an odd number of nodes");
}

double Autocorrelation::at_node(int m) const {
  if (m < -half_ || m > half_) return 0.0;
  return values_[static_cast<std::size_t>(m + half_)];
}

double Autocorrelation::operator()(double u) const {
  const double x = u / h_;
  const double fl = std::floor(x);
  const int m = static_cast<int>(fl);
  const double w = x - fl;
  return (1.0 - w) * at_node(m) + w * at_node(m + 1);
}

Kernel make_indicator_kernel(double step) {
  const int per_unit = grid_count(1.0, step, "make_indicator_kernel");
  std::vector<double> v(2 * per_unit, 0.0);
  for (int j = 0; j < per_unit; ++j) v[j] = 1.0;
  return Kernel(1.0, step, std::move(v));
}

Kernel make_difference_kernel(double step) {
  const int per_unit = grid_count(1.0, step, "make_difference_kernel");
  std::vector<double> v(2 * per_unit);
  const double c = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < per_unit; ++j) {
    v[j] = c;
    v[per_unit + j] = -c;
  }
  return Kernel(1.0, step, std::move(v));
}

Kernel make_kernel(double support_halfwidth, double step, std::vector<double> values) {
  double s = 0.0;
  for (double v : values) s += v * v;
  s *= step;
  if (!(s > 0.0) || std::abs(std::sqrt(s) - 1.0) > 0.01) {
    throw std::invalid_argument("make_kernel: L2 norm " + std::to_string(std::sqrt(s)) +
                                " is not within 1% of 1");
  }
  const double scale = 1.0 / std::sqrt(s);
  for (double& v : values) v *= scale;
  return Kernel(support_halfwidth, step, std::move(values));
}

Kernel kernel_from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text);
  return make_kernel(j.at("support_halfwidth").get<double>(), j.at("step").get<double>(),
                     j.at("values").get<std::vector<double>>());
}

Autocorrelation autocorrelation(const Kernel& k) {
  const auto& v = k.values();
  const int n = static_cast<int>(v.size());
  std::vector<double> rho(2 * n + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    double s = 0.0;
    for (int j = 0; j + m < n; ++j) s += v[j + m] * v[j];
    s *= k.step();
    rho[n + m] = s;
    rho[n - m] = s;
  }
  return Autocorrelation(k.step(), std::move(rho));
}

double sigma_q_squared(const Autocorrelation& rho, int q) {
  if (q < 1) throw std::invalid_argument("sigma_q_squared: q must be at least 1");
  // rho is exactly linear on each cell, so integrate the polynomial rho^q in
  // closed form: h * sum_{i=0}^{q} x^i y^{q-i} / (q+1).
  double total = 0.0;
  for (int m = 0; m < rho.half_count(); ++m) {
    const double x = rho.at_node(m);
    const double y = rho.at_node(m + 1);
    double acc = 0.0;
    double xp = 1.0;
    for (int i = 0; i <= q; ++i) {
      acc += xp * std::pow(y, q - i);
      xp *= x;
    }
    total += acc / (q + 1);
  }
  return 2.0 * total * rho.step();
}

}  // namespace tracelimits
