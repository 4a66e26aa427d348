#include "tracelimits/scalar_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tracelimits/rng.hpp"

namespace tracelimits {
namespace {

constexpr double kAlignTol = 1e-9;

bool is_integer_ratio(double x, double y) {
  const double r = x / y;
  return std::round(r) >= 1.0 && std::abs(r - std::round(r)) < kAlignTol * std::max(1.0, r);
}

long unit_steps(double dt) {
  const double r = 1.0 / dt;
  const double rr = std::round(r);
  if (rr < 1.0 || std::abs(r - rr) > kAlignTol * rr) {
    throw std::invalid_argument("dt = " + std::to_string(dt) + " does not divide [0, 1]");
  }
  return static_cast<long>(rr);
}

}  // namespace

std::vector<double> ScalarPath::grid_values() const {
  std::vector<double> w(increments.size() + 1);
  // prefix from i_min, then shift so that W(0) = 0
  w[0] = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) w[i + 1] = w[i] + increments[i];
  if (i_min <= 0 && 0 <= i_max) {
    const double w0 = w[static_cast<std::size_t>(-i_min)];
    for (double& x : w) x -= w0;
  }
  return w;
}

StepFilter make_step_filter(const Kernel& k, double eps, double dt) {
  if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("mollify: dt must be positive");
  const double a = k.support_halfwidth();
  const double cell = eps * k.step();
  StepFilter f;
  f.exact = is_integer_ratio(cell, dt) && is_integer_ratio(eps * a, dt);
  if (!f.exact && dt > cell * (1.0 + kAlignTol)) {
    throw std::invalid_argument("mollify: dt = " + std::to_string(dt) + " exceeds eps * kernel step = " +
                                std::to_string(cell) + " and the grids do not align");
  }
  const int reach = static_cast<int>(std::ceil(eps * a / dt)) + 1;
  std::vector<double> w(2 * reach + 1);
  double norm = 0.0;
  for (int m = -reach; m <= reach; ++m) {
    // increment m covers [(j+m) dt, (j+m+1) dt); evaluate phi at its midpoint
    const double x = -(m + 0.5) * dt / eps;
    const double v = k(x);
    w[m + reach] = v;
    norm += v * v;
  }
  norm *= dt;
  if (!(norm > 0.0)) throw std::invalid_argument("mollify: kernel vanishes on the simulation grid");
  const double scale = 1.0 / std::sqrt(norm);
  bool have = false;
  for (int m = -reach; m <= reach; ++m) {
    const double v = w[m + reach];
    if (v == 0.0) continue;
    if (!f.runs.empty() && f.runs.back().end == m && f.runs.back().weight == v * scale) {
      f.runs.back().end = m + 1;
    } else {
      f.runs.push_back({m, m + 1, v * scale});
    }
    if (!have) {
      f.min_offset = m;
      have = true;
    }
    f.max_offset = m + 1;
  }
  return f;
}

int HermiteCoeffs::rank() const {
  for (std::size_t q = 0; q < c.size(); ++q)
    if (c[q] != 0.0) return static_cast<int>(q);
  return -1;
}

double hermite_he(int q, double x) {
  if (q < 0) throw std::invalid_argument("hermite_he: negative degree");
  if (q == 0) return 1.0;
  double h0 = 1.0, h1 = x;
  for (int j = 1; j < q; ++j) {
    const double h2 = x * h1 - j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double eval_hermite_series(const HermiteCoeffs& F, double x) {
  double s = F.c.empty() ? 0.0 : F.c[0];
  double h0 = 1.0, h1 = x;
  for (std::size_t q = 1; q < F.c.size(); ++q) {
    s += F.c[q] * h1;
    const double h2 = x * h1 - static_cast<double>(q) * h0;
    h0 = h1;
    h1 = h2;
  }
  return s;
}

HermiteCoeffs single_hermite(int q) {
  HermiteCoeffs F;
  F.c.assign(static_cast<std::size_t>(q + 1), 0.0);
  F.c[static_cast<std::size_t>(q)] = 1.0;
  return F;
}

ScalarPath simulate_bilateral_bm(double t_min, double t_max, double dt, std::uint64_t seed) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_bilateral_bm: dt must be positive");
  if (!(t_min < 0.0 && 0.0 <= t_max)) throw std::invalid_argument("simulate_bilateral_bm: need t_min < 0 <= t_max");
  ScalarPath p;
  p.dt = dt;
  p.seed = seed;
  p.i_min = static_cast<long>(std::floor(t_min / dt + kAlignTol));
  p.i_max = static_cast<long>(std::ceil(t_max / dt - kAlignTol));
  p.increments.resize(static_cast<std::size_t>(p.i_max - p.i_min));
  NormalStream rng(seed);
  const double sd = std::sqrt(dt);
  for (double& x : p.increments) x = sd * rng();
  return p;
}

SmoothedPath apply_filter(const StepFilter& f, double dt, long i_min, const std::vector<double>& increments) {
  std::vector<double> B(increments.size() + 1);
  B[0] = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) B[i + 1] = B[i] + increments[i];
  const long i_max = i_min + static_cast<long>(increments.size());
  SmoothedPath s;
  s.dt = dt;
  s.j_min = i_min - f.min_offset;
  s.j_max = i_max - f.max_offset;
  if (s.j_max < s.j_min) throw std::invalid_argument("mollify: path too short for the kernel support at this eps");
  s.values.resize(static_cast<std::size_t>(s.j_max - s.j_min + 1));
  for (long j = s.j_min; j <= s.j_max; ++j) {
    double v = 0.0;
    const long base = j - i_min;
    for (const auto& r : f.runs) v += r.weight * (B[base + r.end] - B[base + r.begin]);
    s.values[static_cast<std::size_t>(j - s.j_min)] = v;
  }
  return s;
}

SmoothedPath mollify(const ScalarPath& path, const Kernel& k, double eps) {
  if (eps * k.support_halfwidth() > -path.t_min() + kAlignTol) {
    throw std::invalid_argument("mollify: path starts at " + std::to_string(path.t_min()) +
                                ", too short for support " + std::to_string(eps * k.support_halfwidth()));
  }
  return apply_filter(make_step_filter(k, eps, path.dt), path.dt, path.i_min, path.increments);
}

double integrate_unit_interval(const SmoothedPath& smoothed, const std::vector<double>& f_values) {
  const long J = unit_steps(smoothed.dt);
  if (!smoothed.covers(0, J)) throw std::invalid_argument("smoothed path does not cover [0, 1]");
  const long off = -smoothed.j_min;
  double s = 0.5 * (f_values[off] + f_values[off + J]);
  for (long j = 1; j < J; ++j) s += f_values[off + j];
  return s * smoothed.dt;
}

double occupation_moment(const SmoothedPath& smoothed, int k) {
  if (k < 1 || k > 12) throw std::invalid_argument("occupation_moment: k must be in [1, 12], got " + std::to_string(k));
  std::vector<double> f(smoothed.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(smoothed.values[i], k);
  return integrate_unit_interval(smoothed, f);
}

double fluctuation_statistic(const SmoothedPath& smoothed, double eps, const HermiteCoeffs& F) {
  if (F.c.empty() || F.c[0] != 0.0) throw std::invalid_argument("fluctuation_statistic: F is not centered (c0 != 0)");
  if (F.rank() < 1) throw std::invalid_argument("fluctuation_statistic: F has no nonzero coefficient");
  std::vector<double> f(smoothed.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = eval_hermite_series(F, smoothed.values[i]);
  return integrate_unit_interval(smoothed, f) / std::sqrt(eps);
}

double fluctuation_statistic(const ScalarPath& path, const Kernel& k, double eps, const HermiteCoeffs& F) {
  return fluctuation_statistic(mollify(path, k, eps), eps, F);
}

double sigma_W_squared(const HermiteCoeffs& F, const Autocorrelation& rho) {
  if (F.degree() > 12) throw std::invalid_argument("sigma_W_squared: degree must be <= 12");
  if (!F.c.empty() && F.c[0] != 0.0) throw std::invalid_argument("sigma_W_squared: F is not centered (c0 != 0)");
  double s = 0.0, fact = 1.0;
  for (int q = 1; q <= F.degree(); ++q) {
    fact *= q;
    if (F.c[q] != 0.0) s += fact * F.c[q] * F.c[q] * sigma_q_squared(rho, q);
  }
  return s;
}

ScalarPath simulate_for_unit_interval(const Kernel& k, double eps, double dt, std::uint64_t seed) {
  const double reach = eps * k.support_halfwidth() + 2.0 * dt;
  return simulate_bilateral_bm(-reach, 1.0 + reach, dt, seed);
}

double boundary_variance(const Kernel& k) {
  const auto& v = k.values();
  const double h = k.step();
  double mass = 0.0;
  for (double x : v) mass += x * h;
  if (std::abs(mass) > 1e-9) throw std::invalid_argument("boundary_variance: kernel has nonzero mass");
  // P(x) = int_{-a}^x phi is piecewise linear; integrate P^2 and (mass - P)^2 = P^2 exactly
  double total = 0.0;
  double p0 = 0.0;
  for (double x : v) {
    const double p1 = p0 + x * h;
    total += h * (p0 * p0 + p0 * p1 + p1 * p1) / 3.0;
    p0 = p1;
  }
  return 2.0 * total;
}

}  // namespace tracelimits
