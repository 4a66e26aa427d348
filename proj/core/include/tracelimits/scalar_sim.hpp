#pragma once

#include <cstdint>
#include <vector>

#include "tracelimits/kernel.hpp"
#include "tracelimits/stats.hpp"

namespace tracelimits {

// Brownian increments on the grid i*dt, i in [i_min, i_max); W(0) = 0.
struct ScalarPath {
  double dt = 0.0;
  long i_min = 0;
  long i_max = 0;
  std::vector<double> increments;
  std::uint64_t seed = 0;

  double t_min() const { return static_cast<double>(i_min) * dt; }
  double t_max() const { return static_cast<double>(i_max) * dt; }
  // W(i*dt) for i in [i_min, i_max].
  std::vector<double> grid_values() const;
};

// Values X(j*dt) for j in [j_min, j_max].
struct SmoothedPath {
  double dt = 0.0;
  long j_min = 0;
  long j_max = 0;
  std::vector<double> values;

  double at(long j) const { return values[static_cast<std::size_t>(j - j_min)]; }
  bool covers(long a, long b) const { return j_min <= a && b <= j_max; }
};

// Kernel discretised against Brownian increments. Output j sees
// sum_r weight_r * (W((j + end_r) dt) - W((j + begin_r) dt)).
struct StepFilter {
  struct Run {
    int begin;
    int end;
    double weight;
  };
  std::vector<Run> runs;
  int min_offset = 0;
  int max_offset = 0;
  bool exact = false;  // kernel cells align with the simulation grid
};
StepFilter make_step_filter(const Kernel& k, double eps, double dt);

struct HermiteCoeffs {
  std::vector<double> c;  // c[q] multiplies He_q

  int degree() const { return static_cast<int>(c.size()) - 1; }
  int rank() const;  // smallest q with c_q != 0, -1 for the zero function
};

// Probabilists' Hermite polynomial He_q via He_{q+1} = x He_q - q He_{q-1}.
double hermite_he(int q, double x);
double eval_hermite_series(const HermiteCoeffs& F, double x);
HermiteCoeffs single_hermite(int q);

ScalarPath simulate_bilateral_bm(double t_min, double t_max, double dt, std::uint64_t seed);
SmoothedPath mollify(const ScalarPath& path, const Kernel& k, double eps);
// Same convolution applied to the prefix sums of an arbitrary increment array.
SmoothedPath apply_filter(const StepFilter& f, double dt, long i_min, const std::vector<double>& increments);

double occupation_moment(const SmoothedPath& smoothed, int k);
double fluctuation_statistic(const ScalarPath& path, const Kernel& k, double eps, const HermiteCoeffs& F);
// eps^{-1/2} int_0^1 F(X(s)) ds for an already smoothed path.
double fluctuation_statistic(const SmoothedPath& smoothed, double eps, const HermiteCoeffs& F);
double sigma_W_squared(const HermiteCoeffs& F, const Autocorrelation& rho);

// Limit variance of eps^{-1} int_0^1 X(s) ds for a kernel with zero mass;
// the two boundary layers at 0 and 1 each contribute int P^2.
double boundary_variance(const Kernel& k);

// Trapezoid rule over the grid points of [0, 1].
double integrate_unit_interval(const SmoothedPath& smoothed, const std::vector<double>& f_values);

// Path covering the kernel window around [0, 1] at scale eps.
ScalarPath simulate_for_unit_interval(const Kernel& k, double eps, double dt, std::uint64_t seed);

}  // namespace tracelimits
