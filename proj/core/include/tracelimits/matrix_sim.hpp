#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tracelimits/kernel.hpp"
#include "tracelimits/laurent.hpp"
#include "tracelimits/rng.hpp"
#include "tracelimits/scalar_sim.hpp"
#include "tracelimits/stats.hpp"
#include "tracelimits/trace_poly.hpp"

namespace tracelimits {

// Real channels of an N x N Hermitian matrix: N diagonal entries, then the
// real and imaginary parts of each (i < j) entry, row by row.
int hermitian_channels(int N);
Matrix assemble_hermitian(int N, const double* channels);
// Standard deviation of channel c for E|W_ij|^2 = var / N.
double channel_sd(int N, int c, double var);

// Hermitian Brownian increments, time-major: increments[step * N^2 + channel].
struct HermitianPath {
  int N = 1;
  double dt = 0.0;
  long i_min = 0;
  long i_max = 0;
  std::vector<double> increments;
  std::uint64_t seed = 0;

  double t_min() const { return static_cast<double>(i_min) * dt; }
  double t_max() const { return static_cast<double>(i_max) * dt; }
  long steps() const { return i_max - i_min; }
  Matrix increment(long step) const;
  // W(i dt) with W(0) = 0.
  Matrix value_at(long i) const;
};

// Mollified values X(j dt), j in [j_min, j_max], stored by channel.
struct HermitianSmoothedPath {
  int N = 1;
  double dt = 0.0;
  long j_min = 0;
  long j_max = 0;
  std::vector<double> values;

  Matrix at(long j) const;
  bool covers(long a, long b) const { return j_min <= a && b <= j_max; }
};

struct SpectralMoments {
  std::vector<double> m;  // m[k] = tr M^k, normalized trace
};
SpectralMoments spectral_moments(const Matrix& M, int k_max);

HermitianPath simulate_hermitian_bm(int N, double t_min, double t_max, double dt, std::uint64_t seed);
HermitianSmoothedPath mollify_matrix(const HermitianPath& path, const Kernel& k, double eps);
// Path covering the kernel window around [0, 1] at scale eps.
HermitianPath simulate_hermitian_for_unit_interval(int N, const Kernel& k, double eps, double dt, std::uint64_t seed);

// Generates X(j dt) for j = j_start, j_start + 1, ... without storing the
// path. Draws normals in the same order as simulate_hermitian_bm, so a
// stream started at the same first increment reproduces mollify_matrix.
class HermitianMollifiedStream {
 public:
  HermitianMollifiedStream(int N, const Kernel& k, double eps, double dt, std::uint64_t seed, long j_start);
  long next_index() const { return j_; }
  long first_increment() const { return j_start_ + filter_.min_offset; }
  const Matrix& next();

 private:
  void draw_step();

  int N_;
  int C_;
  double dt_;
  StepFilter filter_;
  NormalStream rng_;
  std::vector<double> sd_;
  long j_start_;
  long j_;
  int window_;
  std::vector<double> ring_;  // prefix sums, window_ rows of C_ channels
  long ring_first_;           // grid index held by the oldest row
  long ring_count_ = 0;
  std::vector<double> buf_;
  Matrix current_;
};

Matrix matrix_lln_estimate(const HermitianSmoothedPath& smoothed, int power);
Matrix matrix_lln_estimate(const HermitianPath& path, const Kernel& k, double eps, int power);
// E M^k for GUE with E|M_ij|^2 = 1/N, as the scalar multiple of the identity.
LaurentN gue_moment_exact(int k);
double gue_moment_exact(int k, int N);

struct MartingaleReport {
  std::vector<double> times;
  std::vector<MCEstimate> trace_mean;       // E Tr M(t)
  std::vector<double> max_entry_z;          // max |mean / se| over entries of M(t)
  std::vector<MCEstimate> increment_cross;  // E[Tr(M(t) - M(s)) Tr M(s)] for consecutive times
  bool pass = false;
};
// M(t) = W(t)^3 - t (2 W(t) + tr W(t) I) sampled at the given times.
MartingaleReport martingale_diagnostics(int N, const std::vector<double>& times, std::size_t replicates,
                                        std::uint64_t seed, double z_tol = 5.0);

// T^{-1/2} int_0^T H_{alpha_n}(X_s) ds with X the eps = 1 mollification.
Matrix fluctuation_matrix(const Kernel& k, int n, int N, double T, double dt, std::uint64_t seed);

struct CheckLine {
  std::string name;
  double empirical = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct DecompositionReport {
  std::vector<CheckLine> lines;
  bool pass = false;
};
DecompositionReport gaussian_matrix_decomposition_check(const std::vector<Matrix>& samples, int n, int N,
                                                        double sigma_n2, double z_tol = 3.0);

double chebyshev_U(int n, double x);
Matrix chebyshev_U(int n, const Matrix& X);

struct FreeLimitReport {
  int N = 0;
  double eps = 0.0;
  double dt = 0.0;
  std::vector<double> moments;  // tr int_0^1 X^k dt, k = 1..4
  std::vector<double> semicircle;
  double clt_variance = 0.0;     // tr Z^2 for Z = eps^{-1/2} int_0^1 U_n(X)
  double clt_target = 0.0;       // integral of rho^n
  double clt_grid_target = 0.0;  // the same sum at the simulation grid
  int n = 1;
};
FreeLimitReport free_limit_checks(int N, const Kernel& k, int n, double eps, double dt, std::uint64_t seed);

}  // namespace tracelimits
