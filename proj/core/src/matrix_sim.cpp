#include "tracelimits/matrix_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tracelimits/limit_constants.hpp"
#include "tracelimits/pairings.hpp"
#include "tracelimits/rng.hpp"

namespace tracelimits {
namespace {

constexpr double kAlignTol = 1e-9;

long grid_steps(double length, double dt, const char* what) {
  const double r = length / dt;
  const double rr = std::round(r);
  if (rr < 1.0 || std::abs(r - rr) > kAlignTol * rr) {
    throw std::invalid_argument(std::string(what) + ": dt does not divide the time window");
  }
  return static_cast<long>(rr);
}

}  // namespace

int hermitian_channels(int N) { return N * N; }

double channel_sd(int N, int c, double var) {
  return c < N ? std::sqrt(var / N) : std::sqrt(var / (2.0 * N));
}

Matrix assemble_hermitian(int N, const double* ch) {
  Matrix M(N, N);
  for (int i = 0; i < N; ++i) M(i, i) = ch[i];
  int c = N;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      const std::complex<double> z(ch[c], ch[c + 1]);
      M(i, j) = z;
      M(j, i) = std::conj(z);
      c += 2;
    }
  }
  return M;
}

Matrix HermitianPath::increment(long step) const {
  return assemble_hermitian(N, increments.data() + step * hermitian_channels(N));
}

Matrix HermitianPath::value_at(long i) const {
  if (i < i_min || i > i_max) throw std::out_of_range("HermitianPath::value_at: index outside the path");
  Matrix W = Matrix::Zero(N, N);
  if (i >= 0) {
    for (long s = 0; s < i; ++s) W += increment(s - i_min);
  } else {
    for (long s = i; s < 0; ++s) W -= increment(s - i_min);
  }
  return W;
}

Matrix HermitianSmoothedPath::at(long j) const {
  return assemble_hermitian(N, values.data() + (j - j_min) * hermitian_channels(N));
}

SpectralMoments spectral_moments(const Matrix& M, int k_max) {
  SpectralMoments s;
  s.m.assign(static_cast<std::size_t>(k_max + 1), 0.0);
  s.m[0] = 1.0;
  Matrix P = Matrix::Identity(M.rows(), M.cols());
  for (int k = 1; k <= k_max; ++k) {
    P = P * M;
    s.m[k] = P.trace().real() / static_cast<double>(M.rows());
  }
  return s;
}

HermitianPath simulate_hermitian_bm(int N, double t_min, double t_max, double dt, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("simulate_hermitian_bm: N must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_hermitian_bm: dt must be positive");
  if (!(t_min < 0.0 && 0.0 <= t_max)) throw std::invalid_argument("simulate_hermitian_bm: need t_min < 0 <= t_max");
  HermitianPath p;
  p.N = N;
  p.dt = dt;
  p.seed = seed;
  p.i_min = static_cast<long>(std::floor(t_min / dt + kAlignTol));
  p.i_max = static_cast<long>(std::ceil(t_max / dt - kAlignTol));
  const int C = hermitian_channels(N);
  p.increments.resize(static_cast<std::size_t>(p.steps()) * C);
  std::vector<double> sd(C);
  for (int c = 0; c < C; ++c) sd[c] = channel_sd(N, c, dt);
  NormalStream rng(seed);
  for (long s = 0; s < p.steps(); ++s)
    for (int c = 0; c < C; ++c) p.increments[s * C + c] = sd[c] * rng();
  return p;
}

HermitianSmoothedPath mollify_matrix(const HermitianPath& path, const Kernel& k, double eps) {
  if (eps * k.support_halfwidth() > -path.t_min() + kAlignTol) {
    throw std::invalid_argument("mollify_matrix: path too short for the kernel support at this eps");
  }
  const StepFilter f = make_step_filter(k, eps, path.dt);
  const int C = hermitian_channels(path.N);
  const long steps = path.steps();
  std::vector<double> B(static_cast<std::size_t>(steps + 1) * C, 0.0);
  for (long s = 0; s < steps; ++s)
    for (int c = 0; c < C; ++c) B[(s + 1) * C + c] = B[s * C + c] + path.increments[s * C + c];
  HermitianSmoothedPath out;
  out.N = path.N;
  out.dt = path.dt;
  out.j_min = path.i_min - f.min_offset;
  out.j_max = path.i_max - f.max_offset;
  if (out.j_max < out.j_min) throw std::invalid_argument("mollify_matrix: path too short");
  out.values.assign(static_cast<std::size_t>(out.j_max - out.j_min + 1) * C, 0.0);
  for (long j = out.j_min; j <= out.j_max; ++j) {
    const long base = j - path.i_min;
    double* dst = out.values.data() + (j - out.j_min) * C;
    for (const auto& r : f.runs) {
      const double* hi = B.data() + (base + r.end) * C;
      const double* lo = B.data() + (base + r.begin) * C;
      for (int c = 0; c < C; ++c) dst[c] += r.weight * (hi[c] - lo[c]);
    }
  }
  return out;
}

HermitianPath simulate_hermitian_for_unit_interval(int N, const Kernel& k, double eps, double dt, std::uint64_t seed) {
  const double reach = eps * k.support_halfwidth() + 2.0 * dt;
  return simulate_hermitian_bm(N, -reach, 1.0 + reach, dt, seed);
}

HermitianMollifiedStream::HermitianMollifiedStream(int N, const Kernel& k, double eps, double dt,
                                                   std::uint64_t seed, long j_start)
    : N_(N),
      C_(hermitian_channels(N)),
      dt_(dt),
      filter_(make_step_filter(k, eps, dt)),
      rng_(seed),
      j_start_(j_start),
      j_(j_start) {
  if (N < 1) throw std::invalid_argument("HermitianMollifiedStream: N must be positive");
  sd_.resize(C_);
  for (int c = 0; c < C_; ++c) sd_[c] = channel_sd(N, c, dt);
  window_ = filter_.max_offset - filter_.min_offset + 1;
  ring_.assign(static_cast<std::size_t>(window_) * C_, 0.0);
  ring_first_ = j_start + filter_.min_offset;
  ring_count_ = 1;
  buf_.resize(C_);
  current_.resize(N, N);
}

void HermitianMollifiedStream::draw_step() {
  const long g = ring_first_ + ring_count_;  // grid index of the new row
  const double* prev = ring_.data() + ((g - 1 - ring_first_) % window_) * C_;
  double* row = ring_.data() + ((g - ring_first_) % window_) * C_;
  for (int c = 0; c < C_; ++c) row[c] = prev[c] + sd_[c] * rng_();
  ++ring_count_;
}

const Matrix& HermitianMollifiedStream::next() {
  const long need = j_ + filter_.max_offset;
  while (ring_first_ + ring_count_ - 1 < need) draw_step();
  std::fill(buf_.begin(), buf_.end(), 0.0);
  for (const auto& r : filter_.runs) {
    const double* hi = ring_.data() + ((j_ + r.end - ring_first_) % window_) * C_;
    const double* lo = ring_.data() + ((j_ + r.begin - ring_first_) % window_) * C_;
    for (int c = 0; c < C_; ++c) buf_[c] += r.weight * (hi[c] - lo[c]);
  }
  for (int i = 0; i < N_; ++i) current_(i, i) = buf_[i];
  int c = N_;
  for (int i = 0; i < N_; ++i) {
    for (int j = i + 1; j < N_; ++j) {
      current_(i, j) = std::complex<double>(buf_[c], buf_[c + 1]);
      current_(j, i) = std::complex<double>(buf_[c], -buf_[c + 1]);
      c += 2;
    }
  }
  ++j_;
  return current_;
}

Matrix matrix_lln_estimate(const HermitianSmoothedPath& s, int power) {
  if (power < 1 || power > 8) throw std::invalid_argument("matrix_lln_estimate: power must be in [1, 8]");
  const long J = grid_steps(1.0, s.dt, "matrix_lln_estimate");
  if (!s.covers(0, J)) throw std::invalid_argument("matrix_lln_estimate: smoothed path does not cover [0, 1]");
  Matrix acc = Matrix::Zero(s.N, s.N);
  Matrix P(s.N, s.N);
  for (long j = 0; j <= J; ++j) {
    const Matrix X = s.at(j);
    P = X;
    for (int p = 1; p < power; ++p) P = P * X;
    acc += (j == 0 || j == J ? 0.5 : 1.0) * P;
  }
  return acc * s.dt;
}

Matrix matrix_lln_estimate(const HermitianPath& path, const Kernel& k, double eps, int power) {
  return matrix_lln_estimate(mollify_matrix(path, k, eps), power);
}

LaurentN gue_moment_exact(int k) {
  if (k < 0 || k > 10) throw std::invalid_argument("gue_moment_exact: k must be in [0, 10]");
  if (k == 0) return LaurentN(1);
  LaurentN r;
  if (k % 2 != 0) return r;
  // alpha = (0)(1 ... k); every pairing contributes N^{cyc0(pi alpha) - k/2 - 1}
  std::vector<std::vector<int>> cyc{{0}, {}};
  for (int i = 1; i <= k; ++i) cyc[1].push_back(i);
  const Permutation0 alpha = Permutation0::from_cycles(k, cyc);
  for_each_perfect_pairing(k, [&](const std::vector<int>& partner) {
    r.add_term(cyc0_of_product(partner, alpha) - k / 2 - 1, 1);
  });
  return r;
}

double gue_moment_exact(int k, int N) { return gue_moment_exact(k).evaluate(N); }

MartingaleReport martingale_diagnostics(int N, const std::vector<double>& times, std::size_t replicates,
                                        std::uint64_t seed, double z_tol) {
  if (times.empty()) throw std::invalid_argument("martingale_diagnostics: no times");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] > (i == 0 ? 0.0 : times[i - 1]))) throw std::invalid_argument("martingale_diagnostics: times must increase from 0");
  if (replicates < 2) throw std::invalid_argument("martingale_diagnostics: need replicates");
  const int C = hermitian_channels(N);
  const std::size_t T = times.size();
  // per replicate: for each time, Tr M(t) then the N^2 real channels of M(t)
  auto rows = run_replicates_multi(replicates, 1, [&](std::size_t r) {
    NormalStream rng(seed, r);
    std::vector<double> out;
    out.reserve(T * (1 + C));
    Matrix W = Matrix::Zero(N, N);
    std::vector<double> ch(C);
    double prev = 0.0;
    for (double t : times) {
      for (int c = 0; c < C; ++c) ch[c] = channel_sd(N, c, t - prev) * rng();
      W += assemble_hermitian(N, ch.data());
      prev = t;
      const std::complex<double> trW = W.trace() / static_cast<double>(N);
      Matrix M = W * W * W - t * (2.0 * W + trW * Matrix::Identity(N, N));
      out.push_back(M.trace().real());
      for (int i = 0; i < N; ++i) out.push_back(M(i, i).real());
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          out.push_back(M(i, j).real());
          out.push_back(M(i, j).imag());
        }
    }
    return out;
  });
  MartingaleReport rep;
  rep.times = times;
  rep.pass = true;
  std::vector<double> col(replicates);
  auto column = [&](std::size_t idx) {
    for (std::size_t r = 0; r < replicates; ++r) col[r] = rows[r][idx];
    return estimate_mean(col, seed);
  };
  for (std::size_t ti = 0; ti < T; ++ti) {
    const std::size_t base = ti * (1 + C);
    auto tr = column(base);
    rep.trace_mean.push_back(tr);
    double zmax = tr.stderr_ > 0 ? std::abs(tr.mean) / tr.stderr_ : 0.0;
    for (int c = 0; c < C; ++c) {
      auto e = column(base + 1 + c);
      if (e.stderr_ > 0) zmax = std::max(zmax, std::abs(e.mean) / e.stderr_);
    }
    rep.max_entry_z.push_back(zmax);
    if (zmax > z_tol) rep.pass = false;
    if (ti > 0) {
      const std::size_t pb = (ti - 1) * (1 + C);
      for (std::size_t r = 0; r < replicates; ++r) col[r] = (rows[r][base] - rows[r][pb]) * rows[r][pb];
      auto cross = estimate_mean(col, seed);
      rep.increment_cross.push_back(cross);
      if (cross.stderr_ > 0 && std::abs(cross.mean) > z_tol * cross.stderr_) rep.pass = false;
    }
  }
  return rep;
}

Matrix fluctuation_matrix(const Kernel& k, int n, int N, double T, double dt, std::uint64_t seed) {
  if (n < 1 || n > 4) throw std::invalid_argument("fluctuation_matrix: n must be in [1, 4], got " + std::to_string(n));
  if (!(T > 0.0) || T > 1e4) throw std::invalid_argument("fluctuation_matrix: T must be in (0, 1e4]");
  const long J = grid_steps(T, dt, "fluctuation_matrix");
  const CompiledTracePolynomial H(hermite_trace_polynomial(n, Permutation0::full_cycle(n)), 1.0, N);
  HermitianMollifiedStream stream(N, k, 1.0, dt, seed, 0);
  Matrix acc = Matrix::Zero(N, N);
  for (long j = 0; j <= J; ++j) {
    const Matrix& X = stream.next();
    acc += (j == 0 || j == J ? 0.5 : 1.0) * H(X);
  }
  return acc * (dt / std::sqrt(T));
}

DecompositionReport gaussian_matrix_decomposition_check(const std::vector<Matrix>& samples, int n, int N,
                                                        double sigma_n2, double z_tol) {
  if (samples.size() < 1000) throw std::invalid_argument("gaussian_matrix_decomposition_check: need at least 1000 samples");
  if (N < 2) throw std::invalid_argument("gaussian_matrix_decomposition_check: need N >= 2");
  const auto ab = ab_coefficients(n);
  const double a2 = ab.a2.evaluate(N), b2 = ab.b2.evaluate(N);
  const std::size_t R = samples.size();
  std::vector<double> re01(R), im01(R), d0(R), d1(R);
  for (std::size_t r = 0; r < R; ++r) {
    re01[r] = samples[r](0, 1).real();
    im01[r] = samples[r](0, 1).imag();
    d0[r] = samples[r](0, 0).real();
    d1[r] = samples[r](1, 1).real();
  }
  DecompositionReport rep;
  auto add = [&](const std::string& name, VarianceEstimate v, double target) {
    CheckLine l{name, v.variance, v.stderr_, target, z_tol * v.stderr_, false};
    l.pass = std::abs(l.empirical - l.target) <= l.tolerance;
    rep.lines.push_back(l);
  };
  add("var_offdiag_real", estimate_variance(re01), sigma_n2 * a2 / (2.0 * N));
  add("var_diag", estimate_variance(d0), sigma_n2 * (a2 / N + b2 / (double(N) * N)));
  add("cov_diag_diag", estimate_covariance(d0, d1), sigma_n2 * b2 / (double(N) * N));
  add("cov_offdiag_real_imag", estimate_covariance(re01, im01), 0.0);
  rep.pass = true;
  for (const auto& l : rep.lines) rep.pass = rep.pass && l.pass;
  return rep;
}

double chebyshev_U(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_U: negative degree");
  if (n == 0) return 1.0;
  double u0 = 1.0, u1 = x;
  for (int j = 1; j < n; ++j) {
    const double u2 = x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

Matrix chebyshev_U(int n, const Matrix& X) {
  if (n < 0) throw std::invalid_argument("chebyshev_U: negative degree");
  Matrix u0 = Matrix::Identity(X.rows(), X.cols());
  if (n == 0) return u0;
  Matrix u1 = X;
  for (int j = 1; j < n; ++j) {
    Matrix u2 = X * u1 - u0;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return u1;
}

FreeLimitReport free_limit_checks(int N, const Kernel& k, int n, double eps, double dt, std::uint64_t seed) {
  if (N < 100) throw std::invalid_argument("free_limit_checks: N must be at least 100, got " + std::to_string(N));
  if (n < 1 || n > 4) throw std::invalid_argument("free_limit_checks: n must be in [1, 4]");
  const long J = grid_steps(1.0, dt, "free_limit_checks");
  HermitianMollifiedStream stream(N, k, eps, dt, seed, 0);
  FreeLimitReport rep;
  rep.N = N;
  rep.eps = eps;
  rep.dt = dt;
  rep.n = n;
  rep.moments.assign(4, 0.0);
  Matrix Z = Matrix::Zero(N, N);
  Matrix X2(N, N), U(N, N);
  const Matrix I = Matrix::Identity(N, N);
  for (long j = 0; j <= J; ++j) {
    const Matrix& X = stream.next();
    const double w = (j == 0 || j == J ? 0.5 : 1.0) * dt;
    X2.noalias() = X * X;
    rep.moments[0] += w * X.trace().real();
    rep.moments[1] += w * X2.trace().real();
    rep.moments[2] += w * (X2.array() * X.transpose().array()).sum().real();
    rep.moments[3] += w * X2.squaredNorm();
    switch (n) {
      case 1: U = X; break;
      case 2: U = X2 - I; break;
      case 3: U.noalias() = X2 * X; U -= 2.0 * X; break;
      default: U.noalias() = X2 * X2; U += I - 3.0 * X2; break;
    }
    Z += w * U;
  }
  for (double& m : rep.moments) m /= N;
  Z /= std::sqrt(eps);
  rep.clt_variance = Z.squaredNorm() / N;
  for (int kk = 1; kk <= 4; ++kk) rep.semicircle.push_back(kk % 2 ? 0.0 : static_cast<double>(catalan(kk / 2)));
  const Autocorrelation rho = autocorrelation(k);
  rep.clt_target = sigma_q_squared(rho, n);
  // E tr Z^2 of the discrete sum: trapezoid of rho^n at spacing dt / eps
  const double h = dt / eps;
  double g = 0.0;
  const long reach = static_cast<long>(std::ceil(rho.support() / h)) + 1;
  for (long m = -reach; m <= reach; ++m) g += std::pow(rho(m * h), n);
  rep.clt_grid_target = g * h;
  return rep;
}

}  // namespace tracelimits
