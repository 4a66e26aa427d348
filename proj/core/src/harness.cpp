#include "tracelimits/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "tracelimits/golden.hpp"
#include "tracelimits/kernel.hpp"
#include "tracelimits/limit_constants.hpp"
#include "tracelimits/matrix_sim.hpp"
#include "tracelimits/matrix_variate.hpp"
#include "tracelimits/pairings.hpp"
#include "tracelimits/rng.hpp"
#include "tracelimits/scalar_sim.hpp"
#include "tracelimits/stats.hpp"
#include "tracelimits/trace_poly.hpp"

#ifndef TRACELIMITS_VERSION
#define TRACELIMITS_VERSION "0.0.0"
#endif

namespace tracelimits {

using json = nlohmann::json;

std::string library_version() { return TRACELIMITS_VERSION; }

namespace {

const std::vector<std::string> kKinds{"scalar-lln", "scalar-clt",   "matrix-lln", "matrix-clt", "free-limit",
                                      "constants",  "trace-tables", "mvariate",   "golden"};

template <class T>
std::vector<T> scalar_or_list(const json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

[[noreturn]] void cap_error(const std::string& param, const std::string& what) {
  throw std::invalid_argument("parameter '" + param + "' " + what);
}

void require_range(const std::string& param, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream s;
    s << "= " << v << " outside [" << lo << ", " << hi << "]";
    cap_error(param, s.str());
  }
}

void require_positive(const std::string& param, double v, double hi) {
  if (!(v > 0.0 && v <= hi)) {
    std::ostringstream s;
    s << "= " << v << " outside (0, " << hi << "]";
    cap_error(param, s.str());
  }
}

Kernel load_kernel(const std::string& spec) {
  if (spec == "indicator") return make_indicator_kernel(1.0);
  if (spec == "difference") return make_difference_kernel(1.0);
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) cap_error("kernel", "cannot open " + spec.substr(5));
    std::stringstream buf;
    buf << in.rdbuf();
    return kernel_from_json(buf.str());
  }
  cap_error("kernel", "must be indicator, difference or file:<path>, got '" + spec + "'");
}

double kernel_mass(const Kernel& k) {
  double m = 0.0;
  for (double v : k.values()) m += v * k.step();
  return m;
}

double double_factorial_odd(int k) {
  double r = 1.0;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

struct Recorder {
  ResultRecord& rec;

  void q(const std::string& name, double est, double se, double target, double tol) {
    Quantity x{name, est, se, target, tol, std::abs(est - target) <= tol};
    rec.quantities.push_back(x);
  }
  void mc(const std::string& name, double est, double se, double target, double z) { q(name, est, se, target, z * se); }
  void exact(const std::string& name, bool ok, const std::string& detail) {
    q(name, ok ? 1.0 : 0.0, 0.0, 1.0, 0.0);
    rec.artifacts[name] = detail;
  }
  void exact(const GoldenCheck& c) { exact(c.name, c.pass, c.detail); }
};

bool wants(const ExperimentConfig& c, const std::string& check) {
  if (c.checks.empty()) return true;
  for (const auto& s : c.checks)
    if (s == check) return true;
  return false;
}

std::size_t replicates_or(const ExperimentConfig& c, std::size_t def) {
  const std::size_t r = c.replicates.value_or(def);
  if (r < 2 || r > 10'000'000) cap_error("replicates", "= " + std::to_string(r) + " outside [2, 10000000]");
  return r;
}

std::vector<Kernel> kernels_of(const ExperimentConfig& c) {
  std::vector<Kernel> out;
  if (c.kernels.empty()) out.push_back(load_kernel("indicator"));
  for (const auto& s : c.kernels) out.push_back(load_kernel(s));
  return out;
}

std::string kernel_name(const ExperimentConfig& c, std::size_t i) {
  return c.kernels.empty() ? "indicator" : c.kernels[i];
}

void check_grid(const std::string& param, double length, double dt, double cap) {
  if (length / dt > cap) {
    std::ostringstream s;
    s << "gives " << length / dt << " grid steps, more than " << cap;
    cap_error(param, s.str());
  }
}

// ---------------------------------------------------------------- scalar

void run_scalar_lln(const ExperimentConfig& c, Recorder& R) {
  const double eps = c.eps.value_or(1e-4);
  require_positive("eps", eps, 1.0);
  const double dt = c.dt.value_or(eps / 100.0);
  require_positive("dt", dt, eps);
  check_grid("dt", 1.0 + 4.0 * eps, dt, 1e8);
  const std::vector<int> ks = c.k.empty() ? std::vector<int>{2, 4} : c.k;
  const auto kernels = kernels_of(c);
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const ScalarPath path = simulate_for_unit_interval(kernels[i], eps, dt, stream_seed(c.seed, i));
    const SmoothedPath sm = mollify(path, kernels[i], eps);
    for (int k : ks) {
      require_range("k", k, 1, 12);
      const double target = k % 2 == 0 ? double_factorial_odd(k) : 0.0;
      double tol = 0.05 * std::max(1.0, target);
      if (k == 4) tol = 0.15;
      R.q(kernel_name(c, i) + " occupation moment k=" + std::to_string(k), occupation_moment(sm, k), 0.0, target, tol);
    }
  }
  R.rec.replicates = 1;
}

void run_scalar_clt(const ExperimentConfig& c, Recorder& R) {
  const double eps = c.eps.value_or(1e-3);
  require_positive("eps", eps, 1.0);
  const double dt = c.dt.value_or(eps / 100.0);
  require_positive("dt", dt, eps);
  check_grid("dt", 1.0 + 4.0 * eps, dt, 1e7);
  const std::size_t reps = replicates_or(c, 10'000);
  const auto kernels = kernels_of(c);

  std::vector<HermiteCoeffs> Fs;
  std::vector<std::string> labels;
  if (!c.hermite_coeffs.empty()) {
    HermiteCoeffs F{c.hermite_coeffs};
    if (F.c[0] != 0.0) cap_error("hermite_coeffs", "must have zero constant term (centred F)");
    if (F.degree() > 8) cap_error("hermite_coeffs", "degree must be at most 8");
    Fs.push_back(F);
    labels.push_back("F");
  } else {
    for (int n : c.n.empty() ? std::vector<int>{1, 2, 3} : c.n) {
      require_range("n", n, 1, 8);
      Fs.push_back(single_hermite(n));
      labels.push_back("H_" + std::to_string(n));
    }
  }

  const Kernel* widest = &kernels[0];
  for (const auto& k : kernels)
    if (k.support_halfwidth() > widest->support_halfwidth()) widest = &k;

  const auto stats = run_replicates_multi(reps, c.workers, [&](std::size_t r) {
    const ScalarPath path = simulate_for_unit_interval(*widest, eps, dt, stream_seed(c.seed, r));
    std::vector<double> out;
    for (const auto& k : kernels) {
      const SmoothedPath sm = mollify(path, k, eps);
      if (std::abs(kernel_mass(k)) > 1e-9) {
        for (const auto& F : Fs) out.push_back(fluctuation_statistic(sm, eps, F));
      } else {
        out.push_back(fluctuation_statistic(sm, eps, single_hermite(1)) / std::sqrt(eps));
      }
    }
    return out;
  });

  std::size_t col = 0;
  auto column = [&](std::size_t j) {
    std::vector<double> v(reps);
    for (std::size_t r = 0; r < reps; ++r) v[r] = stats[r][j];
    return v;
  };
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const auto& k = kernels[i];
    if (std::abs(kernel_mass(k)) > 1e-9) {
      const Autocorrelation rho = autocorrelation(k);
      for (std::size_t f = 0; f < Fs.size(); ++f) {
        const auto v = estimate_variance(column(col++));
        R.mc(kernel_name(c, i) + " " + labels[f] + " variance", v.variance, v.stderr_, sigma_W_squared(Fs[f], rho), 3.0);
      }
    } else {
      const auto v = estimate_variance(column(col++));
      const double target = boundary_variance(k);
      R.q(kernel_name(c, i) + " eps^-1 int W variance", v.variance, v.stderr_, target, 0.10 * target);
    }
  }
  R.rec.replicates = reps;
}

// ---------------------------------------------------------------- matrix

void run_matrix_lln(const ExperimentConfig& c, Recorder& R) {
  const double eps = c.eps.value_or(1e-3);
  require_positive("eps", eps, 1.0);
  const double dt = c.dt.value_or(eps / 10.0);
  require_positive("dt", dt, eps);
  const std::vector<int> Ns = c.N.empty() ? std::vector<int>{2, 3} : c.N;
  const std::vector<int> ks = c.k.empty() ? std::vector<int>{1, 2, 3, 4} : c.k;
  const Kernel kernel = kernels_of(c)[0];
  for (int N : Ns) {
    require_range("N", N, 1, 64);
    check_grid("dt", (1.0 + 4.0 * eps) * N * N, dt, 2e8);
    if (wants(c, "lln")) {
      const HermitianPath path =
          simulate_hermitian_for_unit_interval(N, kernel, eps, dt, stream_seed(c.seed, static_cast<std::uint64_t>(N)));
      const HermitianSmoothedPath sm = mollify_matrix(path, kernel, eps);
      for (int k : ks) {
        require_range("k", k, 1, 8);
        const Matrix est = matrix_lln_estimate(sm, k);
        const double target = gue_moment_exact(k, N);
        double dev = 0.0;
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) dev = std::max(dev, std::abs(est(i, j) - (i == j ? target : 0.0)));
        R.q("N=" + std::to_string(N) + " k=" + std::to_string(k) + " max entry deviation", dev, 0.0, 0.0, 0.1);
      }
    }
    if (wants(c, "gue")) {
      const std::size_t samples = c.samples.value_or(20'000);
      if (samples < 100 || samples > 10'000'000) cap_error("samples", "outside [100, 10000000]");
      const auto vals = run_replicates_multi(samples, c.workers, [&](std::size_t r) {
        NormalStream rng(c.seed ^ 0x5bd1e995ULL, r);
        const Matrix M = sample_gaussian_hermitian(N, rng) / std::sqrt(static_cast<double>(N));
        const Matrix M2 = M * M;
        return std::vector<double>{M2.trace().real() / N, (M2 * M2).trace().real() / N};
      });
      for (int j = 0; j < 2; ++j) {
        std::vector<double> v(samples);
        for (std::size_t r = 0; r < samples; ++r) v[r] = vals[r][j];
        const auto e = estimate_mean(v, c.seed);
        const int k = 2 * (j + 1);
        R.mc("N=" + std::to_string(N) + " GUE MC E tr M^" + std::to_string(k), e.mean, e.stderr_, gue_moment_exact(k, N),
             5.0);
      }
    }
  }
  if (wants(c, "gue")) {
    const std::string m2 = gue_moment_exact(2).to_string(), m4 = gue_moment_exact(4).to_string();
    R.exact("GUE exact E tr M^2", m2 == "1", m2);
    R.exact("GUE exact E tr M^4", m4 == "2+N^-2", m4);
    for (int p = 1; p <= 4; ++p) {
      const LaurentN m = gue_moment_exact(2 * p);
      const bool ok = m.max_exponent() == 0 && m.coefficient(0) == static_cast<std::int64_t>(catalan(p));
      R.exact("GUE large-N limit k=" + std::to_string(2 * p), ok,
              m.to_string() + " -> " + std::to_string(m.coefficient(0)) + ", Catalan " + std::to_string(catalan(p)));
    }
  }
  R.rec.replicates = 1;
}

void run_matrix_clt(const ExperimentConfig& c, Recorder& R) {
  const double T = c.T.value_or(1e3);
  require_positive("T", T, 1e5);
  const double dt = c.dt.value_or(0.02);
  require_positive("dt", dt, 1.0);
  check_grid("dt", T, dt, 1e7);
  const std::size_t reps = replicates_or(c, 2'000);
  if (reps < 1000) cap_error("replicates", "must be at least 1000 for the second-order checks");
  const Kernel kernel = kernels_of(c)[0];
  const Autocorrelation rho = autocorrelation(kernel);
  for (int N : c.N.empty() ? std::vector<int>{2} : c.N) {
    require_range("N", N, 2, 16);
    for (int n : c.n.empty() ? std::vector<int>{2} : c.n) {
      require_range("n", n, 2, 6);
      const auto flat = run_replicates_multi(reps, c.workers, [&](std::size_t r) {
        const Matrix M = fluctuation_matrix(kernel, n, N, T, dt, stream_seed(c.seed, r));
        std::vector<double> v(2 * N * N);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            v[2 * (i * N + j)] = M(i, j).real();
            v[2 * (i * N + j) + 1] = M(i, j).imag();
          }
        return v;
      });
      std::vector<Matrix> samples(reps, Matrix(N, N));
      for (std::size_t r = 0; r < reps; ++r)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) samples[r](i, j) = {flat[r][2 * (i * N + j)], flat[r][2 * (i * N + j) + 1]};

      const std::string tag = "N=" + std::to_string(N) + " n=" + std::to_string(n) + " ";
      const double sigma2 = sigma_q_squared(rho, n);
      std::vector<double> trM2(reps);
      for (std::size_t r = 0; r < reps; ++r) trM2[r] = (samples[r] * samples[r]).trace().real() / N;
      const auto e = estimate_mean(trM2, c.seed);
      const double K2 = moment_constant(2, n).evaluate(N);
      R.mc(tag + "E tr M_T^2", e.mean, e.stderr_, K2 * sigma2, 3.0);

      const auto dec = gaussian_matrix_decomposition_check(samples, n, N, sigma2, 3.0);
      for (const auto& l : dec.lines) R.q(tag + l.name, l.empirical, l.stderr_, l.target, l.tolerance);

      Matrix E11 = Matrix::Zero(N, N);
      E11(0, 0) = 1.0;
      const std::vector<std::pair<std::string, Matrix>> As{{"E11", E11}, {"Id", Matrix::Identity(N, N)}};
      for (const auto& [name, A] : As) {
        std::vector<double> y(reps);
        for (std::size_t r = 0; r < reps; ++r) y[r] = (A * samples[r]).trace().real();
        const auto v = estimate_variance(y);
        R.mc(tag + "Var Tr(" + name + " M_T)", v.variance, v.stderr_, variance_functional(A, n, N, rho), 3.0);
        const auto kx = estimate_fourth_moment_excess(y);
        R.mc(tag + "E Tr(" + name + " M_T)^4 - 3 (E Tr(" + name + " M_T)^2)^2", kx.excess, kx.stderr_, 0.0, 5.0);
      }
    }
  }
  R.rec.replicates = reps;
}

void run_free_limit(const ExperimentConfig& c, Recorder& R) {
  const double eps = c.eps.value_or(1e-3);
  require_positive("eps", eps, 1.0);
  const double dt = c.dt.value_or(eps / 2.0);
  require_positive("dt", dt, eps);
  const Kernel kernel = kernels_of(c)[0];
  for (int N : c.N.empty() ? std::vector<int>{250} : c.N) {
    require_range("N", N, 100, 1000);
    check_grid("dt", 1.0 + 4.0 * eps, dt, 1e5);
    for (int n : c.n.empty() ? std::vector<int>{1} : c.n) {
      require_range("n", n, 1, 4);
      const auto rep = free_limit_checks(N, kernel, n, eps, dt, stream_seed(c.seed, static_cast<std::uint64_t>(N)));
      const std::string tag = "N=" + std::to_string(N) + " ";
      if (n == (c.n.empty() ? 1 : c.n.front())) {
        for (std::size_t k = 0; k < rep.moments.size(); ++k)
          R.q(tag + "tr int X^" + std::to_string(k + 1), rep.moments[k], 0.0, rep.semicircle[k], 0.1);
      }
      R.q(tag + "n=" + std::to_string(n) + " CLT variance tr Z^2", rep.clt_variance, 0.0, rep.clt_target,
          0.15 * rep.clt_target);
      std::ostringstream g;
      g.precision(12);
      g << rep.clt_grid_target;
      R.rec.artifacts[tag + "n=" + std::to_string(n) + " grid target"] = g.str();
    }
  }
  R.rec.replicates = 1;
}

// ---------------------------------------------------------------- exact

void run_constants(const ExperimentConfig& c, Recorder& R) {
  const int n = c.n.empty() ? 3 : c.n.front();
  const int k = c.k.empty() ? 2 : c.k.front();
  require_range("n", n, 1, 10);
  require_range("k", k, 1, 12);
  if (n >= 2) {
    const auto ab = ab_coefficients(n);
    R.rec.artifacts["ab"] = "a2=" + ab.a2.to_string() + ", b2=" + ab.b2.to_string();
    for (int N : c.N) {
      require_range("N", N, 1, 1'000'000);
      std::ostringstream s;
      s.precision(15);
      s << "a2=" << ab.a2.evaluate(N) << ", b2=" << ab.b2.evaluate(N);
      R.rec.artifacts["ab at N=" + std::to_string(N)] = s.str();
    }
    if (n <= 4) R.rec.artifacts["pairing table n=" + std::to_string(n)] = pairing_table_csv(n);
  }
  if (k % 2 == 0) {
    if (n * k > 24) cap_error("k", "n*k must be at most 24");
    const LaurentN K = moment_constant(k, n);
    R.rec.artifacts["K"] = "K(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")=" + K.to_string();
    for (int N : c.N) {
      std::ostringstream s;
      s.precision(15);
      s << K.evaluate(N);
      R.rec.artifacts["K at N=" + std::to_string(N)] = s.str();
    }
  } else {
    R.rec.artifacts["K"] = "odd moment k=" + std::to_string(k) + " vanishes";
  }

  if (wants(c, "ab")) {
    for (const auto& g : ab_display_checks()) R.exact(g);
    for (int m = 2; m <= 6; ++m) {
      const auto ab = ab_coefficients(m);
      const std::string tag = "n=" + std::to_string(m) + " ";
      R.exact(tag + "a2 leading order 1", ab.a2.max_exponent() == 0 && ab.a2.coefficient(0) == 1, ab.a2.to_string());
      R.exact(tag + "b2 leading order n-1", ab.b2.max_exponent() <= 0 && ab.b2.coefficient(0) == m - 1,
              ab.b2.to_string());
      const auto counts = leading_pairing_counts(m);
      R.exact(tag + "leading pairing counts (1, n-1)", counts.first == 1 && counts.second == m - 1,
              "(" + std::to_string(counts.first) + ", " + std::to_string(counts.second) + ")");
      const double N = 1e3;
      const double a = ab.a2.evaluate(N), b = ab.b2.evaluate(N);
      R.q(tag + "a2 at N=1000", a, 0.0, 1.0, 10.0 / N);
      R.q(tag + "b2 at N=1000", b, 0.0, m - 1.0, 10.0 / N);
      LaurentN total;
      const Permutation0 alpha = split_cycle_pair(m);
      for_each_inhomogeneous_pairing(m, 2, [&](const std::vector<int>& p) { total.add_term(cyc0_of_product(p, alpha) - m, 1); });
      R.exact(tag + "a2 + b2 equals the full pairing sum", total == ab.a2 + ab.b2, total.to_string());
    }
  }
  if (wants(c, "masterprop")) {
    for (int m = 1; m <= 3; ++m)
      for (int kk = 2; kk <= 6; kk += 2) {
        const std::string tag = "n=" + std::to_string(m) + " k=" + std::to_string(kk) + " ";
        const LaurentN K = moment_constant(kk, m);
        const bool lead = K.max_exponent() == 0 && K.coefficient(0) == static_cast<std::int64_t>(catalan(kk / 2));
        R.exact(tag + "K leading coefficient Catalan", lead, K.to_string());
        const auto b = verify_cycle_bound(m, kk);
        std::ostringstream d;
        d << "inhomogeneous=" << b.inhomogeneous << " violations=" << b.violations << " equality_all=" << b.equality_all
          << " block_complete=" << b.block_complete << " equality_block_complete=" << b.equality_block_complete
          << " rigid=" << b.rigid << " mismatches=" << b.mismatches;
        R.exact(tag + "cycle bound and equality cases", b.pass, d.str());
      }
    for (int kk = 2; kk <= 8; kk += 2)
      R.exact("K limit k=" + std::to_string(kk), moment_constant_limit(kk) == catalan(kk / 2),
              std::to_string(moment_constant_limit(kk)));
  }
}

void run_trace_tables(const ExperimentConfig& c, Recorder& R) {
  for (int n : c.n.empty() ? std::vector<int>{4} : c.n) {
    require_range("n", n, 1, 8);
    const std::string csv = contraction_table_csv(n);
    std::size_t rows = 0;
    for (char ch : csv) rows += ch == '\n';
    --rows;
    R.rec.artifacts["contraction table n=" + std::to_string(n)] = csv;
    R.q("n=" + std::to_string(n) + " rows", static_cast<double>(rows), 0.0, static_cast<double>(involution_count(n)), 0.0);
    R.rec.artifacts["hermite n=" + std::to_string(n)] =
        hermite_trace_polynomial(n, Permutation0::full_cycle(n)).to_string();
  }
}

void run_mvariate(const ExperimentConfig& c, Recorder& R) {
  std::vector<IntPartition> kappas;
  if (c.kappa.empty()) {
    kappas = {{2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}};
  } else {
    for (const auto& s : c.kappa) {
      IntPartition p = parse_partition(s);
      int size = 0;
      for (int x : p) size += x;
      if (size < 1 || size > 3) cap_error("kappa", "partitions of 1, 2 or 3 only, got " + s);
      kappas.push_back(p);
    }
  }
  for (const auto& kappa : kappas) R.rec.artifacts["H_kappa " + to_string(kappa)] = hermite_kappa(kappa).to_string();

  if (wants(c, "sigma_hat"))
    for (const auto& g : sigma_hat_display_checks()) R.exact(g);
  if (wants(c, "characters")) {
    for (int m = 2; m <= 3; ++m) {
      const CharacterTable t(m);
      bool ok = true;
      int factorial = m == 2 ? 2 : 6;
      for (const auto& a : t.irreps())
        for (const auto& b : t.irreps()) ok = ok && t.inner_product(a, b) == (a == b ? factorial : 0);
      R.exact("character orthogonality S(" + std::to_string(m) + ")", ok, ok ? "n! delta" : "violated");
    }
    for (const auto& g : character_combination_checks()) R.exact(g);
  }
  if (wants(c, "reference")) {
    for (const auto& kappa : kappas) {
      int size = 0;
      for (int x : kappa) size += x;
      if (size < 2) continue;
      const Proportionality p = proportionality_check(kappa);
      R.exact("reference multiple " + to_string(kappa), p.proportional, p.detail);
      // exact Gaussian pairings of the printed polynomial with lower-degree Hermite polynomials
      const PowerSumExpr ref = reference_hermite_kappa(kappa);
      std::string ev = "E[ref]=" + gaussian_expectation(ref).to_string();
      for (int m = 1; m < size; ++m)
        for (const auto& lambda : partitions_of(m))
          ev += ", E[ref*H" + to_string(lambda) + "]=" + gaussian_expectation(ref * hermite_kappa(lambda)).to_string();
      R.rec.artifacts["reference Gaussian pairings " + to_string(kappa)] = ev;
    }
  }
  if (wants(c, "orthogonality")) {
    const std::size_t samples = c.samples.value_or(100'000);
    if (samples < 100 || samples > 10'000'000) cap_error("samples", "outside [100, 10000000]");
    for (std::size_t i = 0; i < kappas.size(); ++i)
      for (std::size_t j = i + 1; j < kappas.size(); ++j) {
        const auto exact = gaussian_expectation(hermite_kappa(kappas[i]) * hermite_kappa(kappas[j]));
        const std::string pair = to_string(kappas[i]) + "x" + to_string(kappas[j]);
        R.exact("exact orthogonality " + pair, exact.is_zero(), exact.to_string());
        for (int N : c.N.empty() ? std::vector<int>{2} : c.N) {
          require_range("N", N, 1, 16);
          const auto e = mc_orthogonality(kappas[i], kappas[j], N, samples,
                                          stream_seed(c.seed, 1000 * i + j + 100000ULL * static_cast<std::uint64_t>(N)));
          // H_(1,1,1) vanishes identically when N < 3, leaving only rounding noise
          R.q("N=" + std::to_string(N) + " MC orthogonality " + pair, e.mean, e.stderr_, 0.0, 5.0 * e.stderr_ + 1e-9);
        }
      }
  }
  if (wants(c, "rect")) {
    const std::size_t samples = c.replicates.value_or(20'000);
    if (samples < 100 || samples > 10'000'000) cap_error("replicates", "outside [100, 10000000]");
    const Kernel ind = make_indicator_kernel(0.25);
    const RectCovariance sc = rect_covariance(scalar_matrix_kernel(ind, 3));
    const Autocorrelation rho = autocorrelation(ind);
    double worst = 0.0;
    for (int m = -sc.half; m <= sc.half; ++m) {
      worst = std::max(worst, (sc.at(m) - rho.at_node(m) * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (sc.abs_at(m) - std::abs(rho.at_node(m)) * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
    }
    R.q("scalar kernel reduction R = rho Id", worst, 0.0, 0.0, 1e-12);
    double max_z = 0.0, max_zt = 0.0, worst_r0 = 0.0, top = 0.0, bottom = 1e300;
    for (int inst = 0; inst < 10; ++inst) {
      const MatrixKernel phi = random_matrix_kernel(3, 1.0, 0.25, stream_seed(c.seed, 5000 + inst));
      const RectCovariance rc = rect_covariance(phi);
      worst_r0 = std::max(worst_r0, (rc.at(0) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
      top = std::max(top, rc.max_abs_eigenvalue());
      bottom = std::min(bottom, rc.min_abs_eigenvalue());
      for (auto [t1, t2] : {std::pair{0.5, 0.5}, std::pair{0.5, 0.0}, std::pair{0.25, 1.0}}) {
        const auto rep = rect_process_covariance_check(phi, 2, samples, t1, t2, stream_seed(c.seed, 6000 + inst), 5.0);
        max_z = std::max(max_z, rep.max_z);
        max_zt = std::max(max_zt, rep.max_z_transposed);
      }
    }
    R.q("random Phi: max |R(0) - Id|", worst_r0, 0.0, 0.0, 1e-9);
    R.q("random Phi: max eigenvalue of |R(t)|", top, 0.0, 0.5, 0.5 + 1e-9);
    R.q("random Phi: min eigenvalue of |R(t)|", bottom, 0.0, 0.5, 0.5 + 1e-9);
    R.q("random Phi: covariance identity max z", max_z, 0.0, 0.0, 5.0);
    std::ostringstream s;
    s.precision(6);
    s << max_zt;
    R.rec.artifacts["random Phi: max z under the transposed lag convention"] = s.str();
    R.rec.replicates = samples;
  }
}

void run_golden(const ExperimentConfig& c, Recorder& R) {
  if (wants(c, "tables"))
    for (const auto& g : golden_tables(golden_fixtures()).checks) R.exact(g);
  if (wants(c, "hermite"))
    for (const auto& g : hermite_display_checks()) R.exact(g);
  if (wants(c, "ab"))
    for (const auto& g : ab_display_checks()) R.exact(g);
  if (wants(c, "sigma_hat"))
    for (const auto& g : sigma_hat_display_checks()) R.exact(g);
  if (wants(c, "combinations"))
    for (const auto& g : character_combination_checks()) R.exact(g);
  if (wants(c, "reference"))
    for (const auto& g : reference_multiple_checks()) R.exact(g);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  ExperimentConfig c;
  apply_config_json(c, json_text);
  return c;
}

void apply_config_json(ExperimentConfig& c, const std::string& json_text) {
  const json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "kind") c.kind = v.get<std::string>();
      else if (key == "kernel") c.kernels = scalar_or_list<std::string>(v);
      else if (key == "eps") c.eps = v.get<double>();
      else if (key == "dt") c.dt = v.get<double>();
      else if (key == "T") c.T = v.get<double>();
      else if (key == "N") c.N = scalar_or_list<int>(v);
      else if (key == "n") c.n = scalar_or_list<int>(v);
      else if (key == "k") c.k = scalar_or_list<int>(v);
      else if (key == "replicates") c.replicates = v.get<std::size_t>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "hermite_coeffs") c.hermite_coeffs = v.get<std::vector<double>>();
      else if (key == "kappa") c.kappa = scalar_or_list<std::string>(v);
      else if (key == "checks") c.checks = scalar_or_list<std::string>(v);
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "workers") c.workers = v.get<unsigned>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw std::invalid_argument("unknown config key");
    } catch (const json::exception& e) {
      cap_error(key, std::string("has the wrong type: ") + e.what());
    } catch (const std::invalid_argument&) {
      cap_error(key, "is not a recognised config key");
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

namespace {

json config_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = c.kind;
  if (!c.kernels.empty()) j["kernel"] = c.kernels;
  if (c.eps) j["eps"] = *c.eps;
  if (c.dt) j["dt"] = *c.dt;
  if (c.T) j["T"] = *c.T;
  if (!c.N.empty()) j["N"] = c.N;
  if (!c.n.empty()) j["n"] = c.n;
  if (!c.k.empty()) j["k"] = c.k;
  if (c.replicates) j["replicates"] = *c.replicates;
  if (c.samples) j["samples"] = *c.samples;
  if (!c.hermite_coeffs.empty()) j["hermite_coeffs"] = c.hermite_coeffs;
  if (!c.kappa.empty()) j["kappa"] = c.kappa;
  if (!c.checks.empty()) j["checks"] = c.checks;
  j["seed"] = c.seed;
  if (!c.out.empty()) j["out"] = c.out;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& c) { return config_json(c).dump(2); }

std::string to_json(const ResultRecord& r, bool include_wall_clock) {
  json j;
  j["config"] = config_json(r.config);
  j["library_version"] = r.version;
  j["pass"] = r.pass;
  j["replicates"] = r.replicates;
  j["seed"] = r.config.seed;
  j["artifacts"] = r.artifacts;
  json qs = json::array();
  for (const auto& q : r.quantities) {
    qs.push_back({{"name", q.name},
                  {"estimate", q.estimate},
                  {"stderr", q.stderr_},
                  {"analytic_target", q.analytic_target},
                  {"tolerance", q.tolerance},
                  {"pass", q.pass}});
  }
  j["quantities"] = qs;
  if (include_wall_clock) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2) + "\n";
}

void write_result(const ResultRecord& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(r);
}

ResultRecord run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.config = config;
  rec.version = library_version();
  Recorder R{rec};
  const std::string& kind = config.kind;
  if (config.workers > 256) cap_error("workers", "must be at most 256");
  if (kind == "scalar-lln") run_scalar_lln(config, R);
  else if (kind == "scalar-clt") run_scalar_clt(config, R);
  else if (kind == "matrix-lln") run_matrix_lln(config, R);
  else if (kind == "matrix-clt") run_matrix_clt(config, R);
  else if (kind == "free-limit") run_free_limit(config, R);
  else if (kind == "constants") run_constants(config, R);
  else if (kind == "trace-tables") run_trace_tables(config, R);
  else if (kind == "mvariate") run_mvariate(config, R);
  else if (kind == "golden") run_golden(config, R);
  else {
    std::string list;
    for (const auto& k : kKinds) list += (list.empty() ? "" : ", ") + k;
    cap_error("kind", "must be one of " + list + ", got '" + kind + "'");
  }
  rec.pass = !rec.quantities.empty();
  for (const auto& q : rec.quantities) rec.pass = rec.pass && q.pass;
  rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace tracelimits
