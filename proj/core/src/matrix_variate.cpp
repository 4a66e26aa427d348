#include "tracelimits/matrix_variate.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tracelimits/pairings.hpp"
#include "tracelimits/trace_poly.hpp"

namespace tracelimits {
namespace {

constexpr int kMaxPowerSum = 3;

LaurentQ nq(std::initializer_list<std::pair<int, Rational>> terms) {
  LaurentQ r;
  for (auto [e, c] : terms) r.add_term(e, c);
  return r;
}

PowerSumExpr::Key key(int v1, int v2, int v3) { return {v1, v2, v3}; }

}  // namespace

std::string to_string(const IntPartition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

IntPartition parse_partition(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') t += c;
  IntPartition p;
  std::stringstream in(t);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    p.push_back(std::stoi(item));
  }
  if (p.empty()) throw std::invalid_argument("parse_partition: empty partition");
  for (int x : p)
    if (x < 1) throw std::invalid_argument("parse_partition: parts must be positive");
  std::sort(p.rbegin(), p.rend());
  return p;
}

std::vector<IntPartition> partitions_of(int n) {
  std::vector<IntPartition> out;
  IntPartition cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

IntPartition cycle_type(const Permutation0& sigma_hat) {
  IntPartition t;
  for (const auto& c : sigma_hat.cycles())
    if (c[0] != 0) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

CharacterTable::CharacterTable(int n) : n_(n) {
  switch (n) {
    case 1:
      irreps_ = {{1}};
      classes_ = {{1}};
      chi_ = {{1}};
      break;
    case 2:
      irreps_ = {{2}, {1, 1}};
      classes_ = {{1, 1}, {2}};
      chi_ = {{1, 1}, {1, -1}};
      break;
    case 3:
      irreps_ = {{3}, {2, 1}, {1, 1, 1}};
      classes_ = {{1, 1, 1}, {2, 1}, {3}};
      chi_ = {{1, 1, 1}, {2, 0, -1}, {1, -1, 1}};
      break;
    default:
      throw std::invalid_argument("CharacterTable: only n = 1, 2, 3 are stored");
  }
}

int CharacterTable::value(const IntPartition& kappa, const IntPartition& cls) const {
  auto ki = std::find(irreps_.begin(), irreps_.end(), kappa);
  auto ci = std::find(classes_.begin(), classes_.end(), cls);
  if (ki == irreps_.end() || ci == classes_.end()) {
    throw std::invalid_argument("CharacterTable: unsupported partition " + to_string(kappa) + " / " + to_string(cls));
  }
  return chi_[ki - irreps_.begin()][ci - classes_.begin()];
}

int CharacterTable::inner_product(const IntPartition& kappa, const IntPartition& lambda) const {
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 1);
  int s = 0;
  do {
    std::vector<int> img{0};
    img.insert(img.end(), perm.begin(), perm.end());
    const auto t = cycle_type(Permutation0(img));
    s += value(kappa, t) * value(lambda, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

void PowerSumExpr::add(const Key& nu, const LaurentQ& c) {
  if (c.is_zero()) return;
  if (nu.size() != kMaxPowerSum) throw std::invalid_argument("PowerSumExpr: keys hold exponents of s1, s2, s3");
  auto it = terms_.find(nu);
  if (it == terms_.end()) {
    terms_.emplace(nu, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int PowerSumExpr::degree() const {
  int d = 0;
  for (const auto& [nu, c] : terms_) d = std::max(d, nu[0] + 2 * nu[1] + 3 * nu[2]);
  return d;
}

PowerSumExpr& PowerSumExpr::operator+=(const PowerSumExpr& o) {
  for (const auto& [nu, c] : o.terms_) add(nu, c);
  return *this;
}

PowerSumExpr operator*(const PowerSumExpr& a, const PowerSumExpr& b) {
  PowerSumExpr r;
  for (const auto& [na, ca] : a.terms_)
    for (const auto& [nb, cb] : b.terms_) r.add(key(na[0] + nb[0], na[1] + nb[1], na[2] + nb[2]), ca * cb);
  return r;
}

PowerSumExpr operator*(const Rational& c, const PowerSumExpr& a) {
  PowerSumExpr r;
  for (const auto& [nu, x] : a.terms_) r.add(nu, LaurentQ(c) * x);
  return r;
}

double PowerSumExpr::evaluate(const std::vector<double>& s, double N) const {
  double total = 0.0;
  for (const auto& [nu, c] : terms_) {
    double m = c.evaluate(N);
    for (int i = 0; i < kMaxPowerSum; ++i) m *= std::pow(s[i], nu[i]);
    total += m;
  }
  return total;
}

double PowerSumExpr::evaluate(const Eigen::MatrixXcd& X) const {
  const Eigen::MatrixXcd X2 = X * X;
  const std::vector<double> s{X.trace().real(), X2.trace().real(), (X2 * X).trace().real()};
  return evaluate(s, static_cast<double>(X.rows()));
}

std::string PowerSumExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Key, LaurentQ>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const int da = a.first[0] + 2 * a.first[1] + 3 * a.first[2];
    const int db = b.first[0] + 2 * b.first[1] + 3 * b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [nu, c] : ordered) {
    std::string mono;
    for (int i = 0; i < kMaxPowerSum; ++i) {
      if (nu[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "s" + std::to_string(i + 1) + (nu[i] > 1 ? "^" + std::to_string(nu[i]) : "");
    }
    std::string coeff;
    bool negative = false;
    if (c.terms().size() == 1) {
      auto [e, x] = *c.terms().begin();
      negative = x < Rational(0);
      const Rational mag = negative ? -x : x;
      std::string var = e == 0 ? "" : (e == 1 ? "N" : "N^" + std::to_string(e));
      if (mag != Rational(1) || (var.empty() && mono.empty())) coeff = coeff_string(mag);
      if (!var.empty()) coeff += (coeff.empty() ? "" : "*") + var;
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    std::string body = coeff;
    if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    if (negative) out += first ? "-" : " - ";
    else if (!first) out += " + ";
    out += body;
    first = false;
  }
  return out;
}

PowerSumExpr power_sum_monomial(const PowerSumExpr::Key& nu, const LaurentQ& c) {
  PowerSumExpr p;
  p.add(nu, c);
  return p;
}

PowerSumExpr hermite_tilde_sigma_hat(const Permutation0& sigma_hat) {
  if (!sigma_hat.fixes_zero()) throw std::invalid_argument("hermite_tilde_sigma_hat: permutation moves 0");
  const int n = sigma_hat.n();
  if (n < 1 || n > kMaxPowerSum) throw std::invalid_argument("hermite_tilde_sigma_hat: n must be in [1, 3]");
  const TracePolynomial poly = hermite_trace_polynomial(n, sigma_hat);
  PowerSumExpr out;
  for (const auto& [beta, coeff] : poly.terms()) {
    PowerSumExpr::Key nu(kMaxPowerSum, 0);
    for (int len : cycle_type(beta)) ++nu[len - 1];
    out.add(nu, to_rational(coeff.at_u_power_of_N(1)));
  }
  return out;
}

PowerSumExpr hermite_kappa(const IntPartition& kappa) {
  const int n = std::accumulate(kappa.begin(), kappa.end(), 0);
  if (n < 1 || n > kMaxPowerSum) throw std::invalid_argument("hermite_kappa: unsupported partition " + to_string(kappa));
  const CharacterTable table(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  PowerSumExpr out;
  do {
    std::vector<int> img{0};
    img.insert(img.end(), perm.begin(), perm.end());
    const Permutation0 sigma_hat(img);
    const int chi = table.value(kappa, cycle_type(sigma_hat));
    if (chi != 0) out += Rational(chi) * hermite_tilde_sigma_hat(sigma_hat);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

PowerSumExpr reference_hermite_kappa(const IntPartition& kappa) {
  PowerSumExpr p;
  auto c = [](std::int64_t a, std::int64_t b = 1) { return LaurentQ(Rational(a, b)); };
  if (kappa == IntPartition{1, 1}) {
    p.add(key(2, 0, 0), c(1, 2));
    p.add(key(0, 1, 0), c(-1, 2));
    p.add(key(0, 0, 0), nq({{2, Rational(1, 2)}, {1, Rational(-1, 2)}}));
  } else if (kappa == IntPartition{2}) {
    p.add(key(2, 0, 0), c(1));
    p.add(key(0, 1, 0), c(1));
    p.add(key(0, 0, 0), nq({{2, Rational(-1)}, {1, Rational(-1)}}));
  } else if (kappa == IntPartition{1, 1, 1}) {
    p.add(key(3, 0, 0), c(1, 6));
    p.add(key(1, 1, 0), c(-1, 2));
    p.add(key(0, 0, 1), c(1, 3));
    p.add(key(1, 0, 0), nq({{2, Rational(1, 2)}, {1, Rational(-3, 2)}, {0, Rational(1)}}));
  } else if (kappa == IntPartition{2, 1}) {
    p.add(key(3, 0, 0), c(1, 3));
    p.add(key(0, 0, 1), c(-1, 3));
  } else if (kappa == IntPartition{3}) {
    p.add(key(3, 0, 0), c(1, 6));
    p.add(key(1, 1, 0), c(1, 2));
    p.add(key(0, 0, 1), c(1, 3));
    p.add(key(1, 0, 0), nq({{2, Rational(1, 2)}, {1, Rational(3, 2)}, {0, Rational(1)}}));
  } else {
    throw std::invalid_argument("reference_hermite_kappa: unsupported partition " + to_string(kappa));
  }
  return p;
}

Proportionality proportionality_check(const PowerSumExpr& p, const PowerSumExpr& q) {
  Proportionality r;
  if (q.is_zero() || p.is_zero()) {
    r.detail = "zero polynomial";
    return r;
  }
  const auto& [nu, cq] = *q.terms().rbegin();
  auto it = p.terms().find(nu);
  if (it == p.terms().end()) {
    r.detail = "monomial missing from the first polynomial";
    return r;
  }
  const int e = cq.max_exponent();
  r.constant = it->second.coefficient(e) / cq.coefficient(e);
  const PowerSumExpr scaled = r.constant * q;
  if (scaled == p) {
    r.proportional = true;
    r.detail = "ratio " + coeff_string(r.constant);
    return r;
  }
  PowerSumExpr diff = p;
  diff += Rational(-1) * scaled;
  r.detail = "not proportional; with ratio " + coeff_string(r.constant) + " the difference is " + diff.to_string();
  return r;
}

Proportionality proportionality_check(const IntPartition& kappa) {
  return proportionality_check(hermite_kappa(kappa), reference_hermite_kappa(kappa));
}

LaurentQ gaussian_expectation(const PowerSumExpr& p) {
  LaurentQ total;
  for (const auto& [nu, c] : p.terms()) {
    std::vector<std::vector<int>> cycles{{0}};
    int next = 1;
    for (int len = 1; len <= kMaxPowerSum; ++len) {
      for (int m = 0; m < nu[len - 1]; ++m) {
        std::vector<int> cyc;
        for (int i = 0; i < len; ++i) cyc.push_back(next++);
        cycles.push_back(cyc);
      }
    }
    const int L = next - 1;
    if (L == 0) {
      total += c;
      continue;
    }
    if (L % 2 != 0) continue;
    const Permutation0 gamma = Permutation0::from_cycles(L, cycles);
    LaurentN moment;
    for_each_perfect_pairing(L, [&](const std::vector<int>& partner) {
      moment.add_term(cyc0_of_product(partner, gamma), 1);
    });
    total += to_rational(moment) * c;
  }
  return total;
}

Eigen::MatrixXcd sample_gaussian_hermitian(int N, NormalStream& rng) {
  Eigen::MatrixXcd X(N, N);
  const double s = std::sqrt(0.5);
  for (int i = 0; i < N; ++i) X(i, i) = rng();
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double re = s * rng();
      const double im = s * rng();
      X(i, j) = {re, im};
      X(j, i) = {re, -im};
    }
  return X;
}

MCEstimate mc_orthogonality(const IntPartition& kappa, const IntPartition& lambda, int N, std::size_t samples,
                            std::uint64_t seed) {
  if (samples < 100) throw std::invalid_argument("mc_orthogonality: need at least 100 samples");
  const PowerSumExpr p = hermite_kappa(kappa);
  const PowerSumExpr q = hermite_kappa(lambda);
  NormalStream rng(seed);
  std::vector<double> prod(samples);
  for (std::size_t r = 0; r < samples; ++r) {
    const auto X = sample_gaussian_hermitian(N, rng);
    prod[r] = p.evaluate(X) * q.evaluate(X);
  }
  return estimate_mean(prod, seed);
}

MatrixKernel::MatrixKernel(double support_halfwidth, double step, std::vector<Eigen::MatrixXd> cells)
    : a_(support_halfwidth), h_(step), cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("MatrixKernel: no cells");
  N_ = static_cast<int>(cells_[0].rows());
  const double ratio = 2.0 * a_ / h_;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || static_cast<std::size_t>(std::llround(ratio)) != cells_.size()) {
    throw std::invalid_argument("MatrixKernel: cell count does not match the grid");
  }
  for (const auto& c : cells_)
    if (c.rows() != N_ || c.cols() != N_) throw std::invalid_argument("MatrixKernel: cells must be N x N");
}

namespace {

Eigen::MatrixXd gram_of(const std::vector<Eigen::MatrixXd>& cells, double h) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(cells[0].cols(), cells[0].cols());
  for (const auto& c : cells) G += c.transpose() * c;
  return G * h;
}

}  // namespace

MatrixKernel make_matrix_kernel(double support_halfwidth, double step, std::vector<Eigen::MatrixXd> cells) {
  if (cells.empty()) throw std::invalid_argument("make_matrix_kernel: no cells");
  const Eigen::MatrixXd G = gram_of(cells, step);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const auto ev = es.eigenvalues();
  if (ev.minCoeff() < 0.99 || ev.maxCoeff() > 1.01) {
    throw std::invalid_argument("make_matrix_kernel: integral of Phi^T Phi is not within 1% of the identity");
  }
  const Eigen::MatrixXd inv_sqrt = es.operatorInverseSqrt();
  for (auto& c : cells) c = c * inv_sqrt;
  return MatrixKernel(support_halfwidth, step, std::move(cells));
}

MatrixKernel random_matrix_kernel(int N, double support_halfwidth, double step, std::uint64_t seed) {
  const auto count = static_cast<std::size_t>(std::llround(2.0 * support_halfwidth / step));
  NormalStream rng(seed);
  std::vector<Eigen::MatrixXd> cells(count, Eigen::MatrixXd(N, N));
  for (auto& c : cells)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) c(i, j) = rng();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_of(cells, step));
  const Eigen::MatrixXd inv_sqrt = es.operatorInverseSqrt();
  for (auto& c : cells) c = c * inv_sqrt;
  return make_matrix_kernel(support_halfwidth, step, std::move(cells));
}

MatrixKernel scalar_matrix_kernel(const Kernel& k, int N) {
  std::vector<Eigen::MatrixXd> cells;
  for (double v : k.values()) cells.push_back(v * Eigen::MatrixXd::Identity(N, N));
  return MatrixKernel(k.support_halfwidth(), k.step(), std::move(cells));
}

double RectCovariance::max_abs_eigenvalue() const {
  double m = 0.0;
  for (const auto& A : R_abs) m = std::max(m, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().maxCoeff());
  return m;
}

double RectCovariance::min_abs_eigenvalue() const {
  double m = 1e300;
  for (const auto& A : R_abs) m = std::min(m, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().minCoeff());
  return m;
}

RectCovariance rect_covariance(const MatrixKernel& phi) {
  const auto& c = phi.cells();
  const int C = static_cast<int>(c.size());
  const int N = phi.N();
  RectCovariance rc;
  rc.step = phi.step();
  rc.half = C;
  for (int m = -C; m <= C; ++m) {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < C; ++j) {
      const int k = j + m;
      if (k >= 0 && k < C) R += c[j].transpose() * c[k];
    }
    R *= phi.step();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R * R.transpose());
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    rc.R_abs.push_back(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
    rc.R.push_back(std::move(R));
  }
  return rc;
}

RectCovarianceReport rect_process_covariance_check(const MatrixKernel& phi, int ell, std::size_t samples, double t1,
                                                   double t2, std::uint64_t seed, double z_tol) {
  const int N = phi.N();
  if (ell < 1 || ell > N) throw std::invalid_argument("rect_process_covariance_check: need 1 <= ell <= N");
  if (samples < 100) throw std::invalid_argument("rect_process_covariance_check: need at least 100 samples");
  const double h = phi.step();
  const long T1 = std::lround(t1 / h), T2 = std::lround(t2 / h);
  if (std::abs(T1 * h - t1) > 1e-9 || std::abs(T2 * h - t2) > 1e-9) {
    throw std::invalid_argument("rect_process_covariance_check: times must lie on the kernel grid");
  }
  const long A = std::lround(phi.support_halfwidth() / h);
  const long C = static_cast<long>(phi.cells().size());
  // increment c covers [c h, (c+1) h); output T sees kernel cell T - 1 + A - c
  const long lo = std::min(T1, T2) - 1 + A - (C - 1);
  const long hi = std::max(T1, T2) - 1 + A;
  const long width = hi - lo + 1;
  const int D = ell * N;
  std::vector<RunningStats> acc(static_cast<std::size_t>(D) * D);
  NormalStream rng(seed);
  std::vector<double> dW(static_cast<std::size_t>(ell) * N * width);
  Eigen::MatrixXd X1(ell, N), X2(ell, N);
  const double sd = std::sqrt(h);
  auto build = [&](long T, Eigen::MatrixXd& X) {
    X.setZero();
    for (long c = T - 1 + A - (C - 1); c <= T - 1 + A; ++c) {
      const Eigen::MatrixXd& P = phi.cells()[static_cast<std::size_t>(T - 1 + A - c)];
      for (int i = 0; i < ell; ++i)
        for (int k = 0; k < N; ++k) {
          const double w = dW[(static_cast<std::size_t>(i) * N + k) * width + (c - lo)];
          X.row(i) += w * P.row(k);
        }
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& x : dW) x = sd * rng();
    build(T1, X1);
    build(T2, X2);
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < N; ++j)
        for (int r = 0; r < ell; ++r)
          for (int q = 0; q < N; ++q) acc[(i * N + j) * D + (r * N + q)].add(X2(i, j) * X1(r, q));
  }
  const RectCovariance rc = rect_covariance(phi);
  auto lag = [&](long m, int j, int q) { return (m < -rc.half || m > rc.half) ? 0.0 : rc.at(static_cast<int>(m))(j, q); };
  RectCovarianceReport rep;
  rep.t1 = t1;
  rep.t2 = t2;
  rep.samples = samples;
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < N; ++j)
      for (int r = 0; r < ell; ++r)
        for (int q = 0; q < N; ++q) {
          const auto& a = acc[(i * N + j) * D + (r * N + q)];
          const double se = a.stderr_mean();
          const double target = i == r ? lag(T1 - T2, j, q) : 0.0;
          const double target_t = i == r ? lag(T2 - T1, j, q) : 0.0;
          if (se > 0) {
            rep.max_z = std::max(rep.max_z, std::abs(a.mean() - target) / se);
            rep.max_z_transposed = std::max(rep.max_z_transposed, std::abs(a.mean() - target_t) / se);
          }
        }
  rep.pass = rep.max_z <= z_tol;
  return rep;
}

}  // namespace tracelimits
