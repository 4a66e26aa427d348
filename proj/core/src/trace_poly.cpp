#include "tracelimits/trace_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tracelimits/pairings.hpp"

namespace tracelimits {

UNCoefficient UNCoefficient::term(int u_power, const LaurentN& c) {
  UNCoefficient x;
  x.add(u_power, c);
  return x;
}

void UNCoefficient::add(int u_power, const LaurentN& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(u_power);
  if (it == terms_.end()) {
    terms_.emplace(u_power, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

UNCoefficient& UNCoefficient::operator+=(const UNCoefficient& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

double UNCoefficient::evaluate(double u, double N) const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += c.evaluate(N) * std::pow(u, p);
  return s;
}

LaurentN UNCoefficient::at_u_power_of_N(int shift) const {
  LaurentN r;
  for (const auto& [p, c] : terms_) r += c.shifted(p * shift);
  return r;
}

namespace {

std::string power_string(const std::string& base, int p) {
  if (p == 1) return base;
  return base + "^" + std::to_string(p);
}

// Renders sign * factors; returns the sign separately.
struct RenderedTerm {
  bool negative = false;
  std::string body;
};

RenderedTerm render(const LaurentN& coeff, int u_power, const std::string& monomial) {
  RenderedTerm t;
  std::vector<std::string> factors;
  if (coeff.terms().size() == 1) {
    auto [e, c] = *coeff.terms().begin();
    t.negative = c < 0;
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) factors.push_back(std::to_string(mag));
    if (e != 0) factors.push_back(power_string("N", e));
  } else {
    factors.push_back("(" + coeff.to_string() + ")");
  }
  if (u_power > 0) factors.push_back(power_string("u", u_power));
  if (monomial != "1") factors.push_back(monomial);
  if (factors.empty()) factors.push_back("1");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) t.body += "*";
    t.body += factors[i];
  }
  return t;
}

}  // namespace

std::string UNCoefficient::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto t = render(it->second, it->first, "1");
    if (t.negative) s += first ? "-" : " - ";
    else if (!first) s += " + ";
    s += t.body;
    first = false;
  }
  return s;
}

Matrix eval_trace_monomial(const Permutation0& beta, const std::vector<Matrix>& args) {
  const int n = beta.n();
  if (static_cast<int>(args.size()) != n) {
    throw std::invalid_argument("eval_trace_monomial: expected " + std::to_string(n) + " arguments, got " +
                                std::to_string(args.size()));
  }
  if (n == 0) throw std::invalid_argument("eval_trace_monomial: matrix size unknown without arguments");
  const Eigen::Index N = args[0].rows();
  for (const auto& a : args) {
    if (a.rows() != N || a.cols() != N) throw std::invalid_argument("eval_trace_monomial: dimension mismatch");
  }
  Matrix out = Matrix::Identity(N, N);
  std::complex<double> scalar = 1.0;
  for (const auto& cyc : beta.cycles()) {
    if (cyc[0] == 0) {
      for (std::size_t i = 1; i < cyc.size(); ++i) out = out * args[cyc[i] - 1];
    } else {
      Matrix prod = args[cyc[0] - 1];
      for (std::size_t i = 1; i < cyc.size(); ++i) prod = prod * args[cyc[i] - 1];
      scalar *= prod.trace();
    }
  }
  return scalar * out;
}

Permutation0 canonical_equal_argument_form(const Permutation0& beta) {
  auto cycles = beta.cycles();
  const int p = static_cast<int>(cycles[0].size()) - 1;
  std::vector<int> lengths;
  for (std::size_t i = 1; i < cycles.size(); ++i) lengths.push_back(static_cast<int>(cycles[i].size()));
  std::sort(lengths.rbegin(), lengths.rend());
  std::vector<std::vector<int>> canon;
  std::vector<int> zero(p + 1);
  for (int i = 0; i <= p; ++i) zero[i] = i;
  canon.push_back(zero);
  int next = p + 1;
  for (int len : lengths) {
    std::vector<int> c(len);
    for (int i = 0; i < len; ++i) c[i] = next++;
    canon.push_back(c);
  }
  return Permutation0::from_cycles(beta.n(), canon);
}

std::string trace_monomial_string(const Permutation0& beta, const std::string& symbol) {
  auto cycles = beta.cycles();
  std::vector<std::string> parts;
  const int p = static_cast<int>(cycles[0].size()) - 1;
  if (p > 0) parts.push_back(power_string(symbol, p));
  std::vector<int> lengths;
  for (std::size_t i = 1; i < cycles.size(); ++i) lengths.push_back(static_cast<int>(cycles[i].size()));
  std::sort(lengths.rbegin(), lengths.rend());
  for (std::size_t i = 0; i < lengths.size();) {
    std::size_t j = i;
    while (j < lengths.size() && lengths[j] == lengths[i]) ++j;
    const int mult = static_cast<int>(j - i);
    std::string tr = "Tr " + power_string(symbol, lengths[i]);
    parts.push_back(mult == 1 ? tr : "(" + tr + ")^" + std::to_string(mult));
    i = j;
  }
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " " + parts[i];
  return s;
}

void TracePolynomial::add(const Permutation0& beta, const UNCoefficient& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    terms_.emplace(beta, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Matrix TracePolynomial::evaluate(const Matrix& M, double u) const {
  return CompiledTracePolynomial(*this, u, static_cast<int>(M.rows()))(M);
}

std::string TracePolynomial::to_string(const std::string& symbol) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Permutation0, UNCoefficient>> ordered(terms_.begin(), terms_.end());
  // highest matrix power first, then by number of arguments
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const auto za = a.first.zero_cycle().size(), zb = b.first.zero_cycle().size();
    if (za != zb) return za > zb;
    return a.first.n() > b.first.n();
  });
  std::string s;
  bool first = true;
  for (const auto& [beta, coeff] : ordered) {
    const std::string mono = trace_monomial_string(beta, symbol);
    for (auto it = coeff.terms().rbegin(); it != coeff.terms().rend(); ++it) {
      auto t = render(it->second, it->first, mono);
      if (t.negative) s += first ? "-" : " - ";
      else if (!first) s += " + ";
      s += t.body;
      first = false;
    }
  }
  return s;
}

TracePolynomial hermite_trace_polynomial(int n, const Permutation0& alpha) {
  if (alpha.n() != n) throw std::invalid_argument("hermite_trace_polynomial: alpha does not act on [0, n]");
  if (n < 0 || n > 8) throw std::invalid_argument("hermite_trace_polynomial: n must be in [0, 8], got " + std::to_string(n));
  TracePolynomial poly;
  for (const auto& pi : enumerate_partition12(n)) {
    const auto c = contract(alpha, pi);
    const std::int64_t sign = ((n - c.l) % 2 == 0) ? 1 : -1;
    poly.add(canonical_equal_argument_form(c.beta), UNCoefficient::term(c.l, LaurentN::monomial(-c.n_exponent, sign)));
  }
  return poly;
}

Matrix eval_hermite(const Permutation0& alpha, const Matrix& M, double u) {
  if (M.rows() != M.cols()) throw std::invalid_argument("eval_hermite: matrix is not square");
  return hermite_trace_polynomial(alpha.n(), alpha).evaluate(M, u);
}

CompiledTracePolynomial::CompiledTracePolynomial(const TracePolynomial& poly, double u, int N) : N_(N) {
  for (const auto& [beta, coeff] : poly.terms()) {
    Term t;
    auto cycles = beta.cycles();
    t.matrix_power = static_cast<int>(cycles[0].size()) - 1;
    degree_ = std::max(degree_, t.matrix_power);
    for (std::size_t i = 1; i < cycles.size(); ++i) {
      t.trace_powers.push_back(static_cast<int>(cycles[i].size()));
      degree_ = std::max(degree_, t.trace_powers.back());
    }
    t.coefficient = coeff.evaluate(u, N);
    terms_.push_back(std::move(t));
  }
}

Matrix CompiledTracePolynomial::operator()(const Matrix& M) const {
  if (M.rows() != N_ || M.cols() != N_) throw std::invalid_argument("trace polynomial: dimension mismatch");
  powers_.resize(degree_ + 1);
  traces_.resize(degree_ + 1);
  powers_[0].setIdentity(N_, N_);
  traces_[0] = static_cast<double>(N_);
  for (int p = 1; p <= degree_; ++p) {
    powers_[p].noalias() = powers_[p - 1] * M;
    traces_[p] = powers_[p].trace();
  }
  Matrix out = Matrix::Zero(N_, N_);
  for (const auto& t : terms_) {
    std::complex<double> s = t.coefficient;
    for (int q : t.trace_powers) s *= traces_[q];
    out += s * powers_[t.matrix_power];
  }
  return out;
}

void validate_gram(const GramMatrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("gram matrix is not square");
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(g(i, j) - g(j, i)) > 1e-12 * (1.0 + std::abs(g(i, j)))) {
        throw std::invalid_argument("gram matrix is not symmetric");
      }
}

Matrix mixed_moment(const Permutation0& alpha, const GramMatrix& gram, const std::vector<Matrix>& D) {
  const int n = alpha.n();
  validate_gram(gram);
  if (gram.rows() != n || static_cast<int>(D.size()) != n) {
    throw std::invalid_argument("mixed_moment: need an n x n gram matrix and n matrices");
  }
  if (n == 0) throw std::invalid_argument("mixed_moment: n must be positive");
  const Eigen::Index N = D[0].rows();
  Matrix acc = Matrix::Zero(N, N);
  if (n % 2 != 0) return acc;
  for_each_perfect_pairing(n, [&](const std::vector<int>& partner) {
    double w = 1.0;
    for (int i = 1; i <= n; ++i)
      if (partner[i] > i) w *= gram(i - 1, partner[i] - 1);
    if (w == 0.0) return;
    const Permutation0 pa = compose(Permutation0(partner), alpha);
    acc += w * eval_trace_monomial(pa, D);
  });
  return acc * std::pow(static_cast<double>(N), -n / 2.0);
}

void GramPolynomial::add(const std::vector<int>& exponents, const LaurentN& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

double GramPolynomial::evaluate(const GramMatrix& gram, double N) const {
  validate_gram(gram);
  if (gram.rows() != k_) throw std::invalid_argument("GramPolynomial: gram matrix has the wrong size");
  double s = 0.0;
  for (const auto& [ex, c] : terms_) {
    double w = c.evaluate(N);
    std::size_t idx = 0;
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j, ++idx) w *= std::pow(gram(i, j), ex[idx]);
    s += w;
  }
  return s;
}

std::map<int, LaurentN> GramPolynomial::single_parameter() const {
  std::map<int, LaurentN> out;
  for (const auto& [ex, c] : terms_) {
    int deg = 0;
    for (int e : ex) deg += e;
    out[deg] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::string GramPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [ex, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.to_string() + ")";
    std::size_t idx = 0;
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j, ++idx)
        if (ex[idx] > 0) s += "*g" + std::to_string(i + 1) + std::to_string(j + 1) + (ex[idx] > 1 ? "^" + std::to_string(ex[idx]) : "");
  }
  return s;
}

GramPolynomial product_moment(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("product_moment: n and k must be positive");
  if (n * k > 24) throw std::invalid_argument("product_moment: n*k must be <= 24, got " + std::to_string(n * k));
  GramPolynomial g(k);
  if ((n * k) % 2 != 0) return g;
  const Permutation0 alpha = Permutation0::full_cycle(n * k);
  const int half = n * k / 2;
  std::map<std::vector<int>, std::map<int, std::int64_t>> acc;
  std::vector<int> ex(static_cast<std::size_t>(k * (k - 1) / 2));
  auto pair_index = [k](int a, int b) { return a * k - a * (a + 1) / 2 + (b - a - 1); };
  for_each_inhomogeneous_pairing(n, k, [&](const std::vector<int>& partner) {
    std::fill(ex.begin(), ex.end(), 0);
    for (int i = 1; i <= n * k; ++i) {
      if (partner[i] < i) continue;
      const int a = (i - 1) / n, b = (partner[i] - 1) / n;
      ++ex[pair_index(std::min(a, b), std::max(a, b))];
    }
    ++acc[ex][cyc0_of_product(partner, alpha) - half];
  });
  for (const auto& [key, byexp] : acc) {
    LaurentN c;
    for (const auto& [e, cnt] : byexp) c.add_term(e, cnt);
    g.add(key, c);
  }
  return g;
}

double product_moment(int n, int k, const GramMatrix& gram, double N) {
  return product_moment(n, k).evaluate(gram, N);
}

TracePolynomial expected_low_order_hermite(int n) {
  auto P = [](const char* s, int n_args) { return Permutation0::parse(s, n_args); };
  auto C = [](int u_power, std::int64_t c, int e = 0) { return UNCoefficient::term(u_power, LaurentN::monomial(e, c)); };
  TracePolynomial t;
  switch (n) {
    case 1:
      t.add(P("(01)", 1), C(0, -1));
      break;
    case 2:
      t.add(P("(012)", 2), C(0, 1));
      t.add(P("(0)", 0), C(1, -1));
      break;
    case 3:
      t.add(P("(0123)", 3), C(0, -1));
      t.add(P("(01)", 1), C(1, 2));
      t.add(P("(0)(1)", 1), C(1, 1, -1));
      break;
    case 4: {
      t.add(P("(01234)", 4), C(0, 1));
      t.add(P("(01)(2)", 2), C(1, -2, -1));
      t.add(P("(012)", 2), C(1, -3));
      t.add(P("(0)(12)", 2), C(1, -1, -1));
      UNCoefficient c2;
      c2.add(2, LaurentN(2) + LaurentN::monomial(-2));
      t.add(P("(0)", 0), c2);
      break;
    }
    default:
      throw std::invalid_argument("expected_low_order_hermite: only n = 1..4");
  }
  return t;
}

std::vector<HermiteCheck> check_low_order_hermite() {
  std::vector<HermiteCheck> out;
  for (int n = 1; n <= 4; ++n) {
    const auto expected = expected_low_order_hermite(n);
    const auto got = hermite_trace_polynomial(n, Permutation0::full_cycle(n));
    out.push_back({n, expected.to_string(), got.to_string(), expected == got});
  }
  return out;
}

}  // namespace tracelimits
