#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace tracelimits {

using Rational = boost::rational<std::int64_t>;

inline double to_double(std::int64_t x) { return static_cast<double>(x); }
inline double to_double(const Rational& x) {
  return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

inline std::string coeff_string(std::int64_t x) { return std::to_string(x); }
inline std::string coeff_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// Sum_e c_e N^e with exact coefficients. Zero coefficients are never stored.
template <class T>
class Laurent {
 public:
  Laurent() = default;
  Laurent(T c) { add_term(0, c); }  // NOLINT(implicit)
  static Laurent monomial(int e, T c = T(1)) {
    Laurent x;
    x.add_term(e, c);
    return x;
  }

  void add_term(int e, T c) {
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  const std::map<int, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  T coefficient(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }
  int max_exponent() const {
    if (terms_.empty()) throw std::logic_error("Laurent: zero has no exponent");
    return terms_.rbegin()->first;
  }
  int min_exponent() const {
    if (terms_.empty()) throw std::logic_error("Laurent: zero has no exponent");
    return terms_.begin()->first;
  }

  double evaluate(double N) const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += to_double(c) * std::pow(N, e);
    return s;
  }
  T evaluate_at_one() const {
    T s(0);
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) { return Laurent() - a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  Laurent shifted(int de) const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + de, c);
    return r;
  }

  bool operator==(const Laurent&) const = default;

  // Descending exponents, e.g. "1+3*N^-2", "N^2-N", "2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      T mag = c < T(0) ? -c : c;
      if (c < T(0)) s += "-";
      else if (!first) s += "+";
      first = false;
      std::string var;
      if (e == 1) var = "N";
      else if (e != 0) var = "N^" + std::to_string(e);
      if (var.empty()) s += coeff_string(mag);
      else if (mag == T(1)) s += var;
      else s += coeff_string(mag) + "*" + var;
    }
    return s;
  }

 private:
  std::map<int, T> terms_;
};

using LaurentN = Laurent<std::int64_t>;
using LaurentQ = Laurent<Rational>;

inline LaurentQ to_rational(const LaurentN& x) {
  LaurentQ r;
  for (const auto& [e, c] : x.terms()) r.add_term(e, Rational(c));
  return r;
}

}  // namespace tracelimits
