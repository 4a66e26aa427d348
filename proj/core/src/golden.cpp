#include "tracelimits/golden.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tracelimits/limit_constants.hpp"
#include "tracelimits/matrix_variate.hpp"
#include "tracelimits/pairings.hpp"
#include "tracelimits/trace_poly.hpp"

namespace tracelimits {

const char* const kContractionHeader = "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power";
const char* const kPairingHeader = "pi,pi_alpha_tilde,cyc0,in_P_prime";

namespace {

std::string power_of_N(int p) {
  if (p == 0) return "1";
  if (p == 1) return "N";
  return "N^" + std::to_string(p);
}

std::string contraction_rows(int n, const Permutation0& alpha, const std::string& symbol) {
  std::ostringstream out;
  out << kContractionHeader << "\n";
  for (const auto& pi : enumerate_partition12(n)) {
    const Contraction c = contract(alpha, pi);
    out << pi.to_string() << "," << n - c.l << "," << c.pi_alpha.to_string() << "," << c.beta.to_string() << ","
        << trace_monomial_string(c.beta, symbol) << "," << c.l << "," << power_of_N(-c.n_exponent) << "\n";
  }
  return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

PowerSumExpr ps(std::initializer_list<std::pair<PowerSumExpr::Key, LaurentQ>> terms) {
  PowerSumExpr p;
  for (const auto& [k, c] : terms) p.add(k, c);
  return p;
}

LaurentQ lq(std::initializer_list<std::pair<int, std::int64_t>> terms) {
  LaurentQ r;
  for (auto [e, c] : terms) r.add_term(e, Rational(c));
  return r;
}

}  // namespace

std::string contraction_table_csv(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("contraction_table_csv: n must be in [1, 8]");
  return contraction_rows(n, Permutation0::full_cycle(n), "M");
}

std::string sigma_hat_table_csv(const Permutation0& sigma_hat) {
  if (!sigma_hat.fixes_zero()) throw std::invalid_argument("sigma_hat_table_csv: permutation moves 0");
  return contraction_rows(sigma_hat.n(), sigma_hat, "X");
}

std::string pairing_table_csv(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("pairing_table_csv: n must be in [1, 8]");
  const Permutation0 alpha = split_cycle_pair(n);
  std::ostringstream out;
  out << kPairingHeader << "\n";
  for (const auto& pi : enumerate_inhomogeneous_pairings(n, 2)) {
    const Permutation0 prod = compose(pi.as_permutation(), alpha);
    out << pi.to_string() << "," << prod.to_string() << "," << cyc0(prod) << ","
        << (classify_pairing(pi) == PairingClass::trace_A_squared ? 1 : 0) << "\n";
  }
  return out.str();
}

std::vector<GoldenFixture> golden_fixtures() {
  return {
      {"contraction n=2", "contraction", "2",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,2,(012),(012),M^2,0,1\n"
       "(12),1,(02)(1),(0),1,1,1\n"},
      {"contraction n=3", "contraction", "3",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,3,(0123),(0123),M^3,0,1\n"
       "(1)(23),2,(013)(2),(01),M,1,1\n"
       "(13)(2),2,(03)(12),(0)(1),Tr M,1,N^-1\n"
       "(12)(3),2,(023)(1),(01),M,1,1\n"},
      {"contraction n=4", "contraction", "4",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,4,(01234),(01234),M^4,0,1\n"
       "(1)(23)(4),3,(0134)(2),(012),M^2,1,1\n"
       "(1)(2)(34),3,(0124)(3),(012),M^2,1,1\n"
       "(1)(24)(3),3,(014)(23),(01)(2),M Tr M,1,N^-1\n"
       "(14)(2)(3),3,(04)(123),(0)(12),Tr M^2,1,N^-1\n"
       "(13)(2)(4),3,(034)(12),(02)(1),M Tr M,1,N^-1\n"
       "(12)(3)(4),3,(0234)(1),(012),M^2,1,1\n"
       "(12)(34),2,(024)(1)(3),(0),1,2,1\n"
       "(13)(24),2,(03214),(0),1,2,N^-2\n"
       "(14)(23),2,(04)(13)(2),(0),1,2,1\n"},
      {"pairing n=2", "pairing", "2",
       "pi,pi_alpha_tilde,cyc0,in_P_prime\n"
       "(13)(24),(0)(14)(23),2,0\n"
       "(14)(23),(0)(13)(24),2,1\n"},
      {"pairing n=3", "pairing", "3",
       "pi,pi_alpha_tilde,cyc0,in_P_prime\n"
       "(14)(25)(36),(0)(153426),1,1\n"
       "(14)(26)(35),(0)(16)(25)(34),3,0\n"
       "(15)(24)(36),(0)(14)(26)(35),3,0\n"
       "(15)(26)(34),(0)(163524),1,1\n"
       "(16)(24)(35),(0)(143625),1,1\n"
       "(16)(25)(34),(0)(15)(24)(36),3,1\n"},
      {"sigma_hat (0)(12)", "sigma_hat", "(0)(12)",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,2,(0)(12),(0)(12),Tr X^2,0,1\n"
       "(12),1,(0)(1)(2),(0),1,1,N\n"},
      {"sigma_hat (0)(1)(2)", "sigma_hat", "(0)(1)(2)",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,2,(0)(1)(2),(0)(1)(2),(Tr X)^2,0,1\n"
       "(12),1,(0)(12),(0),1,1,1\n"},
      {"sigma_hat (0)(123)", "sigma_hat", "(0)(123)",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,3,(0)(123),(0)(123),Tr X^3,0,1\n"
       "(12)(3),2,(0)(1)(23),(0)(1),Tr X,1,1\n"
       "(13)(2),2,(0)(12)(3),(0)(1),Tr X,1,1\n"
       "(1)(23),2,(0)(13)(2),(0)(1),Tr X,1,1\n"},
      {"sigma_hat (0)(12)(3)", "sigma_hat", "(0)(12)(3)",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,3,(0)(12)(3),(0)(12)(3),Tr X^2 Tr X,0,1\n"
       "(12)(3),2,(0)(1)(2)(3),(0)(1),Tr X,1,N\n"
       "(1)(23),2,(0)(132),(0)(1),Tr X,1,N^-1\n"
       "(13)(2),2,(0)(123),(0)(1),Tr X,1,N^-1\n"},
      {"sigma_hat (0)(1)(2)(3)", "sigma_hat", "(0)(1)(2)(3)",
       "pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power\n"
       "id,3,(0)(1)(2)(3),(0)(1)(2)(3),(Tr X)^3,0,1\n"
       "(12)(3),2,(0)(12)(3),(0)(1),Tr X,1,1\n"
       "(13)(2),2,(0)(13)(2),(0)(1),Tr X,1,1\n"
       "(1)(23),2,(0)(1)(23),(0)(1),Tr X,1,1\n"},
  };
}

std::string compute_fixture(const GoldenFixture& f) {
  if (f.kind == "contraction") return contraction_table_csv(std::stoi(f.argument));
  if (f.kind == "pairing") return pairing_table_csv(std::stoi(f.argument));
  if (f.kind == "sigma_hat") {
    const Permutation0 s = Permutation0::parse(f.argument);
    return sigma_hat_table_csv(s);
  }
  throw std::invalid_argument("compute_fixture: unknown table kind '" + f.kind + "'");
}

GoldenCheck compare_tables(const std::string& name, const std::string& expected, const std::string& computed) {
  GoldenCheck c;
  c.name = name;
  const auto exp = lines_of(expected);
  const auto got = lines_of(computed);
  if (exp.empty() || got.empty() || exp[0] != got[0]) {
    c.detail = "header mismatch";
    return c;
  }
  const auto columns = split(exp[0], ',');
  std::map<std::string, std::vector<std::string>> rows;
  for (std::size_t i = 1; i < got.size(); ++i) {
    auto f = split(got[i], ',');
    rows[f[0]] = f;
  }
  for (std::size_t i = 1; i < exp.size(); ++i) {
    const auto f = split(exp[i], ',');
    auto it = rows.find(f[0]);
    if (it == rows.end()) {
      c.detail = "row " + f[0] + ": not produced by the enumeration";
      return c;
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const std::string want = j < f.size() ? f[j] : "";
      const std::string have = j < it->second.size() ? it->second[j] : "";
      if (want != have) {
        c.detail = "row " + f[0] + ", column " + columns[j] + ": expected '" + want + "', computed '" + have + "'";
        return c;
      }
    }
    rows.erase(it);
  }
  if (!rows.empty()) {
    c.detail = "row " + rows.begin()->first + ": computed but absent from the fixture";
    return c;
  }
  c.pass = true;
  c.detail = std::to_string(exp.size() - 1) + " rows";
  return c;
}

GoldenReport golden_tables(const std::vector<GoldenFixture>& fixtures) {
  const auto t0 = std::chrono::steady_clock::now();
  GoldenReport r;
  for (const auto& f : fixtures) {
    try {
      r.checks.push_back(compare_tables(f.name, f.csv, compute_fixture(f)));
    } catch (const std::exception& e) {
      r.checks.push_back({f.name, false, e.what()});
    }
  }
  r.pass = !r.checks.empty();
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

GoldenReport golden_suite() { return golden_suite(golden_fixtures()); }

std::vector<GoldenCheck> hermite_display_checks() {
  std::vector<GoldenCheck> out;
  for (const auto& h : check_low_order_hermite()) {
    out.push_back({"hermite n=" + std::to_string(h.n), h.match,
                   h.match ? h.computed : "expected " + h.expected + ", computed " + h.computed});
  }
  return out;
}

std::vector<GoldenCheck> ab_display_checks() {
  std::vector<GoldenCheck> out;
  auto check = [&](const std::string& name, const LaurentN& got, const std::string& want) {
    const std::string s = got.to_string();
    out.push_back({name, s == want, s == want ? s : "expected " + want + ", computed " + s});
  };
  const auto ab2 = ab_coefficients(2);
  const auto ab3 = ab_coefficients(3);
  check("a2 n=2", ab2.a2, "1");
  check("b2 n=2", ab2.b2, "1");
  check("a2 n=3", ab3.a2, "1+3*N^-2");
  check("b2 n=3", ab3.b2, "2");
  return out;
}

namespace {

using K = PowerSumExpr::Key;

GoldenCheck ps_check(const std::string& name, const PowerSumExpr& got, const PowerSumExpr& want) {
  const bool ok = got == want;
  return {name, ok, ok ? got.to_string() : "expected " + want.to_string() + ", computed " + got.to_string()};
}

const std::vector<std::pair<IntPartition, PowerSumExpr>>& expected_combinations() {
  static const std::vector<std::pair<IntPartition, PowerSumExpr>> table{
      {{1, 1}, ps({{K{2, 0, 0}, lq({{0, 1}})}, {K{0, 1, 0}, lq({{0, -1}})}, {K{0, 0, 0}, lq({{2, 1}, {1, -1}})}})},
      {{2}, ps({{K{2, 0, 0}, lq({{0, 1}})}, {K{0, 1, 0}, lq({{0, 1}})}, {K{0, 0, 0}, lq({{2, -1}, {1, -1}})}})},
      {{1, 1, 1},
       ps({{K{3, 0, 0}, lq({{0, -1}})},
           {K{1, 1, 0}, lq({{0, 3}})},
           {K{0, 0, 1}, lq({{0, -2}})},
           {K{1, 0, 0}, lq({{2, -3}, {1, 9}, {0, -6}})}})},
      {{2, 1}, ps({{K{3, 0, 0}, lq({{0, -2}})}, {K{0, 0, 1}, lq({{0, 2}})}})},
      {{3},
       ps({{K{3, 0, 0}, lq({{0, -1}})},
           {K{1, 1, 0}, lq({{0, -3}})},
           {K{0, 0, 1}, lq({{0, -2}})},
           {K{1, 0, 0}, lq({{2, 3}, {1, 9}, {0, 6}})}})},
  };
  return table;
}

}  // namespace

std::vector<GoldenCheck> sigma_hat_display_checks() {
  const std::vector<std::pair<std::string, PowerSumExpr>> displays{
      {"(0)(12)", ps({{K{0, 1, 0}, lq({{0, 1}})}, {K{0, 0, 0}, lq({{2, -1}})}})},
      {"(0)(1)(2)", ps({{K{2, 0, 0}, lq({{0, 1}})}, {K{0, 0, 0}, lq({{1, -1}})}})},
      {"(0)(123)", ps({{K{0, 0, 1}, lq({{0, -1}})}, {K{1, 0, 0}, lq({{1, 3}})}})},
      {"(0)(12)(3)", ps({{K{1, 1, 0}, lq({{0, -1}})}, {K{1, 0, 0}, lq({{2, 1}, {0, 2}})}})},
      {"(0)(1)(2)(3)", ps({{K{3, 0, 0}, lq({{0, -1}})}, {K{1, 0, 0}, lq({{1, 3}})}})},
  };
  std::vector<GoldenCheck> out;
  for (const auto& [s, want] : displays) out.push_back(ps_check("H~ " + s, hermite_tilde_sigma_hat(Permutation0::parse(s)), want));
  return out;
}

std::vector<GoldenCheck> character_combination_checks() {
  std::vector<GoldenCheck> out;
  for (const auto& [kappa, want] : expected_combinations())
    out.push_back(ps_check("H_kappa " + to_string(kappa), hermite_kappa(kappa), want));
  return out;
}

std::vector<GoldenCheck> reference_multiple_checks() {
  std::vector<GoldenCheck> out;
  for (const auto& [kappa, want] : expected_combinations()) {
    const Proportionality p = proportionality_check(kappa);
    out.push_back({"reference multiple " + to_string(kappa), p.proportional, p.detail});
  }
  return out;
}

GoldenReport golden_suite(const std::vector<GoldenFixture>& fixtures) {
  const auto t0 = std::chrono::steady_clock::now();
  GoldenReport r = golden_tables(fixtures);
  for (auto group : {hermite_display_checks(), ab_display_checks(), sigma_hat_display_checks(),
                     character_combination_checks(), reference_multiple_checks()}) {
    r.checks.insert(r.checks.end(), group.begin(), group.end());
  }
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace tracelimits
