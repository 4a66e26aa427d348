#pragma once

#include <string>
#include <vector>

#include "tracelimits/permutation.hpp"

namespace tracelimits {

// CSV tables in the appendix layout, computed by enumeration.
extern const char* const kContractionHeader;  // pi,sign_exponent,pi_alpha,beta,trace_monomial,l,q_power
extern const char* const kPairingHeader;      // pi,pi_alpha_tilde,cyc0,in_P_prime
std::string contraction_table_csv(int n);
std::string sigma_hat_table_csv(const Permutation0& sigma_hat);
std::string pairing_table_csv(int n);

struct GoldenFixture {
  std::string name;
  std::string kind;  // "contraction", "pairing" or "sigma_hat"
  std::string argument;  // n, or sigma_hat in cycle notation
  std::string csv;
};
std::vector<GoldenFixture> golden_fixtures();
std::string compute_fixture(const GoldenFixture& f);

struct GoldenCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Rows are keyed by their first column; reports the first mismatching row
// and column.
GoldenCheck compare_tables(const std::string& name, const std::string& expected, const std::string& computed);

struct GoldenReport {
  std::vector<GoldenCheck> checks;
  bool pass = false;
  double seconds = 0.0;
};
std::vector<GoldenCheck> hermite_display_checks();
std::vector<GoldenCheck> ab_display_checks();
std::vector<GoldenCheck> sigma_hat_display_checks();
std::vector<GoldenCheck> character_combination_checks();
// Multiples of the printed reference polynomials, computed not assumed.
std::vector<GoldenCheck> reference_multiple_checks();

GoldenReport golden_tables(const std::vector<GoldenFixture>& fixtures);
// Tables plus the exact identities: low-order Hermite expansions, a^2 and
// b^2 for n = 2, 3, the sigma-hat polynomials and the character combinations.
GoldenReport golden_suite();
GoldenReport golden_suite(const std::vector<GoldenFixture>& fixtures);

}  // namespace tracelimits
