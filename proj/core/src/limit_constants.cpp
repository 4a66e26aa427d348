#include "tracelimits/limit_constants.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "tracelimits/pairings.hpp"

namespace tracelimits {
namespace {

LaurentN from_counts(const std::map<int, std::int64_t>& counts) {
  LaurentN r;
  for (const auto& [e, c] : counts) r.add_term(e, c);
  return r;
}

bool same_cycle(const std::vector<int>& partner, const Permutation0& alpha, int x, int y) {
  int z = x;
  do {
    if (z == y) return true;
    z = partner[alpha(z)];
  } while (z != x);
  return false;
}

}  // namespace

LaurentN moment_constant(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("moment_constant: k and n must be positive");
  if (k % 2 != 0) throw std::domain_error("moment_constant: odd moment k = " + std::to_string(k) + " vanishes");
  if (n * k > 24) throw std::invalid_argument("moment_constant: n*k must be <= 24, got " + std::to_string(n * k));
  const Permutation0 alpha = Permutation0::full_cycle(n * k);
  std::map<int, std::int64_t> counts;
  for_each_block_complete_pairing(n, k, [&](const std::vector<int>& partner) {
    ++counts[cyc0_of_product(partner, alpha) - n * k / 2];
  });
  return from_counts(counts);
}

std::uint64_t moment_constant_limit(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("moment_constant_limit: k must be even and positive");
  const std::uint64_t c = catalan(k / 2);
  if (k <= 8) {
    std::uint64_t rigid = 0;
    for_each_block_complete_pairing(1, k, [&](const std::vector<int>& p) {
      if (is_block_rigid_noncrossing(p, 1, k)) ++rigid;
    });
    if (rigid != c) throw std::logic_error("moment_constant_limit: rigid pairing count disagrees with Catalan number");
  }
  return c;
}

CycleBoundReport verify_cycle_bound(int n, int k) {
  if (n < 1 || k < 2 || (n * k) % 2 != 0) throw std::invalid_argument("verify_cycle_bound: need n >= 1, k >= 2, nk even");
  if (n * k > 18) throw std::invalid_argument("verify_cycle_bound: n*k must be <= 18, got " + std::to_string(n * k));
  const Permutation0 alpha = Permutation0::full_cycle(n * k);
  const int half = n * k / 2;
  CycleBoundReport r;
  r.n = n;
  r.k = k;
  for_each_inhomogeneous_pairing(n, k, [&](const std::vector<int>& partner) {
    ++r.inhomogeneous;
    const int c = cyc0_of_product(partner, alpha);
    if (c > half) ++r.violations;
    if (c == half) ++r.equality_all;
    if (!is_block_complete(partner, n, k)) return;
    ++r.block_complete;
    const bool rigid = is_block_rigid_noncrossing(partner, n, k);
    if (rigid) ++r.rigid;
    if (c == half) ++r.equality_block_complete;
    if ((c == half) != rigid) ++r.mismatches;
  });
  r.pass = r.violations == 0 && r.mismatches == 0 && (k % 2 != 0 || r.rigid == catalan(k / 2));
  return r;
}

Permutation0 split_cycle_pair(int n) {
  std::vector<int> first, second;
  for (int i = 1; i <= n; ++i) first.push_back(i);
  for (int i = n + 1; i <= 2 * n; ++i) second.push_back(i);
  return Permutation0::from_cycles(2 * n, {{0}, first, second});
}

const char* to_string(PairingClass c) {
  return c == PairingClass::trace_A_squared ? "trace_A_squared" : "trace_A_times_trace_A";
}

PairingClass classify_pairing(const Partition12& pi) {
  const int m = pi.n();
  if (m % 2 != 0 || !pi.is_perfect()) throw std::invalid_argument("classify_pairing: need a perfect pairing of [2n]");
  const int n = m / 2;
  std::vector<int> partner(m + 1);
  for (int i = 0; i <= m; ++i) partner[i] = pi.partner(i);
  if (!is_inhomogeneous(partner, n)) throw std::invalid_argument("classify_pairing: pairing is not inhomogeneous");
  return same_cycle(partner, split_cycle_pair(n), n, 2 * n) ? PairingClass::trace_A_squared
                                                            : PairingClass::trace_A_times_trace_A;
}

ABCoefficients ab_coefficients(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("ab_coefficients: n must be in [1, 10], got " + std::to_string(n));
  const Permutation0 alpha = split_cycle_pair(n);
  std::map<int, std::int64_t> a, b;
  for_each_inhomogeneous_pairing(n, 2, [&](const std::vector<int>& partner) {
    const int e = cyc0_of_product(partner, alpha) - n;
    if (same_cycle(partner, alpha, n, 2 * n)) ++a[e];
    else ++b[e];
  });
  return {from_counts(a), from_counts(b)};
}

std::pair<std::int64_t, std::int64_t> leading_pairing_counts(int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("leading_pairing_counts: n must be in [2, 10]");
  const Permutation0 alpha = split_cycle_pair(n);
  std::int64_t sq = 0, prod = 0;
  for_each_inhomogeneous_pairing(n, 2, [&](const std::vector<int>& partner) {
    // n transpositions plus the fixed 0 means exactly n cycles away from 0
    if (cyc0_of_product(partner, alpha) != n) return;
    if (same_cycle(partner, alpha, n, 2 * n)) ++sq;
    else ++prod;
  });
  return {sq, prod};
}

double variance_functional(const Matrix& A, int n, int N, const Autocorrelation& rho) {
  if (A.rows() != N || A.cols() != N) throw std::invalid_argument("variance_functional: dimension mismatch");
  const auto ab = ab_coefficients(n);
  const double trA = A.trace().real() / N;
  const double trA2 = (A * A).trace().real() / N;
  return sigma_q_squared(rho, n) * (ab.a2.evaluate(N) * trA2 + ab.b2.evaluate(N) * trA * trA);
}

}  // namespace tracelimits
