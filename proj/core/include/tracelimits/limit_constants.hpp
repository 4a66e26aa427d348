#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tracelimits/kernel.hpp"
#include "tracelimits/laurent.hpp"
#include "tracelimits/permutation.hpp"
#include "tracelimits/trace_poly.hpp"

namespace tracelimits {

// Sum over block-complete inhomogeneous pairings of [nk] of N^{cyc0(pi alpha_nk) - nk/2}.
LaurentN moment_constant(int k, int n);
// N -> infinity limit of moment_constant: catalan(k/2). Also checks the count
// of block-rigid non-crossing pairings.
std::uint64_t moment_constant_limit(int k);

// Exhaustive check of cyc0(pi alpha_nk) <= nk/2 over all inhomogeneous
// pairings, and of the equality cases over the block-complete ones.
struct CycleBoundReport {
  int n = 0;
  int k = 0;
  std::uint64_t inhomogeneous = 0;
  std::uint64_t violations = 0;           // cyc0 > nk/2
  std::uint64_t equality_all = 0;         // cyc0 == nk/2 among all inhomogeneous pairings
  std::uint64_t block_complete = 0;
  std::uint64_t equality_block_complete = 0;
  std::uint64_t rigid = 0;                // block-rigid non-crossing
  std::uint64_t mismatches = 0;           // block-complete with equality != rigid
  bool pass = false;
};
CycleBoundReport verify_cycle_bound(int n, int k);

// (0)(1 ... n)(n+1 ... 2n)
Permutation0 split_cycle_pair(int n);

enum class PairingClass { trace_A_squared, trace_A_times_trace_A };
const char* to_string(PairingClass c);

// For a perfect inhomogeneous pairing of two n-blocks: n and 2n share a cycle
// of pi * split_cycle_pair(n) or not.
PairingClass classify_pairing(const Partition12& pi);

struct ABCoefficients {
  LaurentN a2;
  LaurentN b2;
};
ABCoefficients ab_coefficients(int n);

// Pairings whose product with split_cycle_pair(n) is (0) times n transpositions.
std::pair<std::int64_t, std::int64_t> leading_pairing_counts(int n);

// sigma_n^2 (a^2 tr A^2 + b^2 (tr A)^2) with the normalized trace.
double variance_functional(const Matrix& A, int n, int N, const Autocorrelation& rho);

}  // namespace tracelimits
