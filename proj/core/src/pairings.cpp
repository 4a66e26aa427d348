#include "tracelimits/pairings.hpp"

#include <stdexcept>
#include <string>

namespace tracelimits {
namespace {

void check_nk(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("pairings: n and k must be positive");
  if ((n * k) % 2 != 0) {
    throw std::invalid_argument("pairings: n*k = " + std::to_string(n * k) + " is odd, no perfect pairing exists");
  }
}

int block_of(int i, int n) { return (i - 1) / n; }

}  // namespace

void for_each_perfect_pairing(int m, const PairingVisitor& visit) {
  if (m % 2 != 0) return;
  std::vector<int> partner(m + 1, -1);
  partner[0] = 0;
  std::function<void(int)> rec = [&](int i) {
    while (i <= m && partner[i] != -1) ++i;
    if (i > m) {
      visit(partner);
      return;
    }
    for (int j = i + 1; j <= m; ++j) {
      if (partner[j] != -1) continue;
      partner[i] = j;
      partner[j] = i;
      rec(i + 1);
      partner[j] = -1;
    }
    partner[i] = -1;
  };
  rec(1);
}

void for_each_inhomogeneous_pairing(int n, int k, const PairingVisitor& visit) {
  check_nk(n, k);
  const int m = n * k;
  std::vector<int> partner(m + 1, -1);
  partner[0] = 0;
  std::function<void(int)> rec = [&](int i) {
    while (i <= m && partner[i] != -1) ++i;
    if (i > m) {
      visit(partner);
      return;
    }
    const int bi = block_of(i, n);
    for (int j = (bi + 1) * n + 1; j <= m; ++j) {
      if (partner[j] != -1) continue;
      partner[i] = j;
      partner[j] = i;
      rec(i + 1);
      partner[j] = -1;
    }
    partner[i] = -1;
  };
  rec(1);
}

std::vector<Partition12> enumerate_inhomogeneous_pairings(int n, int k) {
  check_nk(n, k);
  if (n * k > 24) throw std::invalid_argument("enumerate_inhomogeneous_pairings: n*k must be <= 24, got " + std::to_string(n * k));
  std::vector<Partition12> out;
  for_each_inhomogeneous_pairing(n, k, [&](const std::vector<int>& p) { out.emplace_back(p); });
  return out;
}

std::uint64_t count_inhomogeneous_pairings(int n, int k) {
  std::uint64_t c = 0;
  for_each_inhomogeneous_pairing(n, k, [&](const std::vector<int>&) { ++c; });
  return c;
}

void for_each_block_complete_pairing(int n, int k, const PairingVisitor& visit) {
  check_nk(n, k);
  if (k % 2 != 0) return;
  const int m = n * k;
  std::vector<int> partner(m + 1, -1);
  std::vector<int> block_mate(k, -1);
  partner[0] = 0;
  std::function<void(int)> rec = [&](int i) {
    while (i <= m && partner[i] != -1) ++i;
    if (i > m) {
      visit(partner);
      return;
    }
    const int bi = block_of(i, n);
    const bool fresh = block_mate[bi] == -1;
    for (int j = (bi + 1) * n + 1; j <= m; ++j) {
      if (partner[j] != -1) continue;
      const int bj = block_of(j, n);
      if (fresh ? block_mate[bj] != -1 : block_mate[bi] != bj) continue;
      partner[i] = j;
      partner[j] = i;
      if (fresh) {
        block_mate[bi] = bj;
        block_mate[bj] = bi;
      }
      rec(i + 1);
      if (fresh) {
        block_mate[bi] = -1;
        block_mate[bj] = -1;
      }
      partner[j] = -1;
    }
    partner[i] = -1;
  };
  rec(1);
}

bool is_inhomogeneous(const std::vector<int>& partner, int n) {
  const int m = static_cast<int>(partner.size()) - 1;
  for (int i = 1; i <= m; ++i) {
    if (partner[i] == i || block_of(partner[i], n) == block_of(i, n)) return false;
  }
  return true;
}

bool is_block_complete(const std::vector<int>& partner, int n, int k) {
  if (!is_inhomogeneous(partner, n)) return false;
  for (int b = 0; b < k; ++b) {
    const int target = block_of(partner[b * n + 1], n);
    for (int r = 2; r <= n; ++r)
      if (block_of(partner[b * n + r], n) != target) return false;
  }
  return true;
}

bool is_noncrossing(const std::vector<int>& partner) {
  const int m = static_cast<int>(partner.size()) - 1;
  for (int a = 1; a <= m; ++a) {
    const int c = partner[a];
    if (c <= a) continue;
    for (int b = a + 1; b < c; ++b) {
      const int d = partner[b];
      if (d > c || d < a) return false;
    }
  }
  return true;
}

bool is_block_rigid_noncrossing(const std::vector<int>& partner, int n, int k) {
  if (static_cast<int>(partner.size()) != n * k + 1) return false;
  if (!is_block_complete(partner, n, k)) return false;
  std::vector<int> bar(k + 1);
  bar[0] = 0;
  for (int b = 0; b < k; ++b) bar[b + 1] = block_of(partner[b * n + 1], n) + 1;
  if (!is_noncrossing(bar)) return false;
  for (int j = 1; j <= k; ++j) {
    const int l = bar[j];
    if (l < j) continue;
    for (int r = 1; r <= n; ++r)
      if (partner[(j - 1) * n + r] != l * n + 1 - r) return false;
  }
  return true;
}

bool is_block_rigid_noncrossing(const Partition12& pi, int n, int k) {
  std::vector<int> partner(pi.n() + 1);
  for (int i = 0; i <= pi.n(); ++i) partner[i] = pi.partner(i);
  return is_block_rigid_noncrossing(partner, n, k);
}

int cyc0_of_product(const std::vector<int>& partner, const Permutation0& alpha) {
  const int m = alpha.n();
  // thread_local scratch keeps the hot enumeration loops allocation free
  thread_local std::vector<char> seen;
  seen.assign(m + 1, 0);
  int cycles = 0;
  for (int s = 0; s <= m; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int x = s; !seen[x]; x = partner[alpha(x)]) seen[x] = 1;
  }
  return cycles - 1;
}

}  // namespace tracelimits
