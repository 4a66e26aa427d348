#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tracelimits {

// Permutation of {0, ..., n}.
class Permutation0 {
 public:
  Permutation0() : image_{0} {}
  explicit Permutation0(std::vector<int> image);

  static Permutation0 identity(int n);
  // (0 1 ... n)
  static Permutation0 full_cycle(int n);
  // Parses cycle notation such as "(0123)(4)" or "(0 10 3)". Elements not
  // mentioned are fixed; n is the largest element mentioned unless given.
  static Permutation0 parse(std::string_view text, int n = -1);
  static Permutation0 from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int n() const { return static_cast<int>(image_.size()) - 1; }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  // Canonical cycles: each starts at its minimum, sorted by minimum.
  std::vector<std::vector<int>> cycles() const;
  std::vector<int> zero_cycle() const;
  bool fixes_zero() const { return image_[0] == 0; }
  bool is_identity() const;
  std::string to_string() const;

  auto operator<=>(const Permutation0&) const = default;

 private:
  std::vector<int> image_;
};

Permutation0 compose(const Permutation0& p, const Permutation0& q);
Permutation0 inverse(const Permutation0& p);
int cyc0(const Permutation0& p);
int cycle_count(const Permutation0& p);

// Removes the elements of S (which must not contain 0) from their cycles and
// relabels the rest in increasing order onto {0, ..., n - |S|}.
Permutation0 restrict_relabel(const Permutation0& p, const std::vector<int>& S);

// Partition of {1, ..., n} into singletons and pairs, stored as a partner
// array (partner[i] == i for singletons, partner[0] == 0).
class Partition12 {
 public:
  Partition12() : partner_{0} {}
  explicit Partition12(std::vector<int> partner);
  static Partition12 from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);
  static Partition12 parse(std::string_view text, int n);

  int n() const { return static_cast<int>(partner_.size()) - 1; }
  int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
  int pairs() const;
  bool is_perfect() const { return 2 * pairs() == n(); }
  std::vector<int> support() const;
  std::vector<std::pair<int, int>> pair_list() const;
  Permutation0 as_permutation() const;
  // "id" when there are no pairs, otherwise every block in cycle notation.
  std::string to_string() const;

  auto operator<=>(const Partition12&) const = default;

 private:
  std::vector<int> partner_;
};

struct Contraction {
  Permutation0 pi_alpha;
  Permutation0 beta;
  int n_exponent = 0;  // C = N^{-n_exponent} beta
  int l = 0;
};

Contraction contract(const Permutation0& alpha, const Partition12& pi);

std::vector<Partition12> enumerate_partition12(int n);
std::uint64_t involution_count(int n);

std::uint64_t catalan(int p);

}  // namespace tracelimits
