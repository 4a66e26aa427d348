#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tracelimits/permutation.hpp"

namespace tracelimits {

// Pairings of {1, ..., n k} split into k consecutive blocks of size n. The
// visitor receives the partner array (index 0 unused, partner[0] == 0).
using PairingVisitor = std::function<void(const std::vector<int>& partner)>;

// No pair inside a single block. Lexicographic order.
void for_each_inhomogeneous_pairing(int n, int k, const PairingVisitor& visit);
std::vector<Partition12> enumerate_inhomogeneous_pairings(int n, int k);
std::uint64_t count_inhomogeneous_pairings(int n, int k);

// Inhomogeneous pairings whose induced map on blocks is well defined: all the
// partners of one block lie in a single other block.
void for_each_block_complete_pairing(int n, int k, const PairingVisitor& visit);

// Every perfect pairing of {1, ..., m}, lexicographic.
void for_each_perfect_pairing(int m, const PairingVisitor& visit);

bool is_inhomogeneous(const std::vector<int>& partner, int n);
bool is_block_complete(const std::vector<int>& partner, int n, int k);
bool is_noncrossing(const std::vector<int>& partner);
bool is_block_rigid_noncrossing(const Partition12& pi, int n, int k);
bool is_block_rigid_noncrossing(const std::vector<int>& partner, int n, int k);

// cyc0 of pi * alpha without materialising Permutation0 objects.
int cyc0_of_product(const std::vector<int>& partner, const Permutation0& alpha);

}  // namespace tracelimits
