#pragma once

#include <cstdint>
#include <random>

namespace tracelimits {

// Counter-based derivation: stream r of master seed s is the same no matter
// which worker draws it.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  NormalStream(std::uint64_t master, std::uint64_t index)
      : engine_(stream_seed(master, index)) {}

  double operator()() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace tracelimits
