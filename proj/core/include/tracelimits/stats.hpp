#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tracelimits {

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

// Welford accumulator; merging is done in replicate order so results do not
// depend on the number of workers.
class RunningStats {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased
  double stderr_mean() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

MCEstimate estimate_mean(std::span<const double> xs, std::uint64_t seed = 0);

// Sample variance with a standard error from the influence function
// (x - m)^2 - s^2.
struct VarianceEstimate {
  double variance = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};
VarianceEstimate estimate_variance(std::span<const double> xs);
VarianceEstimate estimate_covariance(std::span<const double> xs, std::span<const double> ys);

// Fourth-moment excess E[Y^4] - 3 (E[Y^2])^2 for a centred sample.
struct KurtosisEstimate {
  double m2 = 0.0;
  double m4 = 0.0;
  double excess = 0.0;
  double stderr_ = 0.0;
};
KurtosisEstimate estimate_fourth_moment_excess(std::span<const double> ys);

// Runs job(r) for r in [0, replicates) on up to `workers` threads and
// returns the results indexed by replicate.
std::vector<double> run_replicates(std::size_t replicates, unsigned workers,
                                   const std::function<double(std::size_t)>& job);
std::vector<std::vector<double>> run_replicates_multi(
    std::size_t replicates, unsigned workers,
    const std::function<std::vector<double>(std::size_t)>& job);

unsigned default_workers();

}  // namespace tracelimits
