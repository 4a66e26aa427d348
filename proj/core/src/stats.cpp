#include "tracelimits/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tracelimits {

void RunningStats::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStats::stderr_mean() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

MCEstimate estimate_mean(std::span<const double> xs, std::uint64_t seed) {
  RunningStats s;
  for (double x : xs) s.add(x);
  return {s.mean(), s.stderr_mean(), xs.size(), seed};
}

VarianceEstimate estimate_variance(std::span<const double> xs) {
  return estimate_covariance(xs, xs);
}

VarianceEstimate estimate_covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("estimate_covariance: size mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("estimate_covariance: need at least two samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  RunningStats prod;
  for (std::size_t i = 0; i < n; ++i) prod.add((xs[i] - mx) * (ys[i] - my));
  VarianceEstimate v;
  v.samples = n;
  v.variance = prod.mean() * n / (n - 1.0);
  v.stderr_ = prod.stderr_mean();
  return v;
}

KurtosisEstimate estimate_fourth_moment_excess(std::span<const double> ys) {
  const std::size_t n = ys.size();
  if (n < 2) throw std::invalid_argument("estimate_fourth_moment_excess: need samples");
  KurtosisEstimate k;
  for (double y : ys) {
    k.m2 += y * y;
    k.m4 += y * y * y * y;
  }
  k.m2 /= n;
  k.m4 /= n;
  k.excess = k.m4 - 3.0 * k.m2 * k.m2;
  RunningStats infl;
  for (double y : ys) infl.add((y * y * y * y - k.m4) - 6.0 * k.m2 * (y * y - k.m2));
  k.stderr_ = infl.stderr_mean();
  return k;
}

unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::vector<std::vector<double>> run_replicates_multi(
    std::size_t replicates, unsigned workers,
    const std::function<std::vector<double>(std::size_t)>& job) {
  std::vector<std::vector<double>> out(replicates);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(replicates, 1))));
  if (workers == 1) {
    for (std::size_t r = 0; r < replicates; ++r) out[r] = job(r);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t r = next.fetch_add(1);
        if (r >= replicates || failed.load()) return;
        try {
          out[r] = job(r);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> run_replicates(std::size_t replicates, unsigned workers,
                                   const std::function<double(std::size_t)>& job) {
  auto multi = run_replicates_multi(replicates, workers, [&](std::size_t r) {
    return std::vector<double>{job(r)};
  });
  std::vector<double> out(replicates);
  for (std::size_t r = 0; r < replicates; ++r) out[r] = multi[r][0];
  return out;
}

}  // namespace tracelimits
