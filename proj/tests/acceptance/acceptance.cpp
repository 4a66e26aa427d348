#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tracelimits/harness.hpp"

namespace tl = tracelimits;

namespace {

struct Criterion {
  int id;
  const char* config;
  const char* title;
  double budget_seconds;  // 0: none
};

const std::vector<Criterion> kCriteria{
    {1, "c01_golden_tables.json", "golden contraction, pairing and sigma-hat tables", 10.0},
    {2, "c02_hermite_expansions.json", "Hermite trace polynomials n = 1..4", 0.0},
    {3, "c03_ab_coefficients.json", "a^2, b^2 exact values and leading orders", 0.0},
    {4, "c04_catalan_cycle_bound.json", "Catalan limits and cycle-bound equality cases", 0.0},
    {5, "c05_scalar_lln.json", "scalar occupation moments", 60.0},
    {6, "c06_scalar_clt.json", "scalar fluctuation variances", 600.0},
    {7, "c07_matrix_lln.json", "matrix occupation integrals", 0.0},
    {8, "c08_gue_oracle.json", "GUE moment oracle", 0.0},
    {9, "c09_matrix_clt.json", "matrix fluctuations at T = 1000", 900.0},
    {10, "c10_free_limit.json", "large-N semicircle moments and CLT variance", 0.0},
    {11, "c11_matrix_variate.json", "matrix-variate Hermite polynomials and rectangular covariance", 0.0},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  std::string dir = TRACELIMITS_CONFIG_DIR;
  unsigned workers = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run only these criteria");
  app.add_option("--config-dir", dir);
  app.add_option("--workers", workers);
  app.add_flag("-v,--verbose", verbose, "print every quantity");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());

  bool all = true;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::string line;
    bool pass = false;
    try {
      tl::ExperimentConfig cfg = tl::load_config(dir + "/" + c.config);
      if (workers) cfg.workers = workers;
      const tl::ResultRecord r = tl::run(cfg);
      pass = r.pass;
      std::size_t failed = 0;
      std::string first_fail;
      for (const auto& q : r.quantities) {
        if (q.pass) continue;
        if (failed++ == 0) {
          char buf[256];
          std::snprintf(buf, sizeof buf, "%s: %.6g vs %.6g (tol %.3g)", q.name.c_str(), q.estimate, q.analytic_target,
                        q.tolerance);
          first_fail = buf;
        }
      }
      char head[160];
      std::snprintf(head, sizeof head, "%zu/%zu quantities, %.1f s", r.quantities.size() - failed, r.quantities.size(),
                    r.wall_clock_seconds);
      line = head;
      if (c.budget_seconds > 0 && r.wall_clock_seconds > c.budget_seconds) {
        pass = false;
        line += ", over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
      }
      if (failed) line += "; first failure " + first_fail;
      if (verbose || !pass) {
        for (const auto& q : r.quantities)
          std::printf("    %s %s estimate=%.6g stderr=%.3g target=%.6g tol=%.3g\n", q.pass ? "ok  " : "FAIL",
                      q.name.c_str(), q.estimate, q.stderr_, q.analytic_target, q.tolerance);
        for (const auto& q : r.quantities) {
          auto it = r.artifacts.find(q.name);
          if (!q.pass && it != r.artifacts.end()) std::printf("    detail %s: %s\n", q.name.c_str(), it->second.c_str());
        }
      }
    } catch (const std::exception& e) {
      line = std::string("error: ") + e.what();
    }
    std::printf("%s criterion %2d  %-62s %s\n", pass ? "PASS" : "FAIL", c.id, c.title, line.c_str());
    std::fflush(stdout);
    all = all && pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
