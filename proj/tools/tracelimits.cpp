#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tracelimits/golden.hpp"
#include "tracelimits/harness.hpp"
#include "tracelimits/permutation.hpp"
#include "tracelimits/trace_poly.hpp"

namespace tl = tracelimits;

namespace {

struct Flags {
  std::vector<std::string> kernel;
  std::optional<double> eps, dt, T;
  std::vector<int> N, n, k;
  std::optional<std::size_t> replicates, samples;
  std::string hermite;
  std::vector<std::string> kappa, checks;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string config;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--workers", f.workers, "worker threads (0: all cores)");
  app->add_option("--config", f.config, "JSON config; its keys override the flags")->check(CLI::ExistingFile);
  app->add_option("--out", f.out, "write the result record as JSON");
  app->add_flag("--json", f.json, "print the result record as JSON");
}

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

tl::ExperimentConfig to_config(const std::string& kind, const Flags& f) {
  tl::ExperimentConfig c;
  c.kind = kind;
  c.kernels = f.kernel;
  c.eps = f.eps;
  c.dt = f.dt;
  c.T = f.T;
  c.N = f.N;
  c.n = f.n;
  c.k = f.k;
  c.replicates = f.replicates;
  c.samples = f.samples;
  if (!f.hermite.empty()) c.hermite_coeffs = parse_coeffs(f.hermite);
  c.kappa = f.kappa;
  c.checks = f.checks;
  if (f.seed) c.seed = *f.seed;
  c.workers = f.workers;
  c.out = f.out;
  if (!f.config.empty()) tl::apply_config_json(c, tl::read_text_file(f.config));
  if (!f.out.empty()) c.out = f.out;
  return c;
}

void print_record(const tl::ResultRecord& r) {
  for (const auto& q : r.quantities) {
    std::printf("%s  %-60s estimate=%.6g stderr=%.3g target=%.6g tol=%.3g\n", q.pass ? "PASS" : "FAIL", q.name.c_str(),
                q.estimate, q.stderr_, q.analytic_target, q.tolerance);
  }
  for (const auto& [key, value] : r.artifacts) {
    if (value.find('\n') != std::string::npos) std::printf("%s:\n%s", key.c_str(), value.c_str());
    else std::printf("%s: %s\n", key.c_str(), value.c_str());
  }
  std::printf("%s (%.2f s, seed %llu)\n", r.pass ? "all checks passed" : "some checks FAILED", r.wall_clock_seconds,
              static_cast<unsigned long long>(r.config.seed));
}

int execute(const std::string& kind, const Flags& f) {
  const tl::ExperimentConfig c = to_config(kind, f);
  const tl::ResultRecord r = tl::run(c);
  if (f.json) std::cout << tl::to_json(r);
  else print_record(r);
  if (!c.out.empty()) tl::write_result(r, c.out);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollified Brownian motion limits: simulation and exact combinatorics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tl::library_version());
  Flags f;
  std::string action;

  auto* run = app.add_subcommand("run", "run an experiment described by --config");
  add_common(run, f);
  run->callback([&] { action = "run"; });

  auto* scalar = app.add_subcommand("scalar", "scalar LLN / CLT");
  std::string scalar_mode = "clt";
  scalar->add_option("mode", scalar_mode, "lln or clt")->check(CLI::IsMember({"lln", "clt"}));
  scalar->add_option("--kernel", f.kernel, "indicator | difference | file:<path>");
  scalar->add_option("--eps", f.eps);
  scalar->add_option("--dt", f.dt);
  scalar->add_option("--replicates", f.replicates);
  scalar->add_option("--hermite-coeffs", f.hermite, "c0,c1,c2,... with c0 = 0");
  scalar->add_option("--n", f.n, "Hermite ranks for F = H_n");
  scalar->add_option("--k", f.k, "occupation moments");
  add_common(scalar, f);
  scalar->callback([&] { action = "scalar-" + scalar_mode; });

  auto* matrix = app.add_subcommand("matrix", "Hermitian mollified Brownian motion");
  matrix->require_subcommand(1);
  for (const char* mode : {"lln", "clt", "free"}) {
    auto* sub = matrix->add_subcommand(mode);
    sub->add_option("--kernel", f.kernel);
    sub->add_option("--N", f.N);
    sub->add_option("--eps", f.eps);
    sub->add_option("--dt", f.dt);
    sub->add_option("--T", f.T);
    sub->add_option("--n", f.n);
    sub->add_option("--k", f.k);
    sub->add_option("--replicates", f.replicates);
    sub->add_option("--samples", f.samples);
    sub->add_option("--checks", f.checks);
    add_common(sub, f);
    const std::string m = mode;
    sub->callback([&, m] { action = m == "lln" ? "matrix-lln" : m == "clt" ? "matrix-clt" : "free-limit"; });
  }

  auto* free = app.add_subcommand("free", "large-N free limits");
  free->add_option("--kernel", f.kernel);
  free->add_option("--N", f.N);
  free->add_option("--eps", f.eps);
  free->add_option("--dt", f.dt);
  free->add_option("--n", f.n);
  add_common(free, f);
  free->callback([&] { action = "free-limit"; });

  auto* constants = app.add_subcommand("constants", "exact fluctuation constants");
  constants->add_option("--n", f.n);
  constants->add_option("--k", f.k);
  constants->add_option("--N", f.N, "evaluate at these N");
  constants->add_option("--checks", f.checks, "ab, masterprop");
  add_common(constants, f);
  constants->callback([&] { action = "constants"; });

  int comb_n = 3;
  std::string comb_alpha;
  auto* comb = app.add_subcommand("comb", "contraction table as CSV");
  comb->add_option("--n", comb_n)->check(CLI::Range(1, 8));
  comb->add_option("--alpha", comb_alpha, "permutation fixing 0, e.g. (0)(12)(3); default (01...n)");
  comb->callback([&] { action = "comb"; });

  auto* tp = app.add_subcommand("trace-poly", "Hermite trace polynomials");
  tp->require_subcommand(1);
  int expand_n = 2;
  auto* expand = tp->add_subcommand("expand");
  expand->add_option("--n", expand_n)->check(CLI::Range(1, 8));
  expand->callback([&] { action = "expand"; });
  auto* tables = tp->add_subcommand("tables");
  tables->add_option("--n", f.n);
  add_common(tables, f);
  tables->callback([&] { action = "trace-tables"; });

  auto* mv = app.add_subcommand("mvariate", "matrix-variate Hermite polynomials");
  mv->add_option("--kappa", f.kappa, "partitions such as 2,1");
  mv->add_option("--N", f.N);
  mv->add_option("--samples", f.samples);
  mv->add_option("--replicates", f.replicates, "samples per rectangular covariance check");
  mv->add_option("--checks", f.checks, "sigma_hat, characters, reference, orthogonality, rect");
  add_common(mv, f);
  mv->callback([&] { action = "mvariate"; });

  auto* golden = app.add_subcommand("golden", "exact golden tables and identities");
  golden->add_option("--checks", f.checks, "tables, hermite, ab, sigma_hat, combinations, reference");
  add_common(golden, f);
  golden->callback([&] { action = "golden"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (action == "comb") {
      if (comb_alpha.empty()) std::cout << tl::contraction_table_csv(comb_n);
      else std::cout << tl::sigma_hat_table_csv(tl::Permutation0::parse(comb_alpha));
      return 0;
    }
    if (action == "expand") {
      std::cout << tl::hermite_trace_polynomial(expand_n, tl::Permutation0::full_cycle(expand_n)).to_string() << "\n";
      return 0;
    }
    if (action == "run") {
      if (f.config.empty()) throw std::invalid_argument("run needs --config");
      const auto c = tl::load_config(f.config);
      return execute(c.kind, f);
    }
    return execute(action, f);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
