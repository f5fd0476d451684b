#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpfw/acceptance.hpp"
#include "gpfw/analysis.hpp"
#include "gpfw/harness.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << '\n';
    return gpfw::kExitError;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    const gpfw::RunConfig cfg = gpfw::parse_config(ss.str());
    return gpfw::run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gpfw::kExitError;
  }
}

int cmd_eigmin(const std::string& matrix_path, const std::string& x0_spec) {
  try {
    const gpfw::Matrix A = gpfw::load_matrix_file(matrix_path);
    gpfw::Vector x0;
    if (x0_spec.empty()) {
      x0 = gpfw::Vector::Ones(A.rows()).normalized();
    } else if (x0_spec.rfind("random:", 0) == 0) {
      const auto seed = static_cast<std::uint64_t>(std::stoull(x0_spec.substr(7)));
      x0 = gpfw::sample_surface(gpfw::SphereSurface{static_cast<int>(A.rows()), 1.0}, 1, seed)
               .front();
    } else {
      std::vector<double> comps;
      std::size_t pos = 0;
      while (pos <= x0_spec.size()) {
        std::size_t next = x0_spec.find(',', pos);
        if (next == std::string::npos) next = x0_spec.size();
        comps.push_back(std::stod(x0_spec.substr(pos, next - pos)));
        pos = next + 1;
      }
      x0.resize(static_cast<int>(comps.size()));
      for (std::size_t i = 0; i < comps.size(); ++i) x0(static_cast<int>(i)) = comps[i];
    }
    gpfw::SolverConfig cfg;
    const gpfw::EigminResult res = gpfw::eigmin_run(A, x0, cfg);
    std::cout << "lambda1 = " << gpfw::detail::fmt17(res.lambda_hat) << '\n';
    std::cout << "oracle  = " << gpfw::detail::fmt17(res.trace.constants.at("lambda1_oracle"))
              << '\n';
    std::cout << "v = ";
    for (int i = 0; i < res.v.size(); ++i)
      std::cout << (i ? "," : "") << gpfw::detail::fmt17(res.v(i));
    std::cout << '\n';
    return res.trace.termination == gpfw::Termination::converged ? gpfw::kExitConverged
                                                                 : gpfw::kExitMaxIter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gpfw::kExitError;
  }
}

int cmd_estimate_lpl(const std::string& problem_id, double alpha, int samples,
                     std::uint64_t seed) {
  try {
    const gpfw::Problem pr = gpfw::lookup_problem(problem_id);
    if (!pr.f0)
      throw gpfw::ValidationError("problem '" + pr.id + "' has no registered minimum value");
    const double beta = std::numeric_limits<double>::infinity();
    const auto est =
        gpfw::lpl_mu_estimate(pr.surface, pr.obj, *pr.f0, alpha, beta, samples, seed);
    std::cout << "problem = " << pr.id << '\n';
    std::cout << "alpha = " << gpfw::detail::fmt17(est.alpha) << '\n';
    std::cout << "mu_hat = " << gpfw::detail::fmt17(est.mu_hat) << '\n';
    std::cout << "samples_used = " << est.n_samples << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gpfw::kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient projection and conditional gradient solvers on nonconvex surfaces"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "execute a configured solver run");
  run->add_option("--config", config_path, "path to a key = value config file")->required();

  std::vector<std::string> filter;
  auto* suite = app.add_subcommand("suite", "run the acceptance suite");
  suite->add_option("--filter", filter, "criterion id substrings to select");

  std::string matrix_path, x0_spec;
  auto* eigmin = app.add_subcommand("eigmin", "minimal eigenvalue of a symmetric matrix");
  eigmin->add_option("--matrix", matrix_path, "whitespace-separated matrix file")->required();
  eigmin->add_option("--x0", x0_spec, "starting vector: comma list or random:SEED");

  std::string problem_id;
  double alpha = 2.0;
  int samples = 1000;
  std::uint64_t seed = 0;
  auto* lpl = app.add_subcommand("estimate-lpl", "empirical gradient-domination constant");
  lpl->add_option("--problem", problem_id, "registered problem id")->required();
  lpl->add_option("--alpha", alpha, "exponent");
  lpl->add_option("--samples", samples, "sample count");
  lpl->add_option("--seed", seed, "sampler seed");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path);
  if (suite->parsed()) return gpfw::acceptance_suite(filter);
  if (eigmin->parsed()) return cmd_eigmin(matrix_path, x0_spec);
  if (lpl->parsed()) return cmd_estimate_lpl(problem_id, alpha, samples, seed);
  return 1;
}
