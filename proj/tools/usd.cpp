// usd — unambiguous state discrimination toolkit.
//
// Subcommands: bound, solve, schmidt, closed-form, examples.
// Exit codes: 0 success, 1 tolerance failure, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "usd/closed_forms.hpp"
#include "usd/corpus.hpp"
#include "usd/report.hpp"
#include "usd/schmidt.hpp"
#include "usd/solver.hpp"
#include "usd/state_set.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string join4(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += fixed4(values[i]);
  }
  return out;
}

std::string join4(const Eigen::VectorXd& values) {
  return join4(std::vector<double>(values.data(), values.data() + values.size()));
}

struct Options {
  std::uint64_t seed = 42;
  double tol = 1e-10;
  std::string format = "text";
  bool normalize = false;
};

usd::MinimizeConfig minimize_config(const Options& opt, int starts) {
  usd::MinimizeConfig cfg;
  cfg.seed = opt.seed;
  cfg.grad_tol = opt.tol;
  cfg.starts = starts;
  return cfg;
}

int run_bound(const Options& opt, const std::string& path, int starts) {
  const usd::StateSet set = usd::parse_stateset(read_file(path), opt.normalize);
  const usd::BoundResult r = usd::minimize_bound(set, minimize_config(opt, starts));
  if (opt.format == "json") {
    nlohmann::json j;
    j["value"] = r.value;
    j["argmin"] = r.argmin.thetas;
    j["starts_used"] = r.starts_used;
    j["best_gradient_norm"] = r.best_gradient_norm;
    j["converged"] = r.converged;
    std::cout << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    std::cout << "value,starts_used,best_gradient_norm,converged\n";
    std::printf("%.17g,%d,%.3e,%s\n", r.value, r.starts_used, r.best_gradient_norm,
                r.converged ? "true" : "false");
  } else {
    std::cout << "bound value : " << fixed4(r.value) << "\n"
              << "argmin theta: " << join4(r.argmin.thetas) << "\n"
              << "starts used : " << r.starts_used << "\n";
    std::printf("gradient    : %.3e\n", r.best_gradient_norm);
    std::cout << "converged   : " << (r.converged ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_solve(const Options& opt, const std::string& path, bool with_oracle, int grid) {
  const usd::StateSet set = usd::parse_stateset(read_file(path), opt.normalize);
  usd::SolverConfig cfg;
  cfg.bound = minimize_config(opt, cfg.bound.starts);
  const usd::SolverResult r = usd::solve_optimal(set, cfg);
  const usd::PovmReport povm = usd::reconstruct_povm(set, r.gamma_opt.gamma);

  double oracle = 0.0;
  if (with_oracle) {
    if (grid <= 0) grid = set.size() >= 4 ? 30 : 60;
    oracle = usd::brute_force_oracle(set, grid);
  }

  if (opt.format == "json") {
    nlohmann::json j;
    j["gamma_opt"] = std::vector<double>(r.gamma_opt.gamma.data(),
                                         r.gamma_opt.gamma.data() + r.gamma_opt.gamma.size());
    j["p_opt"] = r.p_opt;
    j["sigma_min"] = r.gamma_opt.sigma_min;
    j["solution_class"] = usd::to_string(r.solution_class.label);
    j["povm_valid"] = r.povm_valid;
    j["povm_eq_residual"] = povm.eq_residual;
    j["bound"] = r.bound_value;
    j["bound_gap"] = r.bound_gap;
    j["converged"] = r.converged;
    if (with_oracle) {
      j["oracle"] = oracle;
      j["oracle_gap"] = r.p_opt - oracle;
    }
    std::cout << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    std::cout << "p_opt,bound,bound_gap,solution_class,povm_valid,sigma_min\n";
    std::printf("%.17g,%.17g,%.17g,%s,%s,%.3e\n", r.p_opt, r.bound_value, r.bound_gap,
                usd::to_string(r.solution_class.label).c_str(),
                r.povm_valid ? "true" : "false", r.gamma_opt.sigma_min);
  } else {
    std::cout << "gamma_opt   : " << join4(r.gamma_opt.gamma) << "\n"
              << "p_opt       : " << fixed4(r.p_opt) << "\n"
              << "class       : " << usd::to_string(r.solution_class.label) << "\n";
    std::printf("sigma_min   : %.3e\n", r.gamma_opt.sigma_min);
    std::printf("povm        : %s (eq residual %.1e, inconclusive min eig %.1e)\n",
                r.povm_valid ? "valid" : "INVALID", povm.eq_residual,
                povm.inconclusive_min_eigenvalue);
    std::cout << "bound       : " << fixed4(r.bound_value) << "\n"
              << "bound gap   : " << fixed4(r.bound_gap) << "\n";
    if (with_oracle)
      std::cout << "grid oracle : " << fixed4(oracle) << " (p_opt - oracle = "
                << fixed4(r.p_opt - oracle) << ")\n";
  }
  return 0;
}

int run_schmidt(const Options& opt, const std::string& path,
                const std::vector<double>& theta_free) {
  const usd::StateSet set = usd::parse_stateset(read_file(path), opt.normalize);
  const int n = set.size();
  usd::PhaseVector theta;
  if (theta_free.empty()) {
    theta = usd::PhaseVector::zero(n);
  } else {
    if (static_cast<int>(theta_free.size()) != n - 1)
      throw std::invalid_argument("--theta expects " + std::to_string(n - 1) +
                                  " comma-separated values (theta_1 = 0 is implied)");
    std::vector<double> t(n, 0.0);
    for (int i = 1; i < n; ++i) t[i] = theta_free[i - 1];
    theta = usd::PhaseVector(std::move(t));
  }

  const usd::EtaFamily fam = usd::eta_family(set, theta);
  const usd::SchmidtSpectrum spec = usd::schmidt_spectrum(set, theta);
  const double vidal = usd::vidal_probability(spec);
  const double conv = usd::conversion_probability(set, theta);
  std::vector<double> residuals(n);
  for (int k = 1; k <= n; ++k)
    residuals[k - 1] = usd::check_phase_shift_equivalence(set, k, theta).difference;

  if (opt.format == "json") {
    nlohmann::json j;
    j["eta_norms_sq"] =
        std::vector<double>(fam.norms_sq.data(), fam.norms_sq.data() + fam.norms_sq.size());
    j["spectrum"] = spec.coeffs;
    j["vidal_probability"] = vidal;
    j["conversion_probability"] = conv;
    j["phase_shift_residuals"] = residuals;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "eta norms^2 : " << join4(fam.norms_sq) << "  (sum "
              << fixed4(fam.norms_sq.sum()) << ")\n"
              << "spectrum    : " << join4(spec.coeffs) << "\n"
              << "vidal prob  : " << fixed4(vidal) << "\n"
              << "conversion  : " << fixed4(conv) << "\n";
    std::cout << "shift resid :";
    for (double r : residuals) std::printf(" %.1e", r);
    std::cout << "\n";
  }
  return 0;
}

int run_closed_form(const Options& opt, const std::string& path) {
  const usd::StateSet set = usd::parse_stateset(read_file(path), opt.normalize);
  const auto forms = usd::applicable_forms(set);
  if (opt.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& f : forms) {
      nlohmann::json row;
      row["id"] = f.formula_id;
      row["applicable"] = f.applicable;
      if (f.applicable)
        row["value"] = f.value;
      else
        row["reason"] = f.reason;
      rows.push_back(std::move(row));
    }
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& f : forms) {
      if (f.applicable)
        std::printf("%-30s  %s\n", f.formula_id.c_str(), fixed4(f.value).c_str());
      else
        std::printf("%-30s  not applicable (%s)\n", f.formula_id.c_str(), f.reason.c_str());
    }
  }
  return 0;
}

int run_examples(const Options& opt, const std::string& filter) {
  const usd::CorpusReport report =
      usd::run_corpus(filter, minimize_config(opt, usd::MinimizeConfig{}.starts));
  std::cout << usd::emit_report(report, usd::parse_format(opt.format));
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unambiguous discrimination of linearly independent pure states:\n"
               "phase-minimized success bound, exact optimum, and cross-checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_option("--seed", opt.seed, "PRNG seed for multi-start minimization")
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "gradient tolerance for the minimizer")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format: text|json|csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--normalize", opt.normalize,
               "rescale states and priors instead of rejecting them");

  std::string instance_path;
  int starts = usd::MinimizeConfig{}.starts;
  auto* bound = app.add_subcommand("bound", "minimize the phase objective (upper bound)");
  bound->add_option("instance", instance_path, "instance JSON file")->required();
  bound->add_option("--starts", starts, "number of random starts")->capture_default_str();

  bool with_oracle = false;
  int grid = 0;
  auto* solve = app.add_subcommand("solve", "exact optimum over the feasible set");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_flag("--oracle", with_oracle, "also run the grid oracle");
  solve->add_option("--grid", grid, "oracle grid resolution (default 60, 30 for N>=4)");

  std::vector<double> theta_free;
  auto* schmidt = app.add_subcommand("schmidt", "eta norms, Schmidt spectrum, conversion");
  schmidt->add_option("instance", instance_path, "instance JSON file")->required();
  schmidt->add_option("--theta", theta_free, "phases theta_2..theta_N")->delimiter(',');

  auto* closed = app.add_subcommand("closed-form", "applicable analytic bounds");
  closed->add_option("instance", instance_path, "instance JSON file")->required();

  std::string filter;
  auto* examples = app.add_subcommand("examples", "run the built-in regression corpus");
  examples->add_option("--filter", filter, "regular expression on case names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(bound)) return run_bound(opt, instance_path, starts);
    if (app.got_subcommand(solve)) return run_solve(opt, instance_path, with_oracle, grid);
    if (app.got_subcommand(schmidt)) return run_schmidt(opt, instance_path, theta_free);
    if (app.got_subcommand(closed)) return run_closed_form(opt, instance_path);
    if (app.got_subcommand(examples)) return run_examples(opt, filter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
