#include "usd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

#include "usd/closed_forms.hpp"
#include "usd/schmidt.hpp"

namespace usd {

namespace {

constexpr double kCrossCheckTol = 2e-6;  // identities routed through the minimizer

StateSet example1_instance() {
  const double r3 = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << r3, r3, r3;
  m.col(2) << r3, r3, -r3;
  return StateSet(m, Eigen::VectorXd::Constant(3, 1.0 / 3.0));
}

StateSet example23_instance(const Eigen::Vector3d& priors) {
  const double r5 = 1.0 / std::sqrt(5.0);
  const double r17 = 1.0 / std::sqrt(17.0);
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << r5, 2 * r5, 0;
  m.col(2) << 2 * r17, 2 * r17, 3 * r17;
  return StateSet(m, priors);
}

StateSet two_state_instance(double overlap, double p1) {
  Eigen::MatrixXcd m(2, 2);
  m.col(0) << 1, 0;
  m.col(1) << overlap, std::sqrt(1.0 - overlap * overlap);
  return StateSet(m, Eigen::Vector2d(p1, 1.0 - p1));
}

StateSet symmetric3_instance(double s) {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Constant(3, 3, s);
  g.diagonal().setOnes();
  return realize_from_gram(g, Eigen::VectorXd::Constant(3, 1.0 / 3.0));
}

// Four geometrically uniform states |ψ_i⟩ = U_i|ψ⟩ over the diagonal-sign
// group generated by diag(1,−1,1,−1) and diag(1,1,−1,−1).
StateSet four_state_gu_instance() {
  Eigen::Vector4d psi(2, 2, 1, 3);
  psi /= 3.0 * std::sqrt(2.0);
  const Eigen::Vector4d u2(1, -1, 1, -1);
  const Eigen::Vector4d u3(1, 1, -1, -1);
  Eigen::MatrixXcd m(4, 4);
  m.col(0) = psi.cast<std::complex<double>>();
  m.col(1) = (u2.array() * psi.array()).matrix().cast<std::complex<double>>();
  m.col(2) = (u3.array() * psi.array()).matrix().cast<std::complex<double>>();
  m.col(3) = (u2.array() * u3.array() * psi.array()).matrix().cast<std::complex<double>>();
  return StateSet(m, Eigen::VectorXd::Constant(4, 0.25));
}

CorpusCase two_state_case(std::string name, double overlap, double p1) {
  const double bound = 1.0 - 2.0 * std::sqrt(p1 * (1.0 - p1)) * overlap;
  CorpusCase c{std::move(name), two_state_instance(overlap, p1)};
  c.expected_bound = bound;
  c.expected_p_opt = bound;  // the bound is achievable in this overlap/prior regime
  c.expected_class = SolutionLabel::InteriorNonsingular;
  c.bound_tol = 1e-6;
  c.p_opt_tol = 1e-5;
  c.provenance = "Ivanovic (1987); Dieks (1988); Peres (1988); Jaeger & Shimony (1995)";
  return c;
}

CorpusCase symmetric3_case(std::string name, double s) {
  CorpusCase c{std::move(name), symmetric3_instance(s)};
  c.expected_bound = 1.0 - s;
  c.expected_p_opt = 1.0 - s;
  c.expected_class = SolutionLabel::InteriorSingular;
  c.bound_tol = 2e-6;
  c.p_opt_tol = 1e-5;
  c.provenance = "Sun et al. (2001), equal real overlaps with equal priors";
  return c;
}

}  // namespace

CorpusCase example1_extension(double p4) {
  if (!(p4 > 0.0 && p4 < 1.0)) throw std::invalid_argument("p4 must lie in (0, 1)");
  const double r3 = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m.col(0) << 1, 0, 0, 0;
  m.col(1) << r3, r3, r3, 0;
  m.col(2) << r3, r3, -r3, 0;
  m.col(3) << 0, 0, 0, 1;
  Eigen::VectorXd priors(4);
  priors << (1.0 - p4) / 3.0, (1.0 - p4) / 3.0, (1.0 - p4) / 3.0, p4;

  CorpusCase c{"example1_ext_p" + std::to_string(static_cast<int>(std::round(p4 * 100))),
               StateSet(m, priors)};
  c.expected_bound = p4 + 0.4444 * (1.0 - p4);
  c.expected_p_opt = p4 + (4.0 / 9.0) * (1.0 - p4);
  c.expected_class = SolutionLabel::Boundary;
  c.provenance = "Sun et al. (2001), extended by an orthogonal fourth state";
  return c;
}

std::vector<CorpusCase> builtin_corpus() {
  std::vector<CorpusCase> corpus;

  corpus.push_back(two_state_case("c1_two_state_s25", 0.25, 0.5));
  corpus.push_back(two_state_case("c1_two_state_s50", 0.50, 0.5));
  corpus.push_back(two_state_case("c1_two_state_s75", 0.75, 0.5));
  corpus.push_back(two_state_case("c1_two_state_unequal", 0.50, 0.3));

  corpus.push_back(symmetric3_case("c3_symmetric_s10", 0.1));
  corpus.push_back(symmetric3_case("c3_symmetric_s30", 0.3));
  corpus.push_back(symmetric3_case("c3_symmetric_s50", 0.5));

  {
    CorpusCase c{"example1_boundary", example1_instance()};
    c.expected_bound = 0.4444;
    c.expected_p_opt = 4.0 / 9.0;
    c.expected_class = SolutionLabel::Boundary;
    c.p_opt_tol = 1e-4;
    c.provenance = "Sun et al. (2001); Pang & Wu (2009)";
    corpus.push_back(std::move(c));
  }
  corpus.push_back(example1_extension(0.5));
  {
    CorpusCase c{"example2_interior_singular",
                 example23_instance(Eigen::Vector3d(0.30, 0.35, 0.35))};
    c.expected_bound = 0.4430;
    c.expected_p_opt = 0.4430;
    c.expected_class = SolutionLabel::InteriorSingular;
    c.provenance = "Pang & Wu (2009)";
    corpus.push_back(std::move(c));
  }
  {
    CorpusCase c{"example3_boundary_gap",
                 example23_instance(Eigen::Vector3d(0.10, 0.80, 0.10))};
    c.expected_bound = 0.4758;
    c.expected_p_opt = 0.4632;
    c.expected_class = SolutionLabel::Boundary;
    c.min_bound_gap = 0.01;
    c.provenance = "Pang & Wu (2009)";
    corpus.push_back(std::move(c));
  }
  {
    CorpusCase c{"four_state_geometric_uniform", four_state_gu_instance()};
    c.expected_bound = 2.0 / 9.0;
    c.expected_p_opt = 2.0 / 9.0;
    c.expected_class = SolutionLabel::InteriorNonsingular;
    c.provenance = "Eldar (2003), geometrically uniform states";
    corpus.push_back(std::move(c));
  }
  return corpus;
}

namespace {

CaseResult run_case(const CorpusCase& c, const MinimizeConfig& cfg) {
  CaseResult row;
  row.name = c.name;
  row.provenance = c.provenance;
  row.expected_bound = c.expected_bound;
  row.expected_p_opt = c.expected_p_opt;
  if (c.expected_class) row.expected_class = to_string(*c.expected_class);

  const BoundResult bound = minimize_bound(c.instance, cfg);
  row.bound = bound.value;

  SolverConfig scfg;
  scfg.bound = cfg;
  const SolverResult solved = solve_optimal(c.instance, scfg);
  row.p_opt = solved.p_opt;
  row.bound_gap = solved.bound_gap;
  row.solution_class = to_string(solved.solution_class.label);
  row.povm_valid = solved.povm_valid;

  // Entanglement-transfer cross-check: at the minimizing phases the optimal
  // local-conversion probability must reproduce the bound.
  row.schmidt_residual =
      std::abs(conversion_probability(c.instance, bound.argmin) - bound.value);

  for (const auto& form : applicable_forms(c.instance)) {
    if (!form.applicable) continue;
    row.closed_forms.push_back(
        {form.formula_id, form.value, std::abs(form.value - bound.value)});
  }

  const auto fail = [&row](std::string why) { row.failures.push_back(std::move(why)); };
  if (c.expected_bound && std::abs(row.bound - *c.expected_bound) > c.bound_tol)
    fail("bound outside tolerance");
  if (c.expected_p_opt && std::abs(row.p_opt - *c.expected_p_opt) > c.p_opt_tol)
    fail("p_opt outside tolerance");
  if (c.expected_class && row.solution_class != to_string(*c.expected_class))
    fail("solution class mismatch");
  if (c.min_bound_gap && !(row.bound_gap > *c.min_bound_gap)) fail("bound gap too small");
  if (row.bound_gap < -kCrossCheckTol) fail("p_opt exceeds the bound");
  if (row.schmidt_residual > kCrossCheckTol) fail("Schmidt cross-check failed");
  if (!row.povm_valid) fail("POVM validation failed");
  for (const auto& form : row.closed_forms)
    if (form.deviation > kCrossCheckTol) fail("closed form " + form.id + " disagrees");
  row.pass = row.failures.empty();
  return row;
}

}  // namespace

CorpusReport run_corpus(const std::string& filter, const MinimizeConfig& cfg) {
  std::regex pattern;
  try {
    pattern = std::regex(filter.empty() ? std::string(".*") : filter);
  } catch (const std::regex_error& e) {
    throw std::invalid_argument(std::string("bad filter pattern: ") + e.what());
  }

  CorpusReport report;
  report.seed = cfg.seed;
  for (const auto& c : builtin_corpus()) {
    if (!std::regex_search(c.name, pattern)) continue;
    report.rows.push_back(run_case(c, cfg));
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.name < b.name; });
  report.all_pass = std::all_of(report.rows.begin(), report.rows.end(),
                                [](const CaseResult& r) { return r.pass; });
  return report;
}

}  // namespace usd
