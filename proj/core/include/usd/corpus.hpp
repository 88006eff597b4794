#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usd/phase_bound.hpp"
#include "usd/solver.hpp"
#include "usd/state_set.hpp"

namespace usd {

/// A built-in regression case: an instance plus the published values it must
/// reproduce. Every expectation carries a literature citation.
struct CorpusCase {
  std::string name;
  StateSet instance;
  std::optional<double> expected_bound;
  std::optional<double> expected_p_opt;
  std::optional<SolutionLabel> expected_class;
  std::optional<double> min_bound_gap;  // require bound − p_opt above this
  double bound_tol = 5e-4;
  double p_opt_tol = 5e-4;
  std::string provenance;
};

std::vector<CorpusCase> builtin_corpus();

/// Four-state extension of the boundary example: ψ4 ⊥ span{ψ1,ψ2,ψ3} with
/// prior p4 ∈ (0,1); the optimum is γ = (0, 2/3, 2/3, 1).
CorpusCase example1_extension(double p4);

struct CaseResult {
  std::string name;
  std::string provenance;
  double bound = 0.0;
  double p_opt = 0.0;
  double bound_gap = 0.0;
  double schmidt_residual = 0.0;  // |min_k ‖η_k‖² at the argmin − bound|
  std::string solution_class;
  bool povm_valid = false;
  std::optional<double> expected_bound;
  std::optional<double> expected_p_opt;
  std::optional<std::string> expected_class;

  struct FormCheck {
    std::string id;
    double value = 0.0;
    double deviation = 0.0;  // |value − bound|
  };
  std::vector<FormCheck> closed_forms;

  bool pass = false;
  std::vector<std::string> failures;
};

struct CorpusReport {
  std::vector<CaseResult> rows;  // ordered by case name
  std::uint64_t seed = 0;
  bool all_pass = false;
};

/// Runs bound, exact solve, the Schmidt cross-check and the applicable closed
/// forms for every corpus case whose name matches the ECMAScript regular
/// expression `filter` (empty matches everything). Throws on a malformed
/// pattern; a pattern matching nothing yields an empty passing report.
CorpusReport run_corpus(const std::string& filter = {}, const MinimizeConfig& cfg = {});

}  // namespace usd
