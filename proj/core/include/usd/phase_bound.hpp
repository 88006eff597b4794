#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "usd/state_set.hpp"

namespace usd {

/// Phase assignment θ_1..θ_N with the global-phase gauge θ_1 = 0.
struct PhaseVector {
  std::vector<double> thetas;

  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> t);  // rejects t[0] != 0

  static PhaseVector zero(int n);
  // Prepends the fixed θ_1 = 0 to the free parameters θ_2..θ_N.
  static PhaseVector from_free(const Eigen::VectorXd& free_thetas);

  int size() const { return static_cast<int>(thetas.size()); }
  Eigen::VectorXd free_thetas() const;
};

struct MinimizeConfig {
  std::uint64_t seed = 42;
  int starts = 64;        // random starts, in addition to the deterministic one
  double grad_tol = 1e-10;
  int max_iters = 10000;  // per start
};

struct BoundResult {
  double value = 1.0;
  PhaseVector argmin;
  int starts_used = 0;
  double best_gradient_norm = 0.0;
  bool converged = false;
};

/// The squared norm ‖Σ_j √p_j e^{iθ_j}|ψ_j⟩‖² expressed through Gram data:
///   1 + Σ_{i<j} 2√(p_i p_j)|G_ij| cos(θ_j − θ_i + φ_ij).
double objective(const GramData& g, const Eigen::VectorXd& priors, const PhaseVector& theta);

/// Same quantity evaluated directly as a vector norm (cross-check route).
double direct_norm_objective(const StateSet& set, const PhaseVector& theta);

/// ∂(objective)/∂θ_k for k = 2..N (length N−1).
Eigen::VectorXd objective_gradient(const GramData& g, const Eigen::VectorXd& priors,
                                   const PhaseVector& theta);

/// Minimizes the objective over θ_2..θ_N by multi-start gradient descent with
/// backtracking line search: one deterministic start at θ_j = π − φ_1j plus
/// cfg.starts seeded random starts in [0, 2π)^{N−1}. Deterministic for a
/// fixed seed; reduction by minimum value, ties to the lowest start index.
/// When every overlap vanishes the objective is constant 1 and no starts run.
BoundResult minimize_bound(const GramData& g, const Eigen::VectorXd& priors,
                           const MinimizeConfig& cfg = {});
BoundResult minimize_bound(const StateSet& set, const MinimizeConfig& cfg = {});

}  // namespace usd
