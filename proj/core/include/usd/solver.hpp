#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "usd/phase_bound.hpp"
#include "usd/state_set.hpp"

namespace usd {

// Feasibility, classification and POVM-validation tolerances.
inline constexpr double kFeasibilitySigmaTol = 1e-9;   // σ_min(X − Γ) ≥ −tol
inline constexpr double kFeasibilityGammaTol = 1e-12;  // γ_i ≥ −tol
inline constexpr double kCriticalSigmaTol = 1e-6;      // |σ_min| window for critical points
inline constexpr double kBoundaryTol = 1e-6;           // γ_i below this is a boundary zero
inline constexpr double kEigGapTol = 1e-8;             // simple-eigenvalue gap threshold
inline constexpr double kGradientMatchTol = 1e-4;      // ‖∇σ_min + p‖ for nonsingular points
inline constexpr double kPovmEqTol = 1e-9;             // ⟨ψ_i|Π_j|ψ_i⟩ = γ_i δ_ij residual
inline constexpr double kPovmPsdTol = 1e-9;            // Π_{N+1} ⪰ −tol·I
inline constexpr double kPovmCompletenessTol = 1e-10;  // ‖Σ Π_k − I‖_max

struct SigmaMin {
  double value = 0.0;
  Eigen::VectorXcd eigenvector;  // unit eigenvector of X − Γ for the smallest eigenvalue
};

/// Smallest eigenvalue of the Hermitian matrix X − diag(γ).
SigmaMin sigma_min(const GramData& g, const Eigen::VectorXd& gamma);

/// ∂σ_min/∂γ_i = −|v_i|² where v is the unit minimum eigenvector, valid when
/// the smallest eigenvalue is simple (gap > kEigGapTol). A degenerate minimum
/// eigenvalue is a reported value, not an error.
struct SigmaMinGradient {
  bool degenerate = false;
  double gap = 0.0;          // λ_2 − λ_1
  Eigen::VectorXd gradient;  // empty when degenerate
};
SigmaMinGradient sigma_min_gradient(const GramData& g, const Eigen::VectorXd& gamma);

/// A candidate success-probability vector with its feasibility certificate.
struct GammaPoint {
  Eigen::VectorXd gamma;
  double sigma_min = 0.0;
  bool feasible = false;  // sigma_min ≥ −kFeasibilitySigmaTol and γ_i ≥ −kFeasibilityGammaTol
};
GammaPoint make_gamma_point(const GramData& g, const Eigen::VectorXd& gamma);

enum class SolutionLabel { InteriorNonsingular, InteriorSingular, Boundary };
std::string to_string(SolutionLabel label);

struct SolutionClass {
  SolutionLabel label = SolutionLabel::Boundary;
  Eigen::VectorXd gradient;       // ∇σ_min at the point (simple eigenvalue only)
  double degeneracy_gap = 0.0;    // λ_2 − λ_1 evidence
  std::vector<int> zero_indices;  // coordinates below kBoundaryTol
};

/// Classifies a critical point (σ_min ≈ 0): Boundary when some γ_i < 1e-6,
/// InteriorNonsingular when the minimum eigenvalue is simple and ∇σ_min ≈ −p,
/// InteriorSingular otherwise. Throws if the point is not critical
/// (σ_min outside [−1e-9, 1e-6]).
SolutionClass classify(const GramData& g, const GammaPoint& point,
                       const Eigen::VectorXd& priors);

/// Reconstruction of the measurement witnessing a success vector γ: reciprocal
/// states ψ̃_i with ⟨ψ̃_i|ψ_j⟩ = δ_ij give Π_i = γ_i|ψ̃_i⟩⟨ψ̃_i| and the
/// inconclusive element Π_{N+1} = I − Σ Π_i.
struct PovmReport {
  std::vector<Eigen::MatrixXcd> elements;     // Π_1..Π_N, then Π_{N+1}
  double eq_residual = 0.0;                   // max |⟨ψ_i|Π_j|ψ_i⟩ − γ_i δ_ij|
  double min_element_eigenvalue = 0.0;        // min over success elements
  double inconclusive_min_eigenvalue = 0.0;   // λ_min(Π_{N+1})
  double completeness_residual = 0.0;         // max |(Σ Π_k − I)_ij|
  bool valid = false;
};
PovmReport reconstruct_povm(const StateSet& set, const Eigen::VectorXd& gamma);

struct SolverConfig {
  double barrier_start = 1e-1;
  double barrier_end = 1e-10;
  double barrier_factor = 10.0;
  int max_stage_iters = 2000;
  double pin_tol = 1e-5;  // γ_i below this after the barrier are pinned to 0
  MinimizeConfig bound;   // configuration for the companion upper bound
};

struct SolverResult {
  GammaPoint gamma_opt;
  double p_opt = 0.0;
  SolutionClass solution_class;
  bool povm_valid = false;
  double bound_value = 0.0;
  double bound_gap = 0.0;  // bound_value − p_opt
  bool converged = false;
};

/// Maximizes Σ p_i γ_i over the convex feasible set {γ ≥ 0 : X − Γ ⪰ 0} by
/// log-det barrier continuation (t·Σ log λ_i(X−Γ) + t·Σ log γ_i, t geometric
/// from barrier_start to barrier_end), each stage solved by gradient ascent
/// with backtracking. Coordinates that finish below pin_tol are pinned to 0
/// and the reduced problem re-solved once, recovering exact boundary optima.
SolverResult solve_optimal(const StateSet& set, const SolverConfig& cfg = {});

/// Maximizes Σ p_i γ_i over a uniform grid on [0,1]^N intersected with the
/// feasible set, then one half-step refinement pass around the best cell.
/// Deterministic (ties to the lexicographically smallest grid point) and
/// never above the true optimum. Requires resolution ≥ 20.
double brute_force_oracle(const StateSet& set, int resolution);

}  // namespace usd
