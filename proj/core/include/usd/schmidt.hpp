#pragma once

#include <Eigen/Dense>

#include "usd/phase_bound.hpp"
#include "usd/state_set.hpp"

namespace usd {

/// The unnormalized vectors η_k = Σ_r √p_r e^{iθ_r} ω^{(r−1)(k−1)} |ψ_r⟩ with
/// ω = e^{2πi/N}; column k−1 holds η_k. By construction ‖η_1‖² equals the
/// phase objective and Σ_k ‖η_k‖² = N.
struct EtaFamily {
  Eigen::MatrixXcd vectors;  // d × N
  Eigen::VectorXd norms_sq;  // ‖η_k‖²
};

/// Squared Schmidt coefficients α_k = ‖η_k‖²/N, sorted descending; all
/// strictly positive for a linearly independent instance, summing to 1.
struct SchmidtSpectrum {
  std::vector<double> coeffs;
  int size() const { return static_cast<int>(coeffs.size()); }
};

struct PhaseShiftReport {
  double eta_norm_sq = 0.0;      // ‖η_k(θ)‖²
  double shifted_norm_sq = 0.0;  // ‖η_1(θ′)‖² with θ′_r = θ_r + 2π(r−1)(k−1)/N
  double difference = 0.0;
};

EtaFamily eta_family(const StateSet& set, const PhaseVector& theta);

SchmidtSpectrum schmidt_spectrum(const StateSet& set, const PhaseVector& theta);

/// Optimal probability of locally converting a state with this spectrum to a
/// maximally entangled one in d′⊗d′: min_l over q_l = (Σ_{i≥l} α_i)·d′/(d′−l+1).
/// For a sorted spectrum the minimum equals d′·α_min; both routes are computed
/// and must agree within 1e-12.
double vidal_probability(const SchmidtSpectrum& spec);

/// min_k ‖η_k(θ)‖², i.e. N times the smallest spectrum entry; cross-checked
/// against vidal_probability(schmidt_spectrum(...)) within 1e-12.
double conversion_probability(const StateSet& set, const PhaseVector& theta);

/// Verifies ‖η_k(θ)‖² = ‖η_1(θ′)‖² under the substitution
/// θ′_r = θ_r + 2π(r−1)(k−1)/N. The index k is 1-based with 1 ≤ k ≤ N.
PhaseShiftReport check_phase_shift_equivalence(const StateSet& set, int k,
                                               const PhaseVector& theta);

/// Gram data with every phase advanced by 2π(j−i)(k−1)/N, so the phase
/// objective over it equals ‖η_k(θ)‖². k is 1-based.
GramData shifted_gram(const GramData& g, int k);

/// Multi-start minimum of ‖η_k(θ)‖² over θ, via the phase-bound minimizer on
/// the shifted Gram data. k is 1-based.
BoundResult minimize_eta_norm(const StateSet& set, int k, const MinimizeConfig& cfg = {});

}  // namespace usd
