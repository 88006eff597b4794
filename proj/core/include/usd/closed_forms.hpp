#pragma once

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

#include "usd/state_set.hpp"

namespace usd {

inline constexpr double kFormGateTol = 1e-9;  // structural-precondition tolerance

/// Result of one analytic bound formula. `value` is meaningful only when
/// `applicable`; otherwise `reason` says which precondition failed.
struct ClosedFormResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string formula_id;
  bool applicable = false;
  std::string reason;
};

/// Two states: 1 − 2√(p1·p2)·s. Throws on invalid probabilities or s ∉ [0, 1).
ClosedFormResult two_state_bound(double p1, double p2, double overlap_modulus);

/// Three states with ⟨ψ1|ψ2⟩ = 0: 1 − 2[√(p1p3)·g13 + √(p2p3)·g23].
/// The orthogonality gate itself is checked by applicable_forms.
ClosedFormResult three_state_one_orthogonal(const Eigen::Vector3d& priors,
                                            double g13, double g23);

/// Three states whose invariant (geometric) phase φ12 + φ23 − φ13 equals π:
/// 1 − 2[√(p1p2)|G12| + √(p1p3)|G13| + √(p2p3)|G23|]. Not applicable when the
/// invariant phase differs from π. moduli = (|G12|, |G13|, |G23|),
/// phases = (φ12, φ13, φ23).
ClosedFormResult three_state_invariant_phase(const Eigen::Vector3d& priors,
                                             const Eigen::Vector3d& moduli,
                                             const Eigen::Vector3d& phases);

/// Equal priors and equal real overlaps s ∈ (0, 1): 1 − s.
ClosedFormResult three_state_symmetric_real(double s);

/// Evaluates every form whose structural preconditions hold for the instance;
/// forms that do not apply are returned with applicable = false and a reason.
std::vector<ClosedFormResult> applicable_forms(const StateSet& set);

}  // namespace usd
