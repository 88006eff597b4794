#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace usd {

// Instance validation tolerances.
inline constexpr double kUnitNormTol = 1e-9;       // per-state norm and prior-sum slack
inline constexpr double kIndependenceTol = 1e-10;  // smallest Gram eigenvalue accepted as independent

/// A discrimination instance: N pure states |ψ_i⟩ in C^d (one per column)
/// with prior probabilities p_i.
///
/// Construction validates and the object is immutable afterwards, so it is
/// safe to share across threads. Invariants: unit-norm columns, 0 < p_i < 1
/// with Σ p_i = 1 (within kUnitNormTol), linear independence (smallest Gram
/// eigenvalue > kIndependenceTol), N ≥ 2 and d ≥ N.
class StateSet {
 public:
  // With `normalize` set, states are rescaled to unit norm and priors to unit
  // sum before validation; otherwise out-of-tolerance inputs are rejected.
  StateSet(Eigen::MatrixXcd states, Eigen::VectorXd priors, bool normalize = false);

  int dim() const { return static_cast<int>(states_.rows()); }
  int size() const { return static_cast<int>(states_.cols()); }
  const Eigen::MatrixXcd& states() const { return states_; }
  const Eigen::VectorXd& priors() const { return priors_; }
  Eigen::VectorXcd state(int i) const { return states_.col(i); }

 private:
  Eigen::MatrixXcd states_;
  Eigen::VectorXd priors_;
};

/// Pairwise inner products G_ij = ⟨ψ_i|ψ_j⟩ split into moduli and phases.
/// Phases are stored for i < j only; phase(i, j) applies φ_ji = −φ_ij.
struct GramData {
  Eigen::MatrixXcd gram;             // Hermitian, unit diagonal, positive definite
  Eigen::MatrixXd moduli;            // |G_ij|, symmetric
  std::vector<double> phases_upper;  // φ_ij in (−π, π] for pairs (0,1),(0,2),…,(N−2,N−1)

  int size() const { return static_cast<int>(gram.rows()); }
  double modulus(int i, int j) const { return moduli(i, j); }
  double phase(int i, int j) const;
};

GramData gram(const StateSet& set);

/// Parses the JSON instance format
///   {"dim": d, "states": [state, ...], "priors": [p_1, ..., p_N]}
/// where a state is either [[re, im], ...] or a flat real array [re, ...].
/// Omitted priors default to the uniform distribution 1/N.
StateSet parse_stateset(const std::string& text, bool normalize = false);

/// Canonical JSON serialization (complex-pair form, full precision).
std::string to_json(const StateSet& set);

/// Realizes a state set in dimension d = N whose Gram matrix equals `target`
/// (Hermitian positive definite with unit diagonal), via the principal square
/// root: the columns of G^{1/2} have exactly the prescribed inner products.
StateSet realize_from_gram(const Eigen::MatrixXcd& target, const Eigen::VectorXd& priors);

}  // namespace usd
