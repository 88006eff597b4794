#include "usd/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace usd {

namespace {

double wrap_pi(double x) {
  double w = std::remainder(x, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

ClosedFormResult not_applicable(std::string id, std::string reason) {
  ClosedFormResult r;
  r.formula_id = std::move(id);
  r.reason = std::move(reason);
  return r;
}

ClosedFormResult applicable(std::string id, double value) {
  ClosedFormResult r;
  r.formula_id = std::move(id);
  r.applicable = true;
  r.value = value;
  return r;
}

void check_prior_pair(double p1, double p2) {
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0) || std::abs(p1 + p2 - 1.0) > kFormGateTol)
    throw std::invalid_argument("priors must lie in (0,1) and sum to 1");
}

}  // namespace

ClosedFormResult two_state_bound(double p1, double p2, double overlap_modulus) {
  check_prior_pair(p1, p2);
  if (!(overlap_modulus >= 0.0 && overlap_modulus < 1.0))
    throw std::invalid_argument("overlap modulus must lie in [0, 1)");
  return applicable("two_state", 1.0 - 2.0 * std::sqrt(p1 * p2) * overlap_modulus);
}

ClosedFormResult three_state_one_orthogonal(const Eigen::Vector3d& priors,
                                            double g13, double g23) {
  for (int i = 0; i < 3; ++i)
    if (!(priors[i] > 0.0 && priors[i] < 1.0))
      throw std::invalid_argument("priors must lie in (0,1)");
  if (std::abs(priors.sum() - 1.0) > kFormGateTol)
    throw std::invalid_argument("priors must sum to 1");
  if (!(g13 >= 0.0 && g13 < 1.0 && g23 >= 0.0 && g23 < 1.0))
    throw std::invalid_argument("overlap moduli must lie in [0, 1)");
  const double value = 1.0 - 2.0 * (std::sqrt(priors[0] * priors[2]) * g13 +
                                    std::sqrt(priors[1] * priors[2]) * g23);
  return applicable("three_state_one_orthogonal", value);
}

ClosedFormResult three_state_invariant_phase(const Eigen::Vector3d& priors,
                                             const Eigen::Vector3d& moduli,
                                             const Eigen::Vector3d& phases) {
  for (int i = 0; i < 3; ++i)
    if (!(priors[i] > 0.0 && priors[i] < 1.0))
      throw std::invalid_argument("priors must lie in (0,1)");
  if (std::abs(priors.sum() - 1.0) > kFormGateTol)
    throw std::invalid_argument("priors must sum to 1");
  for (int i = 0; i < 3; ++i)
    if (!(moduli[i] >= 0.0 && moduli[i] < 1.0))
      throw std::invalid_argument("overlap moduli must lie in [0, 1)");

  if (moduli.maxCoeff() <= kFormGateTol)
    return applicable("three_state_invariant_phase", 1.0);  // orthogonal limit

  // Invariant (geometric) phase φ = φ_1 + φ_2 + φ_3 with φ_3 = arg⟨ψ1|ψ2⟩,
  // φ_1 = arg⟨ψ2|ψ3⟩, φ_2 = arg⟨ψ3|ψ1⟩ = −φ_13.
  const double phi = wrap_pi(phases[0] + phases[2] - phases[1]);
  if (std::abs(wrap_pi(phi - std::numbers::pi)) > kFormGateTol)
    return not_applicable("three_state_invariant_phase",
                          "invariant phase differs from π");
  const double value = 1.0 - 2.0 * (std::sqrt(priors[0] * priors[1]) * moduli[0] +
                                    std::sqrt(priors[0] * priors[2]) * moduli[1] +
                                    std::sqrt(priors[1] * priors[2]) * moduli[2]);
  return applicable("three_state_invariant_phase", value);
}

ClosedFormResult three_state_symmetric_real(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("symmetric overlap must lie in (0, 1)");
  return applicable("three_state_symmetric_real", 1.0 - s);
}

std::vector<ClosedFormResult> applicable_forms(const StateSet& set) {
  const GramData g = gram(set);
  const int n = set.size();
  const Eigen::VectorXd& p = set.priors();
  std::vector<ClosedFormResult> forms;

  if (n == 2) {
    forms.push_back(two_state_bound(p[0], p[1], g.modulus(0, 1)));
    return forms;
  }
  if (n != 3) {
    forms.push_back(not_applicable("two_state", "instance does not have two states"));
    forms.push_back(not_applicable("three_state_one_orthogonal",
                                   "instance does not have three states"));
    forms.push_back(not_applicable("three_state_invariant_phase",
                                   "instance does not have three states"));
    forms.push_back(not_applicable("three_state_symmetric_real",
                                   "instance does not have three states"));
    return forms;
  }

  forms.push_back(not_applicable("two_state", "instance does not have two states"));

  if (g.modulus(0, 1) <= kFormGateTol && g.modulus(0, 2) > kFormGateTol &&
      g.modulus(1, 2) > kFormGateTol) {
    Eigen::Vector3d p3(p[0], p[1], p[2]);
    forms.push_back(three_state_one_orthogonal(p3, g.modulus(0, 2), g.modulus(1, 2)));
  } else {
    forms.push_back(not_applicable("three_state_one_orthogonal",
                                   "requires ⟨ψ1|ψ2⟩ = 0 with the other overlaps nonzero"));
  }

  {
    Eigen::Vector3d p3(p[0], p[1], p[2]);
    Eigen::Vector3d moduli(g.modulus(0, 1), g.modulus(0, 2), g.modulus(1, 2));
    Eigen::Vector3d phases(g.phase(0, 1), g.phase(0, 2), g.phase(1, 2));
    if (moduli.minCoeff() > kFormGateTol || moduli.maxCoeff() <= kFormGateTol)
      forms.push_back(three_state_invariant_phase(p3, moduli, phases));
    else
      forms.push_back(not_applicable("three_state_invariant_phase",
                                     "requires all overlaps nonzero (or all zero)"));
  }

  {
    const bool uniform = (p.array() - 1.0 / 3.0).abs().maxCoeff() <= kFormGateTol;
    const double s = g.modulus(0, 1);
    const bool equal_real =
        std::abs(g.modulus(0, 2) - s) <= kFormGateTol &&
        std::abs(g.modulus(1, 2) - s) <= kFormGateTol &&
        std::abs(g.phase(0, 1)) <= kFormGateTol && std::abs(g.phase(0, 2)) <= kFormGateTol &&
        std::abs(g.phase(1, 2)) <= kFormGateTol;
    if (uniform && equal_real && s > kFormGateTol && s < 1.0)
      forms.push_back(three_state_symmetric_real(s));
    else
      forms.push_back(not_applicable("three_state_symmetric_real",
                                     "requires equal priors and equal real overlaps"));
  }
  return forms;
}

}  // namespace usd
