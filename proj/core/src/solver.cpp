#include "usd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "descent.hpp"

namespace usd {

namespace {

Eigen::MatrixXcd shifted_matrix(const GramData& g, const Eigen::VectorXd& gamma) {
  Eigen::MatrixXcd m = g.gram;
  m.diagonal() -= gamma.cast<std::complex<double>>();
  return m;
}

double smallest_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void check_gamma_size(const GramData& g, const Eigen::VectorXd& gamma) {
  if (gamma.size() != g.size())
    throw std::invalid_argument("gamma must have one entry per state");
}

// One barrier continuation over the coordinates listed in `free`;
// the remaining coordinates stay fixed at zero.
Eigen::VectorXd barrier_continuation(const Eigen::MatrixXcd& x, const Eigen::VectorXd& priors,
                                     const std::vector<int>& free, const SolverConfig& cfg) {
  const int n = static_cast<int>(priors.size());
  const int m = static_cast<int>(free.size());

  const auto to_full = [&](const Eigen::VectorXd& xf) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) full[free[i]] = xf[i];
    return full;
  };

  // Strictly feasible interior start: γ = λ_min(X)/2 on the free coordinates.
  const double lam0 = smallest_eigenvalue(x);
  Eigen::VectorXd xf = Eigen::VectorXd::Constant(m, lam0 / 2.0);

  for (double t = cfg.barrier_start; t >= cfg.barrier_end * 0.999; t /= cfg.barrier_factor) {
    // Minimize −(p·γ + t·Σ log λ_i(X−Γ) + t·Σ log γ_i); +inf outside the domain.
    const auto f = [&](const Eigen::VectorXd& v) {
      if ((v.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
      Eigen::MatrixXcd mtx = x;
      for (int i = 0; i < m; ++i) mtx(free[i], free[i]) -= v[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mtx, Eigen::EigenvaluesOnly);
      if (es.eigenvalues()(0) <= 0.0) return std::numeric_limits<double>::infinity();
      double val = 0.0;
      for (int i = 0; i < m; ++i) val += priors[free[i]] * v[i];
      val += t * es.eigenvalues().array().log().sum();
      val += t * v.array().log().sum();
      return -val;
    };
    const auto df = [&](const Eigen::VectorXd& v) {
      Eigen::MatrixXcd mtx = x;
      for (int i = 0; i < m; ++i) mtx(free[i], free[i]) -= v[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mtx);
      // ∂/∂γ_i log det(X−Γ) = −[(X−Γ)^{-1}]_ii.
      Eigen::VectorXd grad(m);
      for (int i = 0; i < m; ++i) {
        double w_ii = 0.0;
        for (int k = 0; k < es.eigenvalues().size(); ++k)
          w_ii += std::norm(es.eigenvectors()(free[i], k)) / es.eigenvalues()(k);
        grad[i] = -(priors[free[i]] - t * w_ii + t / v[i]);
      }
      return grad;
    };
    const double stage_tol = std::max(1e-11, 1e-4 * t);
    xf = detail::minimize(f, df, xf, stage_tol, cfg.max_stage_iters).x;
  }
  return to_full(xf);
}

}  // namespace

SigmaMin sigma_min(const GramData& g, const Eigen::VectorXd& gamma) {
  check_gamma_size(g, gamma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(shifted_matrix(g, gamma));
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

SigmaMinGradient sigma_min_gradient(const GramData& g, const Eigen::VectorXd& gamma) {
  check_gamma_size(g, gamma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(shifted_matrix(g, gamma));
  SigmaMinGradient result;
  result.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
  if (result.gap <= kEigGapTol) {
    result.degenerate = true;
    return result;
  }
  result.gradient = -es.eigenvectors().col(0).cwiseAbs2();
  return result;
}

GammaPoint make_gamma_point(const GramData& g, const Eigen::VectorXd& gamma) {
  GammaPoint pt;
  pt.gamma = gamma;
  pt.sigma_min = sigma_min(g, gamma).value;
  pt.feasible = pt.sigma_min >= -kFeasibilitySigmaTol &&
                (gamma.array() >= -kFeasibilityGammaTol).all();
  return pt;
}

std::string to_string(SolutionLabel label) {
  switch (label) {
    case SolutionLabel::InteriorNonsingular: return "InteriorNonsingular";
    case SolutionLabel::InteriorSingular: return "InteriorSingular";
    case SolutionLabel::Boundary: return "Boundary";
  }
  return "Boundary";
}

SolutionClass classify(const GramData& g, const GammaPoint& point,
                       const Eigen::VectorXd& priors) {
  check_gamma_size(g, point.gamma);
  if (point.sigma_min < -kFeasibilitySigmaTol || point.sigma_min > kCriticalSigmaTol)
    throw std::invalid_argument("classification requires a critical point (σ_min ≈ 0)");

  SolutionClass cls;
  for (int i = 0; i < point.gamma.size(); ++i)
    if (point.gamma[i] < kBoundaryTol) cls.zero_indices.push_back(i);
  if (!cls.zero_indices.empty()) {
    cls.label = SolutionLabel::Boundary;
    return cls;
  }

  const SigmaMinGradient grad = sigma_min_gradient(g, point.gamma);
  cls.degeneracy_gap = grad.gap;
  if (grad.degenerate) {
    cls.label = SolutionLabel::InteriorSingular;
    return cls;
  }
  cls.gradient = grad.gradient;
  cls.label = (grad.gradient + priors).norm() < kGradientMatchTol
                  ? SolutionLabel::InteriorNonsingular
                  : SolutionLabel::InteriorSingular;
  return cls;
}

PovmReport reconstruct_povm(const StateSet& set, const Eigen::VectorXd& gamma) {
  const int n = set.size();
  const int d = set.dim();
  if (gamma.size() != n) throw std::invalid_argument("gamma must have one entry per state");

  // Reciprocal states: columns of Λ(Λ†Λ)^{-1} satisfy ⟨ψ̃_i|ψ_j⟩ = δ_ij and
  // lie in the span of the input states.
  const Eigen::MatrixXcd x = set.states().adjoint() * set.states();
  const Eigen::MatrixXcd reciprocal =
      Eigen::LLT<Eigen::MatrixXcd>(x).solve(set.states().adjoint()).adjoint();

  PovmReport report;
  report.elements.reserve(n + 1);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd pi = gamma[i] * (reciprocal.col(i) * reciprocal.col(i).adjoint());
    sum += pi;
    report.elements.push_back(std::move(pi));
  }
  report.elements.push_back(Eigen::MatrixXcd::Identity(d, d) - sum);

  report.eq_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::complex<double> val =
          set.states().col(i).adjoint() * report.elements[j] * set.states().col(i);
      const double expected = i == j ? gamma[i] : 0.0;
      report.eq_residual = std::max(report.eq_residual, std::abs(val - expected));
    }
  }

  report.min_element_eigenvalue = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    report.min_element_eigenvalue =
        std::min(report.min_element_eigenvalue, smallest_eigenvalue(report.elements[i]));
  report.inconclusive_min_eigenvalue = smallest_eigenvalue(report.elements[n]);
  report.completeness_residual = 0.0;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : report.elements) total += e;
  report.completeness_residual =
      (total - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();

  report.valid = report.eq_residual <= kPovmEqTol &&
                 report.min_element_eigenvalue >= -kFeasibilityGammaTol &&
                 report.inconclusive_min_eigenvalue >= -kPovmPsdTol &&
                 report.completeness_residual <= kPovmCompletenessTol;
  return report;
}

SolverResult solve_optimal(const StateSet& set, const SolverConfig& cfg) {
  const GramData g = gram(set);
  const int n = set.size();

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  Eigen::VectorXd gamma = barrier_continuation(g.gram, set.priors(), all, cfg);

  // Barrier methods stall near vertices; pin near-zero coordinates to exact 0
  // and re-solve the reduced problem once.
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (gamma[i] >= cfg.pin_tol) free.push_back(i);
  if (static_cast<int>(free.size()) < n && !free.empty())
    gamma = barrier_continuation(g.gram, set.priors(), free, cfg);

  SolverResult result;
  result.gamma_opt = make_gamma_point(g, gamma);
  result.p_opt = set.priors().dot(gamma);
  result.solution_class = classify(g, result.gamma_opt, set.priors());
  result.povm_valid = reconstruct_povm(set, gamma).valid;
  const BoundResult bound = minimize_bound(g, set.priors(), cfg.bound);
  result.bound_value = bound.value;
  result.bound_gap = bound.value - result.p_opt;
  // Convergence certificate: the optimum of the convex program lies on the
  // critical region, so a feasible point with σ_min ≈ 0 is the witness that
  // the continuation tracked the central path to its end.
  result.converged = result.gamma_opt.feasible && result.gamma_opt.sigma_min <= kCriticalSigmaTol;
  return result;
}

double brute_force_oracle(const StateSet& set, int resolution) {
  if (resolution < 20) throw std::invalid_argument("oracle resolution must be at least 20");
  const GramData g = gram(set);
  const int n = set.size();
  const double step = 1.0 / resolution;

  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd best_gamma = Eigen::VectorXd::Zero(n);
  double best = -std::numeric_limits<double>::infinity();

  const auto feasible = [&](const Eigen::VectorXd& v) {
    return smallest_eigenvalue(shifted_matrix(g, v)) >= 0.0;
  };

  // Depth-first sweep in lexicographic order. σ_min is non-increasing in each
  // coordinate, so once a prefix with an all-zero tail is infeasible, every
  // larger value at that level is infeasible too.
  const std::function<void(int)> sweep = [&](int level) {
    for (int i = 0; i <= resolution; ++i) {
      gamma[level] = i * step;
      for (int k = level + 1; k < n; ++k) gamma[k] = 0.0;
      if (!feasible(gamma)) break;
      if (level == n - 1) {
        const double val = set.priors().dot(gamma);
        if (val > best) {
          best = val;
          best_gamma = gamma;
        }
      } else {
        sweep(level + 1);
      }
    }
  };
  sweep(0);

  // One refinement pass at half-step around the best grid point.
  const double h = step / 2.0;
  std::vector<int> offsets(n, -1);
  Eigen::VectorXd candidate(n);
  while (true) {
    for (int i = 0; i < n; ++i)
      candidate[i] = std::clamp(best_gamma[i] + offsets[i] * h, 0.0, 1.0);
    const double val = set.priors().dot(candidate);
    if (val > best && feasible(candidate)) best = val;
    int level = n - 1;
    while (level >= 0 && ++offsets[level] > 1) offsets[level--] = -1;
    if (level < 0) break;
  }
  return best;
}

}  // namespace usd
