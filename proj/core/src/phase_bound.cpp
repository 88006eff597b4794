#include "usd/phase_bound.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "descent.hpp"

namespace usd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateOverlapTol = 1e-14;  // all-orthogonal short circuit

struct PairTerm {
  int i, j;
  double weight;  // 2√(p_i p_j)|G_ij|
  double phi;     // φ_ij
};

std::vector<PairTerm> pair_terms(const GramData& g, const Eigen::VectorXd& priors) {
  const int n = g.size();
  std::vector<PairTerm> terms;
  terms.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      terms.push_back({i, j, 2.0 * std::sqrt(priors[i] * priors[j]) * g.modulus(i, j),
                       g.phase(i, j)});
  return terms;
}

// θ_1 = 0 is implicit; `free` holds θ_2..θ_N.
double eval_objective(const std::vector<PairTerm>& terms, const Eigen::VectorXd& free) {
  double v = 1.0;
  for (const auto& t : terms) {
    const double ti = t.i == 0 ? 0.0 : free[t.i - 1];
    const double tj = free[t.j - 1];
    v += t.weight * std::cos(tj - ti + t.phi);
  }
  return v;
}

Eigen::VectorXd eval_gradient(const std::vector<PairTerm>& terms, const Eigen::VectorXd& free) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(free.size());
  for (const auto& t : terms) {
    const double ti = t.i == 0 ? 0.0 : free[t.i - 1];
    const double tj = free[t.j - 1];
    const double s = t.weight * std::sin(tj - ti + t.phi);
    grad[t.j - 1] -= s;
    if (t.i > 0) grad[t.i - 1] += s;
  }
  return grad;
}

void check_dimensions(const GramData& g, const Eigen::VectorXd& priors, const PhaseVector& theta) {
  if (priors.size() != g.size() || theta.size() != g.size())
    throw std::invalid_argument("gram data, priors and phases must have matching sizes");
}

// Uniform angle in [0, 2π) from the top 53 bits of the generator output, so
// the start sequence is identical across standard-library implementations.
double uniform_angle(std::mt19937_64& rng) {
  return kTwoPi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> t) : thetas(std::move(t)) {
  if (thetas.empty()) throw std::invalid_argument("phase vector cannot be empty");
  if (thetas.front() != 0.0) throw std::invalid_argument("phase vector must have θ_1 = 0");
}

PhaseVector PhaseVector::zero(int n) {
  if (n < 1) throw std::invalid_argument("phase vector cannot be empty");
  PhaseVector p;
  p.thetas.assign(n, 0.0);
  return p;
}

PhaseVector PhaseVector::from_free(const Eigen::VectorXd& free_thetas) {
  PhaseVector p;
  p.thetas.resize(free_thetas.size() + 1);
  p.thetas[0] = 0.0;
  for (int i = 0; i < free_thetas.size(); ++i) p.thetas[i + 1] = free_thetas[i];
  return p;
}

Eigen::VectorXd PhaseVector::free_thetas() const {
  Eigen::VectorXd f(size() - 1);
  for (int i = 1; i < size(); ++i) f[i - 1] = thetas[i];
  return f;
}

double objective(const GramData& g, const Eigen::VectorXd& priors, const PhaseVector& theta) {
  check_dimensions(g, priors, theta);
  double v = 1.0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      v += 2.0 * std::sqrt(priors[i] * priors[j]) * g.modulus(i, j) *
           std::cos(theta.thetas[j] - theta.thetas[i] + g.phase(i, j));
  return v;
}

double direct_norm_objective(const StateSet& set, const PhaseVector& theta) {
  if (theta.size() != set.size())
    throw std::invalid_argument("phase vector size must match the number of states");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(set.dim());
  for (int j = 0; j < set.size(); ++j) {
    const std::complex<double> c =
        std::sqrt(set.priors()[j]) *
        std::complex<double>(std::cos(theta.thetas[j]), std::sin(theta.thetas[j]));
    v += c * set.states().col(j);
  }
  return v.squaredNorm();
}

Eigen::VectorXd objective_gradient(const GramData& g, const Eigen::VectorXd& priors,
                                   const PhaseVector& theta) {
  check_dimensions(g, priors, theta);
  Eigen::VectorXd f(theta.size() - 1);
  for (int i = 1; i < theta.size(); ++i) f[i - 1] = theta.thetas[i];
  return eval_gradient(pair_terms(g, priors), f);
}

BoundResult minimize_bound(const GramData& g, const Eigen::VectorXd& priors,
                           const MinimizeConfig& cfg) {
  if (priors.size() != g.size())
    throw std::invalid_argument("gram data and priors must have matching sizes");
  const int n = g.size();
  const auto terms = pair_terms(g, priors);

  BoundResult result;
  bool all_orthogonal = true;
  for (const auto& t : terms)
    if (t.weight > kDegenerateOverlapTol) all_orthogonal = false;
  if (all_orthogonal) {
    // Constant objective: the norm is 1 for every phase assignment.
    result.value = 1.0;
    result.argmin = PhaseVector::zero(n);
    result.converged = true;
    return result;
  }

  const auto f = [&terms](const Eigen::VectorXd& x) { return eval_objective(terms, x); };
  const auto df = [&terms](const Eigen::VectorXd& x) { return eval_gradient(terms, x); };

  // Deterministic start θ_j = π − φ_1j (exact for N = 2), then seeded random
  // starts on the torus.
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(cfg.starts + 1);
  Eigen::VectorXd det(n - 1);
  for (int j = 1; j < n; ++j) det[j - 1] = std::numbers::pi - g.phase(0, j);
  starts.push_back(det);
  std::mt19937_64 rng(cfg.seed);
  for (int s = 0; s < cfg.starts; ++s) {
    Eigen::VectorXd x(n - 1);
    for (int i = 0; i < n - 1; ++i) x[i] = uniform_angle(rng);
    starts.push_back(std::move(x));
  }

  bool have_best = false;
  detail::DescentResult best;
  for (const auto& start : starts) {
    detail::DescentResult run = detail::minimize(f, df, start, cfg.grad_tol, cfg.max_iters);
    ++result.starts_used;
    if (!have_best || run.value < best.value) {
      best = std::move(run);
      have_best = true;
    }
  }
  result.value = best.value;
  result.argmin = PhaseVector::from_free(best.x);
  result.best_gradient_norm = best.grad_norm;
  result.converged = best.converged;
  return result;
}

BoundResult minimize_bound(const StateSet& set, const MinimizeConfig& cfg) {
  return minimize_bound(gram(set), set.priors(), cfg);
}

}  // namespace usd
