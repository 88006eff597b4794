#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "usd/phase_bound.hpp"

using namespace usd;

namespace {

StateSet example1() {
  const double r3 = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << r3, r3, r3;
  m.col(2) << r3, r3, -r3;
  return StateSet(m, Eigen::VectorXd::Constant(3, 1.0 / 3.0));
}

StateSet two_state(double s, double p1 = 0.5) {
  Eigen::MatrixXcd m(2, 2);
  m.col(0) << 1, 0;
  m.col(1) << s, std::sqrt(1.0 - s * s);
  return StateSet(m, Eigen::Vector2d(p1, 1.0 - p1));
}

// Central finite differences of the objective in the free phases.
Eigen::VectorXd fd_gradient(const GramData& g, const Eigen::VectorXd& p,
                            const PhaseVector& theta, double h = 1e-6) {
  Eigen::VectorXd grad(theta.size() - 1);
  for (int k = 1; k < theta.size(); ++k) {
    PhaseVector plus = theta, minus = theta;
    plus.thetas[k] += h;
    minus.thetas[k] -= h;
    grad[k - 1] = (objective(g, p, plus) - objective(g, p, minus)) / (2.0 * h);
  }
  return grad;
}

}  // namespace

TEST_CASE("phase vector enforces the theta_1 = 0 gauge") {
  CHECK_THROWS_AS(PhaseVector({0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseVector(std::vector<double>{}), std::invalid_argument);
  const PhaseVector p = PhaseVector::from_free(Eigen::Vector2d(1.0, 2.0));
  CHECK(p.thetas[0] == 0.0);
  CHECK(p.size() == 3);
  CHECK(p.free_thetas()[1] == 2.0);
}

TEST_CASE("objective is 1 for orthonormal states at any phases") {
  const StateSet set(Eigen::MatrixXcd::Identity(3, 3),
                     Eigen::VectorXd::Constant(3, 1.0 / 3.0));
  const GramData g = gram(set);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const PhaseVector theta = testutil::random_phases(rng, 3);
    CHECK(std::abs(objective(g, set.priors(), theta) - 1.0) < 1e-12);
  }
}

TEST_CASE("two-state objective at theta = (0, pi) is 1 - s") {
  const double s = 0.37;
  const StateSet set = two_state(s);
  const double v = objective(gram(set), set.priors(),
                             PhaseVector({0.0, std::numbers::pi}));
  CHECK(std::abs(v - (1.0 - s)) < 1e-12);
}

TEST_CASE("boundary example objective at zero phases") {
  const StateSet set = example1();
  const GramData g = gram(set);
  const PhaseVector zero = PhaseVector::zero(3);
  const double expected = 1.0 + 4.0 / (3.0 * std::sqrt(3.0)) + 2.0 / 9.0;  // ≈ 1.9920
  CHECK(std::abs(objective(g, set.priors(), zero) - expected) < 1e-12);
  CHECK(std::abs(objective(g, set.priors(), zero) - direct_norm_objective(set, zero)) < 1e-12);
}

TEST_CASE("closed form equals the direct norm on random instances and phases") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const StateSet set = testutil::random_instance(rng, n, n + static_cast<int>(rng() % 2));
    const PhaseVector theta = testutil::random_phases(rng, n);
    CHECK(std::abs(objective(gram(set), set.priors(), theta) -
                   direct_norm_objective(set, theta)) < 1e-12);
  }
}

TEST_CASE("global phase shifts leave the norm unchanged") {
  std::mt19937_64 rng(23);
  const StateSet set = testutil::random_instance(rng, 3, 3);
  const PhaseVector theta = testutil::random_phases(rng, 3);
  const double base = objective(gram(set), set.priors(), theta);
  // Shift every phase, including θ_1, and evaluate the norm directly.
  for (double shift : {0.37, 1.9, -2.4}) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(set.dim());
    for (int j = 0; j < set.size(); ++j) {
      const double a = theta.thetas[j] + shift;
      v += std::sqrt(set.priors()[j]) * std::complex<double>(std::cos(a), std::sin(a)) *
           set.states().col(j);
    }
    CHECK(std::abs(v.squaredNorm() - base) < 1e-12);
  }
}

TEST_CASE("gradient vanishes for orthonormal states") {
  const StateSet set(Eigen::MatrixXcd::Identity(3, 3),
                     Eigen::VectorXd::Constant(3, 1.0 / 3.0));
  const Eigen::VectorXd g =
      objective_gradient(gram(set), set.priors(), PhaseVector({0.0, 0.7, 2.1}));
  CHECK(g.norm() < 1e-12);
}

TEST_CASE("two-state gradient vanishes at the cosine stationary point") {
  const StateSet set = two_state(0.6);
  const GramData g = gram(set);
  const double phi = g.phase(0, 1);
  const Eigen::VectorXd grad = objective_gradient(
      g, set.priors(), PhaseVector({0.0, std::numbers::pi - phi}));
  CHECK(grad.norm() < 1e-12);
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const StateSet set = testutil::random_instance(rng, n, n);
    const GramData g = gram(set);
    const PhaseVector theta = testutil::random_phases(rng, n);
    const Eigen::VectorXd analytic = objective_gradient(g, set.priors(), theta);
    const Eigen::VectorXd numeric = fd_gradient(g, set.priors(), theta);
    CHECK((analytic - numeric).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const StateSet set = example1();
  const GramData g = gram(set);
  CHECK_THROWS_AS(objective(g, set.priors(), PhaseVector::zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(objective_gradient(g, Eigen::Vector2d(0.5, 0.5), PhaseVector::zero(3)),
                  std::invalid_argument);
}

TEST_CASE("minimum for the boundary example matches the published value") {
  const BoundResult r = minimize_bound(example1());
  CHECK(std::abs(r.value - 0.4444) < 5e-4);
  CHECK(r.converged);
  CHECK(r.starts_used == 65);
  CHECK(r.best_gradient_norm <= 1e-10);
}

TEST_CASE("minimum for the skewed-prior instance matches the published value") {
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << 1 / std::sqrt(5.0), 2 / std::sqrt(5.0), 0;
  m.col(2) << 2 / std::sqrt(17.0), 2 / std::sqrt(17.0), 3 / std::sqrt(17.0);
  const StateSet set(m, Eigen::Vector3d(0.10, 0.80, 0.10));
  CHECK(std::abs(minimize_bound(set).value - 0.4758) < 5e-4);
}

TEST_CASE("orthonormal overlaps short-circuit to a constant bound") {
  const StateSet set(Eigen::MatrixXcd::Identity(4, 4),
                     Eigen::VectorXd::Constant(4, 0.25));
  const BoundResult r = minimize_bound(set);
  CHECK(r.value == 1.0);
  CHECK(r.starts_used == 0);
  CHECK(r.converged);
}

TEST_CASE("two-state minimum is the closed form to high accuracy") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> us(0.0, 0.95), up(0.1, 0.9);
  for (int t = 0; t < 25; ++t) {
    const double s = us(rng), p1 = up(rng);
    const StateSet set = two_state(s, p1);
    const double expected = 1.0 - 2.0 * std::sqrt(p1 * (1.0 - p1)) * s;
    CHECK(std::abs(minimize_bound(set).value - expected) < 1e-10);
  }
}

TEST_CASE("result never exceeds the objective at sampled phases") {
  std::mt19937_64 rng(26);
  const StateSet set = testutil::random_instance(rng, 3, 3);
  const GramData g = gram(set);
  const BoundResult r = minimize_bound(set);
  for (int t = 0; t < 200; ++t) {
    const PhaseVector theta = testutil::random_phases(rng, 3);
    CHECK(r.value <= objective(g, set.priors(), theta) + 1e-9);
  }
  // In particular it never exceeds the deterministic start θ_j = π − φ_1j.
  std::vector<double> det(3, 0.0);
  for (int j = 1; j < 3; ++j) det[j] = std::numbers::pi - g.phase(0, j);
  CHECK(r.value <= objective(g, set.priors(), PhaseVector(std::move(det))) + 1e-12);
}

TEST_CASE("bound lies inside its algebraic range") {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const StateSet set = testutil::random_instance(rng, n, n);
    const GramData g = gram(set);
    double overlap_sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        overlap_sum +=
            2.0 * std::sqrt(set.priors()[i] * set.priors()[j]) * g.modulus(i, j);
    const double v = minimize_bound(set).value;
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + overlap_sum + 1e-12);
    CHECK(v >= std::max(0.0, 1.0 - overlap_sum) - 1e-12);
  }
}

TEST_CASE("fixed seed reproduces the result exactly") {
  std::mt19937_64 rng(28);
  const StateSet set = testutil::random_instance(rng, 4, 4);
  const BoundResult a = minimize_bound(set);
  const BoundResult b = minimize_bound(set);
  CHECK(a.value == b.value);
  CHECK(a.argmin.thetas == b.argmin.thetas);
}
