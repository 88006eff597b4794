#include "usd/state_set.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace usd {

namespace {

// Index of the pair (i, j), i < j, in row-major upper-triangular packing.
int upper_index(int n, int i, int j) { return i * (2 * n - i - 1) / 2 + (j - i - 1); }

}  // namespace

StateSet::StateSet(Eigen::MatrixXcd states, Eigen::VectorXd priors, bool normalize)
    : states_(std::move(states)), priors_(std::move(priors)) {
  const int d = static_cast<int>(states_.rows());
  const int n = static_cast<int>(states_.cols());
  if (n < 2) throw std::invalid_argument("state set needs at least two states");
  if (d < n) throw std::invalid_argument("dimension must be at least the number of states");
  if (priors_.size() != n)
    throw std::invalid_argument("prior count does not match the number of states");

  if (normalize) {
    for (int i = 0; i < n; ++i) {
      const double nrm = states_.col(i).norm();
      if (nrm <= 0.0) throw std::invalid_argument("cannot normalize a zero state vector");
      states_.col(i) /= nrm;
    }
    const double sum = priors_.sum();
    if (sum <= 0.0) throw std::invalid_argument("cannot normalize non-positive priors");
    priors_ /= sum;
  }

  for (int i = 0; i < n; ++i) {
    if (std::abs(states_.col(i).norm() - 1.0) > kUnitNormTol)
      throw std::invalid_argument("state " + std::to_string(i + 1) + " is not unit norm");
  }
  for (int i = 0; i < n; ++i) {
    if (!(priors_[i] > 0.0 && priors_[i] < 1.0))
      throw std::invalid_argument("priors must satisfy 0 < p_i < 1");
  }
  if (std::abs(priors_.sum() - 1.0) > kUnitNormTol)
    throw std::invalid_argument("priors must sum to 1");

  const Eigen::MatrixXcd x = states_.adjoint() * states_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) <= kIndependenceTol)
    throw std::invalid_argument("states are linearly dependent (or too close to it)");
}

double GramData::phase(int i, int j) const {
  if (i == j) return 0.0;
  const int n = size();
  if (i < j) return phases_upper[upper_index(n, i, j)];
  return -phases_upper[upper_index(n, j, i)];
}

GramData gram(const StateSet& set) {
  const int n = set.size();
  GramData g;
  g.gram = set.states().adjoint() * set.states();
  // Enforce exact Hermitian symmetry against rounding in the product.
  g.gram = ((g.gram + g.gram.adjoint()) / 2.0).eval();
  g.moduli = g.gram.cwiseAbs();
  g.phases_upper.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.phases_upper.push_back(std::arg(g.gram(i, j)));
  return g;
}

namespace {

Eigen::VectorXcd parse_state_entry(const nlohmann::json& entry, int dim, int index) {
  if (!entry.is_array() || entry.empty())
    throw std::invalid_argument("state " + std::to_string(index + 1) + " must be a non-empty array");
  if (static_cast<int>(entry.size()) != dim)
    throw std::invalid_argument("state " + std::to_string(index + 1) + " has wrong length");
  Eigen::VectorXcd v(dim);
  const bool complex_pairs = entry.front().is_array();
  for (int r = 0; r < dim; ++r) {
    const auto& c = entry[r];
    if (complex_pairs) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw std::invalid_argument("state " + std::to_string(index + 1) +
                                    " entries must be [re, im] pairs");
      v[r] = std::complex<double>(c[0].get<double>(), c[1].get<double>());
    } else {
      if (!c.is_number())
        throw std::invalid_argument("state " + std::to_string(index + 1) +
                                    " entries must be numbers");
      v[r] = std::complex<double>(c.get<double>(), 0.0);
    }
  }
  return v;
}

}  // namespace

StateSet parse_stateset(const std::string& text, bool normalize) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed instance: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() <= 0)
    throw std::invalid_argument("instance needs a positive integer \"dim\"");
  if (!j.contains("states") || !j["states"].is_array())
    throw std::invalid_argument("instance needs a \"states\" array");

  const int dim = j["dim"].get<int>();
  const auto& states_json = j["states"];
  const int n = static_cast<int>(states_json.size());
  if (n == 0) throw std::invalid_argument("instance has no states");

  Eigen::MatrixXcd states(dim, n);
  for (int i = 0; i < n; ++i) states.col(i) = parse_state_entry(states_json[i], dim, i);

  Eigen::VectorXd priors = Eigen::VectorXd::Constant(n, 1.0 / n);
  if (j.contains("priors")) {
    const auto& pj = j["priors"];
    if (!pj.is_array() || static_cast<int>(pj.size()) != n)
      throw std::invalid_argument("\"priors\" must list one probability per state");
    for (int i = 0; i < n; ++i) {
      if (!pj[i].is_number()) throw std::invalid_argument("priors must be numbers");
      priors[i] = pj[i].get<double>();
    }
  }
  return StateSet(std::move(states), std::move(priors), normalize);
}

std::string to_json(const StateSet& set) {
  nlohmann::json j;
  j["dim"] = set.dim();
  nlohmann::json states = nlohmann::json::array();
  for (int i = 0; i < set.size(); ++i) {
    nlohmann::json col = nlohmann::json::array();
    for (int r = 0; r < set.dim(); ++r) {
      const auto z = set.states()(r, i);
      col.push_back({z.real(), z.imag()});
    }
    states.push_back(std::move(col));
  }
  j["states"] = std::move(states);
  nlohmann::json priors = nlohmann::json::array();
  for (int i = 0; i < set.size(); ++i) priors.push_back(set.priors()[i]);
  j["priors"] = std::move(priors);
  return j.dump();
}

StateSet realize_from_gram(const Eigen::MatrixXcd& target, const Eigen::VectorXd& priors) {
  const int n = static_cast<int>(target.rows());
  if (target.cols() != n) throw std::invalid_argument("gram matrix must be square");
  if ((target - target.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gram matrix must be Hermitian");
  for (int i = 0; i < n; ++i) {
    if (std::abs(target(i, i).real() - 1.0) > kUnitNormTol)
      throw std::invalid_argument("gram matrix must have unit diagonal");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(target);
  if (es.eigenvalues()(0) <= kIndependenceTol)
    throw std::invalid_argument("gram matrix is not positive definite");
  // Principal square root: columns of G^{1/2} realize the prescribed overlaps.
  const Eigen::MatrixXcd root = es.eigenvectors() *
                                es.eigenvalues().cwiseSqrt().asDiagonal() *
                                es.eigenvectors().adjoint();
  return StateSet(root, priors);
}

}  // namespace usd
