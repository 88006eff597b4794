#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "usd/state_set.hpp"

using namespace usd;

namespace {

const char* kExample1Json = R"({
  "dim": 3,
  "states": [
    [1, 0, 0],
    [0.5773502691896258, 0.5773502691896258, 0.5773502691896258],
    [0.5773502691896258, 0.5773502691896258, -0.5773502691896258]
  ],
  "priors": [0.3333333333333333, 0.3333333333333333, 0.3333333333333334]
})";

// Hand-rolled inner product, independent of the GramData path.
std::complex<double> dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  std::complex<double> s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

TEST_CASE("parse accepts the three-state boundary instance") {
  const StateSet set = parse_stateset(kExample1Json);
  CHECK(set.dim() == 3);
  CHECK(set.size() == 3);
  CHECK(set.priors()[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(set.states()(0, 0) - std::complex<double>(1, 0)) < 1e-15);
}

TEST_CASE("parse accepts complex pair entries and uniform prior default") {
  const std::string text = R"({"dim": 2, "states": [[[1,0],[0,0]], [[0,0],[0,1]]]})";
  const StateSet set = parse_stateset(text);
  CHECK(set.priors()[0] == doctest::Approx(0.5));
  CHECK(set.states()(1, 1) == std::complex<double>(0, 1));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_stateset("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_stateset("[1,2,3]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_stateset(R"({"states": [[1,0],[0,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_stateset(R"({"dim": 2, "states": [[1,0,0],[0,1]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_stateset(R"({"dim": 2, "states": [[1,0],[0,1]], "priors": [1]})"),
                  std::invalid_argument);
}

TEST_CASE("norm violations are rejected unless normalize is set") {
  const std::string text = R"({"dim": 2, "states": [[2, 0], [0, 1]]})";
  CHECK_THROWS_AS(parse_stateset(text), std::invalid_argument);
  const StateSet set = parse_stateset(text, true);
  CHECK(set.states().col(0).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalize also rescales priors") {
  const std::string text = R"({"dim": 2, "states": [[1,0],[0,1]], "priors": [2, 6]})";
  const StateSet set = parse_stateset(text, true);
  CHECK(set.priors()[0] == doctest::Approx(0.25));
  CHECK(set.priors()[1] == doctest::Approx(0.75));
}

TEST_CASE("invalid priors are rejected") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(StateSet(id, Eigen::Vector2d(0.7, 0.4)), std::invalid_argument);
  CHECK_THROWS_AS(StateSet(id, Eigen::Vector2d(1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(StateSet(id, Eigen::Vector2d(-0.2, 1.2)), std::invalid_argument);
}

TEST_CASE("duplicated state fails the independence check") {
  Eigen::MatrixXcd m(2, 2);
  m.col(0) << 1, 0;
  m.col(1) << 1, 0;
  CHECK_THROWS_AS(StateSet(m, Eigen::Vector2d(0.5, 0.5)), std::invalid_argument);
}

TEST_CASE("size constraints: N >= 2 and d >= N") {
  Eigen::MatrixXcd one(2, 1);
  one.col(0) << 1, 0;
  CHECK_THROWS_AS(StateSet(one, Eigen::VectorXd::Constant(1, 1.0)), std::invalid_argument);

  Eigen::MatrixXcd wide(2, 3);
  wide.col(0) << 1, 0;
  wide.col(1) << 0, 1;
  wide.col(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(StateSet(wide, Eigen::VectorXd::Constant(3, 1.0 / 3.0)),
                  std::invalid_argument);
}

TEST_CASE("gram of the boundary example matches the direct inner products") {
  const StateSet set = parse_stateset(kExample1Json);
  const GramData g = gram(set);
  CHECK(g.modulus(0, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(g.modulus(0, 2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(g.modulus(1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(std::abs(g.phase(i, j)) < 1e-12);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(g.gram(i, j) - dot(set.state(i), set.state(j))) < 1e-14);
}

TEST_CASE("gram of the interior-singular instance states") {
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << 1 / std::sqrt(5.0), 2 / std::sqrt(5.0), 0;
  m.col(2) << 2 / std::sqrt(17.0), 2 / std::sqrt(17.0), 3 / std::sqrt(17.0);
  const GramData g = gram(StateSet(m, Eigen::VectorXd::Constant(3, 1.0 / 3.0)));
  CHECK(g.modulus(0, 1) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(g.modulus(0, 2) == doctest::Approx(2.0 / std::sqrt(17.0)).epsilon(1e-12));
  CHECK(g.modulus(1, 2) == doctest::Approx(6.0 / std::sqrt(85.0)).epsilon(1e-12));
}

TEST_CASE("gram of orthonormal states is the identity") {
  const StateSet set(Eigen::MatrixXcd::Identity(3, 3),
                     Eigen::VectorXd::Constant(3, 1.0 / 3.0));
  const GramData g = gram(set);
  CHECK((g.gram - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gram is Hermitian with unit diagonal and modulus-phase split reconstructs it") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSet set = testutil::random_instance(rng, 3, 4);
    const GramData g = gram(set);
    CHECK((g.gram - g.gram.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g.gram(i, i).real() - 1.0) < 1e-12);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const std::complex<double> rebuilt =
            g.modulus(i, j) *
            std::complex<double>(std::cos(g.phase(i, j)), std::sin(g.phase(i, j)));
        CHECK(std::abs(rebuilt - g.gram(i, j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("gram survives a serialize/parse round trip") {
  std::mt19937_64 rng(12);
  const StateSet set = testutil::random_instance(rng, 3, 3);
  const StateSet reparsed = parse_stateset(to_json(set));
  const GramData a = gram(set);
  const GramData b = gram(reparsed);
  CHECK((a.gram - b.gram).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((set.priors() - reparsed.priors()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("positive Gram spectrum coincides with full column rank") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int d = n + static_cast<int>(rng() % 2);
    const Eigen::MatrixXcd m = testutil::random_states(rng, d, n, 1e-6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m,
                                                       Eigen::EigenvaluesOnly);
    // Independent rank oracle via SVD of the stacked state matrix.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto rank = svd.setThreshold(1e-10).rank();
    CHECK((es.eigenvalues()(0) > 1e-10) == (rank == n));
  }
}

TEST_CASE("realize_from_gram reproduces the target overlaps") {
  std::mt19937_64 rng(14);
  const StateSet source = testutil::random_instance(rng, 3, 3);
  const GramData target = gram(source);
  const StateSet realized = realize_from_gram(target.gram, source.priors());
  const GramData check = gram(realized);
  CHECK((check.gram - target.gram).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(realize_from_gram(2.0 * target.gram, source.priors()),
                  std::invalid_argument);
}
