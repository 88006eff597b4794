#include "usd/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace usd {

namespace {

constexpr double kIdentityTol = 1e-12;  // algebraic identities checked at this tolerance

double wrap_pi(double x) {
  double w = std::remainder(x, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

void check_k(int k, int n) {
  if (k < 1 || k > n) throw std::out_of_range("k must lie in [1, N]");
}

}  // namespace

EtaFamily eta_family(const StateSet& set, const PhaseVector& theta) {
  const int n = set.size();
  if (theta.size() != n)
    throw std::invalid_argument("phase vector size must match the number of states");
  EtaFamily fam;
  fam.vectors.resize(set.dim(), n);
  fam.norms_sq.resize(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(set.dim());
    for (int r = 0; r < n; ++r) {
      const double angle = theta.thetas[r] + 2.0 * std::numbers::pi * r * k / n;
      eta += std::sqrt(set.priors()[r]) *
             std::complex<double>(std::cos(angle), std::sin(angle)) * set.states().col(r);
    }
    fam.vectors.col(k) = eta;
    fam.norms_sq[k] = eta.squaredNorm();
  }
  return fam;
}

SchmidtSpectrum schmidt_spectrum(const StateSet& set, const PhaseVector& theta) {
  const EtaFamily fam = eta_family(set, theta);
  const int n = set.size();
  SchmidtSpectrum spec;
  spec.coeffs.resize(n);
  for (int k = 0; k < n; ++k) {
    if (fam.norms_sq[k] <= 0.0)
      throw std::runtime_error("vanishing η_k norm: states are linearly dependent");
    spec.coeffs[k] = fam.norms_sq[k] / n;
  }
  std::sort(spec.coeffs.begin(), spec.coeffs.end(), std::greater<double>());
  return spec;
}

double vidal_probability(const SchmidtSpectrum& spec) {
  const int d = spec.size();
  if (d == 0) throw std::invalid_argument("empty Schmidt spectrum");
  double min_q = std::numeric_limits<double>::infinity();
  double suffix = 0.0;
  for (int l = d; l >= 1; --l) {
    suffix += spec.coeffs[l - 1];
    const double q = suffix * d / (d - l + 1);
    min_q = std::min(min_q, q);
  }
  const double shortcut = d * spec.coeffs[d - 1];
  if (std::abs(min_q - shortcut) > kIdentityTol)
    throw std::logic_error("min_l q_l disagrees with d·α_d beyond tolerance");
  return min_q;
}

double conversion_probability(const StateSet& set, const PhaseVector& theta) {
  const EtaFamily fam = eta_family(set, theta);
  const double direct = fam.norms_sq.minCoeff();
  const double via_vidal = vidal_probability(schmidt_spectrum(set, theta));
  if (std::abs(direct - via_vidal) > kIdentityTol)
    throw std::logic_error("min_k ‖η_k‖² disagrees with the Vidal probability");
  return direct;
}

PhaseShiftReport check_phase_shift_equivalence(const StateSet& set, int k,
                                               const PhaseVector& theta) {
  const int n = set.size();
  check_k(k, n);
  if (theta.size() != n)
    throw std::invalid_argument("phase vector size must match the number of states");

  const EtaFamily fam = eta_family(set, theta);
  PhaseShiftReport report;
  report.eta_norm_sq = fam.norms_sq[k - 1];

  // θ′_r = θ_r + 2π(r−1)(k−1)/N keeps θ′_1 = 0 and maps η_k onto η_1.
  std::vector<double> shifted(n);
  for (int r = 0; r < n; ++r)
    shifted[r] = theta.thetas[r] + 2.0 * std::numbers::pi * r * (k - 1) / n;
  const EtaFamily shifted_fam = eta_family(set, PhaseVector(std::move(shifted)));
  report.shifted_norm_sq = shifted_fam.norms_sq[0];
  report.difference = report.eta_norm_sq - report.shifted_norm_sq;
  return report;
}

GramData shifted_gram(const GramData& g, int k) {
  const int n = g.size();
  check_k(k, n);
  GramData out = g;
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++idx) {
      const double phi = wrap_pi(g.phases_upper[idx] +
                                 2.0 * std::numbers::pi * (j - i) * (k - 1) / n);
      out.phases_upper[idx] = phi;
      const std::complex<double> z =
          g.modulus(i, j) * std::complex<double>(std::cos(phi), std::sin(phi));
      out.gram(i, j) = z;
      out.gram(j, i) = std::conj(z);
    }
  }
  return out;
}

BoundResult minimize_eta_norm(const StateSet& set, int k, const MinimizeConfig& cfg) {
  check_k(k, set.size());
  return minimize_bound(shifted_gram(gram(set), k), set.priors(), cfg);
}

}  // namespace usd
