#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace usd::detail {

struct DescentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iters = 0;
  bool converged = false;  // gradient tolerance reached
};

// Gradient descent with a backtracking (Armijo) line search. Step sizes are
// seeded with the Barzilai–Borwein spectral estimate and the acceptance test
// is non-monotone over a short window, which keeps the method fast on the
// ill-conditioned barrier stages without leaving the descent framework.
// f may return +inf to mark points outside its domain; x0 must be inside.
// Stops on the gradient tolerance, on max_iters, or when no acceptable step
// remains above kMinStep.
inline DescentResult minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                              const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                              Eigen::VectorXd x0, double grad_tol, int max_iters) {
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  constexpr int kWindow = 8;

  DescentResult r;
  r.x = std::move(x0);
  double fx = f(r.x);
  Eigen::VectorXd g = grad(r.x);
  double step = 1.0;

  double window[kWindow];
  std::fill(window, window + kWindow, fx);
  int w = 0;

  while (r.iters < max_iters) {
    const double gn = g.norm();
    if (gn <= grad_tol) {
      r.converged = true;
      break;
    }
    const double f_ref = *std::max_element(window, window + kWindow);
    double s = step;
    double f_new = 0.0;
    bool accepted = false;
    while (s > kMinStep) {
      f_new = f(r.x - s * g);
      if (f_new <= f_ref - kArmijo * s * gn * gn) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd x_new = r.x - s * g;
    Eigen::VectorXd g_new = grad(x_new);
    const Eigen::VectorXd dg = g_new - g;
    const double dg2 = dg.squaredNorm();
    // BB2 step |s^T y| / y^T y from the accepted move.
    step = dg2 > 0.0 ? std::clamp(s * std::abs(g.dot(dg)) / dg2, 1e-14, 1e10) : s * 2.0;

    r.x = std::move(x_new);
    g = std::move(g_new);
    fx = f_new;
    window[w = (w + 1) % kWindow] = fx;
    ++r.iters;
  }
  r.value = fx;
  r.grad_norm = g.norm();
  return r;
}

}  // namespace usd::detail
