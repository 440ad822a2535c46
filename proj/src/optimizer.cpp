#include "gpltail/optimizer.hpp"

#include <cmath>
#include <cstddef>

#include "gpltail/error.hpp"

namespace gpltail {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

MinimizeResult minimize_bfgs(const VectorFn& f, std::vector<double> x0,
                             const MinimizeOptions& options) {
  const std::size_t d = x0.size();
  MinimizeResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (!std::isfinite(res.value))
    throw ConvergenceError("objective not finite at starting point");

  // Inverse Hessian approximation, identity to start.
  std::vector<double> binv(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) binv[i * d + i] = 1.0;

  std::vector<double> grad = fd_gradient(f, res.x);
  res.gradient_norm = norm2(grad);
  bool reset_used = false;

  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    if (res.gradient_norm <= options.gradient_tolerance) {
      res.converged = true;
      return res;
    }

    // Search direction -B^{-1} grad; fall back to steepest descent if the
    // approximation has lost descent.
    std::vector<double> dir(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) dir[i] -= binv[i * d + j] * grad[j];
    double slope = 0.0;
    for (std::size_t i = 0; i < d; ++i) slope += dir[i] * grad[i];
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < d; ++i) dir[i] = -grad[i];
      slope = -res.gradient_norm * res.gradient_norm;
      for (std::size_t i = 0; i < d * d; ++i) binv[i] = 0.0;
      for (std::size_t i = 0; i < d; ++i) binv[i * d + i] = 1.0;
    }

    // Backtracking Armijo line search.
    const double c1 = 1e-4;
    double step = 1.0;
    double fnew = 0.0;
    std::vector<double> xnew(d);
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      for (std::size_t i = 0; i < d; ++i) xnew[i] = res.x[i] + step * dir[i];
      fnew = f(xnew);
      if (std::isfinite(fnew) && fnew <= res.value + c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (reset_used) return res;  // stalled; converged stays false
      // One restart from the current point with a fresh curvature model.
      reset_used = true;
      for (std::size_t i = 0; i < d * d; ++i) binv[i] = 0.0;
      for (std::size_t i = 0; i < d; ++i) binv[i * d + i] = 1.0;
      continue;
    }

    std::vector<double> gnew = fd_gradient(f, xnew);

    // BFGS inverse update (Sherman–Morrison form), skipped when curvature
    // information is too weak to be trustworthy.
    std::vector<double> s(d), y(d);
    double sy = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      s[i] = xnew[i] - res.x[i];
      y[i] = gnew[i] - grad[i];
      sy += s[i] * y[i];
    }
    if (sy > 1e-12 * norm2(s) * norm2(y)) {
      const double rho = 1.0 / sy;
      // binv = (I - rho s y^T) binv (I - rho y s^T) + rho s s^T
      std::vector<double> by(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) by[i] += binv[i * d + j] * y[j];
      double yby = 0.0;
      for (std::size_t i = 0; i < d; ++i) yby += y[i] * by[i];
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          binv[i * d + j] += rho * ((1.0 + rho * yby) * s[i] * s[j] - s[i] * by[j] - by[i] * s[j]);
        }
      }
    }

    const double fprev = res.value;
    res.x = xnew;
    res.value = fnew;
    grad = std::move(gnew);
    res.gradient_norm = norm2(grad);

    // Flat progress with a flat gradient is convergence in disguise; a true
    // stall (flat progress, live gradient) exits unconverged.
    if (std::abs(fprev - fnew) <= 1e-14 * std::max(1.0, std::abs(fprev)) &&
        norm2(s) <= 1e-12 * (1.0 + norm2(res.x))) {
      res.converged = res.gradient_norm <= 10.0 * options.gradient_tolerance;
      return res;
    }
  }
  res.converged = res.gradient_norm <= options.gradient_tolerance;
  return res;
}

}  // namespace gpltail
