#include "gpltail/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "gpltail/error.hpp"

namespace gpltail {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
  // Wichura's algorithm AS241 (PPND16): minimax rational approximations on
  // the central region and two tail regions.
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("normal quantile requires p in (0,1)");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                   6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
               1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return num / den;
  }

  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return (q < 0.0) ? -value : value;
}

std::vector<double> fd_gradient(const VectorFn& f, std::span<const double> x, double rel_step) {
  const std::size_t d = x.size();
  std::vector<double> grad(d);
  std::vector<double> p(x.begin(), x.end());
  for (std::size_t i = 0; i < d; ++i) {
    const double h = rel_step * std::max(std::abs(x[i]), 1.0);
    const double xi = x[i];
    p[i] = xi + h;
    const double fp = f(p);
    p[i] = xi - h;
    const double fm = f(p);
    p[i] = xi;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

std::vector<double> fd_hessian(const VectorFn& f, std::span<const double> x, double rel_step) {
  const std::size_t d = x.size();
  std::vector<double> hess(d * d);
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> h(d);
  for (std::size_t i = 0; i < d; ++i) h[i] = rel_step * std::max(std::abs(x[i]), 1.0);

  const double f0 = f(p);
  for (std::size_t i = 0; i < d; ++i) {
    const double xi = x[i];
    p[i] = xi + h[i];
    const double fp = f(p);
    p[i] = xi - h[i];
    const double fm = f(p);
    p[i] = xi;
    hess[i * d + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double xi = x[i], xj = x[j];
      p[i] = xi + h[i]; p[j] = xj + h[j];
      const double fpp = f(p);
      p[j] = xj - h[j];
      const double fpm = f(p);
      p[i] = xi - h[i]; p[j] = xj + h[j];
      const double fmp = f(p);
      p[j] = xj - h[j];
      const double fmm = f(p);
      p[i] = xi; p[j] = xj;
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
      hess[i * d + j] = v;
      hess[j * d + i] = v;
    }
  }
  return hess;
}

bool cholesky_factor(std::vector<double>& a, std::size_t d) {
  // Lower-triangular factor written in place; the strict upper part is zeroed.
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double ljj = std::sqrt(diag);
    a[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
      a[i * d + j] = v / ljj;
    }
    for (std::size_t k = j + 1; k < d; ++k) a[j * d + k] = 0.0;
  }
  return true;
}

bool spd_inverse(std::vector<double>& a, std::size_t d) {
  std::vector<double> l = a;
  if (!cholesky_factor(l, d)) return false;

  // Solve A X = I column by column: L y = e_j, then L^T x = y.
  std::vector<double> inv(d * d, 0.0);
  std::vector<double> y(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      double v = (i == j) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) v -= l[i * d + k] * y[k];
      y[i] = v / l[i * d + i];
    }
    for (std::size_t ii = d; ii-- > 0;) {
      double v = y[ii];
      for (std::size_t k = ii + 1; k < d; ++k) v -= l[k * d + ii] * inv[k * d + j];
      inv[ii * d + j] = v / l[ii * d + ii];
    }
  }
  a = std::move(inv);
  return true;
}

}  // namespace gpltail
