#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gpltail {

// Standard normal CDF and its inverse.  The inverse is the Wichura/AS241
// rational approximation, accurate to ~1e-15 over (0,1).
double normal_cdf(double x);
double normal_quantile(double p);

using VectorFn = std::function<double(std::span<const double>)>;

// Central-difference gradient with per-coordinate relative step.
std::vector<double> fd_gradient(const VectorFn& f, std::span<const double> x,
                                double rel_step = 1e-6);

// Central-difference Hessian (symmetric, row-major d*d).
std::vector<double> fd_hessian(const VectorFn& f, std::span<const double> x,
                               double rel_step = 5e-5);

// Cholesky factorization of a symmetric positive definite matrix (row-major).
// Returns false when a non-positive pivot is met.
bool cholesky_factor(std::vector<double>& a, std::size_t d);

// Inverts an SPD matrix in place via its Cholesky factor; false if not SPD.
bool spd_inverse(std::vector<double>& a, std::size_t d);

}  // namespace gpltail
