#pragma once

#include <vector>

#include "gpltail/numerics.hpp"

namespace gpltail {

struct MinimizeOptions {
  double gradient_tolerance = 1e-6;
  int max_iterations = 300;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Dense BFGS with backtracking (Armijo) line search and central-difference
// gradients.  Sized for the handful of parameters a distribution fit has;
// f may return +infinity outside its domain (such steps are rejected by the
// line search), but must be finite at x0.
MinimizeResult minimize_bfgs(const VectorFn& f, std::vector<double> x0,
                             const MinimizeOptions& options = {});

}  // namespace gpltail
