#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpltail/censored_sample.hpp"
#include "gpltail/distribution.hpp"
#include "gpltail/numerics.hpp"

namespace gpltail {

// Censored log-likelihood
//   L = r * log F(x0) + sum_i log f(x_i)
// with r the censored count and x0 the censor threshold.  Returns -infinity
// when an observed value lies outside the support or censoring is claimed
// where the spec puts no mass.
double censored_log_likelihood(const Distribution& spec, const CensoredSample& sample);

// Which family to fit and how.  GPL families use g_kind and a fixed location;
// pareto1 requires fixed_sigma (its scale MLE sits on the sample boundary, so
// the scale is pinned, e.g. to a tail start).
struct ModelSelection {
  Family family = Family::Gpl2;
  GKind g_kind = GKind::LogRatio;
  double gpl_mu = 0.0;
  std::optional<double> fixed_sigma;
};

// Free-parameter names, in estimation order, for a selection.
std::vector<std::string> parameter_names(const ModelSelection& selection);

// Builds the spec a parameter vector describes (original scale, in
// parameter_names order).
Distribution build_distribution(const ModelSelection& selection,
                                std::span<const double> params);

struct FitOptions {
  std::vector<double> init;          // starting point, original scale; empty = default
  double gradient_tolerance = 1e-6;  // on the mean log-likelihood surface
  int max_iterations = 300;
  bool multi_start = true;  // also run the canned per-family starts and keep
                            // the best-likelihood optimum (caller init first)
};

struct FitResult {
  Distribution spec;  // best spec found (the MLE when converged is true)
  std::vector<std::string> parameter_names;
  std::vector<double> estimates;   // original scale
  std::vector<double> std_errors;  // empty when se_available is false
  bool se_available = false;
  std::string se_message;          // why SEs are missing, when they are
  double log_likelihood = 0.0;
  double bic = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;      // transformed mean log-likelihood scale
  std::string message;

  explicit FitResult(Distribution s) : spec(std::move(s)) {}
};

// Maximum likelihood over the censored sample.  Positivity/range constraints
// are enforced by log-type reparameterizations, the search is BFGS with
// backtracking line search and finite-difference gradients.  Throws
// ConvergenceError when no start converges.
FitResult fit_mle(const ModelSelection& selection, const CensoredSample& sample,
                  const FitOptions& options = {});

// Observed-information standard errors of an arbitrary log-likelihood at x:
// sqrt(diag((-H)^{-1})) with H the central-difference Hessian.  Throws
// SingularInformationError when -H is not positive definite.
std::vector<double> observed_information_se(const VectorFn& log_likelihood,
                                            std::span<const double> x);

// The same, for a fitted model in original parameter space.
std::vector<double> standard_errors(const ModelSelection& selection,
                                    std::span<const double> estimates,
                                    const CensoredSample& sample);

// Schwarz criterion in the "larger is better" orientation:
// log L - (k/2) log n.
double bic(double log_likelihood, std::size_t free_parameters, std::size_t sample_size);

// Hill estimator of the tail index over values >= x_min:
// alpha = n / sum_i log(x_i / x_min).
double hill_estimator(std::span<const double> tail_values, double x_min);

}  // namespace gpltail
