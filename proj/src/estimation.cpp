#include "gpltail/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpltail/error.hpp"
#include "gpltail/optimizer.hpp"

namespace gpltail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Transform { Identity, Log, Log1p };

double to_internal(Transform t, double v) {
  switch (t) {
    case Transform::Identity: return v;
    case Transform::Log: return std::log(v);
    case Transform::Log1p: return std::log1p(v);
  }
  return v;
}

double to_original(Transform t, double v) {
  switch (t) {
    case Transform::Identity: return v;
    case Transform::Log: return std::exp(v);
    case Transform::Log1p: return std::expm1(v);
  }
  return v;
}

// beta transform for a g kind: open lower bound -1 -> log1p; bound 0 -> log.
Transform beta_transform(GKind kind) {
  switch (kind) {
    case GKind::LogShift:
    case GKind::RatioZ:
    case GKind::PowerRatio:
    case GKind::LogRatio:
    case GKind::Pps:
      return Transform::Log1p;
    default:
      return Transform::Log;
  }
}

struct Parameterization {
  std::vector<std::string> names;
  std::vector<Transform> transforms;
};

Parameterization parameterization(const ModelSelection& sel) {
  switch (sel.family) {
    case Family::Gpl2: {
      Parameterization p;
      if (g_kind_has_alpha(sel.g_kind)) {
        p.names.push_back("alpha");
        p.transforms.push_back(Transform::Log);
      }
      if (g_kind_has_beta(sel.g_kind)) {
        p.names.push_back("beta");
        p.transforms.push_back(beta_transform(sel.g_kind));
      }
      p.names.push_back("sigma");
      p.transforms.push_back(Transform::Log);
      return p;
    }
    case Family::Lomax:
      return {{"sigma", "alpha"}, {Transform::Log, Transform::Log}};
    case Family::Fisk:
      return {{"sigma", "gamma"}, {Transform::Log, Transform::Log}};
    case Family::BurrXii:
      return {{"sigma", "gamma", "alpha"}, {Transform::Log, Transform::Log, Transform::Log}};
    case Family::Dagum:
      return {{"a", "b", "p"}, {Transform::Log, Transform::Log, Transform::Log}};
    case Family::Lognormal:
      return {{"log_mean", "log_sd"}, {Transform::Identity, Transform::Log}};
    case Family::Pareto1:
      if (!sel.fixed_sigma)
        throw ValidationError("pareto1 fits require fixed_sigma (scale is a boundary MLE)");
      return {{"alpha"}, {Transform::Log}};
    default:
      throw ValidationError("family '" + to_string(sel.family) + "' is not fittable");
  }
}

double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::vector<double>> starting_points(const ModelSelection& sel,
                                                 const CensoredSample& sample) {
  const auto& obs = sample.observed();
  const double med = obs.empty() ? 1.0 : median_of_sorted(obs);
  switch (sel.family) {
    case Family::Gpl2: {
      const bool has_a = g_kind_has_alpha(sel.g_kind);
      const bool has_b = g_kind_has_beta(sel.g_kind);
      const double b0 = (beta_transform(sel.g_kind) == Transform::Log) ? 0.5 : 0.0;
      auto assemble = [&](double a, double b, double s) {
        std::vector<double> v;
        if (has_a) v.push_back(a);
        if (has_b) v.push_back(b);
        v.push_back(s);
        return v;
      };
      return {assemble(1.0, b0, 1.0), assemble(1.0, b0, med),
              assemble(0.5, has_b ? b0 + 1.0 : b0, med),
              assemble(2.0, (beta_transform(sel.g_kind) == Transform::Log) ? 0.1 : -0.5, 1.0)};
    }
    case Family::Lomax:
      return {{med, 1.0}, {med, 0.5}, {10.0 * med, 2.0}};
    case Family::Fisk:
      return {{med, 1.0}, {med, 0.5}, {med, 2.0}};
    case Family::BurrXii:
      return {{med, 1.0, 1.0}, {med, 0.5, 2.0}, {med, 2.0, 0.5}};
    case Family::Dagum:
      return {{1.5, med, 1.0}, {0.7, med, 1.0}, {3.0, med, 0.5}};
    case Family::Lognormal: {
      double m = 0.0, s2 = 0.0;
      for (double x : obs) m += std::log(x);
      m /= std::max<std::size_t>(obs.size(), 1);
      for (double x : obs) s2 += (std::log(x) - m) * (std::log(x) - m);
      double s = obs.size() > 1 ? std::sqrt(s2 / (obs.size() - 1)) : 1.0;
      if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
      return {{m, s}, {m, 2.0 * s}, {0.0, 1.0}};
    }
    case Family::Pareto1: {
      double a0 = 1.0;
      if (!obs.empty()) {
        double s = 0.0;
        for (double x : obs) s += std::log(x / *sel.fixed_sigma);
        if (s > 0.0) a0 = obs.size() / s;
      }
      return {{a0}, {1.0}, {0.5}};
    }
    default:
      throw ValidationError("family '" + to_string(sel.family) + "' is not fittable");
  }
}

}  // namespace

double censored_log_likelihood(const Distribution& spec, const CensoredSample& sample) {
  double ll = 0.0;
  if (sample.censored_count() > 0) {
    const double lc = spec.log_cdf(sample.threshold());
    if (!std::isfinite(lc)) return -kInf;
    ll += static_cast<double>(sample.censored_count()) * lc;
  }
  for (double x : sample.observed()) {
    const double ld = spec.log_density(x);
    if (!std::isfinite(ld)) return -kInf;
    ll += ld;
  }
  return ll;
}

std::vector<std::string> parameter_names(const ModelSelection& selection) {
  return parameterization(selection).names;
}

Distribution build_distribution(const ModelSelection& sel, std::span<const double> params) {
  const auto p = parameterization(sel);
  if (params.size() != p.names.size())
    throw ValidationError("expected " + std::to_string(p.names.size()) +
                          " parameters for " + to_string(sel.family));
  switch (sel.family) {
    case Family::Gpl2: {
      std::size_t i = 0;
      const double a = g_kind_has_alpha(sel.g_kind) ? params[i++] : 0.0;
      const double b = g_kind_has_beta(sel.g_kind) ? params[i++] : 0.0;
      const double s = params[i];
      return Distribution::gpl2(sel.gpl_mu, s, GFunction::make(sel.g_kind, a, b));
    }
    case Family::Lomax:
      return Distribution::lomax(params[0], params[1]);
    case Family::Fisk:
      return Distribution::fisk(params[0], params[1]);
    case Family::BurrXii:
      return Distribution::burr_xii(params[0], params[1], params[2]);
    case Family::Dagum:
      return Distribution::dagum(params[0], params[1], params[2]);
    case Family::Lognormal:
      return Distribution::lognormal(params[0], params[1]);
    case Family::Pareto1:
      return Distribution::pareto1(*sel.fixed_sigma, params[0]);
    default:
      throw ValidationError("family '" + to_string(sel.family) + "' is not fittable");
  }
}

FitResult fit_mle(const ModelSelection& selection, const CensoredSample& sample,
                  const FitOptions& options) {
  const auto par = parameterization(selection);
  const std::size_t d = par.names.size();
  if (sample.observed().size() < d + 1)
    throw ValidationError("need more than " + std::to_string(d) +
                          " observed values to fit " + std::to_string(d) + " parameters");

  const double n = static_cast<double>(sample.total_size());

  // Objective: negative mean log-likelihood over internally transformed
  // parameters.  The mean scale keeps the gradient tolerance meaningful
  // across sample sizes.
  auto objective = [&](std::span<const double> t) -> double {
    std::vector<double> orig(d);
    for (std::size_t i = 0; i < d; ++i) orig[i] = to_original(par.transforms[i], t[i]);
    double ll;
    try {
      ll = censored_log_likelihood(build_distribution(selection, orig), sample);
    } catch (const ValidationError&) {
      return kInf;  // transform rounding landed on a closed bound
    }
    return std::isfinite(ll) ? -ll / n : kInf;
  };

  std::vector<std::vector<double>> starts;
  if (!options.init.empty()) {
    if (options.init.size() != d)
      throw ValidationError("init has " + std::to_string(options.init.size()) +
                            " values, expected " + std::to_string(d));
    starts.push_back(options.init);
  } else {
    starts = starting_points(selection, sample);
  }
  if (options.multi_start && options.init.empty()) {
    // starting_points already lists the fallbacks
  } else if (options.multi_start) {
    for (auto& s : starting_points(selection, sample)) starts.push_back(std::move(s));
  }
  if (!options.multi_start) starts.resize(1);

  MinimizeOptions mopt;
  mopt.gradient_tolerance = options.gradient_tolerance;
  mopt.max_iterations = options.max_iterations;

  std::optional<MinimizeResult> best;
  std::vector<std::vector<double>> tried_starts;
  std::string first_failure;
  int total_iterations = 0;
  for (const auto& start : starts) {
    std::vector<double> t0(d);
    bool valid = true;
    for (std::size_t i = 0; i < d; ++i) {
      t0[i] = to_internal(par.transforms[i], start[i]);
      if (!std::isfinite(t0[i])) valid = false;
    }
    if (!valid) continue;
    bool seen = false;
    for (const auto& prev : tried_starts) seen = seen || prev == t0;
    if (seen) continue;
    tried_starts.push_back(t0);
    MinimizeResult r;
    try {
      r = minimize_bfgs(objective, std::move(t0), mopt);
    } catch (const ConvergenceError& e) {
      if (first_failure.empty()) first_failure = e.what();
      continue;
    }
    total_iterations += r.iterations;
    // Every start runs to completion and the best converged optimum wins:
    // the surface can hold several local maxima (a small-scale/large-beta
    // ridge competes with the true basin on heavy-tailed data), and the
    // first start to converge is not necessarily the highest.
    if (r.converged && (!best || !best->converged || r.value < best->value)) best = r;
    else if (!best && std::isfinite(r.value)) best = r;
    else if (best && !best->converged && std::isfinite(r.value) && r.value < best->value) best = r;
  }

  // Non-convergence is a reported state, not an exception: the best point
  // seen still describes the surface the caller asked about.
  if (!best)
    throw ConvergenceError("fit failed: " + (first_failure.empty()
                               ? std::string("no usable starting point")
                               : first_failure));

  std::vector<double> estimates(d);
  for (std::size_t i = 0; i < d; ++i)
    estimates[i] = to_original(par.transforms[i], best->x[i]);

  FitResult result(build_distribution(selection, estimates));
  result.parameter_names = par.names;
  result.estimates = estimates;
  result.log_likelihood = censored_log_likelihood(result.spec, sample);
  result.bic = bic(result.log_likelihood, d, sample.total_size());
  result.converged = best->converged;
  result.iterations = total_iterations;
  result.gradient_norm = best->gradient_norm;
  if (!best->converged)
    result.message = "did not converge (gradient norm " +
                     std::to_string(best->gradient_norm) + ")";
  // A solution that ran e^10-fold away from every start sits on a likelihood
  // ridge toward a parameter-space boundary (e.g. a Lomax degenerating to an
  // exponential); the gradient criterion alone cannot see that.
  double min_travel = kInf;
  for (const auto& t0 : tried_starts) {
    double travel = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      travel = std::max(travel, std::abs(best->x[i] - t0[i]));
    min_travel = std::min(min_travel, travel);
  }
  if (min_travel >= 10.0) {
    if (!result.message.empty()) result.message += "; ";
    result.message += "estimate at parameter-space boundary";
  }

  if (best->converged) {
    try {
      result.std_errors = standard_errors(selection, estimates, sample);
      result.se_available = true;
    } catch (const NumericalError& e) {
      result.se_available = false;
      result.se_message = e.what();
    } catch (const ValidationError& e) {
      result.se_available = false;
      result.se_message = e.what();
    }
  } else {
    result.se_available = false;
    result.se_message = "no standard errors without convergence";
  }
  return result;
}

std::vector<double> observed_information_se(const VectorFn& log_likelihood,
                                            std::span<const double> x) {
  const std::size_t d = x.size();
  std::vector<double> info = fd_hessian(log_likelihood, x);
  for (double& v : info) v = -v;
  if (!spd_inverse(info, d))
    throw SingularInformationError("observed information is not positive definite");
  std::vector<double> se(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double v = info[i * d + i];
    if (!(v > 0.0) || !std::isfinite(v))
      throw SingularInformationError("non-positive variance from observed information");
    se[i] = std::sqrt(v);
  }
  return se;
}

std::vector<double> standard_errors(const ModelSelection& selection,
                                    std::span<const double> estimates,
                                    const CensoredSample& sample) {
  auto ll = [&](std::span<const double> v) -> double {
    try {
      return censored_log_likelihood(build_distribution(selection, v), sample);
    } catch (const ValidationError&) {
      return -kInf;
    }
  };
  return observed_information_se(ll, estimates);
}

double bic(double log_likelihood, std::size_t free_parameters, std::size_t sample_size) {
  if (sample_size == 0) throw ValidationError("bic requires a nonempty sample");
  return log_likelihood -
         0.5 * static_cast<double>(free_parameters) * std::log(static_cast<double>(sample_size));
}

double hill_estimator(std::span<const double> tail_values, double x_min) {
  if (tail_values.empty()) throw ValidationError("hill estimator needs a nonempty tail");
  if (!(x_min > 0.0)) throw ValidationError("hill estimator needs x_min > 0");
  double s = 0.0;
  for (double x : tail_values) {
    if (x < x_min)
      throw ValidationError("tail value below x_min in hill estimator");
    s += std::log(x / x_min);
  }
  if (!(s > 0.0)) throw ValidationError("degenerate tail: all values equal x_min");
  return static_cast<double>(tail_values.size()) / s;
}

}  // namespace gpltail
