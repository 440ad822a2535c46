#include "gpltail/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gpltail/error.hpp"
#include "gpltail/tail_analysis.hpp"

namespace gpltail {

double anderson_darling_censored(const CensoredSample& sample, const Distribution& spec) {
  const auto& obs = sample.observed();
  const std::size_t n = obs.size();
  if (n == 0) throw ValidationError("anderson-darling needs observed values");
  const std::size_t r = sample.censored_count();
  const double total = static_cast<double>(n + r);

  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // Order-statistic rank i = r + 1 + j in the conceptual full sample; the
    // mirrored rank N + r + 1 - i always lands on an observed value.
    const double log_f = spec.log_cdf(obs[j]);
    const double log_s = spec.log_survival(obs[n - 1 - j]);
    if (!std::isfinite(log_f) || !std::isfinite(log_s)) {
      const double bad = std::isfinite(log_f) ? obs[n - 1 - j] : obs[j];
      const double f = std::clamp(spec.cdf(bad), 1e-300, 1.0 - 1e-300);
      std::ostringstream msg;
      msg << "anderson-darling: model CDF reaches " << (std::isfinite(log_f) ? 1.0 : 0.0)
          << " at observed index " << j << " (x = " << bad << ", clamped F = " << f << ")";
      throw NumericalError(msg.str());
    }
    const double weight = 2.0 * (static_cast<double>(r) + static_cast<double>(j)) + 1.0;
    sum += weight * (log_f + log_s);
  }
  return -total - sum / total;
}

namespace {

// Outcome of one bootstrap replicate; kept as plain counters so that the
// OpenMP reduction stays associative in exact integer arithmetic.
struct ReplicateTally {
  int exceed = 0;
  int failed = 0;
};

ReplicateTally run_replicate(const CensoredSample& sample, const ModelSelection& selection,
                             StatisticKind kind, const FitResult& parent, double emp,
                             RandomSource src) {
  ReplicateTally t;
  try {
    const std::vector<double> sim = parent.spec.sample(sample.total_size(), src);
    const CensoredSample resampled = CensoredSample::from_values(sim, sample.threshold());
    if (resampled.observed().size() < parent.estimates.size() + 1) {
      t.failed = 1;
      return t;
    }
    FitOptions refit_options;
    refit_options.init = parent.estimates;
    refit_options.max_iterations = 200;
    // Warm-started replicate refits stay single-start: the parent optimum is
    // inside the right basin, and this loop is the pipeline's cost center.
    refit_options.multi_start = false;
    const FitResult refit = fit_mle(selection, resampled, refit_options);
    const double stat =
        (kind == StatisticKind::AndersonDarling)
            ? anderson_darling_censored(resampled, refit.spec)
            : ks_statistic(resampled.observed(), refit.spec);
    if (stat > emp) t.exceed = 1;
  } catch (const NumericalError&) {
    t.failed = 1;
  } catch (const ValidationError&) {
    t.failed = 1;
  }
  return t;
}

}  // namespace

GofReport bootstrap_pvalue_gof(const CensoredSample& sample, const ModelSelection& selection,
                               StatisticKind kind, int replicates, RandomSource src,
                               Execution exec) {
  if (replicates <= 0) throw ValidationError("replicates must be positive");

  GofReport report(fit_mle(selection, sample));
  report.statistic_kind = kind;
  report.replicates = replicates;
  report.statistic = (kind == StatisticKind::AndersonDarling)
                         ? anderson_darling_censored(sample, report.fit.spec)
                         : ks_statistic(sample.observed(), report.fit.spec);

  const double emp = report.statistic;
  int exceed = 0, failed = 0;
  if (exec == Execution::Parallel) {
#pragma omp parallel for reduction(+ : exceed, failed) schedule(static)
    for (int k = 0; k < replicates; ++k) {
      const ReplicateTally t = run_replicate(sample, selection, kind, report.fit, emp,
                                             src.child(static_cast<std::uint64_t>(k) + 1));
      exceed += t.exceed;
      failed += t.failed;
    }
  } else {
    for (int k = 0; k < replicates; ++k) {
      const ReplicateTally t = run_replicate(sample, selection, kind, report.fit, emp,
                                             src.child(static_cast<std::uint64_t>(k) + 1));
      exceed += t.exceed;
      failed += t.failed;
    }
  }

  const int successes = replicates - failed;
  if (successes <= 0) throw NumericalError("all bootstrap replicates failed to refit");
  report.failed_replicates = failed;
  report.exceed_count = exceed;
  report.p_value = static_cast<double>(exceed) / static_cast<double>(successes);
  return report;
}

GofReport bootstrap_pvalue_ad(const CensoredSample& sample, const ModelSelection& selection,
                              int replicates, RandomSource src, Execution exec) {
  return bootstrap_pvalue_gof(sample, selection, StatisticKind::AndersonDarling, replicates,
                              src, exec);
}

}  // namespace gpltail
