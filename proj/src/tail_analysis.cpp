#include "gpltail/tail_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gpltail/error.hpp"
#include "gpltail/estimation.hpp"

namespace gpltail {

double empirical_cdf(std::span<const double> sorted_values, double x) {
  if (sorted_values.empty()) throw ValidationError("empirical_cdf needs data");
  const auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), x);
  return static_cast<double>(it - sorted_values.begin()) /
         static_cast<double>(sorted_values.size() + 1);
}

double ks_statistic(std::span<const double> sorted_values, const Distribution& spec) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw ValidationError("ks_statistic needs data");
  const double denom = static_cast<double>(n + 1);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = spec.cdf(sorted_values[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / denom - f));
  }
  return d;
}

namespace {

// One replicate of the Pareto-null KS bootstrap: simulate a tail of the same
// size from the fitted null, refit, and return its KS distance.
double replicate_ks(std::size_t n, const Distribution& null_spec, RandomSource src) {
  std::vector<double> sim = null_spec.sample(n, src);
  std::sort(sim.begin(), sim.end());
  const double x_min = sim.front();
  const double alpha = hill_estimator(sim, x_min);
  return ks_statistic(sim, Distribution::pareto1(x_min, alpha));
}

}  // namespace

KsBootstrapResult bootstrap_pvalue_ks(std::span<const double> tail, int replicates,
                                      RandomSource src, Execution exec) {
  if (replicates <= 0) throw ValidationError("replicates must be positive");
  std::vector<double> sorted(tail.begin(), tail.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw ValidationError("bootstrap needs a nonempty tail");

  KsBootstrapResult res;
  res.x_min = sorted.front();
  res.alpha_hat = hill_estimator(sorted, res.x_min);
  const Distribution null_spec = Distribution::pareto1(res.x_min, res.alpha_hat);
  res.ks = ks_statistic(sorted, null_spec);
  res.replicates = replicates;

  const std::size_t n = sorted.size();
  const double emp = res.ks;
  int count = 0;
  if (exec == Execution::Parallel) {
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (int k = 0; k < replicates; ++k) {
      if (replicate_ks(n, null_spec, src.child(static_cast<std::uint64_t>(k) + 1)) > emp)
        ++count;
    }
  } else {
    for (int k = 0; k < replicates; ++k) {
      if (replicate_ks(n, null_spec, src.child(static_cast<std::uint64_t>(k) + 1)) > emp)
        ++count;
    }
  }
  res.exceed_count = count;
  res.p_value = static_cast<double>(count) / static_cast<double>(replicates);
  return res;
}

TailReport find_tail_lower_bound(const CensoredSample& sample,
                                 const TailScanOptions& options, RandomSource src) {
  const auto& obs = sample.observed();
  if (options.replicates <= 0) throw ValidationError("replicates must be positive");
  if (options.min_tail_size < 2) throw ValidationError("min_tail_size must be at least 2");
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < obs.size(); ++i)
    if (i == 0 || obs[i] != obs[i - 1]) ++distinct;
  if (distinct < 10)
    throw ValidationError("tail scan needs at least 10 distinct uncensored values");
  if (obs.size() < options.min_tail_size)
    throw NoTailError("fewer observed values than the minimum tail size");

  const std::size_t n_obs = obs.size();
  TailReport report;
  std::uint64_t ordinal = 0;

  // The prefilter can only stand in for a bootstrap when the significance
  // level is coarse enough that "KS out in the far tail" implies rejection.
  const bool prefilter_usable =
      options.prefilter &&
      options.significance >= 10.0 / static_cast<double>(options.replicates);

  for (std::size_t i = 0; i < n_obs; ++i) {
    if (i > 0 && obs[i] == obs[i - 1]) continue;  // same candidate value
    const std::size_t n_tail = n_obs - i;
    if (n_tail < options.min_tail_size) break;
    ++ordinal;
    ++report.candidates_scanned;

    const std::span<const double> tail(obs.data() + i, n_tail);

    if (prefilter_usable) {
      const double alpha = hill_estimator(tail, tail.front());
      const double ks = ks_statistic(tail, Distribution::pareto1(tail.front(), alpha));
      if (ks * std::sqrt(static_cast<double>(n_tail)) > options.prefilter_threshold) continue;
    }

    if (options.coarse_replicates > 0 && options.coarse_replicates < options.replicates) {
      const auto coarse = bootstrap_pvalue_ks(tail, options.coarse_replicates,
                                              src.child(ordinal, 1), options.execution);
      ++report.bootstraps_run;
      if (coarse.p_value < options.significance) continue;
    }

    const auto full = bootstrap_pvalue_ks(tail, options.replicates, src.child(ordinal, 2),
                                          options.execution);
    ++report.bootstraps_run;
    if (full.p_value >= options.significance) {
      report.x_min = full.x_min;
      report.alpha_hat = full.alpha_hat;
      report.ks = full.ks;
      report.p_value = full.p_value;
      report.replicates = full.replicates;
      report.tail_size = n_tail;
      report.tail_fraction = 100.0 * static_cast<double>(n_tail) /
                             static_cast<double>(sample.total_size());
      return report;
    }
  }
  throw NoTailError("no candidate tail start reached significance " +
                    std::to_string(options.significance));
}

}  // namespace gpltail
