#pragma once

#include <cstddef>

#include "gpltail/bootstrap.hpp"
#include "gpltail/censored_sample.hpp"
#include "gpltail/estimation.hpp"
#include "gpltail/random.hpp"

namespace gpltail {

// Left-censored Anderson-Darling statistic for a sample of conceptual size
// N = r + n whose r smallest values are censored:
//   W^2 = -N - (1/N) * sum_{i=r+1}^{N} (2i-1) [log F(x_i) + log(1-F(x_{N+r+1-i}))]
// evaluated on the observed order statistics.  With r = 0 this is the
// classical statistic.  Throws NumericalError when F hits 0 or 1 at an
// observed point (the message carries the offending index and a clamped
// diagnostic value).
double anderson_darling_censored(const CensoredSample& sample, const Distribution& spec);

enum class StatisticKind { AndersonDarling, KolmogorovSmirnov };

struct GofReport {
  StatisticKind statistic_kind = StatisticKind::AndersonDarling;
  double statistic = 0.0;       // empirical value against the parent fit
  double p_value = 0.0;
  int replicates = 0;           // requested replicates
  int failed_replicates = 0;    // refits that did not converge (excluded)
  int exceed_count = 0;         // successful replicates strictly above
  FitResult fit;                // parent fit the null was simulated from

  explicit GofReport(FitResult f) : fit(std::move(f)) {}
};

// Whole-range parametric bootstrap: fit the selection, simulate same-size
// samples from the fit (censoring each at the sample threshold), refit every
// replicate warm-started from the parent estimates, and compare statistics.
// p = #(empirical < replicate) / #successful replicates.
GofReport bootstrap_pvalue_gof(const CensoredSample& sample, const ModelSelection& selection,
                               StatisticKind kind, int replicates, RandomSource src,
                               Execution exec = Execution::Parallel);

// The Anderson-Darling variant used by the reporting pipeline.
GofReport bootstrap_pvalue_ad(const CensoredSample& sample, const ModelSelection& selection,
                              int replicates, RandomSource src,
                              Execution exec = Execution::Parallel);

}  // namespace gpltail
