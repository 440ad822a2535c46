#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gpltail/bootstrap.hpp"
#include "gpltail/censored_sample.hpp"
#include "gpltail/distribution.hpp"
#include "gpltail/random.hpp"

namespace gpltail {

// Right-continuous empirical CDF with the (n+1)-denominator plotting
// position: F_n(x) = #(values <= x) / (n + 1).
double empirical_cdf(std::span<const double> sorted_values, double x);

// max_i |i/(n+1) - F(x_i)| over the sorted values: the plotting-position
// form of the Kolmogorov-Smirnov distance, evaluated at the sample points.
double ks_statistic(std::span<const double> sorted_values, const Distribution& spec);

struct KsBootstrapResult {
  double p_value = 0.0;
  double ks = 0.0;             // empirical KS of the data against the fit
  double alpha_hat = 0.0;      // Hill fit used as the null
  double x_min = 0.0;
  int replicates = 0;
  int exceed_count = 0;        // replicates with KS* strictly above ks
};

// Parametric bootstrap under a Pareto null for one candidate tail: fit by
// Hill with x_min = min(tail), simulate tails of the same size, refit each
// replicate, and count strictly larger replicate KS values.
KsBootstrapResult bootstrap_pvalue_ks(std::span<const double> tail, int replicates,
                                      RandomSource src,
                                      Execution exec = Execution::Parallel);

struct TailScanOptions {
  double significance = 0.1;   // accept the first candidate with p >= this
  int replicates = 500;
  std::size_t min_tail_size = 10;
  // Cheap screen: a candidate whose observed KS*sqrt(n) exceeds this cannot
  // reach any usable p-value, so its bootstrap is skipped.  Only applied when
  // the significance level is coarser than 10 replicates can resolve.
  double prefilter_threshold = 3.0;
  bool prefilter = true;
  // Optional two-stage budget: scan candidates with this many replicates and
  // confirm acceptance at the full budget (0 disables the coarse stage).
  int coarse_replicates = 0;
  Execution execution = Execution::Parallel;
};

struct TailReport {
  double x_min = 0.0;          // accepted tail start (smallest tail value)
  double alpha_hat = 0.0;      // Hill index of the accepted tail
  double ks = 0.0;
  double p_value = 0.0;
  int replicates = 0;
  std::size_t tail_size = 0;
  double tail_fraction = 0.0;  // percent of the total sample, 100 n / N
  std::size_t candidates_scanned = 0;
  std::size_t bootstraps_run = 0;
};

// Scans distinct observed values ascending and returns the first candidate
// whose Pareto-null bootstrap p-value reaches the significance level.
// Throws NoTailError when no candidate is accepted.
TailReport find_tail_lower_bound(const CensoredSample& sample,
                                 const TailScanOptions& options, RandomSource src);

}  // namespace gpltail
