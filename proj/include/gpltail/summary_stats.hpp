#pragma once

#include <cstddef>
#include <span>

#include "gpltail/censored_sample.hpp"

namespace gpltail {

// Rank-interpolated empirical quantile with plotting position h = p*(n+1):
// linear interpolation between adjacent order statistics, clamped to the
// extremes.  Values must be sorted ascending.
double empirical_quantile(std::span<const double> sorted_values, double p);

// Quantile-based shape summary of a censored size sample.  Quantiles are
// computed over the uncensored values only; when the censored share r/N
// exceeds the smallest requested rank (1/8), those population quantiles are
// not identified and the summary carries a warning.
struct QuantileSummary {
  std::size_t sample_size = 0;     // N, censored units included
  std::size_t censored_count = 0;  // r
  double maximum = 0.0;
  double median = 0.0;
  double half_iqr = 0.0;            // (Q3 - Q1) / 2
  double quartile_dev_coeff = 0.0;  // (Q3 - Q1) / (Q3 + Q1)
  double bowley_skewness = 0.0;     // (Q3 - 2 median + Q1) / (Q3 - Q1)
  double moors_kurtosis = 0.0;      // ((E7-E5) + (E3-E1)) / (Q3 - Q1), E = octiles
  bool skew_kurtosis_available = false;  // false when a denominator vanishes
  bool censoring_warning = false;   // r/N exceeds a requested rank
};

QuantileSummary summarize(const CensoredSample& sample);

}  // namespace gpltail
