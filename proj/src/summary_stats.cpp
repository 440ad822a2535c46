#include "gpltail/summary_stats.hpp"

#include <cmath>

#include "gpltail/error.hpp"

namespace gpltail {

double empirical_quantile(std::span<const double> sorted_values, double p) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw ValidationError("empirical_quantile needs data");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile level must be in [0,1]");
  const double h = p * static_cast<double>(n + 1);
  if (h <= 1.0) return sorted_values.front();
  if (h >= static_cast<double>(n)) return sorted_values.back();
  const std::size_t lo = static_cast<std::size_t>(h);  // 1-based rank floor
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo - 1] + frac * (sorted_values[lo] - sorted_values[lo - 1]);
}

QuantileSummary summarize(const CensoredSample& sample) {
  const auto& obs = sample.observed();
  if (obs.empty()) throw ValidationError("summarize needs observed values");

  QuantileSummary s;
  s.sample_size = sample.total_size();
  s.censored_count = sample.censored_count();

  // Quantiles over the uncensored values only.  When the censored mass
  // r/N exceeds a requested rank, that quantile of the full population is
  // not identified; the summary carries a warning instead of imputing.
  double e[8];  // octiles E1..E7 in e[1..7]
  for (int i = 1; i <= 7; ++i)
    e[i] = empirical_quantile(obs, static_cast<double>(i) / 8.0);
  const double censored_share =
      static_cast<double>(s.censored_count) / static_cast<double>(s.sample_size);
  s.censoring_warning = censored_share > 1.0 / 8.0;

  const double q1 = e[2], q3 = e[6];
  s.median = e[4];
  s.maximum = obs.back();
  s.half_iqr = 0.5 * (q3 - q1);

  const double iqr = q3 - q1;
  if (iqr > 0.0 && q3 + q1 > 0.0 && std::isfinite(iqr)) {
    s.quartile_dev_coeff = iqr / (q3 + q1);
    s.bowley_skewness = (q3 - 2.0 * s.median + q1) / iqr;
    s.moors_kurtosis = ((e[7] - e[5]) + (e[3] - e[1])) / iqr;
    s.skew_kurtosis_available = true;
  }
  return s;
}

}  // namespace gpltail
