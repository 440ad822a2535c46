#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gpltail {

// Left-censored size sample: observed values exceed the censor threshold;
// below-threshold units are known only by count.  Observed values are kept
// sorted ascending.
class CensoredSample {
public:
  // Observed values must all exceed `threshold` (throws ValidationError);
  // they are sorted on construction.
  CensoredSample(std::vector<double> observed, std::size_t censored_count,
                 double threshold);

  // Splits raw values at the threshold: values <= threshold are counted as
  // censored, the rest become the observed part.  Used when simulating.
  static CensoredSample from_values(std::span<const double> values, double threshold);

  const std::vector<double>& observed() const { return observed_; }
  std::size_t censored_count() const { return censored_count_; }
  double threshold() const { return threshold_; }
  std::size_t total_size() const { return observed_.size() + censored_count_; }

private:
  std::vector<double> observed_;
  std::size_t censored_count_;
  double threshold_;
};

}  // namespace gpltail
