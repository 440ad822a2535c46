#include "gpltail/censored_sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpltail/error.hpp"

namespace gpltail {

CensoredSample::CensoredSample(std::vector<double> observed, std::size_t censored_count,
                               double threshold)
    : observed_(std::move(observed)), censored_count_(censored_count), threshold_(threshold) {
  if (!std::isfinite(threshold_)) throw ValidationError("censor threshold must be finite");
  if (observed_.empty() && censored_count_ == 0)
    throw ValidationError("sample is empty");
  for (double v : observed_) {
    if (!std::isfinite(v)) throw ValidationError("observed values must be finite");
    if (v <= threshold_)
      throw ValidationError("observed value " + std::to_string(v) +
                            " does not exceed the censor threshold " +
                            std::to_string(threshold_));
  }
  std::sort(observed_.begin(), observed_.end());
}

CensoredSample CensoredSample::from_values(std::span<const double> values, double threshold) {
  std::vector<double> observed;
  observed.reserve(values.size());
  std::size_t censored = 0;
  for (double v : values) {
    if (v <= threshold) ++censored;
    else observed.push_back(v);
  }
  return CensoredSample(std::move(observed), censored, threshold);
}

}  // namespace gpltail
