#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gpltail/distribution.hpp"
#include "gpltail/error.hpp"
#include "gpltail/random.hpp"
#include "gpltail/summary_stats.hpp"

using namespace gpltail;

TEST_CASE("summary: empirical quantile interpolates at rank p(n+1)") {
  const std::vector<double> three = {1.0, 2.0, 3.0};
  CHECK(empirical_quantile(three, 0.5) == 2.0);
  const std::vector<double> pair = {1.0, 3.0};
  CHECK(empirical_quantile(pair, 0.5) == 2.0);
  const std::vector<double> single = {5.0};
  for (double p : {0.0, 0.25, 0.5, 0.99, 1.0}) CHECK(empirical_quantile(single, p) == 5.0);

  // Ranks past the extremes clamp to the extreme order statistics.
  CHECK(empirical_quantile(three, 0.0) == 1.0);
  CHECK(empirical_quantile(three, 1.0) == 3.0);
  CHECK(empirical_quantile(three, 0.05) == 1.0);  // h = 0.2 < 1

  CHECK_THROWS_AS(empirical_quantile(three, -0.1), ValidationError);
  CHECK_THROWS_AS(empirical_quantile(three, 1.1), ValidationError);
  CHECK_THROWS_AS(empirical_quantile(std::vector<double>{}, 0.5), ValidationError);
}

TEST_CASE("summary: hand values on small uncensored samples") {
  const CensoredSample five({1.0, 2.0, 3.0, 4.0, 5.0}, 0, 0.0);
  const auto s5 = summarize(five);
  CHECK(s5.sample_size == 5);
  CHECK(s5.maximum == 5.0);
  CHECK(s5.median == 3.0);
  CHECK(s5.half_iqr == doctest::Approx(1.5));           // Q1 = 1.5, Q3 = 4.5
  CHECK(s5.quartile_dev_coeff == doctest::Approx(0.5));  // 3 / 6
  CHECK(s5.bowley_skewness == doctest::Approx(0.0));
  // Octile ranks 0.75 and 5.25 clamp to the extremes: E1=1, E3=2.25,
  // E5=3.75, E7=5, so T = (1.25 + 1.25) / 3.
  CHECK(s5.moors_kurtosis == doctest::Approx(2.5 / 3.0));
  CHECK(s5.skew_kurtosis_available);
  CHECK_FALSE(s5.censoring_warning);

  const CensoredSample nine({1, 2, 3, 4, 5, 6, 7, 8, 9}, 0, 0.0);
  const auto s9 = summarize(nine);
  CHECK(s9.median == 5.0);
  CHECK(s9.half_iqr == doctest::Approx(2.5));           // Q1 = 2.5, Q3 = 7.5
  CHECK(s9.quartile_dev_coeff == doctest::Approx(0.5));
  CHECK(s9.bowley_skewness == doctest::Approx(0.0));
  CHECK(s9.moors_kurtosis == doctest::Approx(1.0));     // evenly spaced octiles
}

TEST_CASE("summary: zero IQR marks skew and kurtosis unavailable") {
  const CensoredSample flat({7.0, 7.0, 7.0, 7.0, 7.0, 7.0}, 0, 0.0);
  const auto s = summarize(flat);
  CHECK(s.half_iqr == 0.0);
  CHECK_FALSE(s.skew_kurtosis_available);
  CHECK(s.median == 7.0);
}

TEST_CASE("summary: location-scale equivariance of the measures") {
  auto xs = Distribution::lognormal(1.0, 0.8).sample(400, RandomSource{55, 1});
  std::sort(xs.begin(), xs.end());
  const double a = 7.0, b = 3.0;
  std::vector<double> ys(xs);
  for (double& v : ys) v = a + b * v;

  const auto sx = summarize(CensoredSample(xs, 0, 0.0));
  const auto sy = summarize(CensoredSample(ys, 0, 0.0));
  CHECK(sy.median == doctest::Approx(a + b * sx.median).epsilon(1e-12));
  CHECK(sy.maximum == doctest::Approx(a + b * sx.maximum).epsilon(1e-12));
  CHECK(sy.half_iqr == doctest::Approx(b * sx.half_iqr).epsilon(1e-12));
  CHECK(sy.bowley_skewness == doctest::Approx(sx.bowley_skewness).epsilon(1e-10));
  CHECK(sy.moors_kurtosis == doctest::Approx(sx.moors_kurtosis).epsilon(1e-10));
  // The quartile deviation coefficient is scale-free but not shift-free.
  CHECK(std::abs(sy.quartile_dev_coeff - sx.quartile_dev_coeff) > 1e-3);
}

TEST_CASE("summary: censored mass beyond the lowest octile raises the warning") {
  std::vector<double> obs;
  for (int i = 5; i <= 15; ++i) obs.push_back(static_cast<double>(i));

  // r/N = 3/14 > 1/8: the lower population octile is unidentified.
  const auto warned = summarize(CensoredSample(obs, 3, 4.0));
  CHECK(warned.censoring_warning);
  CHECK(warned.sample_size == 14);
  CHECK(warned.censored_count == 3);

  // r/N = 1/12 <= 1/8: every requested rank lies in the observed part.
  const auto clear = summarize(CensoredSample(obs, 1, 4.0));
  CHECK_FALSE(clear.censoring_warning);

  // Quantiles come from the observed values alone, so they agree across the
  // two censor counts.
  CHECK(warned.median == clear.median);
  CHECK(warned.half_iqr == clear.half_iqr);

  CHECK_THROWS_AS(summarize(CensoredSample({}, 5, 4.0)), ValidationError);
}

TEST_CASE("summary: bowley skewness stays in [-1, 1] on random samples") {
  for (int rep = 0; rep < 30; ++rep) {
    const auto spec = (rep % 2 == 0) ? Distribution::lognormal(0.0, 1.5)
                                     : Distribution::lomax(20.0, 1.2);
    auto xs = spec.sample(15 + 10 * static_cast<std::size_t>(rep),
                          RandomSource{600 + static_cast<std::uint64_t>(rep), 1});
    std::sort(xs.begin(), xs.end());
    const auto s = summarize(CensoredSample(xs, 0, 0.0));
    if (!s.skew_kurtosis_available) continue;
    CHECK(s.bowley_skewness >= -1.0);
    CHECK(s.bowley_skewness <= 1.0);
  }

  // A uniform grid has evenly spaced octiles; its Moors measure is the
  // uniform value 1 under linear interpolation.
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(static_cast<double>(i));
  CHECK(summarize(CensoredSample(grid, 0, 0.0)).moors_kurtosis == doctest::Approx(1.0));
}
