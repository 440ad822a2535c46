#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "gpltail/censored_sample.hpp"
#include "gpltail/error.hpp"
#include "gpltail/estimation.hpp"
#include "gpltail/random.hpp"
#include "support/oracles.hpp"

using namespace gpltail;

namespace {

CensoredSample synthetic_censored(const Distribution& d, std::size_t n, double threshold,
                                  RandomSource src) {
  return CensoredSample::from_values(d.sample(n, src), threshold);
}

// a fixed 20-point sample above the paper-style threshold of 4
const std::vector<double> kFixed20 = {4.3,  5.1,  5.9,  6.6,  7.4,  8.3,  9.7,
                                      11.2, 12.8, 14.5, 17.0, 20.4, 25.1, 31.9,
                                      40.6, 55.3, 78.2, 120.9, 241.7, 612.4};

}  // namespace

TEST_CASE("estimation: censored likelihood reduces as the censor term demands") {
  const auto lomax = Distribution::lomax(1.0, 1.0);

  // r = 0: plain sum of log densities
  CensoredSample uncensored(kFixed20, 0, 4.0);
  double direct = 0.0;
  for (double x : kFixed20) direct += lomax.log_density(x);
  CHECK(censored_log_likelihood(lomax, uncensored) == doctest::Approx(direct).epsilon(1e-14));

  // r = N: only the censor mass, N log F(4); Lomax(1,1) has S(4) = 0.2
  CensoredSample all_censored({}, 20, 4.0);
  CHECK(censored_log_likelihood(Distribution::lomax(1.0, 1.0), all_censored) ==
        doctest::Approx(20.0 * std::log(0.8)).epsilon(1e-14));
}

TEST_CASE("estimation: likelihood is -infinity off the support") {
  // observed value below the support lower bound
  const auto p1 = Distribution::pareto1(10.0, 1.5);
  CensoredSample s(kFixed20, 0, 4.0);  // contains values < 10
  CHECK(censored_log_likelihood(p1, s) == -std::numeric_limits<double>::infinity());
  // censored mass claimed where the model puts none: F(4) = 0 for sigma = 10
  CensoredSample c({12.0, 15.0, 20.0}, 5, 4.0);
  CHECK(censored_log_likelihood(p1, c) == -std::numeric_limits<double>::infinity());
  // same spec with r = 0 is fine
  CensoredSample ok({12.0, 15.0, 20.0}, 0, 4.0);
  CHECK(std::isfinite(censored_log_likelihood(p1, ok)));
}

TEST_CASE("estimation: appendix-style expansion agrees with the generic form") {
  // fixed sample, fixed parameters
  CensoredSample s(kFixed20, 3, 4.0);
  const auto d = Distribution::gpl2(0.0, 10.0, GFunction::make(GKind::LogRatio, 1.0, 0.5));
  const double generic = censored_log_likelihood(d, s);
  const double expanded = oracles::expanded_gpl2_loglik(1.0, 0.5, 10.0, s);
  CHECK(generic == doctest::Approx(expanded).epsilon(1e-8));

  // random parameter/sample grid
  Xoshiro256 rng(RandomSource{77, 3});
  for (int trial = 0; trial < 25; ++trial) {
    const double alpha = 0.5 + 2.0 * rng.uniform01();
    const double beta = -0.8 + 2.0 * rng.uniform01();
    const double sigma = 1.0 + 60.0 * rng.uniform01();
    const auto model =
        Distribution::gpl2(0.0, sigma, GFunction::make(GKind::LogRatio, alpha, beta));
    const auto sample = synthetic_censored(model, 150, 4.0,
                                           RandomSource{900 + static_cast<std::uint64_t>(trial), 1});
    if (sample.observed().size() < 4) continue;
    const double a = censored_log_likelihood(model, sample);
    const double b = oracles::expanded_gpl2_loglik(alpha, beta, sigma, sample);
    CHECK_MESSAGE(a == doctest::Approx(b).epsilon(1e-8),
                  "alpha=" << alpha << " beta=" << beta << " sigma=" << sigma);
  }
}

TEST_CASE("estimation: Lomax recovery within three standard errors") {
  const auto truth = Distribution::lomax(100.0, 1.5);
  const auto sample = synthetic_censored(truth, 5000, 4.0, RandomSource{11, 5});
  ModelSelection sel;
  sel.family = Family::Lomax;
  const auto fit = fit_mle(sel, sample);
  REQUIRE(fit.converged);
  REQUIRE(fit.se_available);
  REQUIRE(fit.parameter_names == std::vector<std::string>{"sigma", "alpha"});
  CHECK(std::abs(fit.estimates[0] - 100.0) < 3.0 * fit.std_errors[0]);
  CHECK(std::abs(fit.estimates[1] - 1.5) < 3.0 * fit.std_errors[1]);
  // reported quantities are self-consistent
  CHECK(fit.bic == doctest::Approx(fit.log_likelihood -
                                   0.5 * 2.0 * std::log(5000.0)).epsilon(1e-12));
  CHECK(fit.log_likelihood ==
        doctest::Approx(censored_log_likelihood(fit.spec, sample)).epsilon(1e-12));
}

TEST_CASE("estimation: the three-parameter model converges from (1,0,1)") {
  // monthly-like synthetic data: desk-scale N, heavy censoring at 4
  ModelSelection sel;  // defaults: gpl2, log-ratio g, mu = 0
  for (int month = 0; month < 3; ++month) {
    const auto truth = Distribution::gpl2(
        0.0, 40.0 + 5.0 * month, GFunction::make(GKind::LogRatio, 1.1, 0.25 + 0.1 * month));
    const auto sample = synthetic_censored(truth, 3000, 4.0, RandomSource{500 + static_cast<std::uint64_t>(month), 2});
    FitOptions opt;
    opt.init = {1.0, 0.0, 1.0};
    opt.multi_start = false;
    const auto fit = fit_mle(sel, sample, opt);
    CHECK_MESSAGE(fit.converged, fit.message);
    CHECK(fit.log_likelihood >=
          censored_log_likelihood(
              build_distribution(sel, std::vector<double>{1.0, 0.0, 1.0}), sample));
    // parameters land in a sane neighborhood of the truth
    CHECK(fit.estimates[2] > 10.0);
    CHECK(fit.estimates[2] < 200.0);
  }
}

TEST_CASE("estimation: degenerate samples error out or flag, never crash") {
  ModelSelection lomax;
  lomax.family = Family::Lomax;
  // fewer observed points than parameters + 1
  CHECK_THROWS_AS(fit_mle(lomax, CensoredSample({5.0, 6.0}, 10, 4.0)), ValidationError);
  // identical repeated values: likelihood supremum sits at a boundary
  CensoredSample flat(std::vector<double>(20, 7.0), 0, 4.0);
  const auto fit = fit_mle(lomax, flat);
  CHECK((!fit.converged || !fit.message.empty()));
}

TEST_CASE("estimation: observed-information SEs are exact on a quadratic stub") {
  // logL(x) = -1/2 x' A x with known SPD A: SE_i = sqrt((A^{-1})_ii)
  const std::vector<double> A = {4.0, 1.0, 0.5,
                                 1.0, 3.0, 0.2,
                                 0.5, 0.2, 2.0};
  auto ll = [&](std::span<const double> x) {
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q += x[i] * A[i * 3 + j] * x[j];
    return -0.5 * q;
  };
  const std::vector<double> at = {0.3, -0.2, 0.5};
  const auto se = observed_information_se(ll, at);
  // inverse of A, diagonal, computed independently (cofactor expansion)
  const double det = 4.0 * (3.0 * 2.0 - 0.2 * 0.2) - 1.0 * (1.0 * 2.0 - 0.2 * 0.5) +
                     0.5 * (1.0 * 0.2 - 3.0 * 0.5);
  const double inv00 = (3.0 * 2.0 - 0.2 * 0.2) / det;
  const double inv11 = (4.0 * 2.0 - 0.5 * 0.5) / det;
  const double inv22 = (4.0 * 3.0 - 1.0 * 1.0) / det;
  REQUIRE(se.size() == 3);
  CHECK(se[0] == doctest::Approx(std::sqrt(inv00)).epsilon(1e-6));
  CHECK(se[1] == doctest::Approx(std::sqrt(inv11)).epsilon(1e-6));
  CHECK(se[2] == doctest::Approx(std::sqrt(inv22)).epsilon(1e-6));
}

TEST_CASE("estimation: flat directions raise singular-information errors") {
  // x[1] never enters: rank-deficient Hessian
  auto ll = [](std::span<const double> x) { return -0.5 * x[0] * x[0]; };
  const std::vector<double> at = {0.0, 1.0};
  CHECK_THROWS_AS(observed_information_se(ll, at), SingularInformationError);
}

TEST_CASE("estimation: standard errors shrink like 1/sqrt(N)") {
  ModelSelection sel;
  sel.family = Family::Lomax;
  const auto truth = Distribution::lomax(50.0, 1.2);
  std::vector<double> se_alpha;
  for (std::size_t n : {std::size_t{1000}, std::size_t{10000}, std::size_t{100000}}) {
    const auto sample = synthetic_censored(truth, n, 4.0, RandomSource{31, n});
    const auto fit = fit_mle(sel, sample);
    REQUIRE(fit.converged);
    REQUIRE(fit.se_available);
    se_alpha.push_back(fit.std_errors[1]);
  }
  const double r10 = std::sqrt(10.0);
  CHECK(se_alpha[0] / se_alpha[1] == doctest::Approx(r10).epsilon(0.2));
  CHECK(se_alpha[1] / se_alpha[2] == doctest::Approx(r10).epsilon(0.2));
}

TEST_CASE("estimation: bic arithmetic") {
  CHECK(bic(0.0, 2, 100) == doctest::Approx(-std::log(100.0)).epsilon(1e-14));
  CHECK(bic(-50.0, 0, 1000) == -50.0);
  CHECK(bic(-100.0, 3, 7) == doctest::Approx(-100.0 - 1.5 * std::log(7.0)).epsilon(1e-14));
  // monotone decreasing in d once log N > 0
  double prev = bic(-100.0, 0, 100);
  for (std::size_t d = 1; d <= 5; ++d) {
    const double b = bic(-100.0, d, 100);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("estimation: hill estimator closed forms and errors") {
  const double e = std::exp(1.0);
  CHECK(hill_estimator(std::vector<double>{3.0 * e}, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hill_estimator(std::vector<double>{e, e * e, e * e * e}, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(hill_estimator(std::vector<double>{2.0, 2.0}, 2.0), ValidationError);
  CHECK_THROWS_AS(hill_estimator(std::vector<double>{}, 1.0), ValidationError);
  CHECK_THROWS_AS(hill_estimator(std::vector<double>{0.5}, 1.0), ValidationError);

  const auto xs = Distribution::pareto1(1.0, 1.2).sample(100000, RandomSource{8, 1});
  CHECK(hill_estimator(xs, 1.0) == doctest::Approx(1.2).epsilon(0.02 / 1.2));
}

TEST_CASE("estimation: hill equals the fixed-scale Pareto MLE") {
  const auto xs = Distribution::pareto1(2.0, 1.4).sample(400, RandomSource{21, 4});
  const double hill = hill_estimator(xs, 2.0);

  ModelSelection sel;
  sel.family = Family::Pareto1;
  sel.fixed_sigma = 2.0;
  FitOptions opt;
  opt.gradient_tolerance = 1e-12;
  const auto fit = fit_mle(sel, CensoredSample(xs, 0, 2.0), opt);
  REQUIRE(fit.converged);
  REQUIRE(fit.parameter_names == std::vector<std::string>{"alpha"});
  CHECK(fit.estimates[0] == doctest::Approx(hill).epsilon(1e-6));
}

TEST_CASE("estimation: scale equivariance of uncensored fits") {
  const auto truth = Distribution::lomax(3.0, 1.3);
  const auto xs = truth.sample(800, RandomSource{13, 9});
  const double c = 4.0;  // power of two keeps the scaling exact
  std::vector<double> scaled(xs);
  for (double& v : scaled) v *= c;

  ModelSelection sel;
  sel.family = Family::Lomax;
  const auto base = fit_mle(sel, CensoredSample(xs, 0, 0.0));
  const auto wide = fit_mle(sel, CensoredSample(scaled, 0, 0.0));
  REQUIRE(base.converged);
  REQUIRE(wide.converged);
  CHECK(wide.estimates[0] == doctest::Approx(c * base.estimates[0]).epsilon(1e-4));
  CHECK(wide.estimates[1] == doctest::Approx(base.estimates[1]).epsilon(1e-4));
}

TEST_CASE("estimation: selection plumbing names and builds the right members") {
  ModelSelection gpl2;  // defaults
  CHECK(parameter_names(gpl2) == std::vector<std::string>{"alpha", "beta", "sigma"});
  const auto d = build_distribution(gpl2, std::vector<double>{1.5, 0.3, 20.0});
  CHECK(d.family() == Family::Gpl2);
  CHECK(d.g().alpha() == 1.5);
  CHECK(d.g().beta() == 0.3);
  CHECK(d.sigma() == 20.0);

  ModelSelection fisk;
  fisk.family = Family::Fisk;
  CHECK(parameter_names(fisk) == std::vector<std::string>{"sigma", "gamma"});
  ModelSelection dagum;
  dagum.family = Family::Dagum;
  CHECK(parameter_names(dagum) == std::vector<std::string>{"a", "b", "p"});
  ModelSelection logn;
  logn.family = Family::Lognormal;
  CHECK(parameter_names(logn) == std::vector<std::string>{"log_mean", "log_sd"});
  ModelSelection p1;
  p1.family = Family::Pareto1;
  CHECK_THROWS_AS(parameter_names(p1), ValidationError);  // needs fixed_sigma
}
