#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpltail/gfunction.hpp"
#include "gpltail/random.hpp"

namespace gpltail {

// Size-distribution families.  The four GPL families carry a GFunction; the
// Pareto chain, Fisk, Burr XII and Lomax are their constant-g special cases;
// Dagum and the lognormal are comparison families from outside the hierarchy.
enum class Family {
  StandardGpl,  // S(z) = (1+z)^{-g(z)},                        z > 0
  Gpl1,         // S(x) = (x/sigma)^{-g(x/sigma - 1)},          x > sigma
  Gpl2,         // S(x) = (1 + (x-mu)/sigma)^{-g((x-mu)/sigma)}, x > mu
  Gpl3,         // as Gpl2 with z = ((x-mu)/sigma)^{1/gamma}
  Pareto1,      // S(x) = (x/sigma)^{-alpha},                   x > sigma
  Pareto2,      // S(x) = (1 + (x-mu)/sigma)^{-alpha}
  Pareto3,      // S(x) = (1 + ((x-mu)/sigma)^{1/gamma})^{-1}
  Pareto4,      // S(x) = (1 + ((x-mu)/sigma)^{1/gamma})^{-alpha}
  Lomax,        // Pareto2 with mu = 0
  Fisk,         // Pareto3 with mu = 0
  BurrXii,      // Pareto4 with mu = 0
  Dagum,        // F(x) = (1 + (x/b)^{-a})^{-p}
  Lognormal,    // log X ~ N(log_mean, log_sd^2)
};

Family family_from_string(std::string_view name);
std::string to_string(Family family);

// Immutable, validated distribution spec with evaluation methods.  Lognormal
// reuses the mu/sigma slots for (log_mean, log_sd); Dagum stores its textbook
// (a, b, p) as (gamma, sigma, alpha) = (1/a, b, p) so that the shared Burr-type
// machinery applies.  Named constructors keep the textbook parameter order.
class Distribution {
public:
  static Distribution standard_gpl(const GFunction& g);
  static Distribution gpl1(double sigma, const GFunction& g);
  static Distribution gpl2(double mu, double sigma, const GFunction& g);
  static Distribution gpl3(double mu, double sigma, double gamma, const GFunction& g);
  static Distribution pareto1(double sigma, double alpha);
  static Distribution pareto2(double mu, double sigma, double alpha);
  static Distribution pareto3(double mu, double sigma, double gamma);
  static Distribution pareto4(double mu, double sigma, double gamma, double alpha);
  static Distribution lomax(double sigma, double alpha);
  static Distribution fisk(double sigma, double gamma);
  static Distribution burr_xii(double sigma, double gamma, double alpha);
  static Distribution dagum(double a, double b, double p);
  static Distribution lognormal(double log_mean, double log_sd);

  Family family() const { return family_; }
  const GFunction& g() const;  // throws unless a GPL family
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }

  double dagum_a() const;
  double dagum_b() const;
  double dagum_p() const;
  double log_mean() const;
  double log_sd() const;

  // Largest x with S(x) = 1; the support is the open interval above it
  // (0 for the unshifted families).
  double support_lower_bound() const;

  // S(x) = P(X > x).  Equals 1 at and below the support bound.
  double survival(double x) const;
  double log_survival(double x) const;

  // F(x) = 1 - S(x), evaluated from the same exponent so that F + S
  // round-trips to 1 within machine precision.
  double cdf(double x) const;
  double log_cdf(double x) const;

  double density(double x) const;     // 0 outside the open support
  double log_density(double x) const; // -inf outside the open support

  // Inverse CDF for p in (0,1); p = 0 maps to the support bound.  GPL
  // families invert the survival exponent by safeguarded Newton to
  // |F(x) - p| <= 1e-10; closed forms elsewhere.
  double quantile(double p) const;

  // n inverse-transform draws; depends only on (src.seed, src.stream).
  std::vector<double> sample(std::size_t n, RandomSource src) const;

  // Fully reduced equivalent spec when the parameters sit on hierarchy
  // edges (beta = 0 collapsing g to a constant, unit gamma, zero mu, ...);
  // nullopt when the spec is already in most-specific form.
  std::optional<Distribution> reduce_hierarchy() const;

  // One-line human-readable description, e.g. "gpl2(mu=0, sigma=100,
  // g=log-ratio(alpha=1, beta=0.5))".
  std::string describe() const;

private:
  Distribution(Family family, std::optional<GFunction> g, double mu, double sigma,
               double gamma, double alpha);

  // z-transform into the standard GPL / Burr argument, and its ingredients.
  double standardize(double x) const;

  Family family_;
  std::optional<GFunction> g_;
  double mu_;
  double sigma_;
  double gamma_;
  double alpha_;
};

}  // namespace gpltail
