#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpltail {

// Catalog of exponent functions g for survival curves of the form
// S(z) = (1+z)^{-g(z)}, z > 0.  The first ten rows scale a shape by alpha;
// the last four fix the exponent g(z)*log(1+z) to a named hazard shape and
// take no alpha.  Rows nesting the pure power law do so at beta = 0.
enum class GKind {
  // g(z) -> alpha as z -> infinity (power-law tail of index alpha)
  Constant,    // alpha
  LogShift,    // alpha * (1 + beta/(1+log(1+z))),            beta >= -1
  RatioZ,      // alpha * (1 + beta*z/((1+z) log(1+z))),      beta >= -1
  PowerRatio,  // alpha * (z/(1+z))^beta,                     beta > -1
  LogRatio,    // alpha * (u/(1+u))^beta, u = log(1+z),       beta > -1
  // g(z) -> infinity (all moments finite); power law at beta = 0
  AffineLinear,  // alpha * (1 + beta*(1+z)),                 beta >= 0
  Benini,        // alpha * (1 + beta*log(1+z)),              beta >= 0
  ZOverLog,      // alpha * (1 + beta*z/log(1+z)),            beta >= 0
  PowerGrowth,   // alpha * (1+z)^beta,                       beta >= 0
  Pps,           // alpha * log(1+z)^beta,                    beta > -1
  // fixed exponent forms, no alpha
  Exponential,  // z / log(1+z)
  Rayleigh,     // z^2 / (2 log(1+z))
  Weibull,      // z^beta / log(1+z),              beta > 0
  Gompertz,     // beta*(e^z - 1) / log(1+z),      beta > 0
};

bool g_kind_has_alpha(GKind kind);
bool g_kind_has_beta(GKind kind);

GKind g_kind_from_string(std::string_view name);
std::string to_string(GKind kind);

class GFunction {
public:
  // Validates the parameters against the catalog row (throws ValidationError).
  // Kinds without alpha or beta ignore the corresponding argument.
  static GFunction make(GKind kind, double alpha, double beta = 0.0);

  GKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  // g(z) for z > 0.  Ratios z/log(1+z) switch to a two-term expansion below
  // z = 1e-8, where the direct quotient loses all significant digits.
  double operator()(double z) const;

  // Analytic derivative g'(z); matches a central finite difference to ~1e-6
  // relative on [1e-3, 1e6].
  double prime(double z) const;

  // g(z)*log(1+z), the survival exponent, in algebraically simplified form.
  // Exact at both ends of the support (no 0/0 at z -> 0, no overflow until
  // the survival probability itself underflows).
  double exponent(double z) const;

  // d/dz of exponent(z); equals the hazard of S(z) = exp(-exponent(z)).
  double exponent_prime(double z) const;

private:
  GFunction(GKind kind, double alpha, double beta)
      : kind_(kind), alpha_(alpha), beta_(beta) {}

  GKind kind_;
  double alpha_;
  double beta_;
};

// Limit class of g at infinity: finite rows converge to alpha (regularly
// varying survival of tail index alpha), the rest diverge.  The class follows
// the catalog row even where beta = 0 collapses a divergent row to a constant.
struct TailLimitClass {
  bool finite = false;
  double alpha = 0.0;  // meaningful only when finite
};

TailLimitClass tail_limit_class(const GFunction& g);

// Grid audit of the distributional validity conditions:
//   (i)  (1+z)^{g(z)} -> 1 as z -> 0+        (checked at the smallest points)
//   (ii) (1+z)^{g(z)} -> infinity            (checked at the largest point)
//   (iii) g'(z)/g(z) >= -1/((1+z) log(1+z))  (checked at every grid point)
struct GplConditionReport {
  bool origin_limit_ok = false;
  bool infinity_limit_ok = false;
  bool derivative_ok = false;
  std::vector<double> derivative_violations;  // grid z where (iii) fails
  double origin_value = 0.0;    // (1+z)^{g(z)} at the smallest grid point
  double infinity_value = 0.0;  // log of (1+z)^{g(z)} at the largest grid point

  bool all_ok() const { return origin_limit_ok && infinity_limit_ok && derivative_ok; }
};

// Audits on a caller grid (ascending, positive).  The default grid is 512
// log-spaced points on [1e-8, 1e8]; the infinity check requires the survival
// exponent to exceed log(1e3) at the last point.
GplConditionReport validate_gpl_conditions(const GFunction& g,
                                           std::span<const double> grid = {});

std::vector<double> default_condition_grid();

}  // namespace gpltail
