#include "gpltail/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gpltail/error.hpp"
#include "gpltail/numerics.hpp"

namespace gpltail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogTwoPi = 1.8378770664093454836;

bool is_gpl(Family f) {
  return f == Family::StandardGpl || f == Family::Gpl1 || f == Family::Gpl2 ||
         f == Family::Gpl3;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

void require_finite(double v, const std::string& name) {
  require(std::isfinite(v), name + " must be finite");
}

void require_positive(double v, const std::string& name) {
  require(std::isfinite(v) && v > 0.0, name + " must be positive");
}

// Solves exponent(z) = y for the unique root of an increasing exponent by
// bracketed Newton; y >= 0.
double solve_exponent(const GFunction& g, double y) {
  if (y <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (g.exponent(hi) < y) {
    lo = hi;
    hi *= 4.0;
    if (hi > 1e300) throw ConvergenceError("quantile target beyond representable range");
  }
  double z = (lo > 0.0) ? std::sqrt(lo * hi) : 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const double diff = g.exponent(z) - y;
    if (std::abs(diff) <= 1e-13 * std::max(1.0, y)) return z;
    if (diff > 0.0) hi = z; else lo = z;
    const double slope = g.exponent_prime(z);
    double next = z - diff / slope;
    if (!(next > lo && next < hi)) next = (lo > 0.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * hi) return 0.5 * (lo + hi);
    z = next;
  }
  throw ConvergenceError("quantile inversion did not converge");
}

}  // namespace

Family family_from_string(std::string_view name) {
  if (name == "standard-gpl") return Family::StandardGpl;
  if (name == "gpl1") return Family::Gpl1;
  if (name == "gpl2") return Family::Gpl2;
  if (name == "gpl3") return Family::Gpl3;
  if (name == "pareto1") return Family::Pareto1;
  if (name == "pareto2") return Family::Pareto2;
  if (name == "pareto3") return Family::Pareto3;
  if (name == "pareto4") return Family::Pareto4;
  if (name == "lomax") return Family::Lomax;
  if (name == "fisk") return Family::Fisk;
  if (name == "burr-xii") return Family::BurrXii;
  if (name == "dagum") return Family::Dagum;
  if (name == "lognormal") return Family::Lognormal;
  throw ValidationError("unknown family: " + std::string(name));
}

std::string to_string(Family family) {
  switch (family) {
    case Family::StandardGpl: return "standard-gpl";
    case Family::Gpl1: return "gpl1";
    case Family::Gpl2: return "gpl2";
    case Family::Gpl3: return "gpl3";
    case Family::Pareto1: return "pareto1";
    case Family::Pareto2: return "pareto2";
    case Family::Pareto3: return "pareto3";
    case Family::Pareto4: return "pareto4";
    case Family::Lomax: return "lomax";
    case Family::Fisk: return "fisk";
    case Family::BurrXii: return "burr-xii";
    case Family::Dagum: return "dagum";
    case Family::Lognormal: return "lognormal";
  }
  throw ValidationError("unknown family");
}

Distribution::Distribution(Family family, std::optional<GFunction> g, double mu,
                           double sigma, double gamma, double alpha)
    : family_(family), g_(std::move(g)), mu_(mu), sigma_(sigma), gamma_(gamma), alpha_(alpha) {}

Distribution Distribution::standard_gpl(const GFunction& g) {
  return Distribution(Family::StandardGpl, g, 0.0, 1.0, 1.0, 0.0);
}

Distribution Distribution::gpl1(double sigma, const GFunction& g) {
  require_positive(sigma, "sigma");
  return Distribution(Family::Gpl1, g, 0.0, sigma, 1.0, 0.0);
}

Distribution Distribution::gpl2(double mu, double sigma, const GFunction& g) {
  require_finite(mu, "mu");
  require_positive(sigma, "sigma");
  return Distribution(Family::Gpl2, g, mu, sigma, 1.0, 0.0);
}

Distribution Distribution::gpl3(double mu, double sigma, double gamma, const GFunction& g) {
  require_finite(mu, "mu");
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  return Distribution(Family::Gpl3, g, mu, sigma, gamma, 0.0);
}

Distribution Distribution::pareto1(double sigma, double alpha) {
  require_positive(sigma, "sigma");
  require_positive(alpha, "alpha");
  return Distribution(Family::Pareto1, std::nullopt, 0.0, sigma, 1.0, alpha);
}

Distribution Distribution::pareto2(double mu, double sigma, double alpha) {
  require_finite(mu, "mu");
  require_positive(sigma, "sigma");
  require_positive(alpha, "alpha");
  return Distribution(Family::Pareto2, std::nullopt, mu, sigma, 1.0, alpha);
}

Distribution Distribution::pareto3(double mu, double sigma, double gamma) {
  require_finite(mu, "mu");
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  return Distribution(Family::Pareto3, std::nullopt, mu, sigma, gamma, 1.0);
}

Distribution Distribution::pareto4(double mu, double sigma, double gamma, double alpha) {
  require_finite(mu, "mu");
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  require_positive(alpha, "alpha");
  return Distribution(Family::Pareto4, std::nullopt, mu, sigma, gamma, alpha);
}

Distribution Distribution::lomax(double sigma, double alpha) {
  require_positive(sigma, "sigma");
  require_positive(alpha, "alpha");
  return Distribution(Family::Lomax, std::nullopt, 0.0, sigma, 1.0, alpha);
}

Distribution Distribution::fisk(double sigma, double gamma) {
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  return Distribution(Family::Fisk, std::nullopt, 0.0, sigma, gamma, 1.0);
}

Distribution Distribution::burr_xii(double sigma, double gamma, double alpha) {
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  require_positive(alpha, "alpha");
  return Distribution(Family::BurrXii, std::nullopt, 0.0, sigma, gamma, alpha);
}

Distribution Distribution::dagum(double a, double b, double p) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(p, "p");
  // Stored as (gamma, sigma, alpha) = (1/a, b, p).
  return Distribution(Family::Dagum, std::nullopt, 0.0, b, 1.0 / a, p);
}

Distribution Distribution::lognormal(double log_mean, double log_sd) {
  require_finite(log_mean, "log_mean");
  require_positive(log_sd, "log_sd");
  return Distribution(Family::Lognormal, std::nullopt, log_mean, log_sd, 1.0, 0.0);
}

const GFunction& Distribution::g() const {
  if (!g_) throw ValidationError("family '" + to_string(family_) + "' has no g-function");
  return *g_;
}

double Distribution::dagum_a() const {
  require(family_ == Family::Dagum, "dagum_a: not a Dagum spec");
  return 1.0 / gamma_;
}
double Distribution::dagum_b() const {
  require(family_ == Family::Dagum, "dagum_b: not a Dagum spec");
  return sigma_;
}
double Distribution::dagum_p() const {
  require(family_ == Family::Dagum, "dagum_p: not a Dagum spec");
  return alpha_;
}
double Distribution::log_mean() const {
  require(family_ == Family::Lognormal, "log_mean: not a lognormal spec");
  return mu_;
}
double Distribution::log_sd() const {
  require(family_ == Family::Lognormal, "log_sd: not a lognormal spec");
  return sigma_;
}

double Distribution::support_lower_bound() const {
  switch (family_) {
    case Family::Gpl1:
    case Family::Pareto1:
      return sigma_;
    case Family::Gpl2:
    case Family::Gpl3:
    case Family::Pareto2:
    case Family::Pareto3:
    case Family::Pareto4:
      return mu_;
    default:
      return 0.0;
  }
}

double Distribution::standardize(double x) const {
  switch (family_) {
    case Family::StandardGpl:
      return x;
    case Family::Gpl1:
      return x / sigma_ - 1.0;
    case Family::Gpl2:
      return (x - mu_) / sigma_;
    case Family::Gpl3:
      return std::pow((x - mu_) / sigma_, 1.0 / gamma_);
    default:
      throw ValidationError("standardize: not a GPL family");
  }
}

// -log S(x) >= 0; the single expression behind survival/cdf/log variants for
// every family except Dagum and the lognormal.
static double neg_log_survival_impl(const Distribution& d, double x) {
  switch (d.family()) {
    case Family::StandardGpl:
      return d.g().exponent(x);
    case Family::Gpl1:
      return d.g().exponent(x / d.sigma() - 1.0);
    case Family::Gpl2:
      return d.g().exponent((x - d.mu()) / d.sigma());
    case Family::Gpl3:
      return d.g().exponent(std::pow((x - d.mu()) / d.sigma(), 1.0 / d.gamma()));
    case Family::Pareto1:
      return d.alpha() * std::log(x / d.sigma());
    case Family::Pareto2:
    case Family::Lomax:
      return d.alpha() * std::log1p((x - d.mu()) / d.sigma());
    case Family::Pareto3:
    case Family::Pareto4:
    case Family::Fisk:
    case Family::BurrXii:
      return d.alpha() * std::log1p(std::pow((x - d.mu()) / d.sigma(), 1.0 / d.gamma()));
    default:
      throw ValidationError("no exponent form for this family");
  }
}

double Distribution::survival(double x) const {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw ValidationError("survival: x must not be NaN");
    return x > 0.0 ? 0.0 : 1.0;
  }
  if (x <= support_lower_bound()) return 1.0;
  switch (family_) {
    case Family::Dagum: {
      const double v = std::pow(x / sigma_, -1.0 / gamma_);
      return -std::expm1(-alpha_ * std::log1p(v));
    }
    case Family::Lognormal:
      return normal_cdf(-(std::log(x) - mu_) / sigma_);
    default:
      return std::exp(-neg_log_survival_impl(*this, x));
  }
}

double Distribution::log_survival(double x) const {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw ValidationError("log_survival: x must not be NaN");
    return x > 0.0 ? -kInf : 0.0;
  }
  if (x <= support_lower_bound()) return 0.0;
  switch (family_) {
    case Family::Dagum: {
      const double v = std::pow(x / sigma_, -1.0 / gamma_);
      const double w = alpha_ * std::log1p(v);  // -log F
      return std::log(-std::expm1(-w));
    }
    case Family::Lognormal:
      return std::log(survival(x));
    default:
      return -neg_log_survival_impl(*this, x);
  }
}

double Distribution::cdf(double x) const {
  // Exact complement of survival; log_cdf keeps the expm1 path where the
  // left tail needs relative accuracy.
  return 1.0 - survival(x);
}

double Distribution::log_cdf(double x) const {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw ValidationError("log_cdf: x must not be NaN");
    return x > 0.0 ? 0.0 : -kInf;
  }
  if (x <= support_lower_bound()) return -kInf;
  switch (family_) {
    case Family::Dagum: {
      const double v = std::pow(x / sigma_, -1.0 / gamma_);
      return -alpha_ * std::log1p(v);
    }
    case Family::Lognormal:
      // erfc-based normal_cdf keeps relative accuracy deep in the left tail
      return std::log(normal_cdf((std::log(x) - mu_) / sigma_));
    default: {
      const double e = neg_log_survival_impl(*this, x);
      return std::log(-std::expm1(-e));
    }
  }
}

double Distribution::log_density(double x) const {
  if (std::isnan(x)) throw ValidationError("log_density: x must not be NaN");
  if (!(x > support_lower_bound()) || !std::isfinite(x)) return -kInf;
  switch (family_) {
    case Family::StandardGpl: {
      const double z = x;
      return std::log(g().exponent_prime(z)) - g().exponent(z);
    }
    case Family::Gpl1:
    case Family::Gpl2: {
      const double z = standardize(x);
      return std::log(g().exponent_prime(z)) - g().exponent(z) - std::log(sigma_);
    }
    case Family::Gpl3: {
      const double w = (x - mu_) / sigma_;
      const double z = std::pow(w, 1.0 / gamma_);
      return std::log(g().exponent_prime(z)) - g().exponent(z) +
             (1.0 / gamma_ - 1.0) * std::log(w) - std::log(gamma_ * sigma_);
    }
    case Family::Pareto1:
      return std::log(alpha_) - std::log(sigma_) - (alpha_ + 1.0) * std::log(x / sigma_);
    case Family::Pareto2:
    case Family::Lomax:
      return std::log(alpha_) - std::log(sigma_) -
             (alpha_ + 1.0) * std::log1p((x - mu_) / sigma_);
    case Family::Pareto3:
    case Family::Pareto4:
    case Family::Fisk:
    case Family::BurrXii: {
      const double w = (x - mu_) / sigma_;
      return std::log(alpha_) - std::log(gamma_ * sigma_) +
             (1.0 / gamma_ - 1.0) * std::log(w) -
             (alpha_ + 1.0) * std::log1p(std::pow(w, 1.0 / gamma_));
    }
    case Family::Dagum: {
      const double a = 1.0 / gamma_, p = alpha_, b = sigma_;
      const double v = std::pow(x / b, -a);
      return std::log(a * p / b) - (a + 1.0) * std::log(x / b) - (p + 1.0) * std::log1p(v);
    }
    case Family::Lognormal: {
      const double t = (std::log(x) - mu_) / sigma_;
      return -std::log(x * sigma_) - 0.5 * kLogTwoPi - 0.5 * t * t;
    }
  }
  throw ValidationError("unknown family");
}

double Distribution::density(double x) const {
  const double l = log_density(x);
  return (l == -kInf) ? 0.0 : std::exp(l);
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("quantile requires p in (0,1)");
  const double y = -std::log1p(-p);  // target -log S
  switch (family_) {
    case Family::StandardGpl:
      return solve_exponent(g(), y);
    case Family::Gpl1:
      return sigma_ * (1.0 + solve_exponent(g(), y));
    case Family::Gpl2:
      return mu_ + sigma_ * solve_exponent(g(), y);
    case Family::Gpl3:
      return mu_ + sigma_ * std::pow(solve_exponent(g(), y), gamma_);
    case Family::Pareto1:
      return sigma_ * std::exp(y / alpha_);
    case Family::Pareto2:
    case Family::Lomax:
      return mu_ + sigma_ * std::expm1(y / alpha_);
    case Family::Pareto3:
    case Family::Pareto4:
    case Family::Fisk:
    case Family::BurrXii:
      return mu_ + sigma_ * std::pow(std::expm1(y / alpha_), gamma_);
    case Family::Dagum: {
      const double a = 1.0 / gamma_, pp = alpha_, b = sigma_;
      return b * std::pow(std::expm1(-std::log(p) / pp), -1.0 / a);
    }
    case Family::Lognormal:
      return std::exp(mu_ + sigma_ * normal_quantile(p));
  }
  throw ValidationError("unknown family");
}

std::vector<double> Distribution::sample(std::size_t n, RandomSource src) const {
  if (n == 0) throw ValidationError("sample requires n >= 1");
  Xoshiro256 rng(src);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = quantile(rng.uniform01());
  return out;
}

namespace {

// beta = 0 collapses the scaled rows to a constant; Weibull hazards with
// integer beta 1, 2 have their own catalog names.
std::optional<GFunction> reduce_g(const GFunction& g) {
  switch (g.kind()) {
    case GKind::LogShift:
    case GKind::RatioZ:
    case GKind::PowerRatio:
    case GKind::LogRatio:
    case GKind::AffineLinear:
    case GKind::Benini:
    case GKind::ZOverLog:
    case GKind::PowerGrowth:
    case GKind::Pps:
      if (g.beta() == 0.0) return GFunction::make(GKind::Constant, g.alpha());
      return std::nullopt;
    case GKind::Weibull:
      if (g.beta() == 1.0) return GFunction::make(GKind::Exponential, 0.0);
      if (g.beta() == 2.0) return GFunction::make(GKind::Rayleigh, 0.0);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// Edge conditions are structural identities; equality is tested with a
// 1e-12 relative slack so round-tripped parameters still reduce.
bool near(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::optional<Distribution> reduce_once(const Distribution& d) {
  if (is_gpl(d.family())) {
    if (auto g2 = reduce_g(d.g())) {
      switch (d.family()) {
        case Family::StandardGpl: return Distribution::standard_gpl(*g2);
        case Family::Gpl1: return Distribution::gpl1(d.sigma(), *g2);
        case Family::Gpl2: return Distribution::gpl2(d.mu(), d.sigma(), *g2);
        default: return Distribution::gpl3(d.mu(), d.sigma(), d.gamma(), *g2);
      }
    }
  }
  switch (d.family()) {
    case Family::StandardGpl:
      if (d.g().kind() == GKind::Constant) return Distribution::lomax(1.0, d.g().alpha());
      return std::nullopt;
    case Family::Gpl1:
      if (d.g().kind() == GKind::Constant) return Distribution::pareto1(d.sigma(), d.g().alpha());
      return std::nullopt;
    case Family::Gpl2:
      if (d.g().kind() == GKind::Constant)
        return Distribution::pareto2(d.mu(), d.sigma(), d.g().alpha());
      if (near(d.mu(), d.sigma())) return Distribution::gpl1(d.sigma(), d.g());
      if (d.mu() == 0.0 && d.sigma() == 1.0) return Distribution::standard_gpl(d.g());
      return std::nullopt;
    case Family::Gpl3:
      if (near(d.gamma(), 1.0)) return Distribution::gpl2(d.mu(), d.sigma(), d.g());
      if (d.g().kind() == GKind::Constant)
        return Distribution::pareto4(d.mu(), d.sigma(), d.gamma(), d.g().alpha());
      return std::nullopt;
    case Family::Pareto2:
      if (d.mu() == 0.0) return Distribution::lomax(d.sigma(), d.alpha());
      if (near(d.mu(), d.sigma())) return Distribution::pareto1(d.sigma(), d.alpha());
      return std::nullopt;
    case Family::Pareto3:
      if (d.mu() == 0.0) return Distribution::fisk(d.sigma(), d.gamma());
      return std::nullopt;
    case Family::Pareto4:
      if (d.mu() == 0.0) return Distribution::burr_xii(d.sigma(), d.gamma(), d.alpha());
      if (near(d.gamma(), 1.0)) return Distribution::pareto2(d.mu(), d.sigma(), d.alpha());
      if (near(d.alpha(), 1.0)) return Distribution::pareto3(d.mu(), d.sigma(), d.gamma());
      return std::nullopt;
    case Family::BurrXii:
      if (near(d.gamma(), 1.0)) return Distribution::lomax(d.sigma(), d.alpha());
      if (near(d.alpha(), 1.0)) return Distribution::fisk(d.sigma(), d.gamma());
      return std::nullopt;
    case Family::Dagum:
      // p = 1 gives F = (x/b)^a / (1 + (x/b)^a), the log-logistic curve.
      if (near(d.dagum_p(), 1.0)) return Distribution::fisk(d.dagum_b(), 1.0 / d.dagum_a());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<Distribution> Distribution::reduce_hierarchy() const {
  std::optional<Distribution> reduced;
  for (auto step = reduce_once(*this); step; step = reduce_once(*step)) reduced = step;
  return reduced;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  os << to_string(family_) << "(";
  auto g_text = [this]() {
    std::ostringstream gs;
    gs << "g=" << to_string(g_->kind()) << "(";
    bool first = true;
    if (g_kind_has_alpha(g_->kind())) {
      gs << "alpha=" << g_->alpha();
      first = false;
    }
    if (g_kind_has_beta(g_->kind())) {
      if (!first) gs << ", ";
      gs << "beta=" << g_->beta();
    }
    gs << ")";
    return gs.str();
  };
  switch (family_) {
    case Family::StandardGpl: os << g_text(); break;
    case Family::Gpl1: os << "sigma=" << sigma_ << ", " << g_text(); break;
    case Family::Gpl2: os << "mu=" << mu_ << ", sigma=" << sigma_ << ", " << g_text(); break;
    case Family::Gpl3:
      os << "mu=" << mu_ << ", sigma=" << sigma_ << ", gamma=" << gamma_ << ", " << g_text();
      break;
    case Family::Pareto1: os << "sigma=" << sigma_ << ", alpha=" << alpha_; break;
    case Family::Pareto2:
      os << "mu=" << mu_ << ", sigma=" << sigma_ << ", alpha=" << alpha_;
      break;
    case Family::Pareto3:
      os << "mu=" << mu_ << ", sigma=" << sigma_ << ", gamma=" << gamma_;
      break;
    case Family::Pareto4:
      os << "mu=" << mu_ << ", sigma=" << sigma_ << ", gamma=" << gamma_
         << ", alpha=" << alpha_;
      break;
    case Family::Lomax: os << "sigma=" << sigma_ << ", alpha=" << alpha_; break;
    case Family::Fisk: os << "sigma=" << sigma_ << ", gamma=" << gamma_; break;
    case Family::BurrXii:
      os << "sigma=" << sigma_ << ", gamma=" << gamma_ << ", alpha=" << alpha_;
      break;
    case Family::Dagum:
      os << "a=" << dagum_a() << ", b=" << dagum_b() << ", p=" << dagum_p();
      break;
    case Family::Lognormal:
      os << "log_mean=" << mu_ << ", log_sd=" << sigma_;
      break;
  }
  os << ")";
  return os.str();
}

}  // namespace gpltail
