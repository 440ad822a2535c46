#include "gpltail/gfunction.hpp"

#include <cmath>
#include <limits>

#include "gpltail/error.hpp"

namespace gpltail {

namespace {

// z / log(1+z) without the 0/0 at the origin; below 1e-8 the quotient of
// nearly equal doubles is replaced by its two-term expansion 1 + z/2.
inline double z_over_log1p(double z) {
  if (z < 1e-8) return 1.0 + 0.5 * z;
  return z / std::log1p(z);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

bool g_kind_has_alpha(GKind kind) {
  switch (kind) {
    case GKind::Exponential:
    case GKind::Rayleigh:
    case GKind::Weibull:
    case GKind::Gompertz:
      return false;
    default:
      return true;
  }
}

bool g_kind_has_beta(GKind kind) {
  switch (kind) {
    case GKind::Constant:
    case GKind::Exponential:
    case GKind::Rayleigh:
      return false;
    default:
      return true;
  }
}

GKind g_kind_from_string(std::string_view name) {
  if (name == "constant") return GKind::Constant;
  if (name == "log-shift") return GKind::LogShift;
  if (name == "ratio-z") return GKind::RatioZ;
  if (name == "power-ratio") return GKind::PowerRatio;
  if (name == "log-ratio") return GKind::LogRatio;
  if (name == "affine-linear") return GKind::AffineLinear;
  if (name == "benini") return GKind::Benini;
  if (name == "z-over-log") return GKind::ZOverLog;
  if (name == "power-growth") return GKind::PowerGrowth;
  if (name == "pps") return GKind::Pps;
  if (name == "exponential") return GKind::Exponential;
  if (name == "rayleigh") return GKind::Rayleigh;
  if (name == "weibull") return GKind::Weibull;
  if (name == "gompertz") return GKind::Gompertz;
  throw ValidationError("unknown g-function kind: " + std::string(name));
}

std::string to_string(GKind kind) {
  switch (kind) {
    case GKind::Constant: return "constant";
    case GKind::LogShift: return "log-shift";
    case GKind::RatioZ: return "ratio-z";
    case GKind::PowerRatio: return "power-ratio";
    case GKind::LogRatio: return "log-ratio";
    case GKind::AffineLinear: return "affine-linear";
    case GKind::Benini: return "benini";
    case GKind::ZOverLog: return "z-over-log";
    case GKind::PowerGrowth: return "power-growth";
    case GKind::Pps: return "pps";
    case GKind::Exponential: return "exponential";
    case GKind::Rayleigh: return "rayleigh";
    case GKind::Weibull: return "weibull";
    case GKind::Gompertz: return "gompertz";
  }
  throw ValidationError("unknown g-function kind");
}

GFunction GFunction::make(GKind kind, double alpha, double beta) {
  const bool has_alpha = g_kind_has_alpha(kind);
  const bool has_beta = g_kind_has_beta(kind);

  if (has_alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
      throw ValidationError("g-function '" + to_string(kind) + "' requires alpha > 0");
  } else {
    alpha = kNaN;
  }

  if (has_beta) {
    if (!std::isfinite(beta))
      throw ValidationError("g-function '" + to_string(kind) + "' requires finite beta");
    switch (kind) {
      case GKind::LogShift:
      case GKind::RatioZ:
        if (beta < -1.0)
          throw ValidationError("g-function '" + to_string(kind) + "' requires beta >= -1");
        break;
      case GKind::PowerRatio:
      case GKind::LogRatio:
      case GKind::Pps:
        if (beta <= -1.0)
          throw ValidationError("g-function '" + to_string(kind) + "' requires beta > -1");
        break;
      case GKind::AffineLinear:
      case GKind::Benini:
      case GKind::ZOverLog:
      case GKind::PowerGrowth:
        if (beta < 0.0)
          throw ValidationError("g-function '" + to_string(kind) + "' requires beta >= 0");
        break;
      case GKind::Weibull:
      case GKind::Gompertz:
        if (beta <= 0.0)
          throw ValidationError("g-function '" + to_string(kind) + "' requires beta > 0");
        break;
      default:
        break;
    }
  } else {
    beta = kNaN;
  }

  return GFunction(kind, alpha, beta);
}

double GFunction::operator()(double z) const {
  if (!(z > 0.0)) throw ValidationError("g is defined for z > 0");
  const double u = std::log1p(z);
  switch (kind_) {
    case GKind::Constant:
      return alpha_;
    case GKind::LogShift:
      return alpha_ * (1.0 + beta_ / (1.0 + u));
    case GKind::RatioZ:
      return alpha_ * (1.0 + beta_ * z_over_log1p(z) / (1.0 + z));
    case GKind::PowerRatio:
      return alpha_ * std::pow(z / (1.0 + z), beta_);
    case GKind::LogRatio:
      return alpha_ * std::pow(u / (1.0 + u), beta_);
    case GKind::AffineLinear:
      return alpha_ * (1.0 + beta_ * (1.0 + z));
    case GKind::Benini:
      return alpha_ * (1.0 + beta_ * u);
    case GKind::ZOverLog:
      return alpha_ * (1.0 + beta_ * z_over_log1p(z));
    case GKind::PowerGrowth:
      return alpha_ * std::pow(1.0 + z, beta_);
    case GKind::Pps:
      return alpha_ * std::pow(u, beta_);
    case GKind::Exponential:
      return z_over_log1p(z);
    case GKind::Rayleigh:
      return 0.5 * z * z_over_log1p(z);
    case GKind::Weibull:
      return std::pow(z, beta_ - 1.0) * z_over_log1p(z);  // z^beta / log(1+z)
    case GKind::Gompertz:
      if (z < 1e-8) return beta_ * (1.0 + z);
      return beta_ * std::expm1(z) / u;
  }
  throw ValidationError("unknown g-function kind");
}

double GFunction::prime(double z) const {
  if (!(z > 0.0)) throw ValidationError("g' is defined for z > 0");
  const double u = std::log1p(z);
  switch (kind_) {
    case GKind::Constant:
      return 0.0;
    case GKind::LogShift:
      return -alpha_ * beta_ / ((1.0 + z) * (1.0 + u) * (1.0 + u));
    case GKind::RatioZ: {
      // d/dz [z/((1+z)u)] = (u - z) / ((1+z)u)^2; u - z ~ -z^2/2 near 0.
      if (z < 1e-8) return alpha_ * beta_ * (-0.5);
      const double d = (1.0 + z) * u;
      return alpha_ * beta_ * (u - z) / (d * d);
    }
    case GKind::PowerRatio: {
      const double w = z / (1.0 + z);
      return alpha_ * beta_ * std::pow(w, beta_ - 1.0) / ((1.0 + z) * (1.0 + z));
    }
    case GKind::LogRatio: {
      const double v = u / (1.0 + u);
      return alpha_ * beta_ * std::pow(v, beta_ - 1.0) / ((1.0 + z) * (1.0 + u) * (1.0 + u));
    }
    case GKind::AffineLinear:
      return alpha_ * beta_;
    case GKind::Benini:
      return alpha_ * beta_ / (1.0 + z);
    case GKind::ZOverLog: {
      // d/dz [z/u] = (u - z/(1+z)) / u^2; numerator ~ z^2/2 near 0.
      if (z < 1e-8) return alpha_ * beta_ * 0.5;
      return alpha_ * beta_ * (u - z / (1.0 + z)) / (u * u);
    }
    case GKind::PowerGrowth:
      return alpha_ * beta_ * std::pow(1.0 + z, beta_ - 1.0);
    case GKind::Pps:
      return alpha_ * beta_ * std::pow(u, beta_ - 1.0) / (1.0 + z);
    case GKind::Exponential:
      if (z < 1e-8) return 0.5;
      return (u - z / (1.0 + z)) / (u * u);
    case GKind::Rayleigh:
      // d/dz [z^2/(2u)] = z (2u - z/(1+z)) / (2u^2); -> 1/2 + z/2 near 0.
      if (z < 1e-8) return 0.5 + 0.5 * z;
      return z * (2.0 * u - z / (1.0 + z)) / (2.0 * u * u);
    case GKind::Weibull:
      // z^{beta-1} (beta u - z/(1+z)) / u^2; bracket ~ (beta-1) z near 0.
      if (z < 1e-8) return std::pow(z, beta_ - 2.0) * ((beta_ - 1.0) + z * (1.0 - 0.5 * beta_));
      return std::pow(z, beta_ - 1.0) * (beta_ * u - z / (1.0 + z)) / (u * u);
    case GKind::Gompertz: {
      // beta e^z (u - (1-e^{-z})/(1+z)) / u^2; -> beta (1 + 2z/3) near 0.
      // Factored so large z overflows to +inf instead of inf - inf.
      if (z < 1e-8) return beta_ * (1.0 + 2.0 * z / 3.0);
      const double bracket = u + std::expm1(-z) / (1.0 + z);
      return beta_ * std::exp(z) * bracket / (u * u);
    }
  }
  throw ValidationError("unknown g-function kind");
}

double GFunction::exponent(double z) const {
  if (z <= 0.0) return 0.0;
  const double u = std::log1p(z);
  switch (kind_) {
    case GKind::Constant:
      return alpha_ * u;
    case GKind::LogShift:
      return alpha_ * (u + beta_ * u / (1.0 + u));
    case GKind::RatioZ:
      return alpha_ * (u + beta_ * z / (1.0 + z));
    case GKind::PowerRatio:
      return alpha_ * u * std::pow(z / (1.0 + z), beta_);
    case GKind::LogRatio:
      return alpha_ * u * std::pow(u / (1.0 + u), beta_);
    case GKind::AffineLinear:
      return alpha_ * u * (1.0 + beta_ * (1.0 + z));
    case GKind::Benini:
      return alpha_ * u * (1.0 + beta_ * u);
    case GKind::ZOverLog:
      return alpha_ * (u + beta_ * z);
    case GKind::PowerGrowth:
      return alpha_ * u * std::pow(1.0 + z, beta_);
    case GKind::Pps:
      return alpha_ * std::pow(u, beta_ + 1.0);
    case GKind::Exponential:
      return z;
    case GKind::Rayleigh:
      return 0.5 * z * z;
    case GKind::Weibull:
      return std::pow(z, beta_);
    case GKind::Gompertz:
      return beta_ * std::expm1(z);
  }
  throw ValidationError("unknown g-function kind");
}

double GFunction::exponent_prime(double z) const {
  if (!(z > 0.0)) throw ValidationError("hazard is defined for z > 0");
  const double u = std::log1p(z);
  const double zp1 = 1.0 + z;
  switch (kind_) {
    case GKind::Constant:
      return alpha_ / zp1;
    case GKind::LogShift:
      return alpha_ / zp1 * (1.0 + beta_ / ((1.0 + u) * (1.0 + u)));
    case GKind::RatioZ:
      return alpha_ * (1.0 / zp1 + beta_ / (zp1 * zp1));
    case GKind::PowerRatio: {
      const double w = z / zp1;
      return alpha_ * std::pow(w, beta_) / zp1 + alpha_ * beta_ * u * std::pow(w, beta_ - 1.0) / (zp1 * zp1);
    }
    case GKind::LogRatio: {
      const double v = u / (1.0 + u);
      return alpha_ * std::pow(v, beta_) * (1.0 + beta_ + u) / ((1.0 + u) * zp1);
    }
    case GKind::AffineLinear:
      return alpha_ * ((1.0 + beta_ * zp1) / zp1 + beta_ * u);
    case GKind::Benini:
      return alpha_ * (1.0 + 2.0 * beta_ * u) / zp1;
    case GKind::ZOverLog:
      return alpha_ * (1.0 / zp1 + beta_);
    case GKind::PowerGrowth:
      return alpha_ * std::pow(zp1, beta_ - 1.0) * (1.0 + beta_ * u);
    case GKind::Pps:
      return alpha_ * (beta_ + 1.0) * std::pow(u, beta_) / zp1;
    case GKind::Exponential:
      return 1.0;
    case GKind::Rayleigh:
      return z;
    case GKind::Weibull:
      return beta_ * std::pow(z, beta_ - 1.0);
    case GKind::Gompertz:
      return beta_ * std::exp(z);
  }
  throw ValidationError("unknown g-function kind");
}

TailLimitClass tail_limit_class(const GFunction& g) {
  switch (g.kind()) {
    case GKind::Constant:
    case GKind::LogShift:
    case GKind::RatioZ:
    case GKind::PowerRatio:
    case GKind::LogRatio:
      return TailLimitClass{true, g.alpha()};
    default:
      return TailLimitClass{false, 0.0};
  }
}

std::vector<double> default_condition_grid() {
  std::vector<double> grid(512);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = static_cast<double>(i) / (grid.size() - 1.0);
    grid[i] = std::pow(10.0, -8.0 + 16.0 * t);
  }
  return grid;
}

GplConditionReport validate_gpl_conditions(const GFunction& g, std::span<const double> grid) {
  std::vector<double> fallback;
  if (grid.empty()) {
    fallback = default_condition_grid();
    grid = fallback;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1]))
      throw ValidationError("condition grid must be positive and strictly increasing");
  }

  GplConditionReport report;

  // (i) exponent must shrink to 0 (so (1+z)^g -> 1) through the smallest
  // points, monotonically from below.
  const std::size_t head = std::min<std::size_t>(8, grid.size());
  bool origin_ok = true;
  double prev = -1.0;
  for (std::size_t i = 0; i < head; ++i) {
    const double e = g.exponent(grid[i]);
    if (e < prev) origin_ok = false;
    prev = e;
  }
  report.origin_value = std::exp(g.exponent(grid.front()));
  if (report.origin_value > 1.01) origin_ok = false;
  report.origin_limit_ok = origin_ok;

  // (ii) exponent at the top of the grid must already be large.
  report.infinity_value = g.exponent(grid.back());
  report.infinity_limit_ok = report.infinity_value > std::log(1e3);

  // (iii) g'(z) log(1+z) (1+z) + g(z) >= 0, the hazard-positivity form of the
  // derivative condition, with a relative slack for roundoff.
  bool deriv_ok = true;
  for (double z : grid) {
    const double u = std::log1p(z);
    const double a = g.prime(z) * u * (1.0 + z);
    const double b = g(z);
    const double margin = a + b;
    const double scale = std::abs(a) + std::abs(b);
    if (std::isnan(margin) || margin < -1e-12 * scale) {
      deriv_ok = false;
      report.derivative_violations.push_back(z);
    }
  }
  report.derivative_ok = deriv_ok;

  return report;
}

}  // namespace gpltail
