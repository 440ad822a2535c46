#include "gpltail/report_json.hpp"

#include "gpltail/error.hpp"

namespace gpltail {

namespace {

double get_number(const Json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError("spec json missing field '" + std::string(key) + "'");
  if (!j.at(key).is_number())
    throw ValidationError("spec json field '" + std::string(key) + "' must be a number");
  return j.at(key).get<double>();
}

GFunction g_from_json(const Json& j) {
  if (!j.contains("g") || !j.at("g").is_object())
    throw ValidationError("GPL spec json needs a 'g' object");
  const Json& jg = j.at("g");
  if (!jg.contains("kind") || !jg.at("kind").is_string())
    throw ValidationError("g object needs a string 'kind'");
  const GKind kind = g_kind_from_string(jg.at("kind").get<std::string>());
  const double alpha = g_kind_has_alpha(kind) ? get_number(jg, "alpha") : 0.0;
  const double beta = g_kind_has_beta(kind) ? get_number(jg, "beta") : 0.0;
  return GFunction::make(kind, alpha, beta);
}

}  // namespace

Json spec_to_json(const Distribution& spec) {
  Json j;
  j["family"] = to_string(spec.family());
  switch (spec.family()) {
    case Family::StandardGpl:
      break;
    case Family::Gpl1:
      j["sigma"] = spec.sigma();
      break;
    case Family::Gpl2:
      j["mu"] = spec.mu();
      j["sigma"] = spec.sigma();
      break;
    case Family::Gpl3:
      j["mu"] = spec.mu();
      j["sigma"] = spec.sigma();
      j["gamma"] = spec.gamma();
      break;
    case Family::Pareto1:
      j["sigma"] = spec.sigma();
      j["alpha"] = spec.alpha();
      break;
    case Family::Pareto2:
      j["mu"] = spec.mu();
      j["sigma"] = spec.sigma();
      j["alpha"] = spec.alpha();
      break;
    case Family::Pareto3:
      j["mu"] = spec.mu();
      j["sigma"] = spec.sigma();
      j["gamma"] = spec.gamma();
      break;
    case Family::Pareto4:
      j["mu"] = spec.mu();
      j["sigma"] = spec.sigma();
      j["gamma"] = spec.gamma();
      j["alpha"] = spec.alpha();
      break;
    case Family::Lomax:
      j["sigma"] = spec.sigma();
      j["alpha"] = spec.alpha();
      break;
    case Family::Fisk:
      j["sigma"] = spec.sigma();
      j["gamma"] = spec.gamma();
      break;
    case Family::BurrXii:
      j["sigma"] = spec.sigma();
      j["gamma"] = spec.gamma();
      j["alpha"] = spec.alpha();
      break;
    case Family::Dagum:
      j["a"] = spec.dagum_a();
      j["b"] = spec.dagum_b();
      j["p"] = spec.dagum_p();
      break;
    case Family::Lognormal:
      j["log_mean"] = spec.log_mean();
      j["log_sd"] = spec.log_sd();
      break;
  }
  if (spec.family() == Family::StandardGpl || spec.family() == Family::Gpl1 ||
      spec.family() == Family::Gpl2 || spec.family() == Family::Gpl3) {
    Json jg;
    jg["kind"] = to_string(spec.g().kind());
    if (g_kind_has_alpha(spec.g().kind())) jg["alpha"] = spec.g().alpha();
    if (g_kind_has_beta(spec.g().kind())) jg["beta"] = spec.g().beta();
    j["g"] = jg;
  }
  return j;
}

Distribution spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ValidationError("spec json needs a string 'family'");
  const Family family = family_from_string(j.at("family").get<std::string>());
  switch (family) {
    case Family::StandardGpl:
      return Distribution::standard_gpl(g_from_json(j));
    case Family::Gpl1:
      return Distribution::gpl1(get_number(j, "sigma"), g_from_json(j));
    case Family::Gpl2:
      return Distribution::gpl2(get_number(j, "mu"), get_number(j, "sigma"), g_from_json(j));
    case Family::Gpl3:
      return Distribution::gpl3(get_number(j, "mu"), get_number(j, "sigma"),
                                get_number(j, "gamma"), g_from_json(j));
    case Family::Pareto1:
      return Distribution::pareto1(get_number(j, "sigma"), get_number(j, "alpha"));
    case Family::Pareto2:
      return Distribution::pareto2(get_number(j, "mu"), get_number(j, "sigma"),
                                   get_number(j, "alpha"));
    case Family::Pareto3:
      return Distribution::pareto3(get_number(j, "mu"), get_number(j, "sigma"),
                                   get_number(j, "gamma"));
    case Family::Pareto4:
      return Distribution::pareto4(get_number(j, "mu"), get_number(j, "sigma"),
                                   get_number(j, "gamma"), get_number(j, "alpha"));
    case Family::Lomax:
      return Distribution::lomax(get_number(j, "sigma"), get_number(j, "alpha"));
    case Family::Fisk:
      return Distribution::fisk(get_number(j, "sigma"), get_number(j, "gamma"));
    case Family::BurrXii:
      return Distribution::burr_xii(get_number(j, "sigma"), get_number(j, "gamma"),
                                    get_number(j, "alpha"));
    case Family::Dagum:
      return Distribution::dagum(get_number(j, "a"), get_number(j, "b"), get_number(j, "p"));
    case Family::Lognormal:
      return Distribution::lognormal(get_number(j, "log_mean"), get_number(j, "log_sd"));
  }
  throw ValidationError("unknown family in spec json");
}

Json to_json(const QuantileSummary& s) {
  Json j;
  j["sample_size"] = s.sample_size;
  j["censored_count"] = s.censored_count;
  j["maximum"] = s.maximum;
  j["median"] = s.median;
  j["half_iqr"] = s.half_iqr;
  if (s.skew_kurtosis_available) {
    j["quartile_dev_coeff"] = s.quartile_dev_coeff;
    j["bowley_skewness"] = s.bowley_skewness;
    j["moors_kurtosis"] = s.moors_kurtosis;
  } else {
    j["quartile_dev_coeff"] = nullptr;
    j["bowley_skewness"] = nullptr;
    j["moors_kurtosis"] = nullptr;
  }
  j["censoring_warning"] = s.censoring_warning;
  return j;
}

Json to_json(const FitResult& fit) {
  Json j;
  j["spec"] = spec_to_json(fit.spec);
  j["parameters"] = Json::object();
  for (std::size_t i = 0; i < fit.parameter_names.size(); ++i)
    j["parameters"][fit.parameter_names[i]] = fit.estimates[i];
  if (fit.se_available) {
    j["std_errors"] = Json::object();
    for (std::size_t i = 0; i < fit.parameter_names.size(); ++i)
      j["std_errors"][fit.parameter_names[i]] = fit.std_errors[i];
  } else {
    j["std_errors"] = nullptr;
    j["std_error_message"] = fit.se_message;
  }
  j["log_likelihood"] = fit.log_likelihood;
  j["bic"] = fit.bic;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["gradient_norm"] = fit.gradient_norm;
  if (!fit.message.empty()) j["message"] = fit.message;
  return j;
}

Json to_json(const TailReport& r) {
  Json j;
  j["x_min"] = r.x_min;
  j["alpha_hat"] = r.alpha_hat;
  j["ks"] = r.ks;
  j["p_value"] = r.p_value;
  j["replicates"] = r.replicates;
  j["tail_size"] = r.tail_size;
  j["tail_fraction"] = r.tail_fraction;
  j["candidates_scanned"] = r.candidates_scanned;
  j["bootstraps_run"] = r.bootstraps_run;
  return j;
}

Json to_json(const GofReport& r) {
  Json j;
  j["statistic_kind"] =
      r.statistic_kind == StatisticKind::AndersonDarling ? "anderson-darling"
                                                         : "kolmogorov-smirnov";
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["replicates"] = r.replicates;
  j["failed_replicates"] = r.failed_replicates;
  j["exceed_count"] = r.exceed_count;
  j["fit"] = to_json(r.fit);
  return j;
}

Json to_json(const ComparisonReport& r) {
  Json j;
  j["entries"] = Json::array();
  for (const auto& e : r.entries) {
    Json je;
    je["label"] = e.label;
    je["fit"] = to_json(e.fit);
    j["entries"].push_back(je);
  }
  j["reference"] = r.entries.front().label;
  j["bic_differences"] = Json::object();
  for (std::size_t i = 0; i + 1 < r.entries.size(); ++i)
    j["bic_differences"][r.entries[i + 1].label] = r.bic_differences[i];
  j["failed"] = r.failed;
  return j;
}

Json make_document(const std::string& kind, Json payload, const std::string& month) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  if (!month.empty()) j["month"] = month;
  j["report"] = std::move(payload);
  return j;
}

Json make_series_document(const std::string& kind,
                          std::vector<std::pair<std::string, Json>> monthly) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind + "_series";
  j["reports"] = Json::array();
  for (auto& [month, payload] : monthly) {
    Json entry;
    entry["month"] = month;
    entry["report"] = std::move(payload);
    j["reports"].push_back(std::move(entry));
  }
  return j;
}

}  // namespace gpltail
