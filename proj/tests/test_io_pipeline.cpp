#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gpltail/census_io.hpp"
#include "gpltail/error.hpp"
#include "gpltail/pipeline.hpp"
#include "gpltail/random.hpp"
#include "gpltail/report_json.hpp"

using namespace gpltail;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "gpltail_io_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << text;
  return p;
}

std::size_t thrown_line(const fs::path& p) {
  try {
    load_census_csv(p);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;  // no ParseError seen
}

}  // namespace

TEST_CASE("io: parses markers, sorts observed, tags the month") {
  const auto p = write_file("2019-03.csv",
                            "unit,size\n"
                            "B,10\n"
                            "A,<5\n"
                            "C,7\n");
  const CensusFile file = load_census_csv(p);
  CHECK(file.month_tag == "2019-03");
  CHECK(file.sample.observed() == std::vector<double>{7.0, 10.0});
  CHECK(file.sample.censored_count() == 1);
  CHECK(file.sample.threshold() == 4.0);
  CHECK(file.sample.total_size() == 3);
}

TEST_CASE("io: a configurable marker and threshold pass through") {
  const auto p = write_file("alt.csv",
                            "unit,size\n"
                            "A,NA\n"
                            "B,12\n");
  CensusFormat fmt;
  fmt.marker = "NA";
  fmt.threshold = 10.0;
  const CensusFile file = load_census_csv(p, fmt);
  CHECK(file.sample.observed() == std::vector<double>{12.0});
  CHECK(file.sample.censored_count() == 1);
  CHECK(file.sample.threshold() == 10.0);
}

TEST_CASE("io: parse errors carry the offending line number") {
  CHECK(thrown_line(write_file("bad_header.csv", "municipality,workers\nA,10\n")) == 1);
  CHECK(thrown_line(write_file("no_comma.csv", "unit,size\nA,10\nB 11\n")) == 3);
  CHECK(thrown_line(write_file("bad_size.csv", "unit,size\nA,10\nB,ten\n")) == 3);
  CHECK(thrown_line(write_file("dup.csv", "unit,size\nA,10\nA,11\n")) == 3);
  CHECK(thrown_line(write_file("unmarked.csv", "unit,size\nA,10\nB,3\n")) == 3);
  CHECK(thrown_line(write_file("neg.csv", "unit,size\nA,-7\n")) == 2);
  CHECK(thrown_line(write_file("empty.csv", "")) == 1);
  CHECK(thrown_line(write_file("header_only.csv", "unit,size\n")) == 1);
  CHECK_THROWS_AS(load_census_csv(scratch_dir() / "does_not_exist.csv"), ValidationError);
}

TEST_CASE("io: write then load preserves N, r and the observed multiset") {
  const CensoredSample sample({7.0, 7.0, 9.25, 100.0, 5.5}, 3, 4.0);
  const fs::path p = scratch_dir() / "roundtrip.csv";
  write_census_csv(p, sample);
  const CensusFile back = load_census_csv(p);
  CHECK(back.sample.total_size() == sample.total_size());
  CHECK(back.sample.censored_count() == sample.censored_count());
  CHECK(back.sample.observed() == sample.observed());  // both sorted ascending
  CHECK(back.sample.threshold() == sample.threshold());
}

TEST_CASE("pipeline: rank-size series follows the plotting conventions") {
  std::vector<double> values;
  for (int v = 2; v <= 10; ++v) values.push_back(static_cast<double>(v));  // n = 9
  const auto spec = Distribution::pareto1(1.0, 1.0);
  const auto series = rank_size_series(values, spec, 200);

  CHECK(series.size() == values.size() + 200);
  std::size_t empirical_rows = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0) CHECK(series[i].x >= series[i - 1].x);
    if (i > 0) CHECK(series[i].model_rank <= series[i - 1].model_rank);
    CHECK(series[i].x >= 2.0);
    CHECK(series[i].x <= 10.0);
    if (series[i].has_empirical) ++empirical_rows;
  }
  CHECK(empirical_rows == values.size());

  // Largest observation gets empirical rank 1; the model curve there is
  // (n+1) * S(10) = 10 * 0.1 = 1 for the unit Pareto.
  const auto& last = series.back();
  CHECK(last.x == 10.0);
  CHECK(last.has_empirical);
  CHECK(last.empirical_rank == 1.0);
  CHECK(last.model_rank == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(series.front().empirical_rank == 9.0);

  CHECK_THROWS_AS(rank_size_series(std::vector<double>{}, spec), ValidationError);
}

TEST_CASE("pipeline: comparison entries stay ordered with nesting-bounded differences") {
  const auto xs = Distribution::lomax(50.0, 1.5).sample(3000, RandomSource{321, 1});
  const auto sample = CensoredSample::from_values(xs, 4.0);
  const auto report = compare_models(sample, default_comparison_set());

  const std::vector<std::string> expected = {"gpl2:log-ratio", "lomax",  "fisk",
                                             "burr-xii",       "dagum",  "lognormal"};
  REQUIRE(report.entries.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(report.entries[i].label == expected[i]);
  CHECK(report.bic_differences.size() == expected.size() - 1);
  CHECK(report.failed.empty());
  for (const auto& e : report.entries) CHECK(e.fit.converged);

  // GPL2 nests Lomax at beta = 0: the log-likelihood gap is a fraction of a
  // unit, so the BIC difference is dominated by the extra-parameter penalty
  // (1/2) log N.
  const double n = static_cast<double>(sample.total_size());
  CHECK(std::abs(report.bic_differences[0]) <= 0.5 * std::log(n) + 3.0);
}

TEST_CASE("pipeline: unfittable families are recorded, a failed reference aborts") {
  const auto xs = Distribution::lomax(30.0, 2.0).sample(300, RandomSource{322, 1});
  const auto sample = CensoredSample::from_values(xs, 4.0);

  // A GPL2 located above the data has zero likelihood everywhere: the fit
  // fails outright and the comparison records it.
  ModelSelection good;  // gpl2, log-ratio, mu = 0
  ModelSelection hopeless;
  hopeless.gpl_mu = 1e9;
  const std::vector<ModelSelection> with_bad = {good, hopeless};
  const auto report = compare_models(sample, with_bad);
  CHECK(report.entries.size() == 1);
  CHECK(report.bic_differences.empty());
  REQUIRE(report.failed.size() == 1);
  CHECK(report.failed[0].find("gpl2") != std::string::npos);

  // The same hopeless selection as the reference aborts the comparison.
  const std::vector<ModelSelection> bad_ref = {hopeless, good};
  CHECK_THROWS_AS(compare_models(sample, bad_ref), ConvergenceError);

  // Degenerate single-family list: a report with no differences.
  const std::vector<ModelSelection> only = {good};
  const auto single = compare_models(sample, only);
  CHECK(single.entries.size() == 1);
  CHECK(single.bic_differences.empty());

  CHECK_THROWS_AS(compare_models(sample, std::vector<ModelSelection>{}), ValidationError);
}

TEST_CASE("json: distribution specs survive a round trip") {
  const auto g = GFunction::make(GKind::LogRatio, 1.2, 0.4);
  const std::vector<Distribution> specs = {
      Distribution::standard_gpl(g),
      Distribution::gpl1(40.0, GFunction::make(GKind::Weibull, 0.0, 1.7)),
      Distribution::gpl2(2.0, 55.0, g),
      Distribution::gpl3(1.0, 30.0, 0.8, GFunction::make(GKind::Pps, 2.0, 0.5)),
      Distribution::pareto1(3.0, 1.1),
      Distribution::pareto2(1.0, 5.0, 2.0),
      Distribution::pareto3(0.5, 4.0, 0.7),
      Distribution::pareto4(0.5, 4.0, 0.7, 1.3),
      Distribution::lomax(100.0, 1.5),
      Distribution::fisk(3.0, 0.7),
      Distribution::burr_xii(20.0, 0.5, 2.0),
      Distribution::dagum(1.4, 10.0, 0.6),
      Distribution::lognormal(0.5, 1.2),
  };
  for (const auto& spec : specs) {
    const Json j = spec_to_json(spec);
    const Distribution back = spec_from_json(j);
    CHECK(spec_to_json(back) == j);
    CHECK(back.family() == spec.family());
    for (double x : {5.0, 50.0, 500.0})
      CHECK(back.survival(x) == spec.survival(x));
  }

  CHECK_THROWS_AS(spec_from_json(Json{{"family", "gaussian"}}), ValidationError);
  CHECK_THROWS_AS(spec_from_json(Json{{"family", "lomax"}, {"sigma", 2.0}}), ValidationError);
  CHECK_THROWS_AS(spec_from_json(Json{{"family", "gpl1"}, {"sigma", 2.0}}), ValidationError);
  CHECK_THROWS_AS(spec_from_json(Json::array()), ValidationError);
}

TEST_CASE("json: report documents carry schema version and typed payloads") {
  const auto xs = Distribution::lomax(40.0, 1.8).sample(400, RandomSource{33, 7});
  const auto sample = CensoredSample::from_values(xs, 4.0);
  ModelSelection sel;
  sel.family = Family::Lomax;
  const FitResult fit = fit_mle(sel, sample);

  const Json jf = to_json(fit);
  for (const auto& name : fit.parameter_names) CHECK(jf.at("parameters").contains(name));
  CHECK(jf.at("bic").get<double>() == fit.bic);
  CHECK(jf.at("log_likelihood").get<double>() == fit.log_likelihood);
  CHECK(jf.at("converged").get<bool>() == fit.converged);
  if (fit.se_available)
    for (const auto& name : fit.parameter_names) CHECK(jf.at("std_errors").contains(name));

  const Json doc = make_document("fit", jf, "2019-03");
  CHECK(doc.at("schema_version").get<int>() == kSchemaVersion);
  CHECK(doc.at("kind").get<std::string>() == "fit");
  CHECK(doc.at("month").get<std::string>() == "2019-03");
  CHECK(doc.at("report") == jf);

  const Json series = make_series_document("fit", {{"2019-03", jf}, {"2019-04", jf}});
  CHECK(series.at("schema_version").get<int>() == kSchemaVersion);
  CHECK(series.at("kind").get<std::string>() == "fit_series");
  REQUIRE(series.at("reports").size() == 2);
  CHECK(series.at("reports")[0].at("month").get<std::string>() == "2019-03");

  // Quantile summaries serialize unavailable measures as nulls.
  QuantileSummary qs;
  qs.skew_kurtosis_available = false;
  const Json jq = to_json(qs);
  CHECK(jq.at("bowley_skewness").is_null());
  CHECK(jq.at("moors_kurtosis").is_null());
  CHECK(jq.at("quartile_dev_coeff").is_null());

  TailReport tr;
  tr.x_min = 12.0;
  tr.alpha_hat = 1.05;
  tr.tail_fraction = 9.5;
  const Json jt = to_json(tr);
  CHECK(jt.at("x_min").get<double>() == 12.0);
  CHECK(jt.at("tail_fraction").get<double>() == 9.5);
  CHECK(jt.contains("candidates_scanned"));
  CHECK(jt.contains("bootstraps_run"));
}
