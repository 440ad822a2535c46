// Batch driver for census size-distribution analysis: quantile summaries,
// bootstrap power-law tail detection, censored ML fits, model comparison,
// whole-range goodness of fit, rank-size series, and simulation.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gpltail/census_io.hpp"
#include "gpltail/error.hpp"
#include "gpltail/gof.hpp"
#include "gpltail/pipeline.hpp"
#include "gpltail/report_json.hpp"
#include "gpltail/summary_stats.hpp"
#include "gpltail/tail_analysis.hpp"

namespace fs = std::filesystem;
using namespace gpltail;

namespace {

// ---- output helpers --------------------------------------------------------

// Atomic file write (temp + rename); "-" writes to stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  const fs::path target(out_path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw ValidationError("cannot write output file: " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
    if (!f.good()) throw ValidationError("failed writing output file: " + out_path);
  }
  fs::rename(tmp, target);
}

void emit_json(const std::string& out_path, const Json& doc) {
  emit(out_path, doc.dump(2));
}

// Input files: a single census CSV, or every *.csv in a directory (sorted by
// name, so month stems batch in calendar order).
std::vector<fs::path> input_files(const std::string& input) {
  const fs::path p(input);
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw ValidationError("directory has no .csv census files: " + input);
    return files;
  }
  if (!fs::exists(p)) throw ValidationError("no such input: " + input);
  return {p};
}

// Runs `analyze` per input file and wraps the result(s) as one document.
template <typename Fn>
Json per_file_document(const std::string& input, const CensusFormat& format,
                       const std::string& kind, Fn analyze) {
  const auto files = input_files(input);
  if (files.size() == 1) {
    const CensusFile file = load_census_csv(files[0], format);
    return make_document(kind, analyze(file), file.month_tag);
  }
  std::vector<std::pair<std::string, Json>> monthly;
  monthly.reserve(files.size());
  for (const auto& path : files) {
    const CensusFile file = load_census_csv(path, format);
    monthly.emplace_back(file.month_tag, analyze(file));
  }
  return make_series_document(kind, std::move(monthly));
}

// ---- parameter plumbing ----------------------------------------------------

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, double> out;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    double value = 0.0;
    std::size_t used = 0;
    if (eq != std::string::npos) {
      try {
        value = std::stod(item.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
    }
    if (eq == std::string::npos || used != item.size() - eq - 1)
      throw ValidationError("expected --param name=value, got '" + item + "'");
    out[item.substr(0, eq)] = value;
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end())
    throw ValidationError("missing required parameter '" + key + "'");
  const double v = it->second;
  params.erase(it);
  return v;
}

double take_or(std::map<std::string, double>& params, const std::string& key, double dflt) {
  const auto it = params.find(key);
  if (it == params.end()) return dflt;
  const double v = it->second;
  params.erase(it);
  return v;
}

Distribution build_spec(const std::string& family_name, const std::string& g_kind_name,
                        std::map<std::string, double> params) {
  const Family family = family_from_string(family_name);
  auto make_g = [&]() {
    const GKind kind = g_kind_from_string(g_kind_name);
    const double a = g_kind_has_alpha(kind) ? take(params, "alpha") : 0.0;
    const double b = g_kind_has_beta(kind) ? take(params, "beta") : 0.0;
    return GFunction::make(kind, a, b);
  };
  std::optional<Distribution> spec;
  switch (family) {
    case Family::StandardGpl:
      spec = Distribution::standard_gpl(make_g());
      break;
    case Family::Gpl1:
      spec = Distribution::gpl1(take(params, "sigma"), make_g());
      break;
    case Family::Gpl2:
      spec = Distribution::gpl2(take_or(params, "mu", 0.0), take(params, "sigma"), make_g());
      break;
    case Family::Gpl3:
      spec = Distribution::gpl3(take_or(params, "mu", 0.0), take(params, "sigma"),
                                take(params, "gamma"), make_g());
      break;
    case Family::Pareto1:
      spec = Distribution::pareto1(take(params, "sigma"), take(params, "alpha"));
      break;
    case Family::Pareto2:
      spec = Distribution::pareto2(take_or(params, "mu", 0.0), take(params, "sigma"),
                                   take(params, "alpha"));
      break;
    case Family::Pareto3:
      spec = Distribution::pareto3(take_or(params, "mu", 0.0), take(params, "sigma"),
                                   take(params, "gamma"));
      break;
    case Family::Pareto4:
      spec = Distribution::pareto4(take_or(params, "mu", 0.0), take(params, "sigma"),
                                   take(params, "gamma"), take(params, "alpha"));
      break;
    case Family::Lomax:
      spec = Distribution::lomax(take(params, "sigma"), take(params, "alpha"));
      break;
    case Family::Fisk:
      spec = Distribution::fisk(take(params, "sigma"), take(params, "gamma"));
      break;
    case Family::BurrXii:
      spec = Distribution::burr_xii(take(params, "sigma"), take(params, "gamma"),
                                    take(params, "alpha"));
      break;
    case Family::Dagum:
      spec = Distribution::dagum(take(params, "a"), take(params, "b"), take(params, "p"));
      break;
    case Family::Lognormal:
      spec = Distribution::lognormal(take(params, "log_mean"), take(params, "log_sd"));
      break;
  }
  if (!params.empty())
    throw ValidationError("unused parameter '" + params.begin()->first + "' for family " +
                          family_name);
  return *spec;
}

ModelSelection build_selection(const std::string& family_name, const std::string& g_kind_name,
                               double mu, std::optional<double> fixed_sigma) {
  ModelSelection sel;
  sel.family = family_from_string(family_name);
  sel.g_kind = g_kind_from_string(g_kind_name);
  sel.gpl_mu = mu;
  sel.fixed_sigma = fixed_sigma;
  return sel;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy-tail analysis of censored census size data"};
  app.require_subcommand(1);

  // shared options (copied into each subcommand that needs them)
  std::string input, out = "-";
  std::string marker = "<5";
  double threshold = 4.0;
  std::uint64_t seed = 0, stream = 0;
  auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input)
      cmd->add_option("input", input, "census CSV file or directory of monthly files")
          ->required();
    cmd->add_option("-o,--out", out, "output path ('-' for stdout)");
    cmd->add_option("--censor-marker", marker, "below-threshold marker text");
    cmd->add_option("--censor-threshold", threshold, "largest censored size");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--stream", stream, "random stream id");
  };

  // ---- stats ----
  auto* cmd_stats = app.add_subcommand("stats", "quantile shape summary per month");
  std::string stats_format = "json";
  add_io(cmd_stats);
  cmd_stats->add_option("--format", stats_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- tail ----
  auto* cmd_tail = app.add_subcommand("tail", "bootstrap power-law tail detection");
  int tail_replicates = 500, tail_coarse = 0;
  double significance = 0.1;
  std::size_t min_tail = 10;
  bool no_prefilter = false, serial = false;
  add_io(cmd_tail);
  add_seed(cmd_tail);
  cmd_tail->add_option("--replicates", tail_replicates, "bootstrap replicates per candidate");
  cmd_tail->add_option("--significance", significance, "acceptance level for the KS p-value");
  cmd_tail->add_option("--min-tail", min_tail, "smallest candidate tail size");
  cmd_tail->add_option("--coarse-replicates", tail_coarse,
                       "screening replicate budget (0 = single stage)");
  cmd_tail->add_flag("--no-prefilter", no_prefilter, "disable the KS*sqrt(n) screen");
  cmd_tail->add_flag("--serial", serial, "run bootstrap replicates serially");

  // ---- fit ----
  auto* cmd_fit = app.add_subcommand("fit", "censored maximum-likelihood fit");
  std::string family = "gpl2", g_kind = "log-ratio", init_text;
  double fit_mu = 0.0;
  double fixed_sigma_value = 0.0;
  add_io(cmd_fit);
  cmd_fit->add_option("--family", family, "model family");
  cmd_fit->add_option("--g-kind", g_kind, "g-function kind for GPL families");
  cmd_fit->add_option("--mu", fit_mu, "fixed location for GPL fits");
  auto* fixed_sigma_opt =
      cmd_fit->add_option("--fixed-sigma", fixed_sigma_value, "fixed scale (pareto1)");
  cmd_fit->add_option("--init", init_text, "comma-separated starting values");

  // ---- compare ----
  auto* cmd_compare = app.add_subcommand("compare", "side-by-side fits and BIC differences");
  std::string families_text = "gpl2,lomax,fisk,burr-xii,dagum,lognormal";
  std::string compare_g_kind = "log-ratio";
  add_io(cmd_compare);
  cmd_compare->add_option("--families", families_text, "comma list; first is the reference");
  cmd_compare->add_option("--g-kind", compare_g_kind, "g-function kind for GPL entries");

  // ---- gof ----
  auto* cmd_gof = app.add_subcommand("gof", "whole-range bootstrap goodness of fit");
  std::string gof_family = "gpl2", gof_g_kind = "log-ratio", statistic = "ad";
  int gof_replicates = 200;
  add_io(cmd_gof);
  add_seed(cmd_gof);
  cmd_gof->add_option("--family", gof_family, "model family");
  cmd_gof->add_option("--g-kind", gof_g_kind, "g-function kind for GPL families");
  cmd_gof->add_option("--statistic", statistic, "ad or ks")
      ->check(CLI::IsMember({"ad", "ks"}));
  cmd_gof->add_option("--replicates", gof_replicates, "bootstrap replicates");
  cmd_gof->add_flag("--serial", serial, "run bootstrap replicates serially");

  // ---- ranksize ----
  auto* cmd_rank = app.add_subcommand("ranksize", "rank-size series against a fitted model");
  std::string rank_family = "gpl2", rank_g_kind = "log-ratio";
  std::size_t fill_points = 200;
  add_io(cmd_rank);
  cmd_rank->add_option("--family", rank_family, "model family to fit");
  cmd_rank->add_option("--g-kind", rank_g_kind, "g-function kind for GPL families");
  cmd_rank->add_option("--fill-points", fill_points, "extra model-only points");

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand("simulate", "draw a synthetic census file");
  std::string sim_family = "gpl2", sim_g_kind = "log-ratio", model_json, month = "sim";
  std::vector<std::string> param_text;
  std::size_t sim_n = 1000;
  add_io(cmd_sim, false);
  add_seed(cmd_sim);
  cmd_sim->add_option("--family", sim_family, "model family");
  cmd_sim->add_option("--g-kind", sim_g_kind, "g-function kind for GPL families");
  cmd_sim->add_option("--param", param_text, "model parameter name=value (repeatable)");
  cmd_sim->add_option("--model", model_json, "JSON spec file (overrides --family/--param)");
  cmd_sim->add_option("--n", sim_n, "sample size before censoring");
  cmd_sim->add_option("--month", month, "month tag (also the output stem)");
  cmd_sim->add_flag("--round", "round draws to whole sizes");

  CLI11_PARSE(app, argc, argv);

  const CensusFormat format{marker, threshold};
  const RandomSource rng{seed, stream};
  const Execution exec = serial ? Execution::Serial : Execution::Parallel;

  try {
    if (*cmd_stats) {
      if (stats_format == "csv") {
        std::ostringstream csv;
        csv << "month,sample_size,censored_count,maximum,median,half_iqr,"
               "quartile_dev_coeff,bowley_skewness,moors_kurtosis,censoring_warning\n";
        for (const auto& path : input_files(input)) {
          const CensusFile file = load_census_csv(path, format);
          const QuantileSummary s = summarize(file.sample);
          csv << file.month_tag << ',' << s.sample_size << ',' << s.censored_count << ','
              << format_number(s.maximum) << ',' << format_number(s.median) << ','
              << format_number(s.half_iqr) << ',';
          if (s.skew_kurtosis_available) {
            csv << format_number(s.quartile_dev_coeff) << ','
                << format_number(s.bowley_skewness) << ','
                << format_number(s.moors_kurtosis);
          } else {
            csv << ",,";
          }
          csv << ',' << (s.censoring_warning ? 1 : 0) << '\n';
        }
        emit(out, csv.str());
      } else {
        emit_json(out, per_file_document(input, format, "quantile_summary",
                                         [](const CensusFile& file) {
                                           return to_json(summarize(file.sample));
                                         }));
      }
    } else if (*cmd_tail) {
      TailScanOptions options;
      options.significance = significance;
      options.replicates = tail_replicates;
      options.min_tail_size = min_tail;
      options.coarse_replicates = tail_coarse;
      options.prefilter = !no_prefilter;
      options.execution = exec;
      emit_json(out, per_file_document(input, format, "tail_report",
                                       [&](const CensusFile& file) {
                                         return to_json(find_tail_lower_bound(
                                             file.sample, options, rng));
                                       }));
    } else if (*cmd_fit) {
      std::optional<double> fixed_sigma;
      if (fixed_sigma_opt->count() > 0) fixed_sigma = fixed_sigma_value;
      const ModelSelection sel = build_selection(family, g_kind, fit_mu, fixed_sigma);
      FitOptions options;
      if (!init_text.empty()) {
        std::stringstream ss(init_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) options.init.push_back(std::stod(tok));
      }
      emit_json(out, per_file_document(input, format, "fit_report",
                                       [&](const CensusFile& file) {
                                         return to_json(fit_mle(sel, file.sample, options));
                                       }));
    } else if (*cmd_compare) {
      std::vector<ModelSelection> selections;
      std::stringstream ss(families_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty())
          selections.push_back(build_selection(tok, compare_g_kind, 0.0, std::nullopt));
      }
      emit_json(out, per_file_document(input, format, "comparison_report",
                                       [&](const CensusFile& file) {
                                         return to_json(
                                             compare_models(file.sample, selections));
                                       }));
    } else if (*cmd_gof) {
      const ModelSelection sel = build_selection(gof_family, gof_g_kind, 0.0, std::nullopt);
      const StatisticKind kind = (statistic == "ad") ? StatisticKind::AndersonDarling
                                                     : StatisticKind::KolmogorovSmirnov;
      emit_json(out, per_file_document(input, format, "gof_report",
                                       [&](const CensusFile& file) {
                                         return to_json(bootstrap_pvalue_gof(
                                             file.sample, sel, kind, gof_replicates, rng,
                                             exec));
                                       }));
    } else if (*cmd_rank) {
      const auto files = input_files(input);
      if (files.size() != 1)
        throw ValidationError("ranksize works on a single census file");
      const CensusFile file = load_census_csv(files[0], format);
      const ModelSelection sel = build_selection(rank_family, rank_g_kind, 0.0, std::nullopt);
      const FitResult fit = fit_mle(sel, file.sample);
      const auto series = rank_size_series(file.sample.observed(), fit.spec, fill_points);
      std::ostringstream csv;
      csv << "x,empirical_rank,model_value\n";
      for (const auto& p : series) {
        csv << format_number(p.x) << ',';
        if (p.has_empirical) csv << format_number(p.empirical_rank);
        csv << ',' << format_number(p.model_rank) << '\n';
      }
      emit(out, csv.str());
    } else if (*cmd_sim) {
      std::optional<Distribution> spec;
      if (!model_json.empty()) {
        std::ifstream f(model_json);
        if (!f) throw ValidationError("cannot open model spec: " + model_json);
        Json j;
        f >> j;
        spec = spec_from_json(j);
      } else {
        spec = build_spec(sim_family, sim_g_kind, parse_params(param_text));
      }
      std::vector<double> values = spec->sample(sim_n, rng);
      if (cmd_sim->count("--round") > 0)
        for (double& v : values) v = std::max(1.0, std::round(v));
      const CensoredSample sample = CensoredSample::from_values(values, threshold);
      if (out.empty() || out == "-")
        throw ValidationError("simulate needs --out FILE (census CSV output)");
      write_census_csv(out, sample, format);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
