#include "gpltail/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "gpltail/error.hpp"

namespace gpltail {

std::vector<RankSizePoint> rank_size_series(std::span<const double> values,
                                            const Distribution& spec,
                                            std::size_t fill_points) {
  if (values.empty()) throw ValidationError("rank_size_series needs data");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<RankSizePoint> series;
  series.reserve(sorted.size() + fill_points);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    RankSizePoint p;
    p.x = sorted[i];
    p.has_empirical = true;
    p.empirical_rank = n - static_cast<double>(i);  // largest value gets rank 1
    p.model_rank = (n + 1.0) * spec.survival(sorted[i]);
    series.push_back(p);
  }

  const double lo = sorted.front(), hi = sorted.back();
  if (fill_points > 0 && hi > lo) {
    const double ratio = hi / lo;
    for (std::size_t t = 1; t <= fill_points; ++t) {
      RankSizePoint p;
      p.x = lo * std::pow(ratio, static_cast<double>(t) /
                                     static_cast<double>(fill_points + 1));
      p.model_rank = (n + 1.0) * spec.survival(p.x);
      series.push_back(p);
    }
    std::sort(series.begin(), series.end(),
              [](const RankSizePoint& a, const RankSizePoint& b) { return a.x < b.x; });
  }
  return series;
}

std::string selection_label(const ModelSelection& selection) {
  std::string label = to_string(selection.family);
  switch (selection.family) {
    case Family::StandardGpl:
    case Family::Gpl1:
    case Family::Gpl2:
    case Family::Gpl3:
      label += ":" + to_string(selection.g_kind);
      break;
    default:
      break;
  }
  return label;
}

ComparisonReport compare_models(const CensoredSample& sample,
                                std::span<const ModelSelection> selections,
                                const FitOptions& options) {
  if (selections.empty()) throw ValidationError("compare_models needs at least one family");
  ComparisonReport report;
  report.entries.reserve(selections.size());
  for (const auto& sel : selections) {
    const std::string label = selection_label(sel);
    try {
      report.entries.push_back({label, fit_mle(sel, sample, options)});
    } catch (const NumericalError& e) {
      // Without the reference fit no difference is defined; a comparison
      // family that cannot be fitted at all is recorded and skipped.
      if (report.entries.empty()) throw ConvergenceError(label + ": " + e.what());
      report.failed.push_back(label + ": " + e.what());
    }
  }
  const double ref = report.entries.front().fit.bic;
  for (std::size_t i = 1; i < report.entries.size(); ++i)
    report.bic_differences.push_back(ref - report.entries[i].fit.bic);
  return report;
}

std::vector<ModelSelection> default_comparison_set(GKind g_kind) {
  std::vector<ModelSelection> set(6);
  set[0] = ModelSelection{Family::Gpl2, g_kind, 0.0, std::nullopt};
  set[1].family = Family::Lomax;
  set[2].family = Family::Fisk;
  set[3].family = Family::BurrXii;
  set[4].family = Family::Dagum;
  set[5].family = Family::Lognormal;
  return set;
}

}  // namespace gpltail
