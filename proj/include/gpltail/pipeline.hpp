#pragma once

#include <span>
#include <string>
#include <vector>

#include "gpltail/censored_sample.hpp"
#include "gpltail/distribution.hpp"
#include "gpltail/estimation.hpp"

namespace gpltail {

// One point of a rank-size (Zipf) series: empirical rank (1 = largest) where
// the x comes from the data, and the model curve (n+1)*S(x) everywhere —
// the same (n+1) plotting denominator the KS statistic uses.
struct RankSizePoint {
  double x = 0.0;
  bool has_empirical = false;
  double empirical_rank = 0.0;
  double model_rank = 0.0;
};

// Ascending-x series over the data plus `fill_points` log-spaced model-only
// points between the extremes, for smooth plotting.
std::vector<RankSizePoint> rank_size_series(std::span<const double> values,
                                            const Distribution& spec,
                                            std::size_t fill_points = 0);

std::string selection_label(const ModelSelection& selection);

struct ComparisonEntry {
  std::string label;
  FitResult fit;
};

// Side-by-side fits; entries[0] is the reference and bic_differences[k] =
// BIC(reference) - BIC(entries[k+1]) (positive favors the reference).
struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  std::vector<double> bic_differences;
  std::vector<std::string> failed;  // "label: reason" per unfittable family
};

// Fits every selection on the same sample.  A comparison family whose fit
// fails outright is recorded in `failed` and skipped; only a failure of the
// reference (first) selection aborts the comparison.
ComparisonReport compare_models(const CensoredSample& sample,
                                std::span<const ModelSelection> selections,
                                const FitOptions& options = {});

// The comparison set used by the reporting pipeline: the chosen GPL2 model
// first, then Lomax, Fisk, Burr XII, Dagum and the lognormal.
std::vector<ModelSelection> default_comparison_set(GKind g_kind = GKind::LogRatio);

}  // namespace gpltail
