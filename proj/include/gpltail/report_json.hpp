#pragma once

#include <json.hpp>

#include "gpltail/distribution.hpp"
#include "gpltail/estimation.hpp"
#include "gpltail/gof.hpp"
#include "gpltail/pipeline.hpp"
#include "gpltail/summary_stats.hpp"
#include "gpltail/tail_analysis.hpp"

namespace gpltail {

// All emitted documents carry {"schema_version": 1, "kind": "..."}.  Field
// order is fixed (ordered_json) so identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json spec_to_json(const Distribution& spec);
Distribution spec_from_json(const Json& j);

Json to_json(const QuantileSummary& summary);
Json to_json(const FitResult& fit);
Json to_json(const TailReport& report);
Json to_json(const GofReport& report);
Json to_json(const ComparisonReport& report);

// Wraps a payload as a top-level document, optionally tagged with the month.
Json make_document(const std::string& kind, Json payload, const std::string& month = "");

// Series document over monthly payloads of one kind.
Json make_series_document(const std::string& kind,
                          std::vector<std::pair<std::string, Json>> monthly);

}  // namespace gpltail
