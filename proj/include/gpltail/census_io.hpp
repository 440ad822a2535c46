#pragma once

#include <filesystem>
#include <string>

#include "gpltail/censored_sample.hpp"

namespace gpltail {

// One monthly register file: a `unit,size` CSV where below-threshold sizes
// appear as a censor marker (e.g. "<5").
struct CensusFile {
  std::string month_tag;  // file stem, e.g. "2017-12"
  CensoredSample sample;
};

struct CensusFormat {
  std::string marker = "<5";
  double threshold = 4.0;  // largest size the marker can hide
};

// Parses a census CSV.  Requires the `unit,size` header, rejects duplicate
// unit ids, non-positive or non-numeric sizes, and unmarked sizes at or below
// the threshold; ParseError carries the offending line.
CensusFile load_census_csv(const std::filesystem::path& path,
                           const CensusFormat& format = {});

// Writes a sample back out in the same format (censored rows first, observed
// ascending, synthetic unit ids).  Loading the result recovers N, the
// censored count, and the observed multiset exactly.
void write_census_csv(const std::filesystem::path& path, const CensoredSample& sample,
                      const CensusFormat& format = {});

}  // namespace gpltail
