#include "gpltail/census_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gpltail/error.hpp"

namespace gpltail {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Exact shortest text for a double: integers stay integers, everything else
// keeps full round-trip precision.
std::string format_size(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CensusFile load_census_csv(const std::filesystem::path& path, const CensusFormat& format) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open census file: " + path.string());

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> observed;
  std::size_t censored = 0;
  std::unordered_set<std::string> units;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view full = trim(line);
    if (full.empty()) continue;
    if (!header_seen) {
      if (full != "unit,size")
        throw ParseError("expected header 'unit,size', got '" + std::string(full) + "'",
                         line_no);
      header_seen = true;
      continue;
    }
    const auto comma = full.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("expected 'unit,size' record", line_no);
    const std::string unit{trim(full.substr(0, comma))};
    const std::string_view size_text = trim(full.substr(comma + 1));
    if (unit.empty()) throw ParseError("empty unit id", line_no);
    if (!units.insert(unit).second)
      throw ParseError("duplicate unit id '" + unit + "'", line_no);

    if (size_text == format.marker) {
      ++censored;
      continue;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(size_text.data(), size_text.data() + size_text.size(), value);
    if (ec != std::errc{} || ptr != size_text.data() + size_text.size())
      throw ParseError("unreadable size '" + std::string(size_text) + "'", line_no);
    if (!(value > 0.0) || !std::isfinite(value))
      throw ParseError("size must be a positive finite number", line_no);
    if (value <= format.threshold)
      throw ParseError("size " + format_size(value) +
                           " is at or below the censor threshold but not marked '" +
                           format.marker + "'",
                       line_no);
    observed.push_back(value);
  }
  if (!header_seen) throw ParseError("empty census file", line_no == 0 ? 1 : line_no);
  if (observed.empty() && censored == 0)
    throw ParseError("census file has a header but no records", line_no);

  return CensusFile{path.stem().string(),
                    CensoredSample(std::move(observed), censored, format.threshold)};
}

void write_census_csv(const std::filesystem::path& path, const CensoredSample& sample,
                      const CensusFormat& format) {
  std::ostringstream out;
  out << "unit,size\n";
  std::size_t id = 0;
  char unit[24];
  for (std::size_t i = 0; i < sample.censored_count(); ++i) {
    std::snprintf(unit, sizeof unit, "u%06zu", ++id);
    out << unit << ',' << format.marker << '\n';
  }
  for (double v : sample.observed()) {
    std::snprintf(unit, sizeof unit, "u%06zu", ++id);
    out << unit << ',' << format_size(v) << '\n';
  }

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw ValidationError("cannot write census file: " + path.string());
    f << out.str();
    if (!f.good()) throw ValidationError("failed writing census file: " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gpltail
