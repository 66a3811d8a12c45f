#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sunfluct/date.hpp"

namespace sunfluct {

// One calendar day of hemispheric sunspot areas, in millionths of the
// solar hemisphere.
struct DailyAreaRecord {
  Date date;
  double area_total = 0.0;
  double area_north = 0.0;
  double area_south = 0.0;

  bool operator==(const DailyAreaRecord&) const = default;
};

// Column layout of a whitespace-delimited daily file. The default matches
// the Greenwich/NGDC daily hemispheric-area layout:
// year month day total north south.
struct ColumnMap {
  std::size_t year_column = 0;
  std::size_t month_column = 1;
  std::size_t day_column = 2;
  std::size_t north_column = 4;
  std::size_t south_column = 5;
  std::optional<std::size_t> total_column = 3;  // north+south when absent
  std::string missing_sentinel = "-999";        // token treated as a missing day

  void validate() const;  // throws when indices collide
};

enum class GapPolicy { skip, zero, error };

GapPolicy parse_gap_policy(const std::string& s);

struct ParseResult {
  std::vector<DailyAreaRecord> records;
  std::size_t total_lines = 0;
  std::size_t header_lines = 0;   // comment or non-numeric leading token
  std::size_t blank_lines = 0;
  std::size_t missing_lines = 0;  // data lines carrying the missing sentinel
};

// Parses a line-oriented daily area file. Lines starting with '#' or with a
// non-numeric first token are headers. Dates must be strictly increasing.
ParseResult parse_daily_file(std::istream& source, const ColumnMap& map);
ParseResult parse_daily_file(const std::string& path, const ColumnMap& map);

// Gap handling over a date-sorted record sequence.
// skip: unchanged; zero: absent days inserted with zero areas;
// error: first calendar gap throws.
std::vector<DailyAreaRecord> fill_gaps(const std::vector<DailyAreaRecord>& records,
                                       GapPolicy policy);

// Canonical CSV: date,area_total,area_north,area_south with ISO-8601 dates.
std::string to_canonical_csv(const std::vector<DailyAreaRecord>& records);
std::vector<DailyAreaRecord> from_canonical_csv(std::istream& in);

}  // namespace sunfluct
