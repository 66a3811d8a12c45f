#include "sunfluct/ingest.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"

namespace sunfluct {

namespace {

bool parse_number(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool leading_token_numeric(const std::vector<std::string>& toks) {
  if (toks.empty()) return false;
  double v;
  return parse_number(toks[0], v);
}

}  // namespace

void ColumnMap::validate() const {
  std::set<std::size_t> idx{year_column, month_column, day_column, north_column,
                            south_column};
  std::size_t expected = 5;
  if (total_column) {
    idx.insert(*total_column);
    ++expected;
  }
  if (idx.size() != expected)
    throw error(errc::bad_config, "column map indices must be distinct");
}

GapPolicy parse_gap_policy(const std::string& s) {
  if (s == "skip") return GapPolicy::skip;
  if (s == "zero") return GapPolicy::zero;
  if (s == "error") return GapPolicy::error;
  throw error(errc::bad_config, "unknown gap policy: '" + s + "'");
}

ParseResult parse_daily_file(std::istream& source, const ColumnMap& map) {
  map.validate();
  ParseResult result;
  std::string line;
  std::size_t lineno = 0;
  std::size_t needed = std::max({map.year_column, map.month_column, map.day_column,
                                 map.north_column, map.south_column,
                                 map.total_column.value_or(0)}) + 1;

  while (std::getline(source, line)) {
    ++lineno;
    ++result.total_lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto toks = split_ws(line);
    if (toks.empty()) {
      ++result.blank_lines;
      continue;
    }
    if (toks[0][0] == '#' || !leading_token_numeric(toks)) {
      ++result.header_lines;
      continue;
    }
    if (toks.size() < needed) {
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": expected at least " +
                      std::to_string(needed) + " fields, got " +
                      std::to_string(toks.size()) + ": '" + line + "'");
    }

    const bool missing =
        !map.missing_sentinel.empty() &&
        (toks[map.north_column] == map.missing_sentinel ||
         toks[map.south_column] == map.missing_sentinel ||
         (map.total_column && toks[*map.total_column] == map.missing_sentinel));
    if (missing) {
      ++result.missing_lines;
      continue;
    }

    int y, m, d;
    double north, south;
    if (!parse_int(toks[map.year_column], y) || !parse_int(toks[map.month_column], m) ||
        !parse_int(toks[map.day_column], d) ||
        !parse_number(toks[map.north_column], north) ||
        !parse_number(toks[map.south_column], south)) {
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": unparseable numeric field: '" +
                      line + "'");
    }
    double total = north + south;
    if (map.total_column && !parse_number(toks[*map.total_column], total)) {
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": unparseable total field: '" +
                      line + "'");
    }

    Date date{y, m, d};
    if (!date.is_valid()) {
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": invalid date " + date.to_iso());
    }
    if (north < 0.0 || south < 0.0 || total < 0.0) {
      throw error(errc::negative_area,
                  "line " + std::to_string(lineno) + ": negative area at " +
                      date.to_iso());
    }
    if (!result.records.empty() && !(result.records.back().date < date)) {
      throw error(errc::non_monotonic_date,
                  "line " + std::to_string(lineno) + ": date " + date.to_iso() +
                      " does not increase past " + result.records.back().date.to_iso());
    }
    result.records.push_back(DailyAreaRecord{date, total, north, south});
  }
  return result;
}

ParseResult parse_daily_file(const std::string& path, const ColumnMap& map) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_failure, "cannot open daily file: " + path);
  return parse_daily_file(in, map);
}

std::vector<DailyAreaRecord> fill_gaps(const std::vector<DailyAreaRecord>& records,
                                       GapPolicy policy) {
  if (policy == GapPolicy::skip || records.size() < 2) return records;
  std::vector<DailyAreaRecord> out;
  out.reserve(records.size());
  out.push_back(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    Date expected = out.back().date.next_day();
    while (expected < records[i].date) {
      if (policy == GapPolicy::error) {
        throw error(errc::gap_found, "missing day " + expected.to_iso());
      }
      out.push_back(DailyAreaRecord{expected, 0.0, 0.0, 0.0});
      expected = expected.next_day();
    }
    out.push_back(records[i]);
  }
  return out;
}

std::string to_canonical_csv(const std::vector<DailyAreaRecord>& records) {
  std::ostringstream out;
  out << "date,area_total,area_north,area_south\n";
  for (const auto& r : records) {
    out << r.date.to_iso() << ',' << format_double(r.area_total) << ','
        << format_double(r.area_north) << ',' << format_double(r.area_south) << '\n';
  }
  return out.str();
}

std::vector<DailyAreaRecord> from_canonical_csv(std::istream& in) {
  std::vector<DailyAreaRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("date,", 0) == 0) continue;
    const auto toks = split_char(line, ',');
    if (toks.size() != 4)
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": expected 4 fields");
    DailyAreaRecord r;
    r.date = Date::parse_iso(toks[0]);
    if (!parse_number(toks[1], r.area_total) || !parse_number(toks[2], r.area_north) ||
        !parse_number(toks[3], r.area_south)) {
      throw error(errc::malformed_line,
                  "line " + std::to_string(lineno) + ": unparseable area");
    }
    if (r.area_north < 0.0 || r.area_south < 0.0 || r.area_total < 0.0)
      throw error(errc::negative_area,
                  "line " + std::to_string(lineno) + ": negative area");
    if (!records.empty() && !(records.back().date < r.date))
      throw error(errc::non_monotonic_date,
                  "line " + std::to_string(lineno) + ": non-increasing date");
    records.push_back(r);
  }
  return records;
}

}  // namespace sunfluct
