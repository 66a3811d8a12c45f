#include "sunfluct/calendar.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"

namespace sunfluct {

void CarringtonEphemeris::validate() const {
  if (!(synodic_period_days > 25.0 && synodic_period_days < 30.0))
    throw error(errc::bad_config, "synodic period must lie in (25, 30) days");
}

int rotation_number(const Date& date, const CarringtonEphemeris& eph) {
  const double elapsed = date.jd_end_of_day() - eph.epoch_jd;
  if (elapsed < 0.0)
    throw error(errc::date_before_epoch,
                date.to_iso() + " precedes the rotation-1 epoch");
  return static_cast<int>(std::floor(elapsed / eph.synodic_period_days)) + 1;
}

Date rotation_mid_date(int rotation, const CarringtonEphemeris& eph) {
  const double jd = eph.epoch_jd + (rotation - 0.5) * eph.synodic_period_days;
  return Date::from_jd(jd);
}

Date rotation_start_date(int rotation, const CarringtonEphemeris& eph) {
  const double jd_start = eph.epoch_jd + (rotation - 1) * eph.synodic_period_days;
  Date d = Date::from_jd(jd_start);
  while (rotation_number(d, eph) < rotation) d = d.next_day();
  for (;;) {
    const Date prev = Date::from_jdn(d.jdn() - 1);
    if (prev.jd_end_of_day() < eph.epoch_jd) break;
    if (rotation_number(prev, eph) != rotation) break;
    d = prev;
  }
  return d;
}

void CycleTable::validate() const {
  if (entries.empty()) throw error(errc::bad_config, "cycle table is empty");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!(e.start < e.end))
      throw error(errc::bad_config,
                  "cycle " + std::to_string(e.cycle) + " has start >= end");
    if (i > 0) {
      if (entries[i - 1].cycle >= e.cycle)
        throw error(errc::bad_config, "cycle numbers must increase");
      if (!(entries[i - 1].end == e.start))
        throw error(errc::bad_config,
                    "cycle spans must be contiguous at cycle " + std::to_string(e.cycle));
    }
  }
}

int CycleTable::cycle_of(const Date& d) const {
  for (const auto& e : entries) {
    if (!(d < e.start) && d < e.end) return e.cycle;
  }
  return -1;
}

CycleTable load_cycle_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_failure, "cannot open cycle table: " + path);
  CycleTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto toks = split_char(line, ',');
    if (toks.size() != 3)
      throw error(errc::malformed_line,
                  path + ":" + std::to_string(lineno) + ": expected cycle,start,end");
    if (toks[0] == "cycle") continue;  // header
    CycleSpan span;
    try {
      span.cycle = std::stoi(toks[0]);
    } catch (const std::exception&) {
      throw error(errc::malformed_line,
                  path + ":" + std::to_string(lineno) + ": bad cycle number");
    }
    span.start = Date::parse_iso(toks[1]);
    span.end = Date::parse_iso(toks[2]);
    table.entries.push_back(span);
  }
  table.validate();
  return table;
}

std::string cycle_table_to_csv(const CycleTable& table) {
  std::ostringstream out;
  out << "cycle,start_date,end_date\n";
  for (const auto& e : table.entries)
    out << e.cycle << ',' << e.start.to_iso() << ',' << e.end.to_iso() << '\n';
  return out.str();
}

std::vector<CycleSegment> segment_cycles(int first_rotation, std::size_t count,
                                         const CycleTable& table,
                                         const CarringtonEphemeris& eph) {
  table.validate();
  std::vector<CycleSegment> segments;
  for (std::size_t i = 0; i < count; ++i) {
    const int rot = first_rotation + static_cast<int>(i);
    const Date mid = rotation_mid_date(rot, eph);
    const int cycle = table.cycle_of(mid);
    if (cycle < 0)
      throw error(errc::uncovered_rotation,
                  "rotation " + std::to_string(rot) + " (mid " + mid.to_iso() +
                      ") is outside the cycle table");
    if (!segments.empty() && segments.back().cycle == cycle) {
      segments.back().end = i + 1;
    } else {
      segments.push_back(CycleSegment{cycle, i, i + 1});
    }
  }
  return segments;
}

}  // namespace sunfluct
