#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sunfluct/date.hpp"

namespace sunfluct {

// Carrington rotation convention: rotation 1 begins 1853-11-09
// (JD 2398167.329), mean synodic period 27.2753 days.
struct CarringtonEphemeris {
  double epoch_jd = 2398167.329;
  double synodic_period_days = 27.2753;

  void validate() const;
};

// A calendar day is assigned to the rotation in progress at the end of the
// day (24:00 UTC), so the epoch day itself already belongs to rotation 1.
int rotation_number(const Date& date, const CarringtonEphemeris& eph);

// Civil date containing the midpoint of the given rotation.
Date rotation_mid_date(int rotation, const CarringtonEphemeris& eph);

// First calendar day assigned to the given rotation.
Date rotation_start_date(int rotation, const CarringtonEphemeris& eph);

struct CycleSpan {
  int cycle = 0;
  Date start;  // inclusive
  Date end;    // exclusive, equals the next cycle's start
};

struct CycleTable {
  std::vector<CycleSpan> entries;

  void validate() const;  // sorted, contiguous, non-overlapping
  Date span_start() const { return entries.front().start; }
  Date span_end() const { return entries.back().end; }

  // Cycle containing the date, or -1 when uncovered.
  int cycle_of(const Date& d) const;
};

// CSV `cycle,start_date,end_date` with ISO-8601 dates; '#' comments and a
// header line are skipped.
CycleTable load_cycle_table(const std::string& path);
std::string cycle_table_to_csv(const CycleTable& table);

struct CycleSegment {
  int cycle = 0;
  std::size_t begin = 0;  // index range [begin, end) into the rotation series
  std::size_t end = 0;
};

// Assigns each rotation index in [first_rotation, first_rotation + count) to
// the cycle containing the rotation's mid-date. Throws uncovered_rotation if
// any mid-date falls outside the table.
std::vector<CycleSegment> segment_cycles(int first_rotation, std::size_t count,
                                         const CycleTable& table,
                                         const CarringtonEphemeris& eph);

}  // namespace sunfluct
