#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sunfluct {

// Gregorian calendar date (UTC, day resolution).
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;

  bool is_valid() const;

  // Julian day number of the noon of this date (Fliegel & Van Flandern).
  std::int64_t jdn() const;

  // Julian date at the end of this calendar day (24:00 UTC).
  double jd_end_of_day() const { return static_cast<double>(jdn()) + 0.5; }

  Date next_day() const { return from_jdn(jdn() + 1); }

  static Date from_jdn(std::int64_t jdn);

  // Civil date containing the (continuous) Julian date jd.
  static Date from_jd(double jd);

  // "YYYY-MM-DD"
  static Date parse_iso(const std::string& s);
  std::string to_iso() const;
};

}  // namespace sunfluct
