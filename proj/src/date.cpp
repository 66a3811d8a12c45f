#include "sunfluct/date.hpp"

#include <cmath>
#include <cstdio>

#include "sunfluct/error.hpp"

namespace sunfluct {

std::int64_t Date::jdn() const {
  // Fliegel & Van Flandern (1968). Valid for Gregorian dates; integer
  // divisions truncate toward zero, which is what the formula expects
  // for the year range handled here (year > 0).
  const std::int64_t y = year, m = month, d = day;
  const std::int64_t a = (m - 14) / 12;
  return (1461 * (y + 4800 + a)) / 4 + (367 * (m - 2 - 12 * a)) / 12 -
         (3 * ((y + 4900 + a) / 100)) / 4 + d - 32075;
}

Date Date::from_jdn(std::int64_t jdn) {
  std::int64_t l = jdn + 68569;
  const std::int64_t n = (4 * l) / 146097;
  l = l - (146097 * n + 3) / 4;
  const std::int64_t i = (4000 * (l + 1)) / 1461001;
  l = l - (1461 * i) / 4 + 31;
  const std::int64_t j = (80 * l) / 2447;
  const std::int64_t d = l - (2447 * j) / 80;
  l = j / 11;
  const std::int64_t m = j + 2 - 12 * l;
  const std::int64_t y = 100 * (n - 49) + i + l;
  return Date{static_cast<int>(y), static_cast<int>(m), static_cast<int>(d)};
}

Date Date::from_jd(double jd) {
  return from_jdn(static_cast<std::int64_t>(std::floor(jd + 0.5)));
}

bool Date::is_valid() const {
  if (year < 1 || month < 1 || month > 12 || day < 1 || day > 31) return false;
  return from_jdn(jdn()) == *this;
}

Date Date::parse_iso(const std::string& s) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) {
    throw error(errc::malformed_line, "bad ISO date: '" + s + "'");
  }
  Date date{y, m, d};
  if (!date.is_valid()) {
    throw error(errc::malformed_line, "invalid calendar date: '" + s + "'");
  }
  return date;
}

std::string Date::to_iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

}  // namespace sunfluct
