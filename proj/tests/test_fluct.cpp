#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sunfluct/error.hpp"
#include "sunfluct/fluct.hpp"

using namespace sunfluct;

namespace {

const CarringtonEphemeris kEph;

std::vector<DailyAreaRecord> days_of_rotation(int rotation, int count, double north,
                                              double south, int skip_first = 0) {
  std::vector<DailyAreaRecord> out;
  Date d = rotation_start_date(rotation, kEph);
  for (int i = 0; i < skip_first; ++i) d = d.next_day();
  for (int i = 0; i < count; ++i) {
    REQUIRE(rotation_number(d, kEph) == rotation);
    out.push_back({d, north + south, north, south});
    d = d.next_day();
  }
  return out;
}

RotationSeries series_of(std::vector<double> values) {
  RotationSeries s;
  s.first_rotation = 100;
  s.mean_area = std::move(values);
  s.day_count.assign(s.mean_area.size(), 27);
  return s;
}

}  // namespace

TEST_CASE("constant rotation of 27 days averages to the constant") {
  const auto records = days_of_rotation(1000, 27, 100.0, 55.0);
  const RotationSeries s = rotation_means(records, Hemisphere::north, kEph);
  REQUIRE(s.size() == 1);
  CHECK(s.mean_area[0] == 100.0);
  CHECK(s.day_count[0] == 27);
  const RotationSeries ss = rotation_means(records, Hemisphere::south, kEph);
  CHECK(ss.mean_area[0] == 55.0);
}

TEST_CASE("three available days average over L = 3") {
  auto records = days_of_rotation(1000, 3, 0.0, 0.0);
  records[2].area_north = 300.0;
  const RotationSeries s = rotation_means(records, Hemisphere::north, kEph);
  REQUIRE(s.size() == 1);
  CHECK(s.mean_area[0] == 100.0);
  CHECK(s.day_count[0] == 3);
}

TEST_CASE("two rotations with distinct constants give two means") {
  auto records = days_of_rotation(1000, 27, 40.0, 0.0);
  const auto second = days_of_rotation(1001, 20, 90.0, 0.0);
  records.insert(records.end(), second.begin(), second.end());
  const RotationSeries s = rotation_means(records, Hemisphere::north, kEph);
  REQUIRE(s.size() == 2);
  CHECK(s.mean_area[0] == 40.0);
  CHECK(s.mean_area[1] == 90.0);
  CHECK(s.day_count[1] == 20);
}

TEST_CASE("empty interior rotation honours the gap policy") {
  auto records = days_of_rotation(1000, 27, 40.0, 0.0);
  const auto third = days_of_rotation(1002, 20, 90.0, 0.0);
  records.insert(records.end(), third.begin(), third.end());
  SUBCASE("skip keeps contiguity with a flagged empty rotation") {
    const RotationSeries s = rotation_means(records, Hemisphere::north, kEph);
    REQUIRE(s.size() == 3);
    CHECK(s.day_count[1] == 0);
    CHECK(s.mean_area[1] == 0.0);
  }
  SUBCASE("error raises EmptyRotation") {
    try {
      rotation_means(records, Hemisphere::north, kEph, GapPolicy::error);
      FAIL("expected EmptyRotation");
    } catch (const error& e) {
      CHECK(e.kind() == errc::empty_rotation);
    }
  }
}

TEST_CASE("smoothing preserves constants under both edge policies") {
  const auto s = series_of(std::vector<double>(40, 7.5));
  for (auto policy : {EdgePolicy::shrink, EdgePolicy::trim}) {
    const SmoothResult sm = smooth_13(s, policy);
    for (double v : sm.values) CHECK(v == doctest::Approx(7.5).epsilon(1e-14));
  }
}

TEST_CASE("box filter response to an impulse") {
  std::vector<double> v(41, 0.0);
  v[20] = 13.0;
  const SmoothResult sm = smooth_13(series_of(v), EdgePolicy::shrink);
  for (int i = 14; i <= 26; ++i) CHECK(sm.values[i] == doctest::Approx(1.0));
  CHECK(sm.values[13] == doctest::Approx(0.0));
  CHECK(sm.values[27] == doctest::Approx(0.0));
}

TEST_CASE("centered mean of a linear ramp is the ramp at interior points") {
  std::vector<double> v(30);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  const SmoothResult sm = smooth_13(series_of(v), EdgePolicy::shrink);
  for (std::size_t i = 6; i + 6 < v.size(); ++i)
    CHECK(sm.values[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-12));
}

TEST_CASE("trim equals shrink on all interior indices") {
  std::vector<double> v(50);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::sin(0.37 * static_cast<double>(i)) + 0.01 * static_cast<double>(i);
  const auto s = series_of(v);
  const SmoothResult shrink = smooth_13(s, EdgePolicy::shrink);
  const SmoothResult trim = smooth_13(s, EdgePolicy::trim);
  REQUIRE(trim.offset == 6);
  REQUIRE(trim.values.size() == v.size() - 12);
  for (std::size_t i = 0; i < trim.values.size(); ++i)
    CHECK(trim.values[i] == shrink.values[i + 6]);
}

TEST_CASE("trim needs at least 13 rotations") {
  CHECK_THROWS_AS(smooth_13(series_of(std::vector<double>(12, 1.0)), EdgePolicy::trim),
                  error);
  CHECK_NOTHROW(smooth_13(series_of(std::vector<double>(12, 1.0)), EdgePolicy::shrink));
}

TEST_CASE("constant series has identically zero fluctuations") {
  const FluctuationSeries fs =
      fluctuations(series_of(std::vector<double>(30, 4.0)), EdgePolicy::shrink);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CHECK(fs.values[i] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fs.positive_part[i] == doctest::Approx(0.0));
    CHECK(fs.negative_part[i] == doctest::Approx(0.0));
  }
}

TEST_CASE("impulse fluctuation splits into the positive part") {
  std::vector<double> v(41, 0.0);
  v[20] = 13.0;
  const FluctuationSeries fs = fluctuations(series_of(v), EdgePolicy::shrink);
  CHECK(fs.values[20] == doctest::Approx(12.0));
  CHECK(fs.positive_part[20] == doctest::Approx(12.0));
  CHECK(fs.negative_part[20] == 0.0);
  // neighbours lose the smoothed mean
  CHECK(fs.values[19] == doctest::Approx(-1.0));
  CHECK(fs.positive_part[19] == 0.0);
  CHECK(fs.negative_part[19] == doctest::Approx(-1.0));
}

TEST_CASE("parts reconstruct the fluctuation bitwise") {
  std::vector<double> v(60);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = 100.0 * std::sin(0.61 * static_cast<double>(i)) + 30.0;
  const FluctuationSeries fs = fluctuations(series_of(v), EdgePolicy::shrink);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CHECK(fs.positive_part[i] + fs.negative_part[i] == fs.values[i]);
    CHECK(fs.positive_part[i] >= 0.0);
    CHECK(fs.negative_part[i] <= 0.0);
    const bool one_zero = fs.positive_part[i] == 0.0 || fs.negative_part[i] == 0.0;
    CHECK(one_zero);
  }
  CHECK(fs.size() == v.size());
  CHECK(fs.smoothed.size() == fs.size());
  CHECK(fs.rotation_mean.size() == fs.size());
}

TEST_CASE("fluctuation csv has the documented columns") {
  std::vector<double> v(15, 3.0);
  const FluctuationSeries fs = fluctuations(series_of(v), EdgePolicy::shrink);
  const std::string csv = fluctuation_csv(fs, kEph);
  CHECK(csv.rfind("rotation_index,date_mid,S,S_bar,F,F_plus,F_minus\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
}
