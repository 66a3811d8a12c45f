#include "sunfluct/fluct.hpp"

#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"

namespace sunfluct {

const char* hemisphere_name(Hemisphere h) {
  return h == Hemisphere::north ? "north" : "south";
}

EdgePolicy parse_edge_policy(const std::string& s) {
  if (s == "shrink") return EdgePolicy::shrink;
  if (s == "trim") return EdgePolicy::trim;
  throw error(errc::bad_config, "unknown edge policy: '" + s + "'");
}

RotationSeries rotation_means(const std::vector<DailyAreaRecord>& records,
                              Hemisphere hemisphere, const CarringtonEphemeris& eph,
                              GapPolicy policy) {
  eph.validate();
  if (records.empty())
    throw error(errc::sample_too_small, "rotation_means: no daily records");

  const int first = rotation_number(records.front().date, eph);
  const int last = rotation_number(records.back().date, eph);

  RotationSeries series;
  series.hemisphere = hemisphere;
  series.first_rotation = first;
  const std::size_t count = static_cast<std::size_t>(last - first + 1);
  std::vector<double> sums(count, 0.0);
  std::vector<int> days(count, 0);

  for (const auto& r : records) {
    const int rot = rotation_number(r.date, eph);
    const auto i = static_cast<std::size_t>(rot - first);
    sums[i] += hemisphere == Hemisphere::north ? r.area_north : r.area_south;
    ++days[i];
  }

  series.mean_area.resize(count);
  series.day_count = days;
  for (std::size_t i = 0; i < count; ++i) {
    if (days[i] == 0) {
      if (policy == GapPolicy::error)
        throw error(errc::empty_rotation,
                    "rotation " + std::to_string(first + static_cast<int>(i)) +
                        " has no contributing days");
      series.mean_area[i] = 0.0;
    } else {
      series.mean_area[i] = sums[i] / days[i];
    }
  }
  return series;
}

SmoothResult smooth_13(const RotationSeries& series, EdgePolicy edge_policy) {
  const std::size_t n = series.size();
  if (edge_policy == EdgePolicy::trim && n < static_cast<std::size_t>(kSmoothWindow))
    throw error(errc::series_too_short,
                "trim smoothing needs at least " + std::to_string(kSmoothWindow) +
                    " rotations, got " + std::to_string(n));
  if (n == 0) throw error(errc::series_too_short, "empty rotation series");

  SmoothResult result;
  const auto& s = series.mean_area;

  auto window_mean = [&](std::size_t i) {
    const std::size_t lo = i >= static_cast<std::size_t>(kSmoothHalf) ? i - kSmoothHalf : 0;
    const std::size_t hi = std::min(n - 1, i + kSmoothHalf);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += s[j];
    return acc / static_cast<double>(hi - lo + 1);
  };

  if (edge_policy == EdgePolicy::shrink) {
    result.offset = 0;
    result.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.values[i] = window_mean(i);
  } else {
    result.offset = kSmoothHalf;
    result.values.resize(n - 2 * kSmoothHalf);
    for (std::size_t i = kSmoothHalf; i + kSmoothHalf < n; ++i)
      result.values[i - kSmoothHalf] = window_mean(i);
  }
  return result;
}

FluctuationSeries fluctuations(const RotationSeries& series, EdgePolicy edge_policy) {
  const SmoothResult sm = smooth_13(series, edge_policy);
  FluctuationSeries fs;
  fs.hemisphere = series.hemisphere;
  fs.first_rotation = series.first_rotation + static_cast<int>(sm.offset);

  const std::size_t n = sm.values.size();
  fs.rotation_mean.resize(n);
  fs.smoothed = sm.values;
  fs.values.resize(n);
  fs.positive_part.resize(n);
  fs.negative_part.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = series.mean_area[i + sm.offset];
    const double f = s - sm.values[i];
    fs.rotation_mean[i] = s;
    fs.values[i] = f;
    fs.positive_part[i] = f > 0.0 ? f : 0.0;
    fs.negative_part[i] = f > 0.0 ? 0.0 : f;
  }
  return fs;
}

std::string fluctuation_csv(const FluctuationSeries& fs, const CarringtonEphemeris& eph) {
  std::ostringstream out;
  out << "rotation_index,date_mid,S,S_bar,F,F_plus,F_minus\n";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const int rot = fs.rotation_at(i);
    out << rot << ',' << rotation_mid_date(rot, eph).to_iso() << ','
        << format_double(fs.rotation_mean[i]) << ',' << format_double(fs.smoothed[i])
        << ',' << format_double(fs.values[i]) << ','
        << format_double(fs.positive_part[i]) << ','
        << format_double(fs.negative_part[i]) << '\n';
  }
  return out.str();
}

}  // namespace sunfluct
