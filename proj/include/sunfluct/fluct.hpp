#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sunfluct/calendar.hpp"
#include "sunfluct/ingest.hpp"

namespace sunfluct {

enum class Hemisphere { north, south };

const char* hemisphere_name(Hemisphere h);

// Per-rotation mean areas S_i over a contiguous rotation range.
struct RotationSeries {
  Hemisphere hemisphere = Hemisphere::north;
  int first_rotation = 0;
  std::vector<double> mean_area;  // S_i
  std::vector<int> day_count;     // contributing days L; 0 flags an empty rotation

  std::size_t size() const { return mean_area.size(); }
  int rotation_at(std::size_t i) const { return first_rotation + static_cast<int>(i); }
};

// Fluctuations F_i = S_i - running mean, together with the one-sided parts:
// positive_part keeps F > 0 (zero elsewhere), negative_part keeps F <= 0.
struct FluctuationSeries {
  Hemisphere hemisphere = Hemisphere::north;
  int first_rotation = 0;
  std::vector<double> rotation_mean;  // S, aligned with values
  std::vector<double> smoothed;       // running mean of S
  std::vector<double> values;         // F
  std::vector<double> positive_part;
  std::vector<double> negative_part;

  std::size_t size() const { return values.size(); }
  int rotation_at(std::size_t i) const { return first_rotation + static_cast<int>(i); }
};

// Window width of the centered running mean, in rotations.
inline constexpr int kSmoothWindow = 13;
inline constexpr int kSmoothHalf = kSmoothWindow / 2;

// shrink: edge windows truncated and renormalized, output length = input.
// trim: first/last kSmoothHalf values dropped from the result.
enum class EdgePolicy { shrink, trim };

EdgePolicy parse_edge_policy(const std::string& s);

// Groups date-sorted daily records into Carrington rotations and averages the
// chosen hemisphere's areas over the days present in each rotation. Interior
// rotations without any data: policy error throws; otherwise they are kept
// (mean 0, day_count 0) so the rotation range stays contiguous.
RotationSeries rotation_means(const std::vector<DailyAreaRecord>& records,
                              Hemisphere hemisphere, const CarringtonEphemeris& eph,
                              GapPolicy policy = GapPolicy::skip);

struct SmoothResult {
  std::vector<double> values;
  std::size_t offset = 0;  // kSmoothHalf under trim, 0 under shrink
};

SmoothResult smooth_13(const RotationSeries& series, EdgePolicy edge_policy);

FluctuationSeries fluctuations(const RotationSeries& series, EdgePolicy edge_policy);

// fluctuations_<hemisphere>.csv payload:
// rotation_index,date_mid,S,S_bar,F,F_plus,F_minus
std::string fluctuation_csv(const FluctuationSeries& fs, const CarringtonEphemeris& eph);

}  // namespace sunfluct
