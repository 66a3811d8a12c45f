#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sunfluct/calendar.hpp"
#include "sunfluct/fluct.hpp"

namespace sunfluct {

enum class SeriesKind { original, positive, negative };

const char* series_kind_name(SeriesKind k);

// Lag window [lo, hi] in rotations.
struct LagWindow {
  int lo = 0;
  int hi = 0;
};

// The three harmonic search windows.
inline constexpr LagWindow kShortWindow{7, 13};
inline constexpr LagWindow kMidWindow{14, 19};
inline constexpr LagWindow kLongWindow{20, 27};

inline constexpr int kDefaultMaxLag = 27;

enum class PeakBand { above_2se, between_1se_2se, below_1se };

const char* peak_band_name(PeakBand b);

struct AcfPeak {
  int lag = 0;
  double value = 0.0;
  int window_index = 0;  // 0 short, 1 mid, 2 long
  PeakBand significance = PeakBand::below_1se;
  bool is_local_max = false;  // false when the window argmax fallback was used
};

// Biased (1/n) sample autocorrelation with Bartlett cumulative standard
// errors: se_tau = sqrt((1 + 2 sum_{j<tau} c_j^2)/n).
struct Autocorrelation {
  std::vector<double> c;   // lags 0..max_lag, c[0] = 1
  std::vector<double> se;  // se[0] = 0
};

Autocorrelation autocorrelation(std::span<const double> x, int max_lag);

// Largest local maximum of c inside each window (window argmax when no
// interior local maximum exists); ties break toward the smaller lag.
std::vector<AcfPeak> detect_peaks(const Autocorrelation& acf,
                                  std::span<const LagWindow> windows);

struct AcfAnalysis {
  Hemisphere hemisphere = Hemisphere::north;
  int cycle = 0;
  SeriesKind kind = SeriesKind::original;
  Autocorrelation acf;
  std::vector<AcfPeak> peaks;
};

struct SurveySkip {
  Hemisphere hemisphere;
  int cycle;
  SeriesKind kind;
  std::string reason;
};

// Per-kind survey summary over hemisphere-cycles.
struct KindSummary {
  SeriesKind kind = SeriesKind::original;
  int cases = 0;                // analyses that ran
  double share_above_2se = 0.0;  // short-window peak above the 2 se band
  double share_between = 0.0;    // short-window peak in (1 se, 2 se]
  double mean_significant_tau = 0.0;  // mean lag of above-2se short-window peaks
  int significant_count = 0;
};

struct AcfSurvey {
  std::vector<AcfAnalysis> analyses;  // ordered by (hemisphere, cycle, kind)
  std::vector<SurveySkip> skipped;
  std::vector<KindSummary> summaries;  // original, positive, negative
};

// Appends one hemisphere's per-cycle analyses (all three kinds). Segments
// shorter than max_lag + 2 are skipped with a recorded reason and excluded
// from the summary denominators.
void append_cycle_analyses(AcfSurvey& survey, const FluctuationSeries& fs,
                           const std::vector<CycleSegment>& segments,
                           int max_lag = kDefaultMaxLag);

// Fills survey.summaries from the accumulated analyses.
void summarize_survey(AcfSurvey& survey);

// Convenience wrapper over both hemispheres.
AcfSurvey cycle_acf_survey(const FluctuationSeries& north,
                           const FluctuationSeries& south,
                           const std::vector<CycleSegment>& north_segments,
                           const std::vector<CycleSegment>& south_segments,
                           int max_lag = kDefaultMaxLag);

// acf_<hemisphere>_<cycle>_<kind>.csv payload: lag,c,se
std::string acf_csv(const AcfAnalysis& analysis);

std::span<const double> kind_values(const FluctuationSeries& fs, SeriesKind kind);

}  // namespace sunfluct
