#include "sunfluct/acf.hpp"

#include <cmath>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/mathutil.hpp"

namespace sunfluct {

const char* series_kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::original: return "original";
    case SeriesKind::positive: return "positive";
    case SeriesKind::negative: return "negative";
  }
  return "unknown";
}

const char* peak_band_name(PeakBand b) {
  switch (b) {
    case PeakBand::above_2se: return "above_2se";
    case PeakBand::between_1se_2se: return "between_1se_2se";
    case PeakBand::below_1se: return "below_1se";
  }
  return "unknown";
}

std::span<const double> kind_values(const FluctuationSeries& fs, SeriesKind kind) {
  switch (kind) {
    case SeriesKind::original: return fs.values;
    case SeriesKind::positive: return fs.positive_part;
    case SeriesKind::negative: return fs.negative_part;
  }
  return fs.values;
}

Autocorrelation autocorrelation(std::span<const double> x, int max_lag) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (max_lag < 1) throw error(errc::invalid_argument, "max_lag must be >= 1");
  if (n < max_lag + 2)
    throw error(errc::series_too_short,
                "autocorrelation needs n >= max_lag + 2 (n=" + std::to_string(n) +
                    ", max_lag=" + std::to_string(max_lag) + ")");
  const double xbar = mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - xbar) * (v - xbar);
  if (!(denom > 0.0)) throw error(errc::constant_series, "autocorrelation of constant series");

  Autocorrelation out;
  out.c.resize(max_lag + 1);
  out.se.resize(max_lag + 1);
  out.c[0] = 1.0;
  out.se[0] = 0.0;
  for (int tau = 1; tau <= max_lag; ++tau) {
    double num = 0.0;
    for (std::ptrdiff_t i = 0; i + tau < n; ++i)
      num += (x[i] - xbar) * (x[i + tau] - xbar);
    out.c[tau] = num / denom;
  }
  double cum = 0.0;  // sum of c_j^2 for j < tau
  for (int tau = 1; tau <= max_lag; ++tau) {
    out.se[tau] = std::sqrt((1.0 + 2.0 * cum) / static_cast<double>(n));
    cum += out.c[tau] * out.c[tau];
  }
  return out;
}

std::vector<AcfPeak> detect_peaks(const Autocorrelation& acf,
                                  std::span<const LagWindow> windows) {
  const int max_lag = static_cast<int>(acf.c.size()) - 1;
  std::vector<AcfPeak> peaks;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const int lo = windows[w].lo;
    const int hi = std::min(windows[w].hi, max_lag);
    if (lo > hi || lo < 1) continue;

    int best_local = -1;
    int best_any = lo;
    for (int tau = lo; tau <= hi; ++tau) {
      if (acf.c[tau] > acf.c[best_any]) best_any = tau;
      const bool left_ok = tau - 1 >= 0 && acf.c[tau] > acf.c[tau - 1];
      const bool right_ok = tau + 1 <= max_lag && acf.c[tau] > acf.c[tau + 1];
      if (left_ok && right_ok) {
        if (best_local < 0 || acf.c[tau] > acf.c[best_local]) best_local = tau;
      }
    }
    AcfPeak peak;
    peak.window_index = static_cast<int>(w);
    peak.is_local_max = best_local >= 0;
    peak.lag = best_local >= 0 ? best_local : best_any;
    peak.value = acf.c[peak.lag];
    const double se = acf.se[peak.lag];
    if (peak.value > 2.0 * se)
      peak.significance = PeakBand::above_2se;
    else if (peak.value > se)
      peak.significance = PeakBand::between_1se_2se;
    else
      peak.significance = PeakBand::below_1se;
    peaks.push_back(peak);
  }
  return peaks;
}

namespace {

constexpr SeriesKind kKinds[] = {SeriesKind::original, SeriesKind::positive,
                                 SeriesKind::negative};
constexpr LagWindow kWindows[] = {kShortWindow, kMidWindow, kLongWindow};

}  // namespace

void append_cycle_analyses(AcfSurvey& survey, const FluctuationSeries& fs,
                           const std::vector<CycleSegment>& segments, int max_lag) {
  for (const auto& seg : segments) {
    for (const SeriesKind kind : kKinds) {
      const auto all = kind_values(fs, kind);
      const auto x = all.subspan(seg.begin, seg.end - seg.begin);
      if (static_cast<int>(x.size()) < max_lag + 2) {
        survey.skipped.push_back(
            {fs.hemisphere, seg.cycle, kind,
             "segment too short (" + std::to_string(x.size()) + ")"});
        continue;
      }
      try {
        AcfAnalysis a;
        a.hemisphere = fs.hemisphere;
        a.cycle = seg.cycle;
        a.kind = kind;
        a.acf = autocorrelation(x, max_lag);
        a.peaks = detect_peaks(a.acf, kWindows);
        survey.analyses.push_back(std::move(a));
      } catch (const error& e) {
        survey.skipped.push_back({fs.hemisphere, seg.cycle, kind, e.what()});
      }
    }
  }
}

void summarize_survey(AcfSurvey& survey) {
  survey.summaries.clear();
  for (const SeriesKind kind : kKinds) {
    KindSummary s;
    s.kind = kind;
    double tau_sum = 0.0;
    int above = 0, between = 0;
    for (const auto& a : survey.analyses) {
      if (a.kind != kind) continue;
      ++s.cases;
      const AcfPeak& peak = a.peaks[0];  // short window
      if (peak.significance == PeakBand::above_2se) {
        ++above;
        tau_sum += peak.lag;
      } else if (peak.significance == PeakBand::between_1se_2se) {
        ++between;
      }
    }
    s.significant_count = above;
    if (s.cases > 0) {
      s.share_above_2se = static_cast<double>(above) / s.cases;
      s.share_between = static_cast<double>(between) / s.cases;
    }
    s.mean_significant_tau = above > 0 ? tau_sum / above : 0.0;
    survey.summaries.push_back(s);
  }
}

AcfSurvey cycle_acf_survey(const FluctuationSeries& north,
                           const FluctuationSeries& south,
                           const std::vector<CycleSegment>& north_segments,
                           const std::vector<CycleSegment>& south_segments,
                           int max_lag) {
  AcfSurvey survey;
  append_cycle_analyses(survey, north, north_segments, max_lag);
  append_cycle_analyses(survey, south, south_segments, max_lag);
  summarize_survey(survey);
  return survey;
}

std::string acf_csv(const AcfAnalysis& analysis) {
  std::ostringstream out;
  out << "lag,c,se\n";
  for (std::size_t tau = 0; tau < analysis.acf.c.size(); ++tau)
    out << tau << ',' << format_double(analysis.acf.c[tau]) << ','
        << format_double(analysis.acf.se[tau]) << '\n';
  return out.str();
}

}  // namespace sunfluct
