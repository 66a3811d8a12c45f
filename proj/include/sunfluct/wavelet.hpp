#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sunfluct/acf.hpp"

namespace sunfluct {

// Morlet continuous wavelet transform after Torrence & Compo (1998):
// frequency-domain transform of the zero-padded series, scales
// s_j = s0 * 2^(j dj), period = fourier_factor * scale, power normalized by
// the series variance.
struct WaveletParams {
  double omega0 = 6.0;  // nondimensional frequency
  double dt = 1.0;      // sampling step, rotations
  double s0 = 2.0;      // smallest scale (defaults to 2 dt)
  double dj = 0.125;    // scale step, octave fraction
  int jtot = -1;        // scale count; -1 picks the count whose largest period ~ n dt / 2

  void validate() const;
};

enum class Background { white, red_lag1 };
enum class CoiPolicy { all, exclude_coi };

Background parse_background(const std::string& s);

double morlet_fourier_factor(double omega0);

struct WaveletAnalysis {
  Hemisphere hemisphere = Hemisphere::north;
  int cycle = 0;
  SeriesKind kind = SeriesKind::original;

  WaveletParams params;
  std::size_t n = 0;
  double variance = 0.0;  // population variance used for normalization
  double lag1 = 0.0;      // lag-1 autocorrelation of the series (red background)

  std::vector<double> scales;
  std::vector<double> periods;
  std::vector<std::vector<double>> power;       // [scale][time], |W|^2 / variance
  std::vector<std::vector<std::uint8_t>> significant;  // filled by significance_mask
  std::vector<double> coi;                      // per-time trustworthy period ceiling

  std::vector<double> global_spectrum;          // filled by global_spectrum()
  std::vector<long> global_counts;              // time points averaged per scale
  struct Peak {
    double period;
    double power;
  };
  std::vector<Peak> global_peaks;               // ranked by power, descending
};

WaveletAnalysis morlet_cwt(std::span<const double> x, const WaveletParams& params);

// Pointwise test of normalized power against the background spectrum times
// chi-square(2) quantile / 2. Red background uses the series' lag-1
// autocorrelation estimate.
void significance_mask(WaveletAnalysis& analysis, Background background,
                       double level = 0.95);

// Time-averaged power per scale; peaks are the local maxima of the averaged
// curve ranked by power.
void global_spectrum(WaveletAnalysis& analysis, CoiPolicy policy = CoiPolicy::all);

// Largest global-spectrum local maximum with period inside [lo, hi]
// (window argmax fallback); returns period <= 0 when the window is empty.
double global_peak_in_window(const WaveletAnalysis& analysis, double lo, double hi);

// cwt_<...>.csv payload: time_index,period,power,significant,in_coi
std::string cwt_csv(const WaveletAnalysis& analysis);
// gws_<...>.csv payload: period,power
std::string gws_csv(const WaveletAnalysis& analysis);

}  // namespace sunfluct
