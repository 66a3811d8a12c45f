#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sunfluct/acf.hpp"
#include "sunfluct/wavelet.hpp"

namespace sunfluct {

// A short-window peak lag paired with the k-th window peak lag of the same
// hemisphere-cycle analysis (k = 2 mid window, k = 3 long window).
struct PeakPair {
  Hemisphere hemisphere = Hemisphere::north;
  int cycle = 0;
  SeriesKind kind = SeriesKind::original;
  int tau = 0;    // short-window peak lag
  int tau_k = 0;  // k-window peak lag
  int k = 2;
};

// Both peaks must clear the floor to enter the regression.
enum class PairFloor { none, at_least_1se, at_least_2se };

struct PairCollection {
  std::vector<PeakPair> pairs;
  int excluded = 0;  // analyses whose peaks failed the floor
};

PairCollection collect_pairs(const AcfSurvey& survey, SeriesKind kind, int k,
                             PairFloor floor_rule = PairFloor::at_least_1se);

// Ordinary least squares of tau_k on tau with the t-based 95% confidence
// band for the mean response.
struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;  // Pearson correlation of the points
  int n_points = 0;
  double residual_sd = 0.0;  // sqrt(SSE / (n-2))
  double x_mean = 0.0;
  double sxx = 0.0;
  double t_crit = 0.0;  // t quantile at 97.5%, n-2 dof

  double predict(double x) const { return intercept + slope * x; }
  // 95% half-width for the mean response at abscissa x.
  double band_half_width(double x) const;
};

RegressionFit fit_regression(const std::vector<PeakPair>& pairs);

// Wavelet-vs-ACF agreement per kind: Pearson correlation over matched
// (acf short-window peak lag, wavelet global-spectrum peak period in the
// short window) and the share of matches within one rotation.
struct KindAgreement {
  SeriesKind kind = SeriesKind::original;
  int n_matched = 0;
  std::optional<double> pearson;           // absent when < 3 matched pairs
  std::optional<double> within_1_fraction; // absent when nothing matched
  std::vector<double> acf_lags;
  std::vector<double> wavelet_periods;
};

std::vector<KindAgreement> method_agreement(const AcfSurvey& survey,
                                            const std::vector<WaveletAnalysis>& wavelets,
                                            LagWindow window = kShortWindow);

// harmonics_<kind>_k<k>.csv payload: pairs, fitted line and band samples.
std::string harmonics_csv(const PairCollection& pairs, const RegressionFit* fit,
                          LagWindow tau_window);

}  // namespace sunfluct
