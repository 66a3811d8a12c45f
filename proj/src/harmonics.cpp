#include "sunfluct/harmonics.hpp"

#include <cmath>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/mathutil.hpp"

namespace sunfluct {

namespace {

bool clears_floor(const AcfPeak& peak, PairFloor rule) {
  switch (rule) {
    case PairFloor::none: return true;
    case PairFloor::at_least_1se: return peak.significance != PeakBand::below_1se;
    case PairFloor::at_least_2se: return peak.significance == PeakBand::above_2se;
  }
  return false;
}

}  // namespace

PairCollection collect_pairs(const AcfSurvey& survey, SeriesKind kind, int k,
                             PairFloor floor_rule) {
  if (k != 2 && k != 3) throw error(errc::invalid_argument, "pair order k must be 2 or 3");
  const int window_index = k - 1;  // 1 = mid, 2 = long
  PairCollection out;
  for (const auto& a : survey.analyses) {
    if (a.kind != kind) continue;
    const AcfPeak* short_peak = nullptr;
    const AcfPeak* k_peak = nullptr;
    for (const auto& p : a.peaks) {
      if (p.window_index == 0) short_peak = &p;
      if (p.window_index == window_index) k_peak = &p;
    }
    if (short_peak == nullptr || k_peak == nullptr) {
      ++out.excluded;
      continue;
    }
    if (!clears_floor(*short_peak, floor_rule) || !clears_floor(*k_peak, floor_rule)) {
      ++out.excluded;
      continue;
    }
    out.pairs.push_back(PeakPair{a.hemisphere, a.cycle, a.kind, short_peak->lag,
                                 k_peak->lag, k});
  }
  return out;
}

double RegressionFit::band_half_width(double x) const {
  if (n_points < 3) return 0.0;
  const double dx = x - x_mean;
  return t_crit * residual_sd *
         std::sqrt(1.0 / n_points + (sxx > 0.0 ? dx * dx / sxx : 0.0));
}

RegressionFit fit_regression(const std::vector<PeakPair>& pairs) {
  const int n = static_cast<int>(pairs.size());
  if (n < 3) throw error(errc::sample_too_small, "regression needs at least 3 points");

  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = pairs[i].tau;
    ys[i] = pairs[i].tau_k;
  }
  const double mx = mean(xs), my = mean(ys);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0))
    throw error(errc::degenerate_abscissae, "regression abscissae are all equal");

  RegressionFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  fit.x_mean = mx;
  fit.sxx = sxx;
  double sse = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += e * e;
  }
  fit.residual_sd = std::sqrt(std::max(0.0, sse) / (n - 2));
  fit.t_crit = t_ppf(0.975, n - 2);
  return fit;
}

std::vector<KindAgreement> method_agreement(const AcfSurvey& survey,
                                            const std::vector<WaveletAnalysis>& wavelets,
                                            LagWindow window) {
  std::vector<KindAgreement> out;
  for (const SeriesKind kind :
       {SeriesKind::original, SeriesKind::positive, SeriesKind::negative}) {
    KindAgreement agr;
    agr.kind = kind;
    for (const auto& a : survey.analyses) {
      if (a.kind != kind) continue;
      const AcfPeak* short_peak = nullptr;
      for (const auto& p : a.peaks)
        if (p.window_index == 0) short_peak = &p;
      if (short_peak == nullptr) continue;
      const WaveletAnalysis* wa = nullptr;
      for (const auto& w : wavelets) {
        if (w.hemisphere == a.hemisphere && w.cycle == a.cycle && w.kind == kind) {
          wa = &w;
          break;
        }
      }
      if (wa == nullptr) continue;
      const double wp = global_peak_in_window(*wa, window.lo, window.hi);
      if (wp <= 0.0) continue;
      agr.acf_lags.push_back(short_peak->lag);
      agr.wavelet_periods.push_back(wp);
    }
    agr.n_matched = static_cast<int>(agr.acf_lags.size());
    if (agr.n_matched >= 3) {
      try {
        agr.pearson = pearson_r(agr.acf_lags, agr.wavelet_periods);
      } catch (const error&) {
        // constant lags across cycles: correlation undefined, left absent
      }
    }
    if (agr.n_matched > 0) {
      int close = 0;
      for (int i = 0; i < agr.n_matched; ++i)
        if (std::fabs(agr.acf_lags[i] - agr.wavelet_periods[i]) <= 1.0) ++close;
      agr.within_1_fraction = static_cast<double>(close) / agr.n_matched;
    }
    out.push_back(std::move(agr));
  }
  return out;
}

std::string harmonics_csv(const PairCollection& pairs, const RegressionFit* fit,
                          LagWindow tau_window) {
  std::ostringstream out;
  out << "record,hemisphere,cycle,kind,k,tau,tau_k,fit_line,band_low,band_high\n";
  for (const auto& p : pairs.pairs) {
    out << "pair," << hemisphere_name(p.hemisphere) << ',' << p.cycle << ','
        << series_kind_name(p.kind) << ',' << p.k << ',' << p.tau << ',' << p.tau_k
        << ",,,\n";
  }
  if (fit != nullptr) {
    for (double x = tau_window.lo; x <= tau_window.hi + 1e-9; x += 0.25) {
      const double y = fit->predict(x);
      const double h = fit->band_half_width(x);
      out << "band,,,,," << format_double(x) << ",," << format_double(y) << ','
          << format_double(y - h) << ',' << format_double(y + h) << '\n';
    }
  }
  return out.str();
}

}  // namespace sunfluct
