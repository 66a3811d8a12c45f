#include "sunfluct/wavelet.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/fft.hpp"
#include "sunfluct/mathutil.hpp"

namespace sunfluct {

void WaveletParams::validate() const {
  if (omega0 < 4.0)
    throw error(errc::bad_config, "morlet omega0 < 4 is not admissible here");
  if (dt <= 0.0 || s0 <= 0.0 || dj <= 0.0)
    throw error(errc::bad_config, "wavelet dt, s0, dj must be positive");
}

Background parse_background(const std::string& s) {
  if (s == "white") return Background::white;
  if (s == "red") return Background::red_lag1;
  throw error(errc::bad_config, "unknown background: '" + s + "' (white|red)");
}

double morlet_fourier_factor(double omega0) {
  return 4.0 * M_PI / (omega0 + std::sqrt(2.0 + omega0 * omega0));
}

WaveletAnalysis morlet_cwt(std::span<const double> x, const WaveletParams& params_in) {
  WaveletParams params = params_in;
  params.validate();
  const std::size_t n = x.size();
  if (n < 16) throw error(errc::series_too_short, "wavelet needs n >= 16");

  WaveletAnalysis wa;
  wa.n = n;
  wa.params = params;

  const double xbar = mean(x);
  double var = 0.0;
  for (double v : x) var += (v - xbar) * (v - xbar);
  var /= static_cast<double>(n);
  if (!(var > 0.0)) throw error(errc::constant_series, "wavelet of constant series");
  wa.variance = var;

  {  // lag-1 autocorrelation for the red background
    double num = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      num += (x[i] - xbar) * (x[i + 1] - xbar);
    wa.lag1 = num / (var * static_cast<double>(n));
  }

  const double ff = morlet_fourier_factor(params.omega0);
  if (params.jtot < 0) {
    // largest period ~ n dt / 2
    const double smax = n * params.dt / (2.0 * ff);
    params.jtot = 1 + static_cast<int>(std::floor(std::log2(smax / params.s0) / params.dj));
    if (params.jtot < 1) params.jtot = 1;
    wa.params.jtot = params.jtot;
  }

  wa.scales.resize(params.jtot);
  wa.periods.resize(params.jtot);
  for (int j = 0; j < params.jtot; ++j) {
    wa.scales[j] = params.s0 * std::pow(2.0, j * params.dj);
    wa.periods[j] = ff * wa.scales[j];
  }

  // zero-padded, demeaned series
  const std::size_t n2 = next_pow2(n);
  std::vector<std::complex<double>> spectrum(n2, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) spectrum[i] = x[i] - xbar;
  fft(spectrum, false);

  std::vector<double> omega(n2);
  const double domega = 2.0 * M_PI / (static_cast<double>(n2) * params.dt);
  for (std::size_t k = 0; k < n2; ++k) {
    omega[k] = (2 * k <= n2 ? static_cast<double>(k)
                            : static_cast<double>(k) - static_cast<double>(n2)) *
               domega;
  }

  const double norm_front = std::pow(M_PI, -0.25);
  wa.power.assign(params.jtot, std::vector<double>(n, 0.0));
  std::vector<std::complex<double>> row(n2);
  for (int j = 0; j < params.jtot; ++j) {
    const double s = wa.scales[j];
    const double daughter_norm = std::sqrt(2.0 * M_PI * s / params.dt) * norm_front;
    for (std::size_t k = 0; k < n2; ++k) {
      if (omega[k] > 0.0) {
        const double arg = s * omega[k] - params.omega0;
        const double e = -0.5 * arg * arg;
        row[k] = spectrum[k] * (e > -700.0 ? daughter_norm * std::exp(e) : 0.0);
      } else {
        row[k] = 0.0;
      }
    }
    fft(row, true);
    auto& pj = wa.power[j];
    for (std::size_t i = 0; i < n; ++i) pj[i] = std::norm(row[i]) / var;
  }

  // cone of influence: e-folding time sqrt(2) s, expressed as a period
  wa.coi.resize(n);
  const double coi_slope = ff / std::sqrt(2.0) * params.dt;
  for (std::size_t i = 0; i < n; ++i) {
    const double edge = static_cast<double>(std::min(i, n - 1 - i));
    wa.coi[i] = coi_slope * edge;
  }

  wa.significant.assign(params.jtot, std::vector<std::uint8_t>(n, 0));
  return wa;
}

void significance_mask(WaveletAnalysis& wa, Background background, double level) {
  if (level <= 0.0 || level >= 1.0)
    throw error(errc::bad_config, "significance level must lie in (0,1)");
  const double chi2_half = chi2_ppf_2dof(level) / 2.0;
  const double alpha =
      background == Background::white ? 0.0 : std::clamp(wa.lag1, 0.0, 0.99);

  const std::size_t jtot = wa.scales.size();
  wa.significant.assign(jtot, std::vector<std::uint8_t>(wa.n, 0));
  for (std::size_t j = 0; j < jtot; ++j) {
    // normalized AR(1) spectrum at the Fourier frequency of this scale
    const double freq = wa.params.dt / wa.periods[j];  // cycles per sample
    const double pk = (1.0 - alpha * alpha) /
                      (1.0 + alpha * alpha - 2.0 * alpha * std::cos(2.0 * M_PI * freq));
    const double threshold = pk * chi2_half;
    auto& sig = wa.significant[j];
    const auto& pow_row = wa.power[j];
    for (std::size_t i = 0; i < wa.n; ++i) sig[i] = pow_row[i] > threshold ? 1 : 0;
  }
}

void global_spectrum(WaveletAnalysis& wa, CoiPolicy policy) {
  const std::size_t jtot = wa.scales.size();
  wa.global_spectrum.assign(jtot, 0.0);
  wa.global_counts.assign(jtot, 0);
  for (std::size_t j = 0; j < jtot; ++j) {
    double acc = 0.0;
    long cnt = 0;
    for (std::size_t i = 0; i < wa.n; ++i) {
      if (policy == CoiPolicy::exclude_coi && wa.periods[j] > wa.coi[i]) continue;
      acc += wa.power[j][i];
      ++cnt;
    }
    wa.global_counts[j] = cnt;
    wa.global_spectrum[j] = cnt > 0 ? acc / cnt : 0.0;
  }

  wa.global_peaks.clear();
  const auto& g = wa.global_spectrum;
  for (std::size_t j = 0; j < jtot; ++j) {
    const bool left_ok = j == 0 || g[j] > g[j - 1];
    const bool right_ok = j + 1 == jtot || g[j] > g[j + 1];
    const bool interior = j > 0 && j + 1 < jtot;
    if (interior && left_ok && right_ok && g[j] > 0.0)
      wa.global_peaks.push_back({wa.periods[j], g[j]});
  }
  std::sort(wa.global_peaks.begin(), wa.global_peaks.end(),
            [](const WaveletAnalysis::Peak& a, const WaveletAnalysis::Peak& b) {
              if (a.power != b.power) return a.power > b.power;
              return a.period < b.period;
            });
}

double global_peak_in_window(const WaveletAnalysis& wa, double lo, double hi) {
  for (const auto& p : wa.global_peaks) {
    if (p.period >= lo && p.period <= hi) return p.period;
  }
  // fallback: window argmax of the averaged curve
  double best_p = -1.0, best_v = -1.0;
  for (std::size_t j = 0; j < wa.periods.size(); ++j) {
    if (wa.periods[j] < lo || wa.periods[j] > hi) continue;
    if (wa.global_spectrum[j] > best_v) {
      best_v = wa.global_spectrum[j];
      best_p = wa.periods[j];
    }
  }
  return best_p;
}

std::string cwt_csv(const WaveletAnalysis& wa) {
  std::ostringstream out;
  out << "time_index,period,power,significant,in_coi\n";
  for (std::size_t j = 0; j < wa.scales.size(); ++j) {
    for (std::size_t i = 0; i < wa.n; ++i) {
      const bool in_coi = wa.periods[j] > wa.coi[i];
      out << i << ',' << format_double(wa.periods[j]) << ','
          << format_double(wa.power[j][i]) << ','
          << (wa.significant[j][i] ? 1 : 0) << ',' << (in_coi ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string gws_csv(const WaveletAnalysis& wa) {
  std::ostringstream out;
  out << "period,power\n";
  for (std::size_t j = 0; j < wa.scales.size(); ++j)
    out << format_double(wa.periods[j]) << ','
        << format_double(wa.global_spectrum[j]) << '\n';
  return out.str();
}

}  // namespace sunfluct
