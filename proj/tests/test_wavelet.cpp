#include <doctest.h>

#include <cmath>

#include "sunfluct/error.hpp"
#include "sunfluct/synth.hpp"
#include "sunfluct/wavelet.hpp"

using namespace sunfluct;

namespace {

std::vector<double> make_series(std::size_t n, std::uint64_t seed, double sine_amp,
                                double noise_sigma, double period = 10.0) {
  SynthSpec spec;
  spec.n = n;
  spec.seed = seed;
  if (sine_amp > 0.0) spec.components.push_back(Sinusoid{period, sine_amp, 0.0});
  if (noise_sigma > 0.0) spec.components.push_back(WhiteNoise{noise_sigma});
  return generate(spec);
}

}  // namespace

TEST_CASE("morlet fourier factor at omega0 = 6") {
  const double ff = morlet_fourier_factor(6.0);
  CHECK(ff == doctest::Approx(4.0 * M_PI / (6.0 + std::sqrt(38.0))).epsilon(1e-15));
  CHECK(ff == doctest::Approx(1.0330).epsilon(1e-4));
}

TEST_CASE("scale grid covers periods up to about n/2") {
  const auto x = make_series(140, 5, 1.0, 0.2);
  const WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
  CHECK(wa.periods.front() == doctest::Approx(2.0 * morlet_fourier_factor(6.0)));
  CHECK(wa.periods.back() <= 70.0 * 1.001);
  CHECK(wa.periods.back() > 45.0);
  for (std::size_t j = 1; j < wa.scales.size(); ++j)
    CHECK(wa.scales[j] / wa.scales[j - 1] == doctest::Approx(std::pow(2.0, 0.125)));
}

TEST_CASE("global spectrum of a period-10 sinusoid peaks inside [9.5, 10.5]") {
  const auto x = make_series(140, 9, 1.0, 0.0);
  WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
  global_spectrum(wa);
  std::size_t argmax = 0;
  for (std::size_t j = 1; j < wa.global_spectrum.size(); ++j)
    if (wa.global_spectrum[j] > wa.global_spectrum[argmax]) argmax = j;
  CHECK(wa.periods[argmax] >= 9.5);
  CHECK(wa.periods[argmax] <= 10.5);
  REQUIRE_FALSE(wa.global_peaks.empty());
  CHECK(wa.global_peaks[0].period == doctest::Approx(wa.periods[argmax]));
  CHECK(global_peak_in_window(wa, 7.0, 13.0) == doctest::Approx(wa.periods[argmax]));
}

TEST_CASE("white noise normalized power averages to one outside the coi") {
  double acc = 0.0;
  long count = 0;
  for (int r = 0; r < 100; ++r) {
    const auto x = make_series(140, 40000 + static_cast<std::uint64_t>(r), 0.0, 1.0);
    const WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
    for (std::size_t j = 0; j < wa.scales.size(); ++j) {
      for (std::size_t i = 0; i < wa.n; ++i) {
        if (wa.periods[j] > wa.coi[i]) continue;
        acc += wa.power[j][i];
        ++count;
      }
    }
  }
  CHECK(count > 0);
  CHECK(acc / static_cast<double>(count) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("white-noise significance false-positive rate is near 5 percent") {
  long hits = 0, total = 0;
  for (int r = 0; r < 100; ++r) {
    const auto x = make_series(140, 90000 + static_cast<std::uint64_t>(r), 0.0, 1.0);
    WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
    significance_mask(wa, Background::white, 0.95);
    for (std::size_t j = 0; j < wa.scales.size(); ++j) {
      for (std::size_t i = 0; i < wa.n; ++i) {
        if (wa.periods[j] > wa.coi[i]) continue;
        ++total;
        if (wa.significant[j][i]) ++hits;
      }
    }
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(total);
  CHECK(rate > 0.03);
  CHECK(rate < 0.07);
}

TEST_CASE("sinusoid plus weak noise shows a contiguous significant band at its period") {
  const auto x = make_series(140, 3, 1.0, 0.15);
  WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
  significance_mask(wa, Background::white, 0.95);
  // scale nearest period 10
  std::size_t j10 = 0;
  for (std::size_t j = 0; j < wa.periods.size(); ++j)
    if (std::fabs(wa.periods[j] - 10.0) < std::fabs(wa.periods[j10] - 10.0)) j10 = j;
  long sig = 0, tot = 0;
  for (std::size_t i = 0; i < wa.n; ++i) {
    if (wa.periods[j10] > wa.coi[i]) continue;
    ++tot;
    if (wa.significant[j10][i]) ++sig;
  }
  CHECK(tot > 0);
  CHECK(static_cast<double>(sig) / static_cast<double>(tot) > 0.9);
}

TEST_CASE("normalized power is invariant under amplitude scaling") {
  const auto x = make_series(140, 21, 1.0, 0.4);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 37.0 * x[i];
  const WaveletAnalysis wx = morlet_cwt(x, WaveletParams{});
  const WaveletAnalysis wy = morlet_cwt(y, WaveletParams{});
  for (std::size_t j = 0; j < wx.scales.size(); ++j) {
    for (std::size_t i = 0; i < wx.n; ++i) {
      CHECK(wy.power[j][i] ==
            doctest::Approx(wx.power[j][i]).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("circular shift moves power columns when no padding is involved") {
  // n = 128 is already a power of two, so the transform is exactly circular
  const auto x = make_series(128, 77, 1.0, 0.3);
  const std::size_t m = 37;
  std::vector<double> shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) shifted[(i + m) % x.size()] = x[i];
  const WaveletAnalysis wx = morlet_cwt(x, WaveletParams{});
  const WaveletAnalysis ws = morlet_cwt(shifted, WaveletParams{});
  for (std::size_t j = 0; j < wx.scales.size(); ++j) {
    for (std::size_t i = 0; i < wx.n; ++i) {
      CHECK(ws.power[j][(i + m) % wx.n] ==
            doctest::Approx(wx.power[j][i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("scale-integrated power reconstructs the variance of a smooth series") {
  // Torrence & Compo reconstruction factor for omega0 = 6
  const double c_delta = 0.776;
  const auto x = make_series(140, 11, 1.0, 0.0);
  const WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
  double acc = 0.0;
  for (std::size_t j = 0; j < wa.scales.size(); ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < wa.n; ++i) row += wa.power[j][i] * wa.variance;
    acc += row / wa.scales[j];
  }
  const double recon = acc * wa.params.dj * wa.params.dt /
                       (c_delta * static_cast<double>(wa.n));
  CHECK(recon == doctest::Approx(wa.variance).epsilon(0.15));
}

TEST_CASE("coi is zero at the endpoints and maximal at the center") {
  const auto x = make_series(140, 2, 1.0, 0.1);
  const WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
  CHECK(wa.coi.front() == 0.0);
  CHECK(wa.coi.back() == 0.0);
  const std::size_t mid = wa.n / 2;
  for (std::size_t i = 0; i < wa.n; ++i) CHECK(wa.coi[i] <= wa.coi[mid] + 1e-12);
  const double edge = static_cast<double>(std::min(mid, wa.n - 1 - mid));
  CHECK(wa.coi[mid] ==
        doctest::Approx(morlet_fourier_factor(6.0) / std::sqrt(2.0) * edge));
}

TEST_CASE("red background damps low-frequency false positives on ar1 noise") {
  long red_hits = 0, white_hits = 0;
  for (int r = 0; r < 40; ++r) {
    SynthSpec spec;
    spec.n = 140;
    spec.seed = 6000 + static_cast<std::uint64_t>(r);
    spec.components = {Ar1{0.7, 1.0}};
    const auto x = generate(spec);
    WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
    significance_mask(wa, Background::white, 0.95);
    for (std::size_t j = 0; j < wa.scales.size(); ++j)
      for (std::size_t i = 0; i < wa.n; ++i)
        if (wa.periods[j] <= wa.coi[i] && wa.significant[j][i]) ++white_hits;
    significance_mask(wa, Background::red_lag1, 0.95);
    for (std::size_t j = 0; j < wa.scales.size(); ++j)
      for (std::size_t i = 0; i < wa.n; ++i)
        if (wa.periods[j] <= wa.coi[i] && wa.significant[j][i]) ++red_hits;
  }
  CHECK(red_hits < white_hits / 2);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(morlet_cwt(std::vector<double>(50, 1.0), WaveletParams{}), error);
  CHECK_THROWS_AS(morlet_cwt(std::vector<double>{1.0, 2.0}, WaveletParams{}), error);
}

TEST_CASE("global spectrum coi exclusion drops large-scale points") {
  const auto x = make_series(140, 15, 1.0, 0.2);
  WaveletAnalysis all = morlet_cwt(x, WaveletParams{});
  global_spectrum(all, CoiPolicy::all);
  WaveletAnalysis excl = morlet_cwt(x, WaveletParams{});
  global_spectrum(excl, CoiPolicy::exclude_coi);
  CHECK(all.global_counts.front() == static_cast<long>(all.n));
  CHECK(excl.global_counts.back() < static_cast<long>(excl.n));
  CHECK(excl.global_counts.front() > excl.global_counts.back());
}
