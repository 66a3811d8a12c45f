#include <doctest.h>

#include <cmath>

#include "sunfluct/error.hpp"
#include "sunfluct/harmonics.hpp"
#include "sunfluct/mathutil.hpp"
#include "sunfluct/synth.hpp"

using namespace sunfluct;

namespace {

AcfAnalysis make_analysis(Hemisphere hem, int cycle, SeriesKind kind, int tau_short,
                          PeakBand band_short, int tau_mid, PeakBand band_mid,
                          int tau_long, PeakBand band_long) {
  AcfAnalysis a;
  a.hemisphere = hem;
  a.cycle = cycle;
  a.kind = kind;
  a.peaks = {
      AcfPeak{tau_short, 0.5, 0, band_short, true},
      AcfPeak{tau_mid, 0.3, 1, band_mid, true},
      AcfPeak{tau_long, 0.25, 2, band_long, true},
  };
  return a;
}

std::vector<PeakPair> exact_pairs(double slope, const std::vector<int>& taus, int k) {
  std::vector<PeakPair> out;
  for (int t : taus) {
    PeakPair p;
    p.tau = t;
    p.tau_k = static_cast<int>(std::lround(slope * t));
    p.k = k;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("points exactly on tau_k = 2 tau fit perfectly") {
  const auto pairs = exact_pairs(2.0, {7, 8, 9, 10, 11, 12, 13}, 2);
  const RegressionFit fit = fit_regression(pairs);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(fit.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual_sd == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(fit.band_half_width(fit.x_mean) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("regression equivariance under scaling and shifts") {
  std::vector<PeakPair> pairs;
  const int taus[] = {7, 9, 10, 12, 13};
  const int tauks[] = {15, 17, 19, 24, 26};
  for (int i = 0; i < 5; ++i) {
    PeakPair p;
    p.tau = taus[i];
    p.tau_k = tauks[i];
    pairs.push_back(p);
  }
  const RegressionFit base = fit_regression(pairs);

  // both coordinates scaled by a > 0: slope and r unchanged
  std::vector<PeakPair> scaled = pairs;
  for (auto& p : scaled) {
    p.tau *= 3;
    p.tau_k *= 3;
  }
  const RegressionFit s = fit_regression(scaled);
  CHECK(s.slope == doctest::Approx(base.slope).epsilon(1e-10));
  CHECK(s.r == doctest::Approx(base.r).epsilon(1e-10));

  // constant added to tau_k: slope and r unchanged, intercept shifts
  std::vector<PeakPair> shifted = pairs;
  for (auto& p : shifted) p.tau_k += 5;
  const RegressionFit sh = fit_regression(shifted);
  CHECK(sh.slope == doctest::Approx(base.slope).epsilon(1e-10));
  CHECK(sh.intercept == doctest::Approx(base.intercept + 5.0).epsilon(1e-10));
  CHECK(sh.r == doctest::Approx(base.r).epsilon(1e-10));
}

TEST_CASE("regression r agrees with the direct correlation formula") {
  std::vector<PeakPair> pairs;
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    PeakPair p;
    p.tau = 7 + static_cast<int>(rng.uniform01() * 6.999);
    p.tau_k = 2 * p.tau + static_cast<int>(rng.uniform01() * 3.0) - 1;
    pairs.push_back(p);
  }
  const RegressionFit fit = fit_regression(pairs);
  std::vector<double> xs, ys;
  for (const auto& p : pairs) {
    xs.push_back(p.tau);
    ys.push_back(p.tau_k);
  }
  CHECK(fit.r == doctest::Approx(pearson_r(xs, ys)).epsilon(1e-12));
}

TEST_CASE("regression needs three points and varying abscissae") {
  CHECK_THROWS_AS(fit_regression(exact_pairs(2.0, {7, 9}, 2)), error);
  CHECK_THROWS_AS(fit_regression(exact_pairs(2.0, {9, 9, 9}, 2)), error);
}

TEST_CASE("band widens away from the data mean") {
  std::vector<PeakPair> pairs = exact_pairs(2.0, {7, 8, 9, 10, 11, 12, 13}, 2);
  pairs[0].tau_k += 1;  // inject one residual so the band has width
  const RegressionFit fit = fit_regression(pairs);
  CHECK(fit.band_half_width(10.0) < fit.band_half_width(13.0));
  CHECK(fit.band_half_width(10.0) < fit.band_half_width(7.0));
  CHECK(fit.band_half_width(10.0) > 0.0);
}

TEST_CASE("collect_pairs honours the significance floor") {
  AcfSurvey survey;
  survey.analyses.push_back(make_analysis(Hemisphere::north, 12, SeriesKind::negative,
                                          10, PeakBand::above_2se, 19, PeakBand::above_2se,
                                          27, PeakBand::below_1se));
  survey.analyses.push_back(make_analysis(Hemisphere::north, 13, SeriesKind::negative,
                                          11, PeakBand::between_1se_2se, 17,
                                          PeakBand::between_1se_2se, 22,
                                          PeakBand::above_2se));
  survey.analyses.push_back(make_analysis(Hemisphere::south, 12, SeriesKind::negative,
                                          9, PeakBand::below_1se, 18, PeakBand::above_2se,
                                          21, PeakBand::above_2se));
  survey.analyses.push_back(make_analysis(Hemisphere::south, 13, SeriesKind::positive,
                                          10, PeakBand::above_2se, 20, PeakBand::above_2se,
                                          24, PeakBand::above_2se));

  SUBCASE("floor 1se keeps peaks at or above one standard error") {
    const PairCollection got = collect_pairs(survey, SeriesKind::negative, 2,
                                             PairFloor::at_least_1se);
    REQUIRE(got.pairs.size() == 2);
    CHECK(got.excluded == 1);
    CHECK(got.pairs[0].tau == 10);
    CHECK(got.pairs[0].tau_k == 19);
    CHECK(got.pairs[1].tau == 11);
    CHECK(got.pairs[1].tau_k == 17);
  }
  SUBCASE("floor 2se is stricter") {
    const PairCollection got = collect_pairs(survey, SeriesKind::negative, 2,
                                             PairFloor::at_least_2se);
    REQUIRE(got.pairs.size() == 1);
    CHECK(got.excluded == 2);
  }
  SUBCASE("no floor keeps every analysed case") {
    const PairCollection got =
        collect_pairs(survey, SeriesKind::negative, 2, PairFloor::none);
    CHECK(got.pairs.size() == 3);
    CHECK(got.excluded == 0);
  }
  SUBCASE("k = 3 pairs use the long window") {
    const PairCollection got =
        collect_pairs(survey, SeriesKind::negative, 3, PairFloor::at_least_1se);
    REQUIRE(got.pairs.size() == 1);
    CHECK(got.pairs[0].tau_k == 22);
  }
  SUBCASE("pair count conservation without a floor") {
    int negative_cases = 0;
    for (const auto& a : survey.analyses)
      if (a.kind == SeriesKind::negative) ++negative_cases;
    const PairCollection got =
        collect_pairs(survey, SeriesKind::negative, 2, PairFloor::none);
    CHECK(static_cast<int>(got.pairs.size()) == negative_cases);
  }
}

TEST_CASE("method agreement recovers injected periods across cycles") {
  // five synthetic "cycles" with different injected periods
  const double periods[] = {8.0, 9.0, 10.0, 11.0, 12.0};
  FluctuationSeries fs;
  fs.hemisphere = Hemisphere::north;
  std::vector<CycleSegment> segments;
  std::vector<WaveletAnalysis> wavelets;
  std::size_t offset = 0;
  for (int c = 0; c < 5; ++c) {
    SynthSpec spec;
    spec.n = 140;
    spec.seed = 400 + static_cast<std::uint64_t>(c);
    spec.components = {Sinusoid{periods[c], 1.0, 0.0}, WhiteNoise{0.2}};
    const auto x = generate(spec);
    fs.values.insert(fs.values.end(), x.begin(), x.end());
    segments.push_back({12 + c, offset, offset + x.size()});
    offset += x.size();
  }
  fs.positive_part.resize(fs.values.size());
  fs.negative_part.resize(fs.values.size());
  for (std::size_t i = 0; i < fs.values.size(); ++i) {
    fs.positive_part[i] = fs.values[i] > 0.0 ? fs.values[i] : 0.0;
    fs.negative_part[i] = fs.values[i] > 0.0 ? 0.0 : fs.values[i];
  }

  AcfSurvey survey;
  append_cycle_analyses(survey, fs, segments, 27);
  summarize_survey(survey);

  for (const auto& seg : segments) {
    for (const SeriesKind kind :
         {SeriesKind::original, SeriesKind::positive, SeriesKind::negative}) {
      const auto x = kind_values(fs, kind).subspan(seg.begin, seg.end - seg.begin);
      WaveletAnalysis wa = morlet_cwt(x, WaveletParams{});
      wa.hemisphere = fs.hemisphere;
      wa.cycle = seg.cycle;
      wa.kind = kind;
      significance_mask(wa, Background::white, 0.95);
      global_spectrum(wa);
      wavelets.push_back(std::move(wa));
    }
  }

  const auto agreements = method_agreement(survey, wavelets);
  REQUIRE(agreements.size() == 3);
  for (const auto& a : agreements) {
    CHECK(a.n_matched == 5);
    REQUIRE(a.pearson.has_value());
    CHECK(*a.pearson >= 0.95);
    REQUIRE(a.within_1_fraction.has_value());
    CHECK(*a.within_1_fraction == 1.0);
  }
}

TEST_CASE("method agreement with no matches reports absent statistics") {
  AcfSurvey survey;  // empty
  const auto agreements = method_agreement(survey, {});
  for (const auto& a : agreements) {
    CHECK(a.n_matched == 0);
    CHECK_FALSE(a.pearson.has_value());
    CHECK_FALSE(a.within_1_fraction.has_value());
  }
}

TEST_CASE("harmonics csv carries pairs and band samples") {
  const auto pairs = exact_pairs(2.0, {7, 9, 11, 13}, 2);
  PairCollection pc;
  pc.pairs = pairs;
  const RegressionFit fit = fit_regression(pairs);
  const std::string csv = harmonics_csv(pc, &fit, kShortWindow);
  CHECK(csv.rfind("record,", 0) == 0);
  CHECK(csv.find("\npair,") != std::string::npos);
  CHECK(csv.find("\nband,") != std::string::npos);

  PairCollection empty;
  const std::string empty_csv = harmonics_csv(empty, nullptr, kShortWindow);
  CHECK(empty_csv.find('\n') == empty_csv.size() - 1);  // header only
}
