#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sunfluct/acf.hpp"
#include "sunfluct/calendar.hpp"
#include "sunfluct/fluct.hpp"
#include "sunfluct/harmonics.hpp"
#include "sunfluct/ingest.hpp"
#include "sunfluct/stats.hpp"
#include "sunfluct/wavelet.hpp"

namespace sunfluct {

enum class InputFormat { greenwich, canonical_csv };
enum class HemisphereSelection { north, south, both };

struct RunConfig {
  std::string input_path;
  InputFormat input_format = InputFormat::greenwich;
  ColumnMap column_map;
  HemisphereSelection hemispheres = HemisphereSelection::both;
  std::string cycle_table_path;
  CarringtonEphemeris ephemeris;
  GapPolicy gap_policy = GapPolicy::skip;
  EdgePolicy edge_policy = EdgePolicy::shrink;
  int max_lag = kDefaultMaxLag;
  WaveletParams wavelet;
  Background background = Background::red_lag1;
  CoiPolicy coi_policy = CoiPolicy::all;
  double significance_level = 0.95;
  PairFloor pair_floor = PairFloor::at_least_1se;
  std::string output_dir = "out";
  std::uint64_t seed = 1878;
  bool fixture = false;      // run on the bundled synthetic inputs
  bool emit_plots = true;

  void validate() const;
};

struct RegressionSummary {
  SeriesKind kind;
  int k;
  int n_points;
  int excluded;
  std::optional<double> r;
  std::optional<double> slope;
  std::optional<double> intercept;
};

struct RunReport {
  std::size_t n_north = 0;
  std::size_t n_south = 0;
  std::vector<KindSummary> survey;
  std::vector<RegressionSummary> regressions;
  std::vector<KindAgreement> agreement;
  std::optional<TestResult> ks_north_south;
  std::vector<std::string> notes;
  std::string to_json() const;
  std::string summary_text() const;
};

// Synthetic two-hemisphere inputs for CI runs: an activity envelope over a
// few 11-year cycles carrying a 10-rotation modulation plus noise.
struct FixtureData {
  std::vector<DailyAreaRecord> records;
  CycleTable table;
};
FixtureData build_fixture(std::uint64_t seed);

// Runs ingest -> calendar -> fluct -> {stats, acf, wavelet} -> harmonics and
// writes every table under config.output_dir, ending with manifest.json.
RunReport run_pipeline(const RunConfig& config);

}  // namespace sunfluct
