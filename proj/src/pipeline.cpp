#include "sunfluct/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/mathutil.hpp"
#include "sunfluct/synth.hpp"

namespace sunfluct {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  if (!fixture && input_path.empty())
    throw error(errc::bad_config, "input path required (or --fixture)");
  if (!fixture && cycle_table_path.empty())
    throw error(errc::bad_config, "cycle table path required (or --fixture)");
  if (significance_level <= 0.0 || significance_level >= 1.0)
    throw error(errc::bad_config, "significance level must lie in (0,1)");
  if (max_lag < kLongWindow.hi)
    throw error(errc::bad_config, "max_lag must cover the long lag window");
  ephemeris.validate();
  wavelet.validate();
  column_map.validate();
}

namespace {

class OutputWriter {
 public:
  explicit OutputWriter(const std::string& dir) : dir_(dir) {
    fs::create_directories(dir_);
  }

  void write(const std::string& rel, std::string_view content) {
    const fs::path p = dir_ / rel;
    fs::create_directories(p.parent_path());
    write_file(p.string(), content);
    entries_.push_back({rel, content.size(), fnv1a64_hex(content)});
  }

  json manifest_files() const {
    json files = json::array();
    for (const auto& e : entries_) {
      files.push_back({{"path", e.path}, {"bytes", e.bytes}, {"fnv1a64", e.digest}});
    }
    return files;
  }

  void write_manifest(const std::string& status, const std::string& error_msg,
                      const json& config_echo) {
    json m;
    m["generated_at"] = now_iso();
    m["status"] = status;
    if (!error_msg.empty()) m["error"] = error_msg;
    m["config"] = config_echo;
    m["files"] = manifest_files();
    write_file((dir_ / "manifest.json").string(), m.dump(2) + "\n");
  }

 private:
  static std::string now_iso() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
  }

  struct Entry {
    std::string path;
    std::size_t bytes;
    std::string digest;
  };
  fs::path dir_;
  std::vector<Entry> entries_;
};

json config_echo(const RunConfig& c) {
  json j;
  j["input_path"] = c.input_path;
  j["input_format"] = c.input_format == InputFormat::greenwich ? "greenwich" : "canonical_csv";
  j["hemispheres"] = c.hemispheres == HemisphereSelection::both
                         ? "both"
                         : (c.hemispheres == HemisphereSelection::north ? "north" : "south");
  j["cycle_table_path"] = c.cycle_table_path;
  j["ephemeris"] = {{"epoch_jd", c.ephemeris.epoch_jd},
                    {"synodic_period_days", c.ephemeris.synodic_period_days}};
  j["gap_policy"] = c.gap_policy == GapPolicy::skip
                        ? "skip"
                        : (c.gap_policy == GapPolicy::zero ? "zero" : "error");
  j["edge_policy"] = c.edge_policy == EdgePolicy::shrink ? "shrink" : "trim";
  j["max_lag"] = c.max_lag;
  j["wavelet"] = {{"omega0", c.wavelet.omega0},
                  {"s0", c.wavelet.s0},
                  {"dj", c.wavelet.dj},
                  {"jtot", c.wavelet.jtot}};
  j["background"] = c.background == Background::white ? "white" : "red";
  j["coi_policy"] = c.coi_policy == CoiPolicy::all ? "all" : "exclude_coi";
  j["significance_level"] = c.significance_level;
  j["pair_floor"] = c.pair_floor == PairFloor::none
                        ? "none"
                        : (c.pair_floor == PairFloor::at_least_1se ? "1se" : "2se");
  j["seed"] = c.seed;
  j["fixture"] = c.fixture;
  return j;
}

json test_result_json(const TestResult& t) {
  json j;
  j["test"] = test_name_str(t.test);
  j["statistic"] = t.statistic;
  j["p_value"] = t.p_value;
  j["alpha"] = t.alpha;
  j["reject"] = t.reject;
  j["reject_at_05"] = t.reject_at_05;
  if (t.critical_value > 0.0) j["critical_value"] = t.critical_value;
  return j;
}

struct HemisphereArtifacts {
  FluctuationSeries fluct;
  std::vector<CycleSegment> segments;
  HistogramFit hist;
  TestResult lilliefors;
  TestResult shapiro;
};

HemisphereArtifacts analyze_hemisphere(const std::vector<DailyAreaRecord>& records,
                                       Hemisphere hem, const RunConfig& cfg,
                                       const CycleTable& table) {
  HemisphereArtifacts art;
  RotationSeries rot = rotation_means(records, hem, cfg.ephemeris, cfg.gap_policy);

  // keep only rotations whose mid-date the cycle table covers
  std::size_t lo = 0, hi = rot.size();
  while (lo < hi &&
         table.cycle_of(rotation_mid_date(rot.rotation_at(lo), cfg.ephemeris)) < 0)
    ++lo;
  while (hi > lo &&
         table.cycle_of(rotation_mid_date(rot.rotation_at(hi - 1), cfg.ephemeris)) < 0)
    --hi;
  if (lo > 0 || hi < rot.size()) {
    RotationSeries trimmed;
    trimmed.hemisphere = rot.hemisphere;
    trimmed.first_rotation = rot.first_rotation + static_cast<int>(lo);
    trimmed.mean_area.assign(rot.mean_area.begin() + lo, rot.mean_area.begin() + hi);
    trimmed.day_count.assign(rot.day_count.begin() + lo, rot.day_count.begin() + hi);
    rot = std::move(trimmed);
  }

  art.fluct = fluctuations(rot, cfg.edge_policy);
  art.segments =
      segment_cycles(art.fluct.first_rotation, art.fluct.size(), table, cfg.ephemeris);

  art.hist = histogram_gauss_fit(art.fluct.values,
                                 freedman_diaconis_bins(art.fluct.values));
  art.lilliefors = lilliefors_test(art.fluct.values, 0.05);
  art.shapiro = shapiro_wilk_test(art.fluct.values, 0.05);
  return art;
}

json distribution_json(const HemisphereArtifacts& art) {
  json j;
  j["hemisphere"] = hemisphere_name(art.fluct.hemisphere);
  j["n"] = art.fluct.size();
  j["histogram"] = {{"bin_edges", art.hist.bin_edges}, {"counts", art.hist.counts}};
  j["gauss_mu"] = art.hist.gauss_mu;
  j["gauss_sigma"] = art.hist.gauss_sigma;
  j["skewness"] = art.hist.skewness;
  j["tests"] = {test_result_json(art.lilliefors), test_result_json(art.shapiro)};
  return j;
}

std::string fig1a_csv(const HistogramFit& h, std::size_t n) {
  std::ostringstream out;
  out << "bin_center,count,gauss_count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double lo = h.bin_edges[i], hi = h.bin_edges[i + 1];
    const double center = 0.5 * (lo + hi);
    // Gaussian fit expressed in counts per bin
    const double z = (center - h.gauss_mu) / h.gauss_sigma;
    const double pdf = std::exp(-0.5 * z * z) / (h.gauss_sigma * std::sqrt(2.0 * M_PI));
    out << format_double(center) << ',' << h.counts[i] << ','
        << format_double(pdf * (hi - lo) * static_cast<double>(n)) << '\n';
  }
  return out.str();
}

std::string fig1b_csv(const AcfAnalysis& a) {
  std::ostringstream out;
  out << "lag,c,band_low,band_high\n";
  for (std::size_t tau = 0; tau < a.acf.c.size(); ++tau) {
    out << tau << ',' << format_double(a.acf.c[tau]) << ','
        << format_double(-2.0 * a.acf.se[tau]) << ','
        << format_double(2.0 * a.acf.se[tau]) << '\n';
  }
  return out.str();
}

json survey_json(const AcfSurvey& survey) {
  json j;
  json analyses = json::array();
  for (const auto& a : survey.analyses) {
    json peaks = json::array();
    for (const auto& p : a.peaks) {
      peaks.push_back({{"window", p.window_index},
                       {"lag", p.lag},
                       {"value", p.value},
                       {"significance", peak_band_name(p.significance)},
                       {"is_local_max", p.is_local_max}});
    }
    analyses.push_back({{"hemisphere", hemisphere_name(a.hemisphere)},
                        {"cycle", a.cycle},
                        {"kind", series_kind_name(a.kind)},
                        {"peaks", peaks}});
  }
  j["analyses"] = analyses;

  json skips = json::array();
  for (const auto& s : survey.skipped) {
    skips.push_back({{"hemisphere", hemisphere_name(s.hemisphere)},
                     {"cycle", s.cycle},
                     {"kind", series_kind_name(s.kind)},
                     {"reason", s.reason}});
  }
  j["skipped"] = skips;

  json summaries = json::array();
  for (const auto& s : survey.summaries) {
    summaries.push_back({{"kind", series_kind_name(s.kind)},
                         {"cases", s.cases},
                         {"share_above_2se", s.share_above_2se},
                         {"share_between_1se_2se", s.share_between},
                         {"mean_significant_tau", s.mean_significant_tau},
                         {"significant_count", s.significant_count}});
  }
  j["summaries"] = summaries;
  return j;
}

std::vector<double> dominant_periods(const AcfSurvey& survey, Hemisphere hem) {
  std::vector<double> out;
  for (const auto& a : survey.analyses) {
    if (a.hemisphere != hem || a.kind != SeriesKind::original) continue;
    out.push_back(a.peaks[0].lag);
  }
  return out;
}

}  // namespace

std::string RunReport::to_json() const {
  json j;
  j["n_north"] = n_north;
  j["n_south"] = n_south;
  json survey_j = json::array();
  for (const auto& s : survey) {
    survey_j.push_back({{"kind", series_kind_name(s.kind)},
                        {"cases", s.cases},
                        {"share_above_2se", s.share_above_2se},
                        {"share_between_1se_2se", s.share_between},
                        {"mean_significant_tau", s.mean_significant_tau}});
  }
  j["survey"] = survey_j;
  json regs = json::array();
  for (const auto& rgr : regressions) {
    json rj = {{"kind", series_kind_name(rgr.kind)},
               {"k", rgr.k},
               {"n_points", rgr.n_points},
               {"excluded", rgr.excluded}};
    if (rgr.r) rj["r"] = *rgr.r;
    if (rgr.slope) rj["slope"] = *rgr.slope;
    if (rgr.intercept) rj["intercept"] = *rgr.intercept;
    regs.push_back(rj);
  }
  j["regressions"] = regs;
  json agr = json::array();
  for (const auto& a : agreement) {
    json aj = {{"kind", series_kind_name(a.kind)}, {"n_matched", a.n_matched}};
    if (a.pearson) aj["pearson_r"] = *a.pearson;
    if (a.within_1_fraction) aj["within_1_rotation_fraction"] = *a.within_1_fraction;
    agr.push_back(aj);
  }
  j["method_agreement"] = agr;
  if (ks_north_south) j["ks_north_south"] = test_result_json(*ks_north_south);
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::string RunReport::summary_text() const {
  std::ostringstream out;
  out << "N north = " << n_north << ", N south = " << n_south << "\n";
  for (const auto& s : survey) {
    out << "acf " << series_kind_name(s.kind) << ": " << s.cases << " cases, "
        << "above 2se " << format_double(s.share_above_2se) << ", between "
        << format_double(s.share_between) << ", mean significant tau "
        << format_double(s.mean_significant_tau) << "\n";
  }
  for (const auto& rgr : regressions) {
    out << "regression " << series_kind_name(rgr.kind) << " k=" << rgr.k << ": n="
        << rgr.n_points;
    if (rgr.r) out << ", r=" << format_double(*rgr.r);
    out << "\n";
  }
  for (const auto& a : agreement) {
    out << "agreement " << series_kind_name(a.kind) << ": matched " << a.n_matched;
    if (a.pearson) out << ", r=" << format_double(*a.pearson);
    if (a.within_1_fraction)
      out << ", within 1 rot " << format_double(*a.within_1_fraction);
    out << "\n";
  }
  if (ks_north_south) {
    out << "ks north vs south: D=" << format_double(ks_north_south->statistic)
        << ", p=" << format_double(ks_north_south->p_value)
        << (ks_north_south->reject_at_05 ? " (reject)" : " (no reject)") << "\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

FixtureData build_fixture(std::uint64_t seed) {
  FixtureData fx;
  const CarringtonEphemeris eph;
  const int cycles = 4;
  const Date start{1878, 12, 1};
  for (int c = 0; c < cycles; ++c) {
    fx.table.entries.push_back(CycleSpan{12 + c,
                                         Date{start.year + 11 * c, start.month, start.day},
                                         Date{start.year + 11 * (c + 1), start.month, start.day}});
  }
  fx.table.validate();

  Rng noise_n(seed ^ 0xb5297a4dull);
  Rng noise_s(seed ^ 0x68e31da4ull);
  const double cycle_days = 11.0 * 365.25;

  Date d = fx.table.span_start();
  const Date end = fx.table.span_end();
  while (d < end) {
    const double t_days = static_cast<double>(d.jdn() - fx.table.span_start().jdn());
    const double phase = std::fmod(t_days, cycle_days) / cycle_days;
    const double envelope = 180.0 * std::sin(M_PI * phase) * std::sin(M_PI * phase);
    const double t_rot = t_days / eph.synodic_period_days;
    auto hemisphere_area = [&](Rng& rng, double mod_phase) {
      const double modulation = 1.0 + 0.6 * std::sin(2.0 * M_PI * t_rot / 10.0 + mod_phase);
      const double v = envelope * modulation * std::exp(0.35 * rng.normal());
      return std::max(0.0, v);
    };
    const double north = hemisphere_area(noise_n, 0.0);
    const double south = hemisphere_area(noise_s, 1.3);
    fx.records.push_back(DailyAreaRecord{d, north + south, north, south});
    d = d.next_day();
  }
  return fx;
}

RunReport run_pipeline(const RunConfig& config) {
  config.validate();
  OutputWriter writer(config.output_dir);
  const json cfg_json = config_echo(config);

  try {
    // ---- inputs ----
    std::vector<DailyAreaRecord> records;
    CycleTable table;
    if (config.fixture) {
      FixtureData fx = build_fixture(config.seed);
      records = std::move(fx.records);
      table = std::move(fx.table);
    } else {
      if (config.input_format == InputFormat::greenwich) {
        records = parse_daily_file(config.input_path, config.column_map).records;
      } else {
        std::ifstream in(config.input_path);
        if (!in) throw error(errc::io_failure, "cannot open: " + config.input_path);
        records = from_canonical_csv(in);
      }
      table = load_cycle_table(config.cycle_table_path);
    }
    if (config.gap_policy != GapPolicy::skip)
      records = fill_gaps(records, config.gap_policy);

    // restrict the daily data to the cycle table span
    {
      std::vector<DailyAreaRecord> kept;
      kept.reserve(records.size());
      for (const auto& r : records)
        if (!(r.date < table.span_start()) && r.date < table.span_end())
          kept.push_back(r);
      records = std::move(kept);
    }
    if (records.empty())
      throw error(errc::sample_too_small, "no daily records inside the cycle table span");

    writer.write("cycle_table_used.csv", cycle_table_to_csv(table));

    RunReport report;

    const bool want_north = config.hemispheres != HemisphereSelection::south;
    const bool want_south = config.hemispheres != HemisphereSelection::north;
    std::optional<HemisphereArtifacts> north, south;

    AcfSurvey survey;
    if (want_north) {
      north = analyze_hemisphere(records, Hemisphere::north, config, table);
      report.n_north = north->fluct.size();
      writer.write("fluctuations_north.csv", fluctuation_csv(north->fluct, config.ephemeris));
      writer.write("distribution_north.json", distribution_json(*north).dump(2) + "\n");
      append_cycle_analyses(survey, north->fluct, north->segments, config.max_lag);
    }
    if (want_south) {
      south = analyze_hemisphere(records, Hemisphere::south, config, table);
      report.n_south = south->fluct.size();
      writer.write("fluctuations_south.csv", fluctuation_csv(south->fluct, config.ephemeris));
      writer.write("distribution_south.json", distribution_json(*south).dump(2) + "\n");
      append_cycle_analyses(survey, south->fluct, south->segments, config.max_lag);
    }
    summarize_survey(survey);
    report.survey = survey.summaries;

    for (const auto& a : survey.analyses) {
      std::ostringstream name;
      name << "acf_" << hemisphere_name(a.hemisphere) << '_' << a.cycle << '_'
           << series_kind_name(a.kind) << ".csv";
      writer.write(name.str(), acf_csv(a));
    }
    writer.write("acf_summary.json", survey_json(survey).dump(2) + "\n");

    // ---- wavelet analyses ----
    std::vector<WaveletAnalysis> wavelets;
    auto run_wavelets = [&](const HemisphereArtifacts& art) {
      for (const auto& seg : art.segments) {
        for (const SeriesKind kind :
             {SeriesKind::original, SeriesKind::positive, SeriesKind::negative}) {
          const auto all = kind_values(art.fluct, kind);
          const auto x = all.subspan(seg.begin, seg.end - seg.begin);
          WaveletParams wp = config.wavelet;
          try {
            WaveletAnalysis wa = morlet_cwt(x, wp);
            wa.hemisphere = art.fluct.hemisphere;
            wa.cycle = seg.cycle;
            wa.kind = kind;
            significance_mask(wa, config.background, config.significance_level);
            global_spectrum(wa, config.coi_policy);
            wavelets.push_back(std::move(wa));
          } catch (const error& e) {
            report.notes.push_back(std::string("wavelet skipped: ") +
                                   hemisphere_name(art.fluct.hemisphere) + " cycle " +
                                   std::to_string(seg.cycle) + " " +
                                   series_kind_name(kind) + ": " + e.what());
          }
        }
      }
    };
    if (north) run_wavelets(*north);
    if (south) run_wavelets(*south);

    for (const auto& wa : wavelets) {
      std::ostringstream base;
      base << hemisphere_name(wa.hemisphere) << '_' << wa.cycle << '_'
           << series_kind_name(wa.kind);
      writer.write("cwt_" + base.str() + ".csv", cwt_csv(wa));
      writer.write("gws_" + base.str() + ".csv", gws_csv(wa));
    }

    // ---- harmonics ----
    for (const SeriesKind kind :
         {SeriesKind::original, SeriesKind::positive, SeriesKind::negative}) {
      for (const int k : {2, 3}) {
        const PairCollection pairs = collect_pairs(survey, kind, k, config.pair_floor);
        RegressionSummary rs;
        rs.kind = kind;
        rs.k = k;
        rs.n_points = static_cast<int>(pairs.pairs.size());
        rs.excluded = pairs.excluded;
        std::optional<RegressionFit> fit;
        if (pairs.pairs.size() >= 3) {
          try {
            fit = fit_regression(pairs.pairs);
            rs.r = fit->r;
            rs.slope = fit->slope;
            rs.intercept = fit->intercept;
          } catch (const error& e) {
            report.notes.push_back(std::string("regression skipped: ") +
                                   series_kind_name(kind) + " k=" + std::to_string(k) +
                                   ": " + e.what());
          }
        }
        std::ostringstream name;
        name << "harmonics_" << series_kind_name(kind) << "_k" << k << ".csv";
        writer.write(name.str(),
                     harmonics_csv(pairs, fit ? &*fit : nullptr, kShortWindow));
        report.regressions.push_back(rs);
      }
    }

    report.agreement = method_agreement(survey, wavelets, kShortWindow);
    {
      json aj = json::array();
      for (const auto& a : report.agreement) {
        json pairs = json::array();
        for (int i = 0; i < a.n_matched; ++i)
          pairs.push_back({{"acf_lag", a.acf_lags[i]},
                           {"wavelet_period", a.wavelet_periods[i]}});
        json item = {{"kind", series_kind_name(a.kind)},
                     {"n_matched", a.n_matched},
                     {"pairs", pairs}};
        if (a.pearson) item["pearson_r"] = *a.pearson;
        if (a.within_1_fraction) item["within_1_rotation_fraction"] = *a.within_1_fraction;
        aj.push_back(item);
      }
      writer.write("method_agreement.json", aj.dump(2) + "\n");
    }

    if (north && south) {
      const auto pn = dominant_periods(survey, Hemisphere::north);
      const auto ps = dominant_periods(survey, Hemisphere::south);
      if (!pn.empty() && !ps.empty())
        report.ks_north_south = ks_two_sample(pn, ps, 0.05);
    }

    // ---- plot-ready files ----
    if (config.emit_plots) {
      if (north) writer.write("plot/fig1a_north.csv", fig1a_csv(north->hist, north->fluct.size()));
      if (south) writer.write("plot/fig1a_south.csv", fig1a_csv(south->hist, south->fluct.size()));
      for (const auto& a : survey.analyses) {
        std::ostringstream name;
        name << "plot/fig1b_" << hemisphere_name(a.hemisphere) << '_' << a.cycle << '_'
             << series_kind_name(a.kind) << ".csv";
        writer.write(name.str(), fig1b_csv(a));
      }
      for (const SeriesKind kind : {SeriesKind::positive, SeriesKind::negative}) {
        std::ostringstream body;
        bool first = true;
        for (const int k : {2, 3}) {
          const PairCollection pairs = collect_pairs(survey, kind, k, config.pair_floor);
          std::optional<RegressionFit> fit;
          if (pairs.pairs.size() >= 3) {
            try {
              fit = fit_regression(pairs.pairs);
            } catch (const error&) {
            }
          }
          std::string csv = harmonics_csv(pairs, fit ? &*fit : nullptr, kShortWindow);
          if (!first) {  // strip the duplicate header
            csv.erase(0, csv.find('\n') + 1);
          }
          body << csv;
          first = false;
        }
        writer.write("plot/fig1cd_" + std::string(series_kind_name(kind)) + ".csv",
                     body.str());
      }
    }

    writer.write("run_report.json", report.to_json());
    writer.write_manifest("ok", "", cfg_json);
    return report;
  } catch (const std::exception& e) {
    writer.write_manifest("failed", e.what(), cfg_json);
    throw;
  }
}

}  // namespace sunfluct
