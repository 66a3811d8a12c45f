// sunfluct: sunspot-area fluctuation periodicity analysis.
//
// Verbs:
//   ingest            parse a daily area file into the canonical CSV
//   analyze           run the full pipeline and emit all tables
//   synth             generate a synthetic series from a spec
//   report            re-print the summary of a completed run
//   lilliefors-table  regenerate the Monte Carlo calibration table

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/pipeline.hpp"
#include "sunfluct/synth.hpp"

using namespace sunfluct;

namespace {

std::string default_data_dir() {
  const char* env = std::getenv("SUNFLUCT_DATA_DIR");
  return env != nullptr ? env : "data";
}

int cmd_ingest(const std::string& input, const std::string& output,
               const ColumnMap& map, const std::string& gap_policy) {
  ParseResult parsed = parse_daily_file(input, map);
  auto records = fill_gaps(parsed.records, parse_gap_policy(gap_policy));
  const std::string csv = to_canonical_csv(records);
  if (output.empty() || output == "-") {
    std::cout << csv;
  } else {
    write_file(output, csv);
  }
  std::cerr << "parsed " << parsed.records.size() << " records ("
            << parsed.header_lines << " header, " << parsed.missing_lines
            << " missing, " << parsed.blank_lines << " blank lines)\n";
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& output,
              const SynthSpec& flag_spec, bool have_flag_components) {
  SynthSpec spec = spec_path.empty() ? flag_spec : load_synth_spec(spec_path);
  if (!spec_path.empty() && have_flag_components)
    throw error(errc::bad_config, "give either --spec or component flags, not both");
  const auto values = generate(spec);
  std::ostringstream out;
  out << "rotation_index,date_mid,S,S_bar,F,F_plus,F_minus\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = values[i];
    out << i << ",," << ",," << format_double(f) << ','
        << format_double(f > 0.0 ? f : 0.0) << ',' << format_double(f > 0.0 ? 0.0 : f)
        << '\n';
  }
  if (output.empty() || output == "-")
    std::cout << out.str();
  else
    write_file(output, out.str());
  return 0;
}

int cmd_report(const std::string& dir) {
  const std::string path = dir + "/run_report.json";
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  std::cout << "run report from " << path << "\n";
  std::cout << "N north = " << j.value("n_north", 0) << ", N south = "
            << j.value("n_south", 0) << "\n";
  for (const auto& s : j["survey"]) {
    std::cout << "acf " << s["kind"].get<std::string>() << ": "
              << s["cases"].get<int>() << " cases, above 2se "
              << s["share_above_2se"].get<double>() << ", between "
              << s["share_between_1se_2se"].get<double>()
              << ", mean significant tau " << s["mean_significant_tau"].get<double>()
              << "\n";
  }
  for (const auto& r : j["regressions"]) {
    std::cout << "regression " << r["kind"].get<std::string>() << " k="
              << r["k"].get<int>() << ": n=" << r["n_points"].get<int>();
    if (r.contains("r")) std::cout << ", r=" << r["r"].get<double>();
    std::cout << "\n";
  }
  if (j.contains("ks_north_south")) {
    const auto& k = j["ks_north_south"];
    std::cout << "ks north vs south: D=" << k["statistic"].get<double>()
              << ", p=" << k["p_value"].get<double>() << "\n";
  }
  return 0;
}

int cmd_lilliefors_table(const std::string& out_csv, const std::string& out_inc,
                         std::size_t replicates, std::uint64_t seed, unsigned threads) {
  const std::vector<int> n_grid = {5,   6,   7,   8,   9,    10,   11,   12,  14,  16,
                                   18,  20,  25,  30,  35,   40,   50,   60,  75,  100,
                                   150, 200, 300, 400, 500,  750,  1000, 1500, 2000,
                                   3000, 5000};
  const std::vector<double> levels = {0.5,  0.6,   0.7,  0.75,  0.8,  0.85,
                                      0.9,  0.925, 0.95, 0.975, 0.99, 0.995};
  std::cerr << "calibrating " << n_grid.size() << " sample sizes x " << replicates
            << " replicates...\n";
  const LillieforsTable table =
      generate_lilliefors_table(n_grid, levels, replicates, seed, threads);
  if (!out_csv.empty()) {
    write_file(out_csv, table.to_csv());
    std::cerr << "wrote " << out_csv << "\n";
  }
  if (!out_inc.empty()) {
    std::ostringstream inc;
    inc << "// Monte Carlo null quantiles of the Lilliefors statistic.\n";
    inc << "// Generated by `sunfluct lilliefors-table --replicates " << replicates
        << " --seed " << seed << "`.\n";
    inc << "static const int kLillieforsNGrid[] = {";
    for (std::size_t i = 0; i < table.n_grid.size(); ++i)
      inc << (i ? ", " : "") << table.n_grid[i];
    inc << "};\n";
    inc << "static const double kLillieforsLevels[] = {";
    for (std::size_t i = 0; i < table.levels.size(); ++i)
      inc << (i ? ", " : "") << format_double(table.levels[i]);
    inc << "};\n";
    inc << "static const double kLillieforsQuantiles[][" << table.levels.size()
        << "] = {\n";
    for (const auto& row : table.quantiles) {
      inc << "    {";
      for (std::size_t j = 0; j < row.size(); ++j)
        inc << (j ? ", " : "") << format_double(row[j]);
      inc << "},\n";
    }
    inc << "};\n";
    write_file(out_inc, inc.str());
    std::cerr << "wrote " << out_inc << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sunspot-area fluctuation periodicity analysis"};
  app.require_subcommand(1);

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "parse a daily area file to canonical CSV");
  std::string in_path, out_path, gap_policy = "skip";
  ColumnMap map;
  ingest->add_option("input", in_path, "daily area file")->required();
  ingest->add_option("-o,--output", out_path, "output CSV ('-' for stdout)");
  ingest->add_option("--gap-policy", gap_policy, "skip|zero|error");
  ingest->add_option("--year-col", map.year_column);
  ingest->add_option("--month-col", map.month_column);
  ingest->add_option("--day-col", map.day_column);
  ingest->add_option("--north-col", map.north_column);
  ingest->add_option("--south-col", map.south_column);
  std::int64_t total_col = 3;
  ingest->add_option("--total-col", total_col, "-1 when the file has no total column");
  ingest->add_option("--missing-sentinel", map.missing_sentinel);

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "run the full analysis pipeline");
  RunConfig cfg;
  cfg.cycle_table_path = default_data_dir() + "/cycle_table.csv";
  std::string hemispheres = "both", edge_policy = "shrink", a_gap_policy = "skip";
  std::string background = "red", coi_policy = "all", input_format = "greenwich";
  std::string pair_floor = "1se";
  analyze->set_config("--config", "", "config file with long flag defaults");
  analyze->add_option("-i,--input", cfg.input_path, "daily area file");
  analyze->add_option("--input-format", input_format, "greenwich|canonical_csv");
  analyze->add_option("--cycle-table", cfg.cycle_table_path,
                      "cycle,start_date,end_date CSV");
  analyze->add_option("--hemisphere", hemispheres, "north|south|both");
  analyze->add_option("--edge-policy", edge_policy, "shrink|trim");
  analyze->add_option("--gap-policy", a_gap_policy, "skip|zero|error");
  analyze->add_option("--max-lag", cfg.max_lag);
  analyze->add_option("--epoch-jd", cfg.ephemeris.epoch_jd);
  analyze->add_option("--period-days", cfg.ephemeris.synodic_period_days);
  analyze->add_option("--omega0", cfg.wavelet.omega0);
  analyze->add_option("--s0", cfg.wavelet.s0);
  analyze->add_option("--dj", cfg.wavelet.dj);
  analyze->add_option("--jtot", cfg.wavelet.jtot);
  analyze->add_option("--background", background, "white|red");
  analyze->add_option("--coi-policy", coi_policy, "all|exclude_coi");
  analyze->add_option("--level", cfg.significance_level);
  analyze->add_option("--pair-floor", pair_floor, "none|1se|2se");
  analyze->add_option("-O,--output-dir", cfg.output_dir)->required();
  analyze->add_option("--seed", cfg.seed);
  analyze->add_flag("--fixture", cfg.fixture, "run on the bundled synthetic inputs");
  bool no_plots = false;
  analyze->add_flag("--no-plots", no_plots);
  analyze->add_option("--year-col", cfg.column_map.year_column);
  analyze->add_option("--month-col", cfg.column_map.month_column);
  analyze->add_option("--day-col", cfg.column_map.day_column);
  analyze->add_option("--north-col", cfg.column_map.north_column);
  analyze->add_option("--south-col", cfg.column_map.south_column);
  std::int64_t a_total_col = 3;
  analyze->add_option("--total-col", a_total_col);
  analyze->add_option("--missing-sentinel", cfg.column_map.missing_sentinel);

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate a synthetic series");
  std::string synth_spec_path, synth_out;
  SynthSpec flag_spec;
  flag_spec.n = 140;
  std::vector<std::vector<double>> sinusoids;
  std::vector<double> white_sigmas;
  std::vector<std::vector<double>> ar1s;
  std::vector<std::vector<double>> pulses;
  synth->add_option("--spec", synth_spec_path, "spec file");
  synth->add_option("-o,--output", synth_out);
  synth->add_option("--n", flag_spec.n);
  synth->add_option("--seed", flag_spec.seed);
  synth->add_option("--sinusoid", sinusoids, "period amplitude phase")
      ->expected(-1)->delimiter(',');
  synth->add_option("--white-noise", white_sigmas, "sigma");
  synth->add_option("--ar1", ar1s, "phi sigma")->expected(-1)->delimiter(',');
  synth->add_option("--pulse-train", pulses, "mean_spacing log_mu log_sigma")
      ->expected(-1)->delimiter(',');

  // ---- report ----
  auto* report = app.add_subcommand("report", "print the summary of a completed run");
  std::string report_dir;
  report->add_option("dir", report_dir, "output directory of a run")->required();

  // ---- lilliefors-table ----
  auto* lt = app.add_subcommand("lilliefors-table",
                                "regenerate the Lilliefors calibration table");
  std::string lt_csv = "data/lilliefors_critical.csv";
  std::string lt_inc;
  std::size_t lt_replicates = 100000;
  std::uint64_t lt_seed = 577215664;
  unsigned lt_threads = 0;
  lt->add_option("--out-csv", lt_csv);
  lt->add_option("--out-inc", lt_inc, "embedded table source to overwrite");
  lt->add_option("--replicates", lt_replicates);
  lt->add_option("--seed", lt_seed);
  lt->add_option("--threads", lt_threads, "0 = hardware concurrency");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ingest)) {
      if (total_col < 0)
        map.total_column.reset();
      else
        map.total_column = static_cast<std::size_t>(total_col);
      return cmd_ingest(in_path, out_path, map, gap_policy);
    }
    if (app.got_subcommand(analyze)) {
      if (a_total_col < 0)
        cfg.column_map.total_column.reset();
      else
        cfg.column_map.total_column = static_cast<std::size_t>(a_total_col);
      cfg.hemispheres = hemispheres == "north"
                            ? HemisphereSelection::north
                            : (hemispheres == "south" ? HemisphereSelection::south
                                                      : HemisphereSelection::both);
      if (hemispheres != "north" && hemispheres != "south" && hemispheres != "both")
        throw error(errc::bad_config, "bad --hemisphere: " + hemispheres);
      cfg.edge_policy = parse_edge_policy(edge_policy);
      cfg.gap_policy = parse_gap_policy(a_gap_policy);
      cfg.background = parse_background(background);
      if (coi_policy == "all")
        cfg.coi_policy = CoiPolicy::all;
      else if (coi_policy == "exclude_coi")
        cfg.coi_policy = CoiPolicy::exclude_coi;
      else
        throw error(errc::bad_config, "bad --coi-policy: " + coi_policy);
      if (input_format == "greenwich")
        cfg.input_format = InputFormat::greenwich;
      else if (input_format == "canonical_csv")
        cfg.input_format = InputFormat::canonical_csv;
      else
        throw error(errc::bad_config, "bad --input-format: " + input_format);
      if (pair_floor == "none")
        cfg.pair_floor = PairFloor::none;
      else if (pair_floor == "1se")
        cfg.pair_floor = PairFloor::at_least_1se;
      else if (pair_floor == "2se")
        cfg.pair_floor = PairFloor::at_least_2se;
      else
        throw error(errc::bad_config, "bad --pair-floor: " + pair_floor);
      cfg.emit_plots = !no_plots;
      const RunReport rr = run_pipeline(cfg);
      std::cout << rr.summary_text();
      return 0;
    }
    if (app.got_subcommand(synth)) {
      bool have_components = false;
      for (const auto& s : sinusoids) {
        if (s.size() != 3) throw error(errc::bad_config, "--sinusoid wants period,amplitude,phase");
        flag_spec.components.push_back(Sinusoid{s[0], s[1], s[2]});
        have_components = true;
      }
      for (double s : white_sigmas) {
        flag_spec.components.push_back(WhiteNoise{s});
        have_components = true;
      }
      for (const auto& a : ar1s) {
        if (a.size() != 2) throw error(errc::bad_config, "--ar1 wants phi,sigma");
        flag_spec.components.push_back(Ar1{a[0], a[1]});
        have_components = true;
      }
      for (const auto& p : pulses) {
        if (p.size() != 3)
          throw error(errc::bad_config, "--pulse-train wants mean_spacing,log_mu,log_sigma");
        flag_spec.components.push_back(PulseTrain{p[0], p[1], p[2]});
        have_components = true;
      }
      return cmd_synth(synth_spec_path, synth_out, flag_spec, have_components);
    }
    if (app.got_subcommand(report)) return cmd_report(report_dir);
    if (app.got_subcommand(lt))
      return cmd_lilliefors_table(lt_csv, lt_inc, lt_replicates, lt_seed, lt_threads);
  } catch (const error& e) {
    std::cerr << "error (" << errc_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
