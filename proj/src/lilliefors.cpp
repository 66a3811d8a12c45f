#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"
#include "sunfluct/mathutil.hpp"
#include "sunfluct/stats.hpp"
#include "sunfluct/synth.hpp"

namespace sunfluct {

namespace {

#include "lilliefors_table_data.inc"

double interp_linear(double x, double x0, double x1, double y0, double y1) {
  if (x1 == x0) return y0;
  const double t = (x - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

}  // namespace

const LillieforsTable& LillieforsTable::embedded() {
  static const LillieforsTable table = [] {
    LillieforsTable t;
    t.n_grid.assign(std::begin(kLillieforsNGrid), std::end(kLillieforsNGrid));
    t.levels.assign(std::begin(kLillieforsLevels), std::end(kLillieforsLevels));
    t.quantiles.resize(t.n_grid.size());
    for (std::size_t i = 0; i < t.n_grid.size(); ++i)
      t.quantiles[i].assign(std::begin(kLillieforsQuantiles[i]),
                            std::end(kLillieforsQuantiles[i]));
    return t;
  }();
  return table;
}

std::string LillieforsTable::to_csv() const {
  std::ostringstream out;
  out << "n";
  for (double lv : levels) out << ",q" << format_double(lv);
  out << '\n';
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    out << n_grid[i];
    for (double q : quantiles[i]) out << ',' << format_double(q);
    out << '\n';
  }
  return out.str();
}

LillieforsTable LillieforsTable::from_csv(const std::string& text) {
  LillieforsTable t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto toks = split_char(line, ',');
    if (!have_header) {
      if (toks.empty() || toks[0] != "n")
        throw error(errc::malformed_line, "lilliefors table: bad header");
      for (std::size_t j = 1; j < toks.size(); ++j) {
        if (toks[j].empty() || toks[j][0] != 'q')
          throw error(errc::malformed_line, "lilliefors table: bad level column");
        t.levels.push_back(std::stod(toks[j].substr(1)));
      }
      have_header = true;
      continue;
    }
    if (toks.size() != t.levels.size() + 1)
      throw error(errc::malformed_line, "lilliefors table: row width mismatch");
    t.n_grid.push_back(std::stoi(toks[0]));
    std::vector<double> row;
    row.reserve(t.levels.size());
    for (std::size_t j = 1; j < toks.size(); ++j) row.push_back(std::stod(toks[j]));
    t.quantiles.push_back(std::move(row));
  }
  if (t.n_grid.empty()) throw error(errc::malformed_line, "lilliefors table: empty");
  return t;
}

namespace {

// Row of null quantiles at sample size n, interpolated in 1/sqrt(n) between
// grid rows; 1/sqrt(n) scaling beyond the largest gridded n.
std::vector<double> row_for_n(const LillieforsTable& t, std::size_t n) {
  const double nn = static_cast<double>(n);
  if (n <= static_cast<std::size_t>(t.n_grid.front())) return t.quantiles.front();
  if (n >= static_cast<std::size_t>(t.n_grid.back())) {
    std::vector<double> row = t.quantiles.back();
    const double scale = std::sqrt(static_cast<double>(t.n_grid.back()) / nn);
    for (double& q : row) q *= scale;
    return row;
  }
  std::size_t i = 0;
  while (static_cast<std::size_t>(t.n_grid[i + 1]) < n) ++i;
  const double u = 1.0 / std::sqrt(nn);
  const double u0 = 1.0 / std::sqrt(static_cast<double>(t.n_grid[i]));
  const double u1 = 1.0 / std::sqrt(static_cast<double>(t.n_grid[i + 1]));
  std::vector<double> row(t.levels.size());
  for (std::size_t j = 0; j < t.levels.size(); ++j)
    row[j] = interp_linear(u, u0, u1, t.quantiles[i][j], t.quantiles[i + 1][j]);
  return row;
}

}  // namespace

double LillieforsTable::critical_value(std::size_t n, double alpha) const {
  const double level = 1.0 - alpha;
  if (level < levels.front() || level > levels.back())
    throw error(errc::invalid_argument,
                "lilliefors alpha outside the calibrated range");
  const auto row = row_for_n(*this, n);
  std::size_t j = 0;
  while (levels[j + 1] < level) ++j;
  return interp_linear(level, levels[j], levels[j + 1], row[j], row[j + 1]);
}

double LillieforsTable::p_value(std::size_t n, double d) const {
  const auto row = row_for_n(*this, n);
  // piecewise-linear CDF through (0,0), (q_j, level_j), (1,1)
  if (d <= 0.0) return 1.0;
  if (d >= 1.0) return 0.0;
  double x0 = 0.0, y0 = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (d <= row[j]) return 1.0 - interp_linear(d, x0, row[j], y0, levels[j]);
    x0 = row[j];
    y0 = levels[j];
  }
  return 1.0 - interp_linear(d, x0, 1.0, y0, 1.0);
}

LillieforsTable generate_lilliefors_table(const std::vector<int>& n_grid,
                                          const std::vector<double>& levels,
                                          std::size_t replicates, std::uint64_t seed,
                                          unsigned threads) {
  if (n_grid.empty() || levels.empty() || replicates < 100)
    throw error(errc::invalid_argument, "lilliefors calibration: bad grid");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() < 5)
    throw error(errc::invalid_argument, "lilliefors calibration: n grid must be sorted, n >= 5");
  if (!std::is_sorted(levels.begin(), levels.end()))
    throw error(errc::invalid_argument, "lilliefors calibration: levels must be sorted");

  LillieforsTable table;
  table.n_grid = n_grid;
  table.levels = levels;
  table.quantiles.resize(n_grid.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t gi = next.fetch_add(1);
      if (gi >= n_grid.size()) return;
      const int n = n_grid[gi];
      // one private stream per grid entry: reduction order fixed by design
      Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (gi + 1)));
      std::vector<double> sample(n);
      std::vector<double> stats(replicates);
      for (std::size_t r = 0; r < replicates; ++r) {
        for (int i = 0; i < n; ++i) sample[i] = rng.normal();
        stats[r] = lilliefors_statistic(sample);
      }
      std::sort(stats.begin(), stats.end());
      std::vector<double> row(levels.size());
      for (std::size_t j = 0; j < levels.size(); ++j) {
        const double h = levels[j] * static_cast<double>(replicates - 1);
        const auto lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        row[j] = lo + 1 < replicates
                     ? stats[lo] + frac * (stats[lo + 1] - stats[lo])
                     : stats[replicates - 1];
      }
      table.quantiles[gi] = std::move(row);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return table;
}

}  // namespace sunfluct
