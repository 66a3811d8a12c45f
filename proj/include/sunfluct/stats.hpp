#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sunfluct {

struct HistogramFit {
  std::vector<double> bin_edges;  // size counts.size() + 1
  std::vector<long> counts;
  double gauss_mu = 0.0;
  double gauss_sigma = 0.0;
  double skewness = 0.0;
};

enum class TestName { lilliefors, shapiro_wilk, ks_two_sample };

const char* test_name_str(TestName t);

struct TestResult {
  TestName test = TestName::lilliefors;
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;       // at the requested alpha
  bool reject_at_05 = false;
  double critical_value = 0.0;  // threshold at the requested alpha where tabulated, else 0
};

// Equal-width bins spanning [min, max]; Gaussian fitted by sample moments.
HistogramFit histogram_gauss_fit(std::span<const double> values, int bin_count);

// Freedman-Diaconis rule, clamped to [2, 512]; falls back to ceil(sqrt(n))
// when the IQR is degenerate.
int freedman_diaconis_bins(std::span<const double> values);

// ---- Lilliefors (Kolmogorov-Smirnov with estimated mean/sd) ----

// Null quantiles of the Lilliefors statistic, Monte Carlo calibrated on a
// grid of sample sizes. Interpolation is linear in 1/sqrt(n) between grid
// points and scales as 1/sqrt(n) beyond the largest gridded n.
struct LillieforsTable {
  std::vector<int> n_grid;
  std::vector<double> levels;                   // CDF levels, ascending
  std::vector<std::vector<double>> quantiles;   // [n_grid][levels]

  static const LillieforsTable& embedded();
  static LillieforsTable from_csv(const std::string& text);
  std::string to_csv() const;

  double critical_value(std::size_t n, double alpha) const;
  double p_value(std::size_t n, double d) const;
};

// sup |ECDF - Normal(mean, sd)| with both parameters estimated (sd uses the
// n-1 denominator, matching the calibration).
double lilliefors_statistic(std::span<const double> values);

TestResult lilliefors_test(std::span<const double> values, double alpha = 0.05,
                           const LillieforsTable& table = LillieforsTable::embedded());

// Monte Carlo calibration. Replicates are generated in seed-partitioned
// batches and reduced in a fixed order, so the result does not depend on the
// thread count.
LillieforsTable generate_lilliefors_table(const std::vector<int>& n_grid,
                                          const std::vector<double>& levels,
                                          std::size_t replicates, std::uint64_t seed,
                                          unsigned threads);

// ---- Shapiro-Wilk (Royston 1995, AS R94; uncensored, 3 <= n <= 5000) ----

TestResult shapiro_wilk_test(std::span<const double> values, double alpha = 0.05);

// ---- Two-sample Kolmogorov-Smirnov ----

// Exact p when n_a * n_b <= 10000 (conditional permutation distribution,
// valid with ties); asymptotic Kolmogorov otherwise with effective
// n = n_a n_b / (n_a + n_b).
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

// Observed statistic in lattice units of 1/(n_a*n_b); exact under ties.
std::int64_t ks_statistic_lattice(std::span<const double> a, std::span<const double> b);

// P(D >= d_obs) over all label assignments of the pooled multiset.
double ks_exact_p(std::span<const double> a, std::span<const double> b);

}  // namespace sunfluct
