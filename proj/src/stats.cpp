#include "sunfluct/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sunfluct/error.hpp"
#include "sunfluct/mathutil.hpp"

namespace sunfluct {

const char* test_name_str(TestName t) {
  switch (t) {
    case TestName::lilliefors: return "lilliefors";
    case TestName::shapiro_wilk: return "shapiro_wilk";
    case TestName::ks_two_sample: return "ks_two_sample";
  }
  return "unknown";
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  // type-7 (linear interpolation between order statistics)
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

int freedman_diaconis_bins(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw error(errc::sample_too_small, "bin rule needs n >= 2");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double range = sorted.back() - sorted.front();
  const double h = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  int bins;
  if (h <= 0.0 || range <= 0.0) {
    bins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  } else {
    bins = static_cast<int>(std::ceil(range / h));
  }
  return std::clamp(bins, 2, 512);
}

HistogramFit histogram_gauss_fit(std::span<const double> values, int bin_count) {
  if (values.empty()) throw error(errc::sample_too_small, "histogram of empty sample");
  if (bin_count < 2) throw error(errc::invalid_argument, "bin_count must be >= 2");
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  const double mn = *mn_it, mx = *mx_it;
  if (!(mx > mn)) throw error(errc::degenerate_sample, "all sample values equal");

  HistogramFit fit;
  fit.bin_edges.resize(bin_count + 1);
  const double width = (mx - mn) / bin_count;
  for (int i = 0; i <= bin_count; ++i) fit.bin_edges[i] = mn + width * i;
  fit.bin_edges.back() = mx;

  fit.counts.assign(bin_count, 0);
  for (double v : values) {
    auto idx = static_cast<std::ptrdiff_t>((v - mn) / width);
    idx = std::clamp<std::ptrdiff_t>(idx, 0, bin_count - 1);
    ++fit.counts[idx];
  }

  fit.gauss_mu = mean(values);
  fit.gauss_sigma = std::sqrt(variance(values, 1));
  fit.skewness = skewness_adjusted(values);
  return fit;
}

// ---- Lilliefors ----

double lilliefors_statistic(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 5) throw error(errc::sample_too_small, "lilliefors needs n >= 5");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double mu = mean(sorted);
  const double sd = std::sqrt(variance(sorted, 1));
  if (!(sd > 0.0)) throw error(errc::degenerate_sample, "constant sample");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = norm_cdf((sorted[i] - mu) / sd);
    const double above = static_cast<double>(i + 1) / n - cdf;
    const double below = cdf - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

TestResult lilliefors_test(std::span<const double> values, double alpha,
                           const LillieforsTable& table) {
  TestResult r;
  r.test = TestName::lilliefors;
  r.alpha = alpha;
  r.statistic = lilliefors_statistic(values);
  r.p_value = table.p_value(values.size(), r.statistic);
  r.critical_value = table.critical_value(values.size(), alpha);
  r.reject = r.statistic > r.critical_value;
  r.reject_at_05 = r.statistic > table.critical_value(values.size(), 0.05);
  return r;
}

// ---- Shapiro-Wilk, AS R94 (Royston 1995), uncensored samples ----

namespace {

double poly(const double* c, int nord, double x) {
  double p = c[nord - 1];
  for (int i = nord - 2; i >= 0; --i) p = p * x + c[i];
  return p;
}

struct SwOutcome {
  double w;
  double p;
};

SwOutcome shapiro_wilk_impl(std::vector<double> x) {
  static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
  static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
  static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static const double c6[3] = {-0.4803, -0.082676, 0.0030302};
  static const double g[2] = {-2.273, 0.459};
  static const double sqrth = 0.70710678118654752440;
  static const double pi6 = 1.90985931710274403;   // 6/pi
  static const double stqr = 1.04719755119659775;  // asin(sqrt(3/4))

  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  std::sort(x.begin(), x.end());
  if (!(x.back() - x.front() > 0.0))
    throw error(errc::degenerate_sample, "shapiro-wilk: zero sample range");

  const std::size_t n2 = n / 2;
  std::vector<double> a(n2);
  if (n == 3) {
    a[0] = sqrth;
  } else {
    // expected normal order statistics (Blom scores), lower half
    const double an25 = an + 0.25;
    double summ2 = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      a[i] = norm_ppf((static_cast<double>(i + 1) - 0.375) / an25);
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - a[0] / ssumm2;
    std::size_t i1;
    double fac;
    if (n > 5) {
      i1 = 2;
      const double a2 = -a[1] / ssumm2 + poly(c2, 6, rsn);
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[0] = a1;
      a[1] = a2;
    } else {
      i1 = 1;
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
      a[0] = a1;
    }
    for (std::size_t i = i1; i < n2; ++i) a[i] = -a[i] / fac;
  }

  // W as the squared correlation between the data and the antisymmetric
  // coefficient vector; w1 = 1 - W computed directly to keep precision
  // when W is close to 1.
  const double range = x.back() - x.front();
  double sa = 0.0, sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (i < j)
      sa -= a[i];
    else if (i > j)
      sa += a[j];
    sx += x[i] / range;
  }
  sa /= an;
  sx /= an;
  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    double asa;
    if (i < j)
      asa = -a[i] - sa;
    else if (i > j)
      asa = a[j] - sa;
    else
      asa = -sa;
    const double xsx = x[i] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  if (n == 3) {
    const double p = std::clamp(pi6 * (std::asin(std::sqrt(std::clamp(w, 0.0, 1.0))) - stqr),
                                0.0, 1.0);
    return {w, p};
  }

  const double y = std::log(w1);
  const double xx = std::log(an);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(g, 2, an);
    if (y >= gamma) return {w, 1e-99};
    const double yy = -std::log(gamma - y);
    m = poly(c3, 4, an);
    s = std::exp(poly(c4, 4, an));
    return {w, norm_sf((yy - m) / s)};
  }
  m = poly(c5, 4, xx);
  s = std::exp(poly(c6, 3, xx));
  return {w, norm_sf((y - m) / s)};
}

}  // namespace

TestResult shapiro_wilk_test(std::span<const double> values, double alpha) {
  const std::size_t n = values.size();
  if (n < 3) throw error(errc::sample_too_small, "shapiro-wilk needs n >= 3");
  if (n > 5000) throw error(errc::sample_too_large, "shapiro-wilk valid up to n = 5000");
  const auto out = shapiro_wilk_impl(std::vector<double>(values.begin(), values.end()));
  TestResult r;
  r.test = TestName::shapiro_wilk;
  r.statistic = out.w;
  r.p_value = out.p;
  r.alpha = alpha;
  r.reject = out.p < alpha;
  r.reject_at_05 = out.p < 0.05;
  r.critical_value = 0.0;
  return r;
}

// ---- Two-sample Kolmogorov-Smirnov ----

std::int64_t ks_statistic_lattice(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw error(errc::sample_too_small, "ks_two_sample needs non-empty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const auto na = static_cast<std::int64_t>(sa.size());
  const auto nb = static_cast<std::int64_t>(sb.size());
  std::int64_t ia = 0, ib = 0, best = 0;
  while (ia < na || ib < nb) {
    const double v = (ib >= nb || (ia < na && sa[ia] <= sb[ib])) ? sa[ia] : sb[ib];
    while (ia < na && sa[ia] == v) ++ia;
    while (ib < nb && sb[ib] == v) ++ib;
    best = std::max<std::int64_t>(best, std::llabs(ia * nb - ib * na));
  }
  return best;
}

double ks_exact_p(std::span<const double> a, std::span<const double> b) {
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  const std::int64_t d_obs = ks_statistic_lattice(a, b);
  if (d_obs == 0) return 1.0;

  // Pooled distinct values with multiplicities; labels are then assigned by
  // a uniformly random split, which is the conditional null given ties.
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  std::sort(pool.begin(), pool.end());
  std::vector<std::int64_t> block_sizes;
  for (std::size_t i = 0; i < pool.size();) {
    std::size_t j = i;
    while (j < pool.size() && pool[j] == pool[i]) ++j;
    block_sizes.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }

  const std::int64_t n = na + nb;
  // Pascal triangle in long double; n <= ~200 on the exact path.
  std::vector<std::vector<long double>> choose(n + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    choose[i].assign(i + 1, 1.0L);
    for (std::int64_t k = 1; k < i; ++k)
      choose[i][k] = choose[i - 1][k - 1] + choose[i - 1][k];
  }

  // ways[i] = number of label assignments of the processed blocks using i
  // a-labels, with every block-boundary ECDF gap strictly below d_obs.
  std::vector<long double> ways(na + 1, 0.0L);
  ways[0] = 1.0L;
  std::int64_t processed = 0;
  for (const std::int64_t s : block_sizes) {
    std::vector<long double> next(na + 1, 0.0L);
    const std::int64_t lo_prev = std::max<std::int64_t>(0, processed - nb);
    const std::int64_t hi_prev = std::min(processed, na);
    for (std::int64_t i = lo_prev; i <= hi_prev; ++i) {
      if (ways[i] == 0.0L) continue;
      const std::int64_t kmax = std::min(s, na - i);
      for (std::int64_t k = 0; k <= kmax; ++k) {
        if (processed + s - (i + k) > nb) continue;  // not enough b-labels
        next[i + k] += ways[i] * choose[s][k];
      }
    }
    processed += s;
    for (std::int64_t i = 0; i <= na; ++i) {
      if (next[i] == 0.0L) continue;
      const std::int64_t ca = i, cb = processed - i;
      if (std::llabs(ca * nb - cb * na) >= d_obs) next[i] = 0.0L;
    }
    ways = std::move(next);
  }
  const long double p_below = ways[na] / choose[n][na];
  const double p = static_cast<double>(1.0L - p_below);
  return std::clamp(p, 0.0, 1.0);
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double alpha) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const std::int64_t d_int = ks_statistic_lattice(a, b);
  const double d = static_cast<double>(d_int) / (na * nb);

  TestResult r;
  r.test = TestName::ks_two_sample;
  r.statistic = d;
  r.alpha = alpha;
  if (na * nb <= 10000.0) {
    r.p_value = ks_exact_p(a, b);
  } else {
    const double ne = na * nb / (na + nb);
    r.p_value = kolmogorov_sf(std::sqrt(ne) * d);
  }
  r.reject = r.p_value < alpha;
  r.reject_at_05 = r.p_value < 0.05;
  r.critical_value = 0.0;
  return r;
}

}  // namespace sunfluct
