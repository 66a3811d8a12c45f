#include "sunfluct/mathutil.hpp"

#include <cmath>
#include <limits>

#include "sunfluct/error.hpp"

namespace sunfluct {

double mean(std::span<const double> x) {
  if (x.empty()) throw error(errc::sample_too_small, "mean of empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x, int ddof) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (n - ddof < 1) throw error(errc::sample_too_small, "variance needs n > ddof");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(n - ddof);
}

double skewness_adjusted(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) throw error(errc::sample_too_small, "skewness needs n >= 2");
  if (x.size() == 2) {
    // two distinct points are symmetric about their mean
    if (x[0] == x[1]) throw error(errc::degenerate_sample, "skewness of constant sample");
    return 0.0;
  }
  const double m = mean(x);
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) throw error(errc::degenerate_sample, "skewness of constant sample");
  const double g1 = m3 / std::pow(m2, 1.5);
  return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double norm_sf(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double norm_ppf(double p) {
  // AS 241 PPND16. Relative accuracy about 1e-16 over (0,1).
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -v : v;
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double incbeta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) break;
  }
  return h;
}

}  // namespace

double incbeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(lnfront);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incbeta_cf(a, b, x) / a;
  }
  return 1.0 - front * incbeta_cf(b, a, 1.0 - x) / b;
}

double t_ppf(double p, int dof) {
  if (dof < 1) throw error(errc::invalid_argument, "t_ppf: dof < 1");
  if (p <= 0.0 || p >= 1.0) throw error(errc::invalid_argument, "t_ppf: p outside (0,1)");
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;  // one-sided tail mass
  // Solve I_z(dof/2, 1/2) = 2*tail for z = dof/(dof+t^2) by bisection.
  const double target = 2.0 * tail;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (incbeta(dof / 2.0, 0.5, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double z = 0.5 * (lo + hi);
  const double t = std::sqrt(dof * (1.0 - z) / z);
  return upper ? t : -t;
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  const double q = 2.0 * s;
  return std::min(1.0, std::max(0.0, q));
}

double chi2_ppf_2dof(double p) {
  if (p <= 0.0 || p >= 1.0) throw error(errc::invalid_argument, "chi2_ppf_2dof: p outside (0,1)");
  return -2.0 * std::log1p(-p);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw error(errc::invalid_argument, "pearson_r: size mismatch or n < 2");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw error(errc::degenerate_sample, "pearson_r: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace sunfluct
