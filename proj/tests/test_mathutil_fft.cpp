#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "sunfluct/error.hpp"
#include "sunfluct/fft.hpp"
#include "sunfluct/mathutil.hpp"

using namespace sunfluct;

TEST_CASE("normal quantiles match reference values") {
  // reference: scipy.stats.norm.ppf
  CHECK(norm_ppf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(norm_ppf(0.975) == doctest::Approx(1.959963984540).epsilon(1e-10));
  CHECK(norm_ppf(0.999) == doctest::Approx(3.090232306168).epsilon(1e-10));
  CHECK(norm_ppf(1e-6) == doctest::Approx(-4.753424308823).epsilon(1e-10));
  for (double p : {0.001, 0.1, 0.3, 0.7, 0.95, 0.9999}) {
    CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
  CHECK(norm_sf(1.0) + norm_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("student t quantiles match reference values") {
  // reference: scipy.stats.t.ppf(0.975, df)
  CHECK(t_ppf(0.975, 3) == doctest::Approx(3.1824463053).epsilon(1e-8));
  CHECK(t_ppf(0.975, 10) == doctest::Approx(2.2281388520).epsilon(1e-8));
  CHECK(t_ppf(0.975, 21) == doctest::Approx(2.0796138447).epsilon(1e-8));
  CHECK(t_ppf(0.975, 100) == doctest::Approx(1.9839715184).epsilon(1e-8));
  CHECK(t_ppf(0.025, 10) == doctest::Approx(-2.2281388520).epsilon(1e-8));
  CHECK(t_ppf(0.5, 7) == 0.0);
}

TEST_CASE("kolmogorov survival function") {
  // reference: scipy.stats.kstwobign.sf(1.0)
  CHECK(kolmogorov_sf(1.0) == doctest::Approx(0.269999671677).epsilon(1e-9));
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(5.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi-square quantile with two dof") {
  CHECK(chi2_ppf_2dof(0.95) == doctest::Approx(5.991464547107979).epsilon(1e-12));
  CHECK(chi2_ppf_2dof(0.5) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("moments") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(x) == 2.5);
  CHECK(variance(x, 1) == doctest::Approx(5.0 / 3.0));
  CHECK(variance(x, 0) == doctest::Approx(1.25));

  const std::vector<double> sym{-1.0, 1.0};
  CHECK(skewness_adjusted(sym) == 0.0);

  const std::vector<double> right{0.0, 0.0, 0.0, 10.0};
  CHECK(skewness_adjusted(right) > 0.0);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{2, 4, 6, 8, 10};
  CHECK(pearson_r(x, y) == doctest::Approx(1.0));
  for (auto& v : y) v = -v;
  CHECK(pearson_r(x, y) == doctest::Approx(-1.0));
}

TEST_CASE("incomplete beta against symmetric identities") {
  CHECK(incbeta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(incbeta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  for (double x : {0.1, 0.4, 0.8}) {
    CHECK(incbeta(2.5, 1.5, x) + incbeta(1.5, 2.5, 1.0 - x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

namespace {

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                            bool inverse) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * M_PI * static_cast<double>(k * j) / n;
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches the direct dft") {
  std::vector<std::complex<double>> x(64);
  std::uint64_t state = 12345;
  for (auto& v : x) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double re = static_cast<double>(state >> 40) / (1 << 24) - 0.5;
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double im = static_cast<double>(state >> 40) / (1 << 24) - 0.5;
    v = {re, im};
  }
  const auto expected = naive_dft(x, false);
  auto got = x;
  fft(got, false);
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(got[k].real() == doctest::Approx(expected[k].real()).epsilon(1e-9));
    CHECK(got[k].imag() == doctest::Approx(expected[k].imag()).epsilon(1e-9));
  }
  fft(got, true);  // round trip
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(got[k].real() == doctest::Approx(x[k].real()).epsilon(1e-10));
    CHECK(got[k].imag() == doctest::Approx(x[k].imag()).epsilon(1e-10));
  }
}

TEST_CASE("fft rejects non power-of-two lengths") {
  std::vector<std::complex<double>> x(12);
  CHECK_THROWS_AS(fft(x, false), error);
}

TEST_CASE("next_pow2") {
  CHECK(next_pow2(1) == 1);
  CHECK(next_pow2(128) == 128);
  CHECK(next_pow2(129) == 256);
  CHECK(next_pow2(140) == 256);
}
