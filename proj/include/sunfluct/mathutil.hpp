#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sunfluct {

double mean(std::span<const double> x);

// ddof = 0 population variance, ddof = 1 sample variance.
double variance(std::span<const double> x, int ddof = 1);

// Adjusted Fisher-Pearson skewness: g1 * sqrt(n(n-1))/(n-2).
double skewness_adjusted(std::span<const double> x);

// Standard normal CDF and upper tail.
double norm_cdf(double x);
double norm_sf(double x);

// Inverse standard normal CDF (Wichura, algorithm AS 241).
double norm_ppf(double p);

// Regularized incomplete beta I_x(a, b).
double incbeta(double a, double b, double x);

// Student-t quantile F^-1(p) with dof degrees of freedom.
double t_ppf(double p, int dof);

// Kolmogorov distribution survival function
// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

// Chi-square quantile with 2 degrees of freedom.
double chi2_ppf_2dof(double p);

// Pearson correlation of two equal-length samples.
double pearson_r(std::span<const double> x, std::span<const double> y);

}  // namespace sunfluct
