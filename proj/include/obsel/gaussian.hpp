#pragma once

#include <utility>

namespace obsel {

// Gaussian distribution of log10 of a positive quantity.
struct Gaussian10 {
  double mean10 = 0.0;
  double sd10 = 0.0;
};

// Standard-normal quantile (Wichura's AS241, relative accuracy ~1e-16).
// Requires 0 < p < 1.
double normal_quantile(double p);

// Standard-normal cumulative distribution function.
double normal_cdf(double x);

// E[10^X] for X ~ Gaussian10: 10^mean10 * exp((sd10 ln 10)^2 / 2).
double lognormal_mean(const Gaussian10& g);

// Central interval of 10^X holding the given coverage. Throws DomainError
// unless 0 < coverage < 1.
std::pair<double, double> central_interval(const Gaussian10& g, double coverage);

}  // namespace obsel
