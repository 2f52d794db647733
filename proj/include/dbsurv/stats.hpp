#ifndef DBSURV_STATS_HPP_
#define DBSURV_STATS_HPP_

#include <cstddef>

namespace dbsurv {

// Standard normal cdf Phi(x).
double normal_cdf(double x);

// Standard normal quantile Phi^{-1}(p), p in (0,1). Accurate to ~1e-15
// (rational approximation refined by one Halley step on erfc).
double normal_quantile(double p);

// log density of Gamma(shape, rate) at x > 0.
double log_gamma_pdf(double x, double shape, double rate);

// log density of Beta(a, b) at x in (0,1).
double log_beta_pdf(double x, double a, double b);

// Asymptotic Kolmogorov tail probability P(sqrt(n) * D_n > sqrt(n) * d),
// i.e. the K-S p-value 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 n d^2),
// truncated at 100 terms and clamped to [0, 1].
double ks_asymptotic_p_value(double d, std::size_t n);

}  // namespace dbsurv

#endif  // DBSURV_STATS_HPP_
