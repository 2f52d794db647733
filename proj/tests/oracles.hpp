#ifndef DBSURV_TESTS_ORACLES_HPP_
#define DBSURV_TESTS_ORACLES_HPP_

// Test-only reference implementations, kept independent of the library paths
// they check.

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// pmf written exactly as the two-term closed form 2(p^3-1)p^{3t} - 3(p^2-1)p^{2t}.
inline double db_pmf_two_term(double beta, int t) {
  const double p3t = std::exp(-3.0 * beta * t);
  const double p2t = std::exp(-2.0 * beta * t);
  const double p = std::exp(-beta);
  return 2.0 * (p * p * p - 1.0) * p3t - 3.0 * (p * p - 1.0) * p2t;
}

inline double db_survival(double beta, int t) {
  const double q = std::exp(-beta * (t + 1.0));
  return (3.0 - 2.0 * q) * q * q;
}

// Truncated-series moments; T* chosen so the tail mass is < 1e-14.
struct SeriesMoments {
  double mean;
  double variance;
};

inline SeriesMoments db_series_moments(double beta) {
  SeriesMoments m{0.0, 0.0};
  double second = 0.0;
  int t = 0;
  while (db_survival(beta, t) >= 1e-14 || t < 4) {
    const double f = db_pmf_two_term(beta, t);
    m.mean += t * f;
    second += static_cast<double>(t) * t * f;
    ++t;
  }
  // a few tail terms beyond the cut
  for (int k = 0; k < 64; ++k, ++t) {
    const double f = db_pmf_two_term(beta, t);
    m.mean += t * f;
    second += static_cast<double>(t) * t * f;
  }
  m.variance = second - m.mean * m.mean;
  return m;
}

// Central finite differences.
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double fd_second_derivative(const std::function<double(double)>& f, double x,
                                   double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace oracles

#endif  // DBSURV_TESTS_ORACLES_HPP_
