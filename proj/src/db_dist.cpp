#include "dbsurv/db_dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbsurv {

namespace {

void check_time(int t, int lower, const char* what) {
  if (t < lower) {
    throw std::invalid_argument(std::string(what) + ": t must be >= " +
                                std::to_string(lower) + ", got " + std::to_string(t));
  }
}

}  // namespace

DbParam::DbParam(double beta) : beta_(beta), p_(std::exp(-beta)) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw std::invalid_argument("DbParam: beta must be finite and > 0");
  }
}

double survival(const DbParam& param, int t) {
  check_time(t, -1, "survival");
  const double q = std::exp(-param.beta() * (static_cast<double>(t) + 1.0));
  return (3.0 - 2.0 * q) * q * q;
}

double cdf(const DbParam& param, int t) {
  check_time(t, -1, "cdf");
  return 1.0 - survival(param, t);
}

double log_survival(const DbParam& param, int t) {
  check_time(t, -1, "log_survival");
  const double a = param.beta() * (static_cast<double>(t) + 1.0);
  return std::log(3.0 - 2.0 * std::exp(-a)) - 2.0 * a;
}

double pmf(const DbParam& param, int t) {
  check_time(t, 0, "pmf");
  const double beta = param.beta();
  const double p = param.p();
  const double pt = std::exp(-beta * static_cast<double>(t));
  const double om = -std::expm1(-beta);                           // 1 - p
  const double omt = -std::expm1(-beta * static_cast<double>(t)); // 1 - p^t
  const double bracket = (1.0 + 2.0 * p) * om + 2.0 * (1.0 + p + p * p) * omt;
  return pt * pt * om * bracket;
}

double log_pmf(const DbParam& param, int t) {
  check_time(t, 0, "log_pmf");
  const double beta = param.beta();
  const double p = param.p();
  const double om = -std::expm1(-beta);
  const double omt = -std::expm1(-beta * static_cast<double>(t));
  const double bracket = (1.0 + 2.0 * p) * om + 2.0 * (1.0 + p + p * p) * omt;
  return -2.0 * beta * static_cast<double>(t) + std::log(om) + std::log(bracket);
}

double hazard(const DbParam& param, int t) {
  check_time(t, 0, "hazard");
  const double p = param.p();
  const double pt = std::exp(-param.beta() * static_cast<double>(t));
  const double num = 2.0 * (p * p * p - 1.0) * pt - 3.0 * (p * p - 1.0);
  return num / (3.0 - 2.0 * pt);
}

double mean(const DbParam& param) {
  const double beta = param.beta();
  const double e1 = std::exp(-beta);
  const double e2 = std::exp(-2.0 * beta);
  const double one_minus_e2 = -std::expm1(-2.0 * beta);
  return e2 * (e2 + e1 + 3.0) / ((e2 + e1 + 1.0) * one_minus_e2);
}

double variance(const DbParam& param) {
  const double beta = param.beta();
  const double e1 = std::exp(-beta);
  const double e2 = std::exp(-2.0 * beta);
  const double e3 = std::exp(-3.0 * beta);
  const double e4 = std::exp(-4.0 * beta);
  const double one_minus_e2 = -std::expm1(-2.0 * beta);
  const double s = e2 + e1 + 1.0;
  return e2 * (3.0 * e4 + 4.0 * e3 - e2 + 4.0 * e1 + 3.0) /
         (s * s * one_minus_e2 * one_minus_e2);
}

namespace detail {

int db_quantile(const DbParam& param, double u) {
  // Invert S(t) = (3 - 2q) q^2 at q = exp(-beta (t+1)). g(q) = 3q^2 - 2q^3 is
  // strictly increasing on (0,1); solve g(q) = 1-u by safeguarded Newton, then
  // round to the smallest integer t with cdf(t) >= u.
  const double s = 1.0 - u;
  double lo = 0.0, hi = 1.0, q = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double g = (3.0 - 2.0 * q) * q * q - s;
    if (g > 0.0) {
      hi = q;
    } else {
      lo = q;
    }
    const double dg = 6.0 * q * (1.0 - q);
    double next = (dg > 0.0) ? q - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - q) < 1e-15 * (1.0 + q)) {
      q = next;
      break;
    }
    q = next;
  }
  double x = (q > 0.0) ? -std::log(q) / param.beta() - 1.0 : 0.0;
  int t = static_cast<int>(std::ceil(x));
  if (t < 0) t = 0;
  while (t > 0 && cdf(param, t - 1) >= u) --t;
  while (cdf(param, t) < u) ++t;
  return t;
}

}  // namespace detail

std::vector<int> sample(const DbParam& param, Rng& rng, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("sample: n must be >= 1");
  }
  std::vector<int> draws(n);
  for (std::size_t i = 0; i < n; ++i) {
    draws[i] = detail::db_quantile(param, rng.uniform_open());
  }
  return draws;
}

}  // namespace dbsurv
