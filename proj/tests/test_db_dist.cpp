#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dbsurv/db_dist.hpp"
#include "oracles.hpp"

using namespace dbsurv;

namespace {
const double kBetaGrid[] = {1e-4, 1e-3, 0.01, 0.05, 0.09085, 0.1, 0.2,
                            0.3,  0.5,  0.69314718055994531, 1.0, 1.5, 2.0,
                            3.0,  4.0,  5.0,  6.0, 7.0, 8.5, 10.0};
}

TEST_CASE("DbParam validates its domain") {
  CHECK_THROWS_AS(DbParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DbParam(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DbParam(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(DbParam(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  const DbParam param(0.25);
  CHECK(param.p() == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
}

TEST_CASE("pmf matches the two-term closed form and known values") {
  // p = 1/2 <=> beta = ln 2: f(0) = 2(1/8 - 1) - 3(1/4 - 1) = 1/2
  const DbParam half(std::numbers::ln2);
  CHECK(pmf(half, 0) == doctest::Approx(0.5).epsilon(1e-14));

  for (double beta : kBetaGrid) {
    const DbParam param(beta);
    for (int t : {0, 1, 2, 3, 5, 10, 20, 50, 100, 250, 500}) {
      CHECK(std::abs(pmf(param, t) - oracles::db_pmf_two_term(beta, t)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(pmf(half, -1), std::invalid_argument);
}

TEST_CASE("pmf normalizes: partial sum plus survival is 1") {
  for (double beta : kBetaGrid) {
    const DbParam param(beta);
    // any truncation point: several, including tiny ones
    for (int t_star : {0, 1, 7, 40}) {
      double total = 0.0;
      for (int t = 0; t <= t_star; ++t) total += pmf(param, t);
      total += survival(param, t_star);
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("pmf telescopes against survival") {
  for (double beta : kBetaGrid) {
    const DbParam param(beta);
    for (int t = 0; t <= 500; ++t) {
      const double lhs = pmf(param, t);
      const double rhs = survival(param, t - 1) - survival(param, t);
      CHECK(std::abs(lhs - rhs) < 1e-14);
    }
  }
}

TEST_CASE("cdf endpoints and monotonicity") {
  for (double beta : {0.05, 0.5, 2.0}) {
    const DbParam param(beta);
    CHECK(cdf(param, -1) == 0.0);
    CHECK(survival(param, -1) == 1.0);
    double prev = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double f = cdf(param, t);
      CHECK(f >= prev);
      CHECK(std::abs(f - (1.0 - survival(param, t))) == 0.0);
      prev = f;
    }
  }
  const DbParam half(std::numbers::ln2);
  CHECK(cdf(half, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(survival(half, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(DbParam(0.07), 500) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(cdf(half, -2), std::invalid_argument);
  CHECK_THROWS_AS(survival(half, -2), std::invalid_argument);
}

TEST_CASE("probabilities underflow to exact 0/1 and log forms stay finite") {
  const DbParam param(2.0);
  CHECK(survival(param, 500) == 0.0);
  CHECK(cdf(param, 500) == 1.0);
  CHECK(pmf(param, 500) == 0.0);
  CHECK(std::isfinite(log_survival(param, 500)));
  CHECK(std::isfinite(log_pmf(param, 500)));
  CHECK(log_survival(param, 500) == doctest::Approx(-2.0 * 2.0 * 501 + std::log(3.0))
                                        .epsilon(1e-12));
  // large beta sends survival at 0 toward zero
  CHECK(survival(DbParam(50.0), 0) < 1e-40);
}

TEST_CASE("log forms agree with logs of the plain forms") {
  for (double beta : {0.01, 0.1, 0.5, 2.0}) {
    const DbParam param(beta);
    for (int t : {0, 1, 5, 40, 120}) {
      CHECK(log_pmf(param, t) ==
            doctest::Approx(std::log(pmf(param, t))).epsilon(1e-12));
      CHECK(log_survival(param, t) ==
            doctest::Approx(std::log(survival(param, t))).epsilon(1e-12));
    }
  }
}

TEST_CASE("hazard: base case, value at p=1/2, range, monotonicity") {
  for (double beta : {0.05, 0.3, 1.0}) {
    const DbParam param(beta);
    CHECK(hazard(param, 0) == doctest::Approx(pmf(param, 0)).epsilon(1e-14));
  }
  CHECK(hazard(DbParam(std::numbers::ln2), 0) == doctest::Approx(0.5).epsilon(1e-14));

  for (double beta : {0.05, 0.1, 0.5, 1.0}) {
    const DbParam param(beta);
    double prev = 0.0;
    for (int t = 0; t <= 200; ++t) {
      const double h = hazard(param, t);
      CHECK(h > 0.0);
      CHECK(h <= 1.0);
      CHECK(h >= prev - 1e-15);
      prev = h;
    }
    // limit 1 - p^2 as t grows
    const double p = param.p();
    CHECK(hazard(param, 100000) == doctest::Approx(1.0 - p * p).epsilon(1e-12));
  }
}

TEST_CASE("closed-form mean and variance match the truncated series") {
  CHECK(mean(DbParam(std::numbers::ln2)) == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
  CHECK(variance(DbParam(std::numbers::ln2)) ==
        doctest::Approx(116.0 / 147.0).epsilon(1e-10));
  CHECK(mean(DbParam(50.0)) < 1e-40);
  CHECK(variance(DbParam(50.0)) < 1e-40);

  for (double beta : {0.05, 0.09085, 0.2, 0.5, 1.0, 2.0}) {
    const auto series = oracles::db_series_moments(beta);
    CHECK(std::abs(mean(DbParam(beta)) - series.mean) < 1e-8);
    CHECK(std::abs(variance(DbParam(beta)) - series.variance) < 1e-8);
    CHECK(variance(DbParam(beta)) > 0.0);
  }
}

TEST_CASE("quantile inversion returns the smallest t with cdf(t) >= u") {
  const DbParam param(0.2);
  CHECK(detail::db_quantile(param, 0.5 * pmf(param, 0)) == 0);  // below f(0)
  for (double u : {1e-12, 0.01, 0.3, 0.5, 0.9, 0.999, 1.0 - 1e-12}) {
    const int t = detail::db_quantile(param, u);
    CHECK(cdf(param, t) >= u);
    if (t > 0) CHECK(cdf(param, t - 1) < u);
  }
}

TEST_CASE("sample is reproducible and matches the closed-form mean") {
  const DbParam param(0.2);
  Rng rng_a(42), rng_b(42);
  const auto a = sample(param, rng_a, 1000);
  const auto b = sample(param, rng_b, 1000);
  CHECK(a == b);

  Rng rng(7);
  const std::size_t n = 1000000;
  const auto draws = sample(param, rng, n);
  double mean_hat = 0.0;
  for (int t : draws) mean_hat += t;
  mean_hat /= static_cast<double>(n);
  const double se = std::sqrt(variance(param) / static_cast<double>(n));
  CHECK(std::abs(mean_hat - mean(param)) < 3.0 * se);

  CHECK_THROWS_AS(sample(param, rng, 0), std::invalid_argument);
}
