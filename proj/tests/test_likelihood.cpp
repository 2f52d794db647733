#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dbsurv/datasets.hpp"
#include "dbsurv/db_dist.hpp"
#include "dbsurv/likelihood.hpp"
#include "dbsurv/rng.hpp"
#include "dbsurv/simulate.hpp"
#include "oracles.hpp"

using namespace dbsurv;

namespace {

SurvivalDataset leukemia() { return load_builtin("leukemia").data; }
SurvivalDataset pelvic() { return load_builtin("pelvic").data; }

SurvivalDataset single_event_at_zero() {
  return SurvivalDataset({{0, 1}});
}

}  // namespace

TEST_CASE("CureParams validates its domain") {
  CHECK_THROWS_AS(CureParams(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(CureParams(0.1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(CureParams(0.1, 1.0), std::invalid_argument);
  CHECK_NOTHROW(CureParams(0.1, 0.0));
  CHECK_THROWS_AS(loglik_complete(-0.5, leukemia()), std::invalid_argument);
  CHECK_THROWS_AS(loglik_censored(0.0, pelvic()), std::invalid_argument);
}

TEST_CASE("complete log-likelihood equals the sum of log pmfs") {
  const auto data = leukemia();
  for (double beta : {0.05, 0.09085, 0.2}) {
    const DbParam param(beta);
    double expected = 0.0;
    for (const auto& r : data.records()) expected += log_pmf(param, r.time);
    CHECK(loglik_complete(beta, data) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(loglik_complete(0.1, pelvic()), std::invalid_argument);
}

TEST_CASE("leukemia log-likelihood peaks at the reported estimate") {
  const auto data = leukemia();
  const double ll_hat = loglik_complete(0.09085, data);
  for (double beta : {0.05, 0.07, 0.12, 0.2}) {
    CHECK(ll_hat >= loglik_complete(beta, data));
  }
}

TEST_CASE("single observation at t=0 reduces to log f(0)") {
  const auto data = single_event_at_zero();
  for (double beta : {0.1, 0.7, 2.0}) {
    const double p = std::exp(-beta);
    const double f0 = 2.0 * (p * p * p - 1.0) - 3.0 * (p * p - 1.0);
    CHECK(loglik_complete(beta, data) == doctest::Approx(std::log(f0)).epsilon(1e-13));
    // d/dbeta log f(0) = (6 e^{-2b} - 6 e^{-3b}) / (1 - 3 e^{-2b} + 2 e^{-3b})
    const double num = 6.0 * std::exp(-2.0 * beta) - 6.0 * std::exp(-3.0 * beta);
    CHECK(score_complete(beta, data) == doctest::Approx(num / f0).epsilon(1e-12));
  }
}

TEST_CASE("complete score and information match finite differences") {
  const auto data = leukemia();
  for (double beta : {0.05, 0.1, 0.5}) {
    const auto ll = [&](double b) { return loglik_complete(b, data); };
    const double fd = oracles::fd_derivative(ll, beta, 1e-6);
    CHECK(oracles::close_rel(score_complete(beta, data), fd, 1e-6, 1e-7));
    const double fd2 = oracles::fd_second_derivative(ll, beta, 1e-5);
    CHECK(oracles::close_rel(-obs_info_complete(beta, data), fd2, 1e-4));
  }
}

TEST_CASE("observed information scales additively when the data double up") {
  const auto data = leukemia();
  auto recs = data.records();
  recs.insert(recs.end(), data.records().begin(), data.records().end());
  const SurvivalDataset doubled(recs);
  for (double beta : {0.05, 0.1}) {
    CHECK(obs_info_complete(beta, doubled) ==
          doctest::Approx(2.0 * obs_info_complete(beta, data)).epsilon(1e-12));
  }
}

TEST_CASE("censored likelihood reduces to complete when all are events") {
  const auto data = leukemia();
  for (double beta : {0.03, 0.09085, 0.4}) {
    CHECK(loglik_censored(beta, data) ==
          doctest::Approx(loglik_complete(beta, data)).epsilon(1e-14));
    CHECK(score_censored(beta, data) ==
          doctest::Approx(score_complete(beta, data)).epsilon(1e-14));
    CHECK(obs_info_censored(beta, data) ==
          doctest::Approx(obs_info_complete(beta, data)).epsilon(1e-14));
  }
}

TEST_CASE("censored likelihood equals event/censored sum of db_dist logs") {
  const auto data = pelvic();
  for (double beta : {0.01, 0.02, 0.05}) {
    const DbParam param(beta);
    double expected = 0.0;
    for (const auto& r : data.records()) {
      expected += (r.status == 1) ? log_pmf(param, r.time) : log_survival(param, r.time);
    }
    CHECK(loglik_censored(beta, data) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("pelvic censored likelihood is unimodal over (0,1)") {
  const auto data = pelvic();
  double prev = loglik_censored(1e-4, data);
  bool rising = true;
  int switches = 0;
  for (int i = 1; i <= 999; ++i) {
    const double beta = 1e-4 + (1.0 - 2e-4) * i / 999.0;
    const double cur = loglik_censored(beta, data);
    CHECK(std::isfinite(cur));
    if (rising && cur < prev) {
      rising = false;
      ++switches;
    } else if (!rising && cur > prev + 1e-10) {
      ++switches;  // would indicate a second mode
    }
    prev = cur;
  }
  CHECK(switches == 1);
}

TEST_CASE("all-censored data: likelihood increases toward beta = 0") {
  std::vector<Observation> recs = {{5, 0}, {9, 0}, {14, 0}};
  const SurvivalDataset data(recs);
  double prev = loglik_censored(0.5, data);
  for (double beta : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const double cur = loglik_censored(beta, data);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("censored score/information match finite differences on pelvic data") {
  const auto data = pelvic();
  for (double beta : {0.02, 0.05}) {
    const auto ll = [&](double b) { return loglik_censored(b, data); };
    CHECK(oracles::close_rel(score_censored(beta, data),
                             oracles::fd_derivative(ll, beta, 1e-6), 1e-6, 1e-7));
    CHECK(oracles::close_rel(-obs_info_censored(beta, data),
                             oracles::fd_second_derivative(ll, beta, 1e-5), 1e-4));
  }
}

TEST_CASE("censored score changes sign around the maximizer") {
  const auto data = pelvic();
  // the censored-only fit sits near 0.00995
  CHECK(score_censored(0.005, data) > 0.0);
  CHECK(score_censored(0.05, data) < 0.0);
}

TEST_CASE("cure likelihood: eta = 0 reduction is exact") {
  const auto data = pelvic();
  for (double beta : {0.01, 0.03, 0.08}) {
    CHECK(loglik_cure(CureParams(beta, 0.0), data) == loglik_censored(beta, data));
    const auto g = grad_cure(CureParams(beta, 0.0), data);
    CHECK(g[0] == score_censored(beta, data));
    const auto H = hessian_cure(CureParams(beta, 0.0), data);
    CHECK(H[0][0] == doctest::Approx(-obs_info_censored(beta, data)).epsilon(1e-14));
  }
}

TEST_CASE("cure likelihood equals the directly assembled mixture") {
  const auto data = pelvic();
  for (double beta : {0.02, 0.05}) {
    for (double eta : {0.1, 0.5, 0.9}) {
      const DbParam param(beta);
      double expected = 0.0;
      for (const auto& r : data.records()) {
        if (r.status == 1) {
          expected += std::log1p(-eta) + log_pmf(param, r.time);
        } else {
          expected += std::log(eta + (1.0 - eta) * survival(param, r.time));
        }
      }
      CHECK(loglik_cure(CureParams(beta, eta), data) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("pelvic cure likelihood is maximal near the fitted pair on a grid") {
  const auto data = pelvic();
  const double ll_hat = loglik_cure(CureParams(0.02859, 0.57985), data);
  for (int i = 1; i <= 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double beta = 0.1 * i / 50.0;
      const double eta = 0.95 * j / 49.0;
      CHECK(loglik_cure(CureParams(beta, eta), data) <= ll_hat + 1e-9);
    }
  }
}

TEST_CASE("cure gradient is near zero at the fitted estimates") {
  const auto data = pelvic();
  // full-precision maximizer of the cure likelihood for this dataset
  const auto g = grad_cure(CureParams(0.028594390809, 0.579850091705), data);
  CHECK(std::abs(g[0]) < 1e-4);
  CHECK(std::abs(g[1]) < 1e-4);
}

TEST_CASE("adding a cure fraction improves the heavily censored pelvic fit") {
  const auto data = pelvic();
  const auto g = grad_cure(CureParams(0.0099514915, 0.0), data);
  CHECK(g[1] > 0.0);
}

TEST_CASE("cure gradient and Hessian match finite differences") {
  const auto data = pelvic();
  const std::array<std::array<double, 2>, 3> points = {
      {{0.02, 0.3}, {0.04, 0.6}, {0.01, 0.1}}};
  for (const auto& pt : points) {
    const double beta = pt[0], eta = pt[1];
    const auto ll_b = [&](double b) { return loglik_cure(CureParams(b, eta), data); };
    const auto ll_e = [&](double e) { return loglik_cure(CureParams(beta, e), data); };
    const auto g = grad_cure(CureParams(beta, eta), data);
    CHECK(oracles::close_rel(g[0], oracles::fd_derivative(ll_b, beta, 1e-6), 1e-5));
    CHECK(oracles::close_rel(g[1], oracles::fd_derivative(ll_e, eta, 1e-6), 1e-5));

    const auto H = hessian_cure(CureParams(beta, eta), data);
    CHECK(H[0][1] == H[1][0]);
    CHECK(oracles::close_rel(H[0][0], oracles::fd_second_derivative(ll_b, beta, 1e-4),
                             1e-3));
    CHECK(oracles::close_rel(H[1][1], oracles::fd_second_derivative(ll_e, eta, 1e-4),
                             1e-3));
    const double h = 1e-4;
    const double cross =
        (loglik_cure(CureParams(beta + h, eta + h), data) -
         loglik_cure(CureParams(beta + h, eta - h), data) -
         loglik_cure(CureParams(beta - h, eta + h), data) +
         loglik_cure(CureParams(beta - h, eta - h), data)) /
        (4.0 * h * h);
    CHECK(oracles::close_rel(H[0][1], cross, 1e-3));
  }
}

TEST_CASE("cure Hessian is negative definite at the maximizer") {
  const auto data = pelvic();
  const auto H = hessian_cure(CureParams(0.028594390809, 0.579850091705), data);
  CHECK(H[0][0] < 0.0);
  CHECK(H[0][0] * H[1][1] - H[0][1] * H[1][0] > 0.0);
  // sqrt of the diagonal of -H^{-1} reproduces the reported standard errors
  const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
  const double se_b = std::sqrt(-H[1][1] / det);
  const double se_e = std::sqrt(-H[0][0] / det);
  CHECK(se_b == doctest::Approx(0.01047).epsilon(0.10));
  CHECK(se_e == doctest::Approx(0.13965).epsilon(0.10));
}

TEST_CASE("property: analytic derivatives track finite differences on random data") {
  Rng rng(20240817);
  int checked = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const double beta_true = 0.03 + 0.4 * rng.uniform();
    const int censor = 3 + static_cast<int>(40.0 * rng.uniform());
    const auto data = simulate_db(beta_true, 40, censor, 0.2 * rng.uniform(), rng);
    if (!data.has_event()) continue;
    const double beta = 0.02 + 0.5 * rng.uniform();
    const double eta = 0.65 * rng.uniform();

    const auto ll_c = [&](double b) { return loglik_censored(b, data); };
    CHECK(oracles::close_rel(score_censored(beta, data),
                             oracles::fd_derivative(ll_c, beta, 1e-6), 1e-5, 1e-6));
    CHECK(oracles::close_rel(-obs_info_censored(beta, data),
                             oracles::fd_second_derivative(ll_c, beta, 1e-4), 1e-3,
                             1e-5));

    const auto ll_b = [&](double b) { return loglik_cure(CureParams(b, eta), data); };
    const auto ll_e = [&](double e) { return loglik_cure(CureParams(beta, e), data); };
    const auto g = grad_cure(CureParams(beta, eta), data);
    CHECK(oracles::close_rel(g[0], oracles::fd_derivative(ll_b, beta, 1e-6), 1e-5,
                             1e-6));
    CHECK(oracles::close_rel(g[1], oracles::fd_derivative(ll_e, eta, 1e-6), 1e-5,
                             1e-6));
    const auto H = hessian_cure(CureParams(beta, eta), data);
    CHECK(oracles::close_rel(H[0][0], oracles::fd_second_derivative(ll_b, beta, 1e-4),
                             1e-3, 1e-5));
    CHECK(oracles::close_rel(H[1][1], oracles::fd_second_derivative(ll_e, eta, 1e-4),
                             1e-3, 1e-5));

    // complete-data route on the event subset
    std::vector<Observation> events;
    for (const auto& r : data.records()) {
      if (r.status == 1) events.push_back(r);
    }
    if (events.size() >= 2) {
      const SurvivalDataset ev(events);
      const auto ll_comp = [&](double b) { return loglik_complete(b, ev); };
      CHECK(oracles::close_rel(score_complete(beta, ev),
                               oracles::fd_derivative(ll_comp, beta, 1e-6), 1e-5,
                               1e-6));
      CHECK(oracles::close_rel(-obs_info_complete(beta, ev),
                               oracles::fd_second_derivative(ll_comp, beta, 1e-4),
                               1e-3, 1e-5));
    }
    ++checked;
  }
  CHECK(checked >= 45);
}
