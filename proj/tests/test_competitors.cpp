#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dbsurv/competitors.hpp"

using namespace dbsurv;

namespace {

const Family kFamilies[] = {Family::DsFxI, Family::DiscreteLindley,
                            Family::DiscreteRayleigh, Family::DiscreteBurrHatke};

// >= 5 parameter values per family, spread over the domain
std::vector<double> grid_for(Family f) {
  if (competitor_domain(f).positive) return {0.01, 0.05, 0.2, 0.5, 1.0, 2.5};
  return {0.05, 0.3, 0.5, 0.8, 0.95, 0.992};
}

}  // namespace

TEST_CASE("competitor parameter domains are enforced") {
  CHECK_THROWS_AS(CompetitorParam(Family::Db, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(competitor_domain(Family::Db), std::invalid_argument);
  CHECK_THROWS_AS(CompetitorParam(Family::DsFxI, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CompetitorParam(Family::DsFxI, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(CompetitorParam(Family::DiscreteRayleigh, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CompetitorParam(Family::DiscreteBurrHatke, 1.5), std::invalid_argument);
  CHECK_NOTHROW(CompetitorParam(Family::DiscreteLindley, 3.0));
  CHECK_NOTHROW(CompetitorParam(Family::DiscreteRayleigh, 0.99));
}

TEST_CASE("discrete Rayleigh pmf(0) equals 1 - q") {
  for (double q : {0.1, 0.5, 0.9, 0.99}) {
    const CompetitorParam param(Family::DiscreteRayleigh, q);
    CHECK(competitor_pmf(param, 0) == doctest::Approx(1.0 - q).epsilon(1e-12));
  }
}

TEST_CASE("every family: normalization, telescoping, monotone survival") {
  for (Family f : kFamilies) {
    for (double theta : grid_for(f)) {
      const CompetitorParam param(f, theta);
      CHECK(competitor_survival(param, -1) == doctest::Approx(1.0).epsilon(1e-15));

      double total = 0.0;
      double prev_surv = 1.0;
      int t = 0;
      for (; t < 100000; ++t) {
        const double s = competitor_survival(param, t);
        CHECK(s <= prev_surv + 1e-15);
        const double f_t = competitor_pmf(param, t);
        CHECK(f_t >= 0.0);
        CHECK(std::abs(f_t - (prev_surv - s)) < 1e-12);
        total += f_t;
        prev_surv = s;
        if (s < 1e-13) break;
      }
      total += competitor_survival(param, t);
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("log forms agree with logs of plain forms") {
  for (Family f : kFamilies) {
    const double theta = grid_for(f)[2];
    const CompetitorParam param(f, theta);
    for (int t : {0, 1, 3, 10, 30}) {
      CHECK(competitor_log_pmf(param, t) ==
            doctest::Approx(std::log(competitor_pmf(param, t))).epsilon(1e-12));
      CHECK(competitor_log_survival(param, t) ==
            doctest::Approx(std::log(competitor_survival(param, t))).epsilon(1e-12));
    }
  }
}
