#include "dbsurv/simulate.hpp"

#include <stdexcept>
#include <vector>

#include "dbsurv/db_dist.hpp"

namespace dbsurv {

SurvivalDataset simulate_db(double beta, std::size_t n, int censor_admin,
                            double cure_fraction, Rng& rng) {
  if (n == 0) {
    throw std::invalid_argument("simulate_db: n must be >= 1");
  }
  if (!(cure_fraction >= 0.0 && cure_fraction < 1.0)) {
    throw std::invalid_argument("simulate_db: cure fraction must lie in [0, 1)");
  }
  if (cure_fraction > 0.0 && censor_admin < 0) {
    throw std::invalid_argument(
        "simulate_db: a cure fraction requires administrative censoring");
  }
  const DbParam param(beta);
  std::vector<Observation> recs;
  recs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool cured = cure_fraction > 0.0 && rng.uniform() < cure_fraction;
    if (cured) {
      recs.push_back({censor_admin, 0});
      continue;
    }
    const int t = detail::db_quantile(param, rng.uniform_open());
    if (censor_admin >= 0 && t >= censor_admin) {
      recs.push_back({censor_admin, 0});
    } else {
      recs.push_back({t, 1});
    }
  }
  return SurvivalDataset(std::move(recs));
}

}  // namespace dbsurv
