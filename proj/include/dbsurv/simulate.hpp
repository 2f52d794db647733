#ifndef DBSURV_SIMULATE_HPP_
#define DBSURV_SIMULATE_HPP_

#include <cstddef>

#include "dbsurv/rng.hpp"
#include "dbsurv/types.hpp"

namespace dbsurv {

// Draws n subjects whose event times follow DB(beta), optionally with a cured
// fraction and administrative right-censoring at censor_admin (observation
// stops there; subjects with T >= censor_admin are recorded censored at it).
// A positive cure fraction requires administrative censoring, otherwise cured
// subjects would need infinite follow-up.
SurvivalDataset simulate_db(double beta, std::size_t n, int censor_admin,
                            double cure_fraction, Rng& rng);

}  // namespace dbsurv

#endif  // DBSURV_SIMULATE_HPP_
