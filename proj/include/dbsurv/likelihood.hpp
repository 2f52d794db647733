#ifndef DBSURV_LIKELIHOOD_HPP_
#define DBSURV_LIKELIHOOD_HPP_

#include <array>

#include "dbsurv/types.hpp"

namespace dbsurv {

// (beta, eta): DB parameter plus cured fraction for the mixture
// S(t) = eta + (1-eta) S0(t), f(t) = (1-eta) f0(t).
struct CureParams {
  CureParams(double beta, double eta);
  double beta;
  double eta;  // in [0, 1); eta == 0 reduces exactly to the censored model
};

// Log-likelihood, analytic score and observed information for the DB family.
//
// All gradients and Hessians differentiate the per-observation log f / log S
// primitives directly (cancellation-free groupings; see db_dist). The long
// fully-expanded algebraic forms of the same derivatives live in the test
// suite as an independent cross-check route.
//
// Log terms are floored at -1e10 instead of -inf so optimizers stay on finite
// ground when survival underflows.

// Complete data (every d_i = 1; throws otherwise).
double loglik_complete(double beta, const SurvivalDataset& data);
double score_complete(double beta, const SurvivalDataset& data);
double obs_info_complete(double beta, const SurvivalDataset& data);

// Right-censored data.
double loglik_censored(double beta, const SurvivalDataset& data);
double score_censored(double beta, const SurvivalDataset& data);
double obs_info_censored(double beta, const SurvivalDataset& data);

// Cure-fraction mixture.
double loglik_cure(const CureParams& params, const SurvivalDataset& data);
// (d/dbeta, d/deta)
std::array<double, 2> grad_cure(const CureParams& params, const SurvivalDataset& data);
// Symmetric 2x2 Hessian, rows/cols ordered (beta, eta).
std::array<std::array<double, 2>, 2> hessian_cure(const CureParams& params,
                                                  const SurvivalDataset& data);

// Generic censored log-likelihood for any family (DB included), used for the
// competitor fits: sum d_i log f(t_i) + (1 - d_i) log S(t_i).
double loglik_censored_family(Family family, double theta, const SurvivalDataset& data);

namespace detail {
// Floor used by every likelihood accumulation.
inline constexpr double kLogFloor = -1e10;
double guarded_log_value(double log_value);
}  // namespace detail

}  // namespace dbsurv

#endif  // DBSURV_LIKELIHOOD_HPP_
