#ifndef DBSURV_MLE_HPP_
#define DBSURV_MLE_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dbsurv/types.hpp"

namespace dbsurv {

struct FitOptions {
  std::vector<double> start;  // natural scale; empty selects automatic starts
  double tol = 1e-8;          // on the score norm, relative to 1 + |loglik|
  int max_iter = 200;
  double ci_level = 0.95;
};

struct InfoCriteria {
  double aic;
  double bic;
  double aicc;       // NaN when !aicc_valid
  bool aicc_valid;   // requires n > K + 1
};

InfoCriteria information_criteria(double loglik, int num_params, std::size_t n);

// estimate -/+ z_{(1-level)/2} * std_error, clipped to [domain_lo, domain_hi].
std::pair<double, double> wald_ci(double estimate, double std_error, double level,
                                  double domain_lo = -1e308, double domain_hi = 1e308);

struct FitResult {
  Family family{};
  Setting setting{};
  std::vector<double> estimates;                // beta [, eta]
  std::vector<double> std_errors;               // empty when !se_available
  std::vector<double> covariance;               // row-major k*k; empty when !se_available
  double loglik{};
  double aic{}, bic{}, aicc{};
  bool aicc_valid{};
  std::vector<std::pair<double, double>> ci;    // per parameter, clipped to domain
  double ci_level{};
  bool converged{};
  int iterations{};
  bool se_available{};
  std::string message;
};

// Maximum-likelihood fit for any family/setting combination. Analytic
// score/Hessian Newton for the DB family (on log beta, and logit eta for the
// cure mixture), derivative-free bracketing plus Newton polish for the
// competitor families. Standard errors come from the observed information of
// the untransformed likelihood at the estimate.
//
// Throws std::invalid_argument for non-identifiable inputs (no events),
// Complete setting with censored records, or cure fitting of a competitor
// family. Non-convergence is reported through converged/message, not thrown.
FitResult fit_ml(Family family, Setting setting, const SurvivalDataset& data,
                 const FitOptions& options = {});

// Survival / cdf of the fitted model (mixture survival for cure fits).
double model_survival(const FitResult& fit, int t);
double model_cdf(const FitResult& fit, int t);

namespace detail {
// Method-of-moments start: solves mean(beta) = mean of event times.
double mom_start_beta(const SurvivalDataset& data);
}  // namespace detail

}  // namespace dbsurv

#endif  // DBSURV_MLE_HPP_
