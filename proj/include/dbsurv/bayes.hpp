#ifndef DBSURV_BAYES_HPP_
#define DBSURV_BAYES_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dbsurv/types.hpp"

namespace dbsurv {

// beta ~ Gamma(shape, rate); eta ~ Beta(alpha, beta) in the cure setting.
// Defaults are the approximately non-informative Gamma(0.001, 0.001) and
// Beta(1, 1).
struct GammaPrior {
  double shape{0.001};
  double rate{0.001};
};

struct BetaPrior {
  double alpha{1.0};
  double beta{1.0};
};

struct PriorSpec {
  GammaPrior beta_prior{};
  BetaPrior eta_prior{};
};

struct McmcConfig {
  std::int64_t iterations{110000};
  std::int64_t burn_in{10000};
  std::int64_t thin{20};
  std::uint64_t seed{0};
  double proposal_scale{0.0};  // <= 0 selects automatic tuning during burn-in
};

struct PosteriorChain {
  std::vector<std::string> param_names;
  std::vector<std::vector<double>> draws;  // retained draws x parameters
  double acceptance_rate{};                // post burn-in
  std::vector<double> geweke_z;
  std::vector<std::vector<double>> acf;    // per parameter, lags 1..L
  std::vector<double> posterior_mean;
  std::vector<std::pair<double, double>> hdi;  // 95% per parameter
  bool divergence_warning{};               // beta wandered below 1e-6
};

// Unnormalized log posterior: log-likelihood of the setting plus log prior
// densities; -inf outside the parameter domain.
double log_posterior(std::span<const double> params, const SurvivalDataset& data,
                     const PriorSpec& prior, Setting setting);

// Random-walk Metropolis on (log beta[, logit eta]) with the transform
// Jacobian in the accept ratio; Gaussian steps, scale tuned during burn-in
// toward acceptance in [0.2, 0.5]. Deterministic given the seed.
PosteriorChain run_mcmc(const SurvivalDataset& data, const PriorSpec& prior,
                        const McmcConfig& config, Setting setting);

// Shortest interval covering ceil(prob * m) consecutive sorted draws.
// Requires at least 10 draws and prob in (0,1).
std::pair<double, double> hdi(std::vector<double> samples, double prob);

// Geweke convergence z-score comparing the first frac_first and last
// frac_last segments; segment standard errors from batch means (20 batches).
// Requires at least 100 samples.
double geweke_z(std::span<const double> samples, double frac_first = 0.1,
                double frac_last = 0.5);

// Autocorrelation at lags 1..max_lag (max_lag < m).
std::vector<double> acf(std::span<const double> samples, int max_lag);

// One column per parameter, one row per retained draw.
void write_chain_csv(std::ostream& os, const PosteriorChain& chain);

}  // namespace dbsurv

#endif  // DBSURV_BAYES_HPP_
